"""Pure objects, bigraded morphisms, mixed families, and tables."""

from fractions import Fraction
from random import Random

import pytest

from absix import Matrix
from absix.errors import DimensionError, WeightMismatch
from absix.hodgecore import (
    CohomologyTable,
    MixedGraded,
    PureMorphism,
    PureObject,
    ZERO_OBJECT,
    direct_sum,
    direct_sum_all,
    dual,
    from_hodge_numbers,
    mixed,
    pure,
    pure_mixed,
    table,
    tate,
    tate_twist,
    weight_support,
)

from synth import random_morphism


# ---------------------------------------------------------------------------
# PureObject
# ---------------------------------------------------------------------------

def test_from_hodge_numbers_sorts_slots_lexicographically():
    v = from_hodge_numbers(3, {(2, 1): 2, (0, 3): 1, (1, 2): 1})
    assert v.slots == ((0, 3), (1, 2), (2, 1), (2, 1))
    assert v.dim == 4
    assert v.count((2, 1)) == 2
    assert v.positions((2, 1)) == (2, 3)
    assert v.hodge_numbers() == {(0, 3): 1, (1, 2): 1, (2, 1): 2}


def test_slots_must_lie_on_the_weight():
    with pytest.raises(WeightMismatch):
        PureObject(2, ((1, 0),))
    assert PureObject(7, ()).weight == 0  # zero object normalizes its weight


def test_tate_objects_and_twists():
    q1 = tate(1)
    assert (q1.weight, q1.slots) == (-2, ((-1, -1),))
    v = pure(2, ((0, 2), (1, 1)))
    tw = tate_twist(v, -1)
    assert (tw.weight, tw.slots) == (4, ((1, 3), (2, 2)))
    assert tate_twist(tw, 1) == v
    assert tate_twist(ZERO_OBJECT, 5) == ZERO_OBJECT


def test_dual_reflects_slots():
    v = pure(2, ((0, 2), (1, 1)))
    assert dual(v) == PureObject(-2, ((0, -2), (-1, -1)))
    assert dual(dual(v)) == v


def test_direct_sum_concatenates_and_checks_weights():
    a = pure(2, ((1, 1),))
    b = pure(2, ((0, 2), (2, 0)))
    assert direct_sum(a, b).slots == ((1, 1), (0, 2), (2, 0))
    assert direct_sum(ZERO_OBJECT, b) == b
    assert direct_sum_all([a, ZERO_OBJECT, b]).dim == 3
    with pytest.raises(WeightMismatch):
        direct_sum(a, pure(4, ((2, 2),)))


# ---------------------------------------------------------------------------
# PureMorphism
# ---------------------------------------------------------------------------

def test_morphism_blocks_and_full_matrix_roundtrip():
    src = from_hodge_numbers(2, {(1, 1): 2, (0, 2): 1})
    tgt = from_hodge_numbers(2, {(1, 1): 1, (2, 0): 1})
    f = PureMorphism(src, tgt, {(1, 1): Matrix(1, 2, [[3, -1]])})
    full = f.full_matrix()
    assert full.shape == (2, 3)
    again = PureMorphism.from_full_matrix(src, tgt, full)
    assert again == f
    assert f.block((0, 2)).shape == (0, 1)  # absent block defaults to zeros
    assert f.rank() == 1
    assert f.rank_by_label() == {(1, 1): 1}


def test_from_full_matrix_rejects_entries_across_labels():
    src = from_hodge_numbers(2, {(1, 1): 1, (0, 2): 1})
    tgt = from_hodge_numbers(2, {(1, 1): 1})
    bad = Matrix(1, 2, [[1, 0]])  # slots sort lex, so column 0 is the (0,2) slot
    with pytest.raises((DimensionError, WeightMismatch)):
        PureMorphism.from_full_matrix(src, tgt, bad)


def test_compose_and_identity_laws():
    rng = Random(7)
    for _ in range(25):
        f = random_morphism(rng)
        idt = PureMorphism.identity(f.target)
        ids = PureMorphism.identity(f.source)
        assert idt.compose(f) == f
        assert f.compose(ids) == f
        g = PureMorphism.zero(f.target, f.source)
        assert f.compose(g).is_zero()


def test_compose_requires_matching_middle_object():
    f = PureMorphism.identity(pure(2, ((1, 1),)))
    g = PureMorphism.identity(pure(2, ((0, 2),)))
    with pytest.raises((DimensionError, WeightMismatch)):
        f.compose(g)


def test_injectivity_surjectivity_by_rank():
    src = from_hodge_numbers(0, {(0, 0): 2})
    tgt = from_hodge_numbers(0, {(0, 0): 2})
    iso = PureMorphism(src, tgt, {(0, 0): Matrix(2, 2, [[1, 1], [0, 1]])})
    assert iso.is_injective() and iso.is_surjective()
    drop = PureMorphism(src, tgt, {(0, 0): Matrix(2, 2, [[1, 0], [1, 0]])})
    assert not drop.is_injective() and not drop.is_surjective()


# ---------------------------------------------------------------------------
# MixedGraded and tables
# ---------------------------------------------------------------------------

def test_mixed_graded_drops_zero_pieces_and_sorts():
    m = mixed({4: pure(4, ((2, 2),)), 2: pure(2, ((1, 1),)), 6: ZERO_OBJECT})
    assert m.weights() == (2, 4)
    assert m.dim == 2
    assert m.piece(6) == ZERO_OBJECT
    assert m.hodge_numbers() == {(1, 1): 1, (2, 2): 1}
    assert pure_mixed(ZERO_OBJECT).is_zero


def test_mixed_graded_rejects_misfiled_weights():
    with pytest.raises(WeightMismatch):
        MixedGraded(((4, pure(2, ((1, 1),))),))


def test_table_kind_bounds():
    ok = table("plain", {1: mixed({2: pure(2, ((1, 1),))})})
    assert weight_support(ok, 1) == {2}
    assert ok.dim(1) == 1 and ok.dim(5) == 0
    with pytest.raises(WeightMismatch):
        table("plain", {1: mixed({3: pure(3, ((1, 2),))})})  # w > 2n
    with pytest.raises(WeightMismatch):
        table("compactSupport", {1: mixed({2: pure(2, ((1, 1),))})})  # w > n
    with pytest.raises(WeightMismatch):
        table("absoluteIC", {2: mixed({3: pure(3, ((1, 2),))})})  # not pure
    with pytest.raises(DimensionError):
        CohomologyTable("nonsense", ())


def test_table_accessors():
    t = table("boundary", {0: mixed({0: pure(0, ((0, 0),))}),
                           1: mixed({2: pure(2, ((1, 1),))})})
    assert t.degrees() == (0, 1)
    assert t.hodge(1) == {(1, 1): 1}
    assert t.degree(3).is_zero
