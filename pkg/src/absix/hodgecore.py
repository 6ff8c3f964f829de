"""Weight-graded data model for pure Hodge-type coefficients.

The engine never stores mixed extension data: a mixed structure is always
represented by its associated weight-graded pieces, each a :class:`PureObject`
— a pure weight together with an ordered list of (p, q) slot labels whose
entries sum to the weight.  Morphisms of pure objects preserve the bigrading,
so a :class:`PureMorphism` is a family of exact-rational blocks, one per
(p, q) label; blocks for labels absent from either side are zero-sized.

Grading conventions:

* Tate twist by m relabels (p, q) -> (p - m, q - m) and shifts the weight by
  -2m; ``tate(-1)`` is the weight-2 object with single slot (1, 1).
* The dual negates weight and slot labels.
* The zero object is stored with weight 0 and no slots, and is
  weight-compatible with everything.

:class:`MixedGraded` collects pure pieces by weight; :class:`CohomologyTable`
collects mixed graded pieces by cohomological degree, tagged with the kind of
cohomology it tabulates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError, WeightMismatch
from .qmat import Matrix

#: Allowed CohomologyTable kind tags.
TABLE_KINDS = ("plain", "compactSupport", "boundary", "absoluteIC", "onePointIC")


@dataclass(frozen=True)
class PureObject:
    """A pure weight-w object with an ordered basis labelled by (p, q) slots."""

    weight: int
    slots: tuple = ()

    def __post_init__(self):
        slots = tuple((int(p), int(q)) for p, q in self.slots)
        object.__setattr__(self, "slots", slots)
        if not slots:
            object.__setattr__(self, "weight", 0)
            return
        for (p, q) in slots:
            if p + q != self.weight:
                raise WeightMismatch(
                    f"slot ({p},{q}) does not lie on weight {self.weight}"
                )

    @property
    def dim(self) -> int:
        return len(self.slots)

    @property
    def is_zero(self) -> bool:
        return not self.slots

    def hodge_numbers(self) -> dict:
        out: dict = {}
        for s in self.slots:
            out[s] = out.get(s, 0) + 1
        return dict(sorted(out.items()))

    def labels(self) -> tuple:
        return tuple(sorted(set(self.slots)))

    def positions(self, label) -> tuple:
        """Basis indices carrying the given (p, q) label, in order."""
        return tuple(i for i, s in enumerate(self.slots) if s == label)

    def count(self, label) -> int:
        return sum(1 for s in self.slots if s == label)


ZERO_OBJECT = PureObject(0, ())


def pure(weight: int, slots: Iterable) -> PureObject:
    return PureObject(weight, tuple(slots))


def from_hodge_numbers(weight: int, numbers: Mapping) -> PureObject:
    """Pure object with lexicographically sorted slots of given multiplicity."""
    slots = []
    for (p, q) in sorted(numbers):
        slots.extend([(p, q)] * numbers[(p, q)])
    return PureObject(weight, tuple(slots))


def tate(m: int) -> PureObject:
    """The one-dimensional object Q(m): weight -2m, slot (-m, -m)."""
    return PureObject(-2 * m, ((-m, -m),))


def tate_twist(v: PureObject, m: int) -> PureObject:
    """Twist by Q(m): weight - 2m, slots (p - m, q - m)."""
    if v.is_zero:
        return ZERO_OBJECT
    return PureObject(v.weight - 2 * m, tuple((p - m, q - m) for (p, q) in v.slots))


def dual(v: PureObject) -> PureObject:
    if v.is_zero:
        return ZERO_OBJECT
    return PureObject(-v.weight, tuple((-p, -q) for (p, q) in v.slots))


def direct_sum(a: PureObject, b: PureObject) -> PureObject:
    """Concatenate slot lists; weights must agree unless one side is zero."""
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    if a.weight != b.weight:
        raise WeightMismatch(f"direct sum of weights {a.weight} and {b.weight}")
    return PureObject(a.weight, a.slots + b.slots)


def direct_sum_all(parts: Sequence[PureObject]) -> PureObject:
    out = ZERO_OBJECT
    for p in parts:
        out = direct_sum(out, p)
    return out


def hodge_numbers(v: PureObject) -> dict:
    return v.hodge_numbers()


class PureMorphism:
    """A bigrading-preserving map between pure objects of equal weight.

    Stored as one rational block per (p, q) label; the block for a label
    carries shape (target multiplicity) x (source multiplicity) and is kept
    only when both sides are nonzero there.
    """

    __slots__ = ("source", "target", "_blocks")

    def __init__(self, source: PureObject, target: PureObject, blocks: Mapping):
        if not source.is_zero and not target.is_zero and source.weight != target.weight:
            raise WeightMismatch(
                f"morphism between weights {source.weight} and {target.weight}"
            )
        self.source = source
        self.target = target
        stored = {}
        for label in sorted(set(blocks)):
            m = blocks[label]
            tgt, src = target.count(label), source.count(label)
            if m.shape != (tgt, src):
                raise DimensionError(
                    f"block {label} has shape {m.shape}, expected {(tgt, src)}"
                )
            if tgt and src:
                stored[label] = m
        self._blocks = stored

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, source: PureObject, target: PureObject) -> "PureMorphism":
        return cls(source, target, {})

    @classmethod
    def identity(cls, v: PureObject) -> "PureMorphism":
        blocks = {lab: Matrix.identity(v.count(lab)) for lab in v.labels()}
        return cls(v, v, blocks)

    @classmethod
    def from_full_matrix(cls, source: PureObject, target: PureObject,
                         m: Matrix, where: str = "") -> "PureMorphism":
        """Split a full matrix (in slot order) into per-label blocks.

        Entries between different (p, q) labels must vanish exactly; a
        nonzero off-block entry means the matrix does not define a morphism
        of pure structures.
        """
        if m.shape != (target.dim, source.dim):
            raise DimensionError(
                f"{where or 'matrix'}: shape {m.shape}, expected {(target.dim, source.dim)}"
            )
        for i in range(target.dim):
            for j in range(source.dim):
                if target.slots[i] != source.slots[j] and m[i, j] != 0:
                    raise DimensionError(
                        f"{where or 'matrix'}: nonzero entry ({i},{j}) links slot "
                        f"{source.slots[j]} to slot {target.slots[i]}"
                    )
        blocks = {}
        for lab in set(source.labels()) & set(target.labels()):
            rows = target.positions(lab)
            cols = source.positions(lab)
            blocks[lab] = m.take_rows(rows).take_columns(cols)
        return cls(source, target, blocks)

    # -- access ------------------------------------------------------------

    def block(self, label) -> Matrix:
        got = self._blocks.get(label)
        if got is not None:
            return got
        return Matrix.zeros(self.target.count(label), self.source.count(label))

    def labels(self) -> tuple:
        return tuple(sorted(set(self.source.labels()) | set(self.target.labels())))

    def full_matrix(self) -> Matrix:
        """Reassemble the single matrix in the slot order of source/target."""
        out = [[0] * self.source.dim for _ in range(self.target.dim)]
        for lab, m in self._blocks.items():
            rows = self.target.positions(lab)
            cols = self.source.positions(lab)
            for bi, i in enumerate(rows):
                for bj, j in enumerate(cols):
                    out[i][j] = m[bi, bj]
        return Matrix.from_rows(out) if self.target.dim and self.source.dim else Matrix.zeros(
            self.target.dim, self.source.dim
        )

    # -- algebra -----------------------------------------------------------

    def compose(self, other: "PureMorphism") -> "PureMorphism":
        """self after other."""
        if other.target.slots != self.source.slots:
            raise DimensionError("compose: middle objects differ")
        blocks = {}
        for lab in self.labels():
            blocks[lab] = self.block(lab) * other.block(lab)
        return PureMorphism(other.source, self.target, blocks)

    def rank(self) -> int:
        from .qmat import rank as _rank
        return sum(_rank(m) for m in self._blocks.values())

    def rank_by_label(self) -> dict:
        from .qmat import rank as _rank
        out = {}
        for lab in self.labels():
            r = _rank(self.block(lab))
            if r:
                out[lab] = r
        return out

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self._blocks.values())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PureMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.full_matrix() == other.full_matrix()
        )

    def __hash__(self):
        return hash((self.source, self.target, self.full_matrix()))

    def __repr__(self) -> str:
        return f"PureMorphism({self.source.dim}->{self.target.dim}, w={self.target.weight})"


@dataclass(frozen=True)
class MixedGraded:
    """Finitely supported family of pure pieces, keyed by weight."""

    pieces: tuple = ()

    def __post_init__(self):
        cleaned = []
        for w, obj in self.pieces:
            if obj.is_zero:
                continue
            if obj.weight != w:
                raise WeightMismatch(f"piece of weight {obj.weight} stored at key {w}")
            cleaned.append((int(w), obj))
        cleaned.sort(key=lambda t: t[0])
        keys = [w for w, _ in cleaned]
        if len(set(keys)) != len(keys):
            raise WeightMismatch("duplicate weight keys in MixedGraded")
        object.__setattr__(self, "pieces", tuple(cleaned))

    def piece(self, w: int) -> PureObject:
        for key, obj in self.pieces:
            if key == w:
                return obj
        return ZERO_OBJECT

    def weights(self) -> tuple:
        return tuple(w for w, _ in self.pieces)

    @property
    def dim(self) -> int:
        return sum(obj.dim for _, obj in self.pieces)

    @property
    def is_zero(self) -> bool:
        return not self.pieces

    def hodge_numbers(self) -> dict:
        """Aggregated (p, q) -> multiplicity over all weights."""
        out: dict = {}
        for _, obj in self.pieces:
            for s, k in obj.hodge_numbers().items():
                out[s] = out.get(s, 0) + k
        return dict(sorted(out.items()))


EMPTY_MIXED = MixedGraded(())


def mixed(by_weight: Mapping) -> MixedGraded:
    return MixedGraded(tuple(by_weight.items()))


def pure_mixed(obj: PureObject) -> MixedGraded:
    """The mixed graded concentrated in the object's own weight."""
    if obj.is_zero:
        return EMPTY_MIXED
    return MixedGraded(((obj.weight, obj),))


@dataclass(frozen=True)
class CohomologyTable:
    """Weight-graded cohomology tabulated by degree, with a kind tag."""

    kind: str
    by_degree: tuple = ()

    def __post_init__(self):
        if self.kind not in TABLE_KINDS:
            raise DimensionError(f"unknown table kind {self.kind!r}")
        cleaned = []
        for n, mg in self.by_degree:
            if mg.is_zero:
                continue
            for w in mg.weights():
                if self.kind == "plain" and not (n <= w <= 2 * n):
                    raise WeightMismatch(
                        f"plain table: weight {w} outside [{n}, {2*n}] at degree {n}"
                    )
                if self.kind == "compactSupport" and w > n:
                    raise WeightMismatch(
                        f"compact-support table: weight {w} > degree {n}"
                    )
                if self.kind in ("absoluteIC",) and w != n:
                    raise WeightMismatch(
                        f"absolute-IC table must be pure of weight {n} at degree {n}"
                    )
            cleaned.append((int(n), mg))
        cleaned.sort(key=lambda t: t[0])
        keys = [n for n, _ in cleaned]
        if len(set(keys)) != len(keys):
            raise WeightMismatch("duplicate degree keys in CohomologyTable")
        object.__setattr__(self, "by_degree", tuple(cleaned))

    def degree(self, n: int) -> MixedGraded:
        for key, mg in self.by_degree:
            if key == n:
                return mg
        return EMPTY_MIXED

    def degrees(self) -> tuple:
        return tuple(n for n, _ in self.by_degree)

    def dim(self, n: int) -> int:
        return self.degree(n).dim

    def hodge(self, n: int) -> dict:
        return self.degree(n).hodge_numbers()


def table(kind: str, by_degree: Mapping) -> CohomologyTable:
    return CohomologyTable(kind, tuple(by_degree.items()))


def weight_support(t: CohomologyTable, n: int) -> set:
    """The set of weights w with Gr_w of degree n nonzero."""
    return set(t.degree(n).weights())
