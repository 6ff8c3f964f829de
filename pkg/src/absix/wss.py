"""Weight-graded cohomology of the open variety via boundary complexes.

For X = Y \\ Z with normal-crossing boundary, each weight-graded piece of
H^*(X) is the cohomology of a small complex built out of the closed strata:

* ``gysin_complex(a, w)``: spot m carries the weight-w pure object

      (+)_{|S| = m}  H^(w - 2m)(D_S)(-m),

  and the differential (spot m -> spot m-1) sums signed Gysin pushforwards
  along the inclusions D_S -> D_(S \\ {i}).  Each pushforward is the Poincare
  adjoint of the corresponding restriction matrix.  Then

      Gr^W_w H^n(X)  =  homology of this complex at spot m = w - n.

* ``restriction_complex(a, n)``: spot m carries (+)_{|S| = m} H^n(D_S) with
  signed restriction differentials (spot m -> spot m+1); its spot-0 kernel is
  the lowest-weight piece Gr^W_n of H^n_c(X).

``grW_c`` (full weight grading with compact supports) is produced from
``grW`` by Poincare duality of the open smooth X, which keeps the two
independent routes to the overlapping weight-n piece available as a
cross-check.  ``u_map`` assembles the canonical comparison

      u_n : Gr^W_n H^n_c(X) -> Gr^W_n H^n(X)

whose kernel/image/cokernel decomposition everything downstream consumes.

All spots, maps and homology objects are bigraded; computations happen one
(p, q) block at a time over exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .atlas import StratumAtlas, require_valid
from .hodgecore import (
    MixedGraded,
    PureMorphism,
    PureObject,
    direct_sum_all,
    from_hodge_numbers,
    mixed,
    tate_twist,
)
from .qmat import Matrix, adjoint_pushforward, cokernel_projection, kernel_basis, rank


@dataclass(frozen=True)
class WeightComplex:
    """A bounded complex of pure objects indexed by stratum codimension.

    ``maps[i]`` connects spots i and i+1: for a decreasing complex it is a
    morphism spots[i+1] -> spots[i] (Gysin direction), for an increasing one
    spots[i] -> spots[i+1] (restriction direction).  ``summands[m]`` records
    which subset owns which coordinate range of spot m.
    """

    weight: int
    spots: tuple
    maps: tuple
    decreasing: bool
    summands: tuple

    def __post_init__(self):
        for i in range(len(self.maps) - 1):
            if self.decreasing:
                square = self.maps[i].compose(self.maps[i + 1])
            else:
                square = self.maps[i + 1].compose(self.maps[i])
            assert square.is_zero(), f"differential does not square to zero at {i}"

    def spot(self, m: int) -> PureObject:
        if 0 <= m < len(self.spots):
            return self.spots[m]
        return PureObject(self.weight, ())

    def map_out_of(self, m: int) -> Optional[PureMorphism]:
        """The differential leaving spot m, or None at the end."""
        i = m - 1 if self.decreasing else m
        if 0 <= i < len(self.maps):
            return self.maps[i]
        return None

    def map_into(self, m: int) -> Optional[PureMorphism]:
        """The differential arriving at spot m, or None at the end."""
        i = m if self.decreasing else m - 1
        if 0 <= i < len(self.maps):
            return self.maps[i]
        return None

    def homology_hodge(self, m: int) -> dict:
        """Hodge numbers of ker(out) / im(in) at spot m, one label at a time."""
        spot = self.spot(m)
        out_map, in_map = self.map_out_of(m), self.map_into(m)
        counts = {}
        for lab in spot.labels():
            total = spot.count(lab)
            r_out = rank(out_map.block(lab)) if out_map is not None else 0
            r_in = rank(in_map.block(lab)) if in_map is not None else 0
            h = total - r_out - r_in
            assert h >= 0, f"homology count negative at spot {m}, label {lab}"
            if h:
                counts[lab] = counts.get(lab, 0) + h
        return counts

    def homology_object(self, m: int) -> PureObject:
        return from_hodge_numbers(self.weight, self.homology_hodge(m))


def _assemble(src_summands, tgt_summands, blocks) -> Matrix:
    """Glue per-summand blocks into one full matrix in summand order."""
    col_off, cols = {}, 0
    for subset, obj in src_summands:
        col_off[subset] = cols
        cols += obj.dim
    row_off, rows = {}, 0
    for subset, obj in tgt_summands:
        row_off[subset] = rows
        rows += obj.dim
    if rows == 0 or cols == 0:
        return Matrix.zeros(rows, cols)
    grid = [[Fraction(0)] * cols for _ in range(rows)]
    for (tgt, src), m in blocks.items():
        r0, c0 = row_off[tgt], col_off[src]
        for i, row in enumerate(m.entries()):
            for j, x in enumerate(row):
                if x:
                    grid[r0 + i][c0 + j] = x
    return Matrix.from_rows(grid)


def _sign(position: int) -> Fraction:
    return Fraction(1) if position % 2 == 0 else Fraction(-1)


def gysin_complex(a: StratumAtlas, w: int) -> WeightComplex:
    """The weight-w Gysin complex; homology at spot m is Gr^W_w H^(w-m)(X)."""
    require_valid(a)
    d = a.dimension
    depth = a.depth()
    summands, spots = [], []
    for m in range(depth + 1):
        sm = tuple(
            (subset, tate_twist(a.pure_at(subset, w - 2 * m), -m))
            for subset in a.subsets_of_size(m)
        )
        summands.append(sm)
        spots.append(direct_sum_all([obj for _, obj in sm]))
    maps = []
    for m in range(1, depth + 1):
        blocks = {}
        for subset, obj in summands[m]:
            if obj.is_zero:
                continue
            for pos, dropped in enumerate(subset):
                smaller = subset[:pos] + subset[pos + 1:]
                j = w - 2 * m  # degree on the source stratum
                q_src = a.pairing_at(subset, j)
                q_tgt = a.pairing_at(smaller, j + 2)
                if q_tgt.rows == 0:
                    continue
                r = a.restriction_matrix(smaller, subset, 2 * d - w)
                g = adjoint_pushforward(r, q_src, q_tgt)
                if g.is_zero():
                    continue
                blocks[(smaller, subset)] = g.scale(_sign(pos))
        full = _assemble(summands[m], summands[m - 1], blocks)
        maps.append(
            PureMorphism.from_full_matrix(
                spots[m], spots[m - 1], full,
                where=f"gysin differential w={w}, spot {m}",
            )
        )
    return WeightComplex(w, tuple(spots), tuple(maps), True, tuple(summands))


def restriction_complex(a: StratumAtlas, n: int) -> WeightComplex:
    """The degree-n restriction complex (weight n at every spot)."""
    require_valid(a)
    depth = a.depth()
    summands, spots = [], []
    for m in range(depth + 1):
        sm = tuple(
            (subset, a.pure_at(subset, n)) for subset in a.subsets_of_size(m)
        )
        summands.append(sm)
        spots.append(direct_sum_all([obj for _, obj in sm]))
    maps = []
    for m in range(depth):
        blocks = {}
        for subset, obj in summands[m + 1]:
            if obj.is_zero:
                continue
            for pos, added in enumerate(subset):
                smaller = subset[:pos] + subset[pos + 1:]
                if a.stratum(smaller) is None:
                    continue
                r = a.restriction_matrix(smaller, subset, n)
                if r.is_zero():
                    continue
                blocks[(subset, smaller)] = r.scale(_sign(pos))
        full = _assemble(summands[m], summands[m + 1], blocks)
        maps.append(
            PureMorphism.from_full_matrix(
                spots[m], spots[m + 1], full,
                where=f"restriction differential n={n}, spot {m}",
            )
        )
    return WeightComplex(n, tuple(spots), tuple(maps), False, tuple(summands))


def grW(a: StratumAtlas, n: int) -> MixedGraded:
    """Weight-graded pieces of H^n(X) as a MixedGraded family."""
    require_valid(a)
    d = a.dimension
    if n < 0 or n > 2 * d:
        return MixedGraded(())
    pieces = {}
    for w in range(n, min(2 * n, n + d) + 1):
        obj = gysin_complex(a, w).homology_object(w - n)
        if not obj.is_zero:
            pieces[w] = obj
    return mixed(pieces)


def grW_c(a: StratumAtlas, n: int) -> MixedGraded:
    """Weight-graded pieces of H^n_c(X), by duality with degree 2d - n."""
    require_valid(a)
    d = a.dimension
    plain = grW(a, 2 * d - n)
    pieces = {}
    for _, obj in plain.pieces:
        w = 2 * d - obj.weight
        numbers = {}
        for (p, q) in obj.slots:
            lab = (d - p, d - q)
            numbers[lab] = numbers.get(lab, 0) + 1
        pieces[w] = from_hodge_numbers(w, numbers)
    return mixed(pieces)


def lowest_weight_compact(a: StratumAtlas, n: int) -> PureObject:
    """Gr^W_n H^n_c(X) read directly from the restriction complex.

    This is the spot-0 kernel of ``restriction_complex(a, n)`` -- an
    independent route to the same object ``grW_c(a, n)`` produces at
    weight n via duality; both are exposed so they can be compared.
    """
    c = restriction_complex(a, n)
    spot = c.spot(0)
    out_map = c.map_out_of(0)
    counts = {}
    for lab in spot.labels():
        k = spot.count(lab) - (rank(out_map.block(lab)) if out_map else 0)
        if k:
            counts[lab] = k
    return from_hodge_numbers(n, counts)


def u_map(a: StratumAtlas, n: int) -> PureMorphism:
    """The comparison u_n : Gr^W_n H^n_c(X) -> Gr^W_n H^n(X).

    Per (p, q) block: the source is the kernel of the spot-0 restriction
    differential (inside H^n(Y)), the target is the cokernel of the spot-1
    Gysin differential (a quotient of H^n(Y)), and u_n is induced by the
    identity of H^n(Y).
    """
    require_valid(a)
    rc = restriction_complex(a, n)
    gc = gysin_complex(a, n)
    ambient = rc.spot(0)
    assert ambient.slots == gc.spot(0).slots, "spot-0 objects must agree"
    d0 = rc.map_out_of(0)
    g1 = gc.map_into(0)
    src_counts, tgt_counts, kernels, projections = {}, {}, {}, {}
    for lab in ambient.labels():
        restr = d0.block(lab) if d0 is not None else Matrix.zeros(0, ambient.count(lab))
        gys = g1.block(lab) if g1 is not None else Matrix.zeros(ambient.count(lab), 0)
        k = kernel_basis(restr)
        c = cokernel_projection(gys)
        kernels[lab], projections[lab] = k, c
        if k.cols:
            src_counts[lab] = k.cols
        if c.rows:
            tgt_counts[lab] = c.rows
    source = from_hodge_numbers(n, src_counts)
    target = from_hodge_numbers(n, tgt_counts)
    blocks = {
        lab: projections[lab] * kernels[lab]
        for lab in ambient.labels()
        if kernels[lab].cols and projections[lab].rows
    }
    return PureMorphism(source, target, blocks)
