"""The scaling action on 3-planes in a split 6-space.

The ambient space is V + V*, two 3-blocks with basis e_1..e_3 and
e*_1..e*_3 (columns 1..3 and 4..6).  The one-parameter scaling group acts
with weight +1 on V and -1 on V*; the two copies of SL_3 act on the
blocks.  This module computes weights of the 20 exterior-cube basis
vectors, stability of 3-planes with respect to the scaling, the two
unstable strata (too much intersection with one block), the block
decomposition of the exterior cube, the invariant-ring generator families,
and the translation of block-diagonal weights into (line bundle power,
scaling grade) pairs.

All linear algebra is exact over rationals; points are canonicalized to
reduced row-echelon form, so equality means equality of subspaces.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .rootsys import Weight

__all__ = [
    "PluckerIndex",
    "SubspacePoint",
    "Summand",
    "GeneratorFamily",
    "SheafDescriptor",
    "all_plucker_indices",
    "cstar_weight",
    "torus_weight",
    "subspace_point",
    "graph_point",
    "coordinate_point",
    "fixed_points",
    "block_swap",
    "intersection_dims",
    "is_semistable",
    "is_stable",
    "unstable_component",
    "plucker_coordinates",
    "middle_components_nonzero",
    "decompose_module",
    "invariant_generators",
    "sheaf_correspondence",
    "point_to_json",
    "point_from_json",
]

# weights of the block bases under the two rank-2 torus factors: the first
# block carries the standard representation, the second its dual
_EPS = {1: (1, 0), 2: (-1, 1), 3: (0, -1)}
_EPS_DUAL = {1: (-1, 0), 2: (1, -1), 3: (0, 1)}


@dataclass(frozen=True)
class PluckerIndex:
    """Basis vector of the exterior cube: wedge of e_i (i in ``first``) and
    e*_j (j in ``second``), three factors in total."""

    first: tuple[int, ...]
    second: tuple[int, ...]

    def __post_init__(self):
        first = tuple(sorted(self.first))
        second = tuple(sorted(self.second))
        object.__setattr__(self, "first", first)
        object.__setattr__(self, "second", second)
        if len(set(first)) != len(first) or len(set(second)) != len(second):
            raise ValueError(f"repeated index in {first}^{second}")
        if not set(first) <= {1, 2, 3} or not set(second) <= {1, 2, 3}:
            raise ValueError(f"indices out of range in {first}^{second}")
        if len(first) + len(second) != 3:
            raise ValueError(
                f"need three wedge factors, got {len(first)} + {len(second)}"
            )

    def columns(self) -> tuple[int, ...]:
        """0-based ambient column positions of the wedge factors."""
        return tuple(i - 1 for i in self.first) + tuple(
            j + 2 for j in self.second
        )


def all_plucker_indices() -> tuple[PluckerIndex, ...]:
    out = []
    for cols in itertools.combinations(range(1, 7), 3):
        first = tuple(c for c in cols if c <= 3)
        second = tuple(c - 3 for c in cols if c > 3)
        out.append(PluckerIndex(first, second))
    return tuple(out)


def cstar_weight(p: PluckerIndex) -> int:
    return len(p.first) - len(p.second)


def torus_weight(p: PluckerIndex) -> Weight:
    """Weight of the basis vector under the two rank-2 torus factors."""
    a = [0, 0]
    b = [0, 0]
    for i in p.first:
        a[0] += _EPS[i][0]
        a[1] += _EPS[i][1]
    for j in p.second:
        b[0] += _EPS_DUAL[j][0]
        b[1] += _EPS_DUAL[j][1]
    return Weight((a[0], a[1], b[0], b[1]))


# ---------------------------------------------------------------------------
# points

@dataclass(frozen=True)
class SubspacePoint:
    """A 3-plane in the 6-space, stored as the reduced row-echelon form of a
    spanning 3x6 matrix; construct via :func:`subspace_point`."""

    rows: tuple[tuple[Fraction, ...], ...]


def _rref(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    mat = [row[:] for row in rows]
    nrows, ncols = len(mat), len(mat[0])
    pivot_row = 0
    for col in range(ncols):
        pivot = next(
            (r for r in range(pivot_row, nrows) if mat[r][col] != 0), None
        )
        if pivot is None:
            continue
        mat[pivot_row], mat[pivot] = mat[pivot], mat[pivot_row]
        lead = mat[pivot_row][col]
        mat[pivot_row] = [x / lead for x in mat[pivot_row]]
        for r in range(nrows):
            if r != pivot_row and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [
                    x - factor * y for x, y in zip(mat[r], mat[pivot_row])
                ]
        pivot_row += 1
        if pivot_row == nrows:
            break
    return mat[:pivot_row] + [
        [Fraction(0)] * ncols for _ in range(nrows - pivot_row)
    ]


def _rank(rows) -> int:
    reduced = _rref([[Fraction(x) for x in row] for row in rows])
    return sum(1 for row in reduced if any(row))


def subspace_point(rows) -> SubspacePoint:
    """Canonicalize a 3x6 spanning matrix; rejects rank-deficient input."""
    mat = [[Fraction(x) for x in row] for row in rows]
    if len(mat) != 3 or any(len(row) != 6 for row in mat):
        raise ValueError("expected a 3x6 matrix")
    reduced = _rref(mat)
    if sum(1 for row in reduced if any(row)) != 3:
        raise ValueError("rows do not span a 3-plane")
    return SubspacePoint(tuple(tuple(row) for row in reduced))


def graph_point(m) -> SubspacePoint:
    """The graph {(v, M v)}: rows (e_i | i-th column pattern of M)."""
    mat = [[Fraction(x) for x in row] for row in m]
    if len(mat) != 3 or any(len(row) != 3 for row in mat):
        raise ValueError("expected a 3x3 matrix")
    rows = []
    for i in range(3):
        left = [Fraction(int(j == i)) for j in range(3)]
        right = [mat[j][i] for j in range(3)]
        rows.append(left + right)
    return subspace_point(rows)


def coordinate_point(p: PluckerIndex) -> SubspacePoint:
    """The coordinate 3-plane spanned by the wedge factors of ``p``."""
    rows = []
    for col in p.columns():
        rows.append([Fraction(int(j == col)) for j in range(6)])
    return subspace_point(rows)


def fixed_points() -> tuple[SubspacePoint, ...]:
    """All 20 coordinate 3-planes (the torus-fixed points)."""
    return tuple(coordinate_point(p) for p in all_plucker_indices())


def block_swap(u: SubspacePoint) -> SubspacePoint:
    """Exchange the two blocks: e_i <-> e*_i."""
    return subspace_point([row[3:] + row[:3] for row in u.rows])


# ---------------------------------------------------------------------------
# stability

def intersection_dims(u: SubspacePoint) -> tuple[int, int]:
    """(dim of intersection with V, with V*), exactly.

    A vector of the row span lies in V iff its last three coordinates
    vanish, so the intersection dimension is 3 minus the rank of the
    last-three-column block; symmetrically for V*.
    """
    last = [row[3:] for row in u.rows]
    first = [row[:3] for row in u.rows]
    return 3 - _rank(last), 3 - _rank(first)


def is_semistable(u: SubspacePoint) -> bool:
    d_v, d_vstar = intersection_dims(u)
    return d_v <= 1 and d_vstar <= 1


def is_stable(u: SubspacePoint) -> bool:
    # at this dimension the strict and non-strict thresholds coincide
    return is_semistable(u)


def unstable_component(u: SubspacePoint) -> str | None:
    """"F1" when the plane meets V in a 2-plane or more, "F2" for V*,
    None when semistable.  The two cases exclude each other."""
    d_v, d_vstar = intersection_dims(u)
    if d_v >= 2:
        return "F1"
    if d_vstar >= 2:
        return "F2"
    return None


def plucker_coordinates(u: SubspacePoint) -> dict[PluckerIndex, Fraction]:
    """All twenty 3x3 minors, keyed by index."""
    out = {}
    for p in all_plucker_indices():
        cols = p.columns()
        m = [[u.rows[r][c] for c in cols] for r in range(3)]
        det = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
        out[p] = det
    return out


def middle_components_nonzero(u: SubspacePoint) -> bool:
    """Whether the weight +1 and weight -1 components of the wedge-cube
    vector are both nonzero; holds for every semistable point."""
    coords = plucker_coordinates(u)
    plus = any(v != 0 for p, v in coords.items() if cstar_weight(p) == 1)
    minus = any(v != 0 for p, v in coords.items() if cstar_weight(p) == -1)
    return plus and minus


# ---------------------------------------------------------------------------
# module structure

@dataclass(frozen=True)
class Summand:
    """An irreducible block of the exterior cube: highest weight of the two
    rank-2 factors, scaling weight, dimension."""

    highest_weight: Weight
    cstar: int
    dim: int


def decompose_module() -> tuple[Summand, ...]:
    return (
        Summand(Weight((0, 0, 0, 0)), 3, 1),
        Summand(Weight((0, 1, 0, 1)), 1, 9),
        Summand(Weight((1, 0, 1, 0)), -1, 9),
        Summand(Weight((0, 0, 0, 0)), -3, 1),
    )


@dataclass(frozen=True)
class GeneratorFamily:
    """A family of scaling-invariant generators, recorded by its exponents
    on the four summands in weight order (3, 1, -1, -3)."""

    exponents: tuple[int, int, int, int]
    count: int

    def cstar(self) -> int:
        weights = (3, 1, -1, -3)
        return sum(e * w for e, w in zip(self.exponents, weights))


def invariant_generators() -> tuple[GeneratorFamily, ...]:
    """Generator families of the scaling-invariant subring: bilinear pairs
    across the middle summands, cubes of one middle block against the
    opposite extreme coordinate, and the product of the two extremes."""
    return (
        GeneratorFamily((0, 1, 1, 0), 9 * 9),
        GeneratorFamily((0, 3, 0, 1), comb(9 + 2, 3)),
        GeneratorFamily((1, 0, 3, 0), comb(9 + 2, 3)),
        GeneratorFamily((1, 0, 0, 1), 1),
    )


# ---------------------------------------------------------------------------
# weight-to-sheaf translation

@dataclass(frozen=True)
class SheafDescriptor:
    """A block-diagonal weight together with its (line bundle power,
    scaling grade) translation."""

    weight: Weight
    k: int
    n: int


def sheaf_correspondence(lam: Weight) -> SheafDescriptor:
    """Translate a block-diagonal weight (f1, f2, f1, f2) to (k, n).

    Additive, fixed by (1,0,1,0) -> (1,-1) and (0,1,0,1) -> (1,1); hence
    the doubled restricted roots (2,-1,2,-1) and (-1,2,-1,2) map to
    (1,-3) and (1,3).
    """
    f1, f2, f3, f4 = lam.coords
    if (f1, f2) != (f3, f4):
        raise ValueError(
            f"weight {lam.coords} is not block-diagonal (f1,f2,f1,f2)"
        )
    return SheafDescriptor(lam, f1 + f2, f2 - f1)


# ---------------------------------------------------------------------------
# serialization

def point_to_json(u: SubspacePoint) -> str:
    data = [
        [[x.numerator, x.denominator] for x in row] for row in u.rows
    ]
    return json.dumps({"rows": data})


def point_from_json(text: str) -> SubspacePoint:
    data = json.loads(text)
    rows = [
        [Fraction(num, den) for num, den in row] for row in data["rows"]
    ]
    return subspace_point(rows)
