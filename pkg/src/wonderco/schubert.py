"""Schubert cells of the 3-plane Grassmannian in a 6-space.

The ambient group is the rank-5 special linear group acting on a 6-space
split into two 3-blocks; the Grassmannian of 3-planes is its quotient by
the maximal parabolic at the middle node.  This module enumerates the 20
Borel orbits (cells), computes the inversion data K(w)/L(w)/J(w) entering
the local-cohomology character of a cell closure,

    e^{w w0(lam)} prod_{alpha in K} e^alpha / prod_{beta in J} (1 - e^beta)

with w0 the longest element of the parabolic's Weyl subgroup, expands that
character as a truncated series graded by the scaling cocharacter (twice
the middle fundamental coweight), and derives per-weight character bounds
for the two unstable strata of the split-block scaling action: the first
stratum is a cell closure, the second is its image under the block swap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .charring import (
    DEFAULT_HEIGHT_CUTOFF,
    Character,
    Grading,
    TruncatedSeries,
    add,
    expand_inverse,
    grade_project,
    multiply,
    restrict_window,
    series_of_weight,
    widen_window_down,
)
from .rootsys import (
    Root,
    Weight,
    WeylElement,
    act,
    build_root_system,
    coset_reps,
    longest_parabolic,
    root_to_weight,
)

__all__ = [
    "GRASS_SYSTEM",
    "LEVI",
    "CSTAR_GRADING",
    "SchubertCell",
    "InversionData",
    "enumerate_cells",
    "cell_for_fixed_point",
    "component_cell",
    "one_line",
    "closure_contains",
    "kl_sets",
    "cell_exponent",
    "kempf_character",
    "unstable_character_bounds",
    "cousin_terms",
    "grade_slice",
    "swap_blocks_weight",
]

GRASS_SYSTEM = build_root_system("A5")

# simple roots of the parabolic's Levi factor: everything but the middle node
LEVI = frozenset({1, 2, 4, 5})

# the scaling cocharacter (twice the middle fundamental coweight) evaluated
# on the fundamental weights
CSTAR_GRADING = Grading(GRASS_SYSTEM, (1, 2, 3, 2, 1))

_DIM = 9


@dataclass(frozen=True)
class SchubertCell:
    """A Borel orbit on the Grassmannian.

    ``fixed_point`` is the 3-subset of {1..6} spanning the torus-fixed
    coordinate plane of the cell (4..6 are the second-block lines);
    ``codim`` is 9 minus the cell dimension, and the closed point carries
    the identity with codimension 9.
    """

    w: WeylElement
    codim: int
    fixed_point: tuple[int, int, int]


@dataclass(frozen=True)
class InversionData:
    """Root data of a cell's local-cohomology character.

    ``K``: images of the parabolic-radical roots that stay positive;
    ``L``: sign-flipped images, recorded positively; ``J``: their union,
    the denominator of the character.
    """

    K: tuple[Root, ...]
    L: tuple[Root, ...]
    J: tuple[Root, ...]


def one_line(w: WeylElement) -> tuple[int, ...]:
    """The permutation of {1..6} given by the word, as images of 1..6."""
    perm = list(range(1, 7))
    for j in reversed(w.word):
        perm = [j + 1 if x == j else j if x == j + 1 else x for x in perm]
    return tuple(perm)


@lru_cache(maxsize=1)
def enumerate_cells() -> tuple[SchubertCell, ...]:
    """All 20 cells, in increasing dimension."""
    cells = []
    for w in coset_reps(GRASS_SYSTEM, LEVI):
        perm = one_line(w)
        fp = tuple(sorted(perm[:3]))
        cells.append(SchubertCell(w, _DIM - len(w), fp))
    return tuple(cells)


def cell_for_fixed_point(subset) -> SchubertCell:
    key = tuple(sorted(subset))
    for cell in enumerate_cells():
        if cell.fixed_point == key:
            return cell
    raise ValueError(f"{key} is not a 3-subset of {{1..6}}")


def component_cell(component: str) -> SchubertCell:
    """The cell whose closure is the first unstable stratum.

    The stratum consists of the planes meeting the first block in
    dimension at least 2; its fixed points are the 3-subsets with at least
    two entries in {1,2,3}, and the open cell sits at their maximum in the
    domination order.  Only the first stratum is a cell closure: the
    second is its image under the block swap, which does not normalize the
    Borel.
    """
    if component != "F1":
        raise ValueError(f"no cell closure for component {component!r}")
    best = max(
        (
            c.fixed_point
            for c in enumerate_cells()
            if sum(1 for i in c.fixed_point if i <= 3) >= 2
        ),
    )
    return cell_for_fixed_point(best)


def closure_contains(outer: SchubertCell, inner: SchubertCell) -> bool:
    """Whether the inner cell lies in the closure of the outer one.

    Componentwise domination of the sorted fixed-point subsets is the
    Bruhat order on these cosets.
    """
    return all(
        i <= o for i, o in zip(inner.fixed_point, outer.fixed_point)
    )


# ---------------------------------------------------------------------------
# inversion sets

@lru_cache(maxsize=1)
def _radical_roots() -> tuple[Root, ...]:
    """Positive roots outside the Levi: those with middle coefficient 1."""
    return tuple(
        r
        for r in GRASS_SYSTEM.positive_roots
        if r.coords[2] > 0
    )


def _check_minimal(w: WeylElement) -> None:
    for i in LEVI:
        image = act(w, Root(tuple(int(j + 1 == i) for j in range(5))))
        if any(c < 0 for c in image.coords):
            raise ValueError(
                "not a minimal coset representative: "
                f"word {w.word} inverts a Levi simple root"
            )


def _graded_lex(r: Root) -> tuple:
    return (sum(r.coords), tuple(-c for c in r.coords))


def kl_sets(w: WeylElement) -> InversionData:
    """Inversion data of a cell: how ``w`` moves the radical roots."""
    _check_minimal(w)
    kept, flipped = [], []
    for beta in _radical_roots():
        image = act(w, beta)
        if all(c >= 0 for c in image.coords):
            kept.append(image)
        else:
            flipped.append(Root(tuple(-c for c in image.coords)))
    return InversionData(
        tuple(sorted(kept, key=_graded_lex)),
        tuple(sorted(flipped, key=_graded_lex)),
        tuple(sorted(kept + flipped, key=_graded_lex)),
    )


# ---------------------------------------------------------------------------
# character series

@lru_cache(maxsize=1)
def _parabolic_longest() -> WeylElement:
    return longest_parabolic(GRASS_SYSTEM, LEVI)


def cell_exponent(w: WeylElement, k: int) -> Weight:
    """The exponent w w0(k varpi_3), w0 the Levi longest element."""
    lam = Weight(tuple(k * int(i == 2) for i in range(5)))
    return act(w * _parabolic_longest(), lam)


def _numerator(w: WeylElement, k: int) -> Weight:
    num = cell_exponent(w, k)
    for alpha in kl_sets(w).K:
        num = num + root_to_weight(GRASS_SYSTEM, alpha)
    return num


@lru_cache(maxsize=512)
def kempf_character(
    w: WeylElement,
    k: int,
    window: tuple[int, int],
    height_cutoff: int = DEFAULT_HEIGHT_CUTOFF,
) -> TruncatedSeries:
    """Local-cohomology character of a cell closure as a truncated series.

    The window is in scaling degrees.  Factors are expanded on a window
    reaching down to every base degree so products certify, then the
    result is cut back (and, when the requested floor lies below the
    support, soundly extended) to the requested window.  Results are
    cached; treat the returned series as read-only.
    """
    lo, hi = window
    data = kl_sets(w)
    base = CSTAR_GRADING.degree(_numerator(w, k))
    build_lo = min(0, lo, base)
    series = series_of_weight(
        GRASS_SYSTEM, CSTAR_GRADING, _numerator(w, k), (build_lo, hi), height_cutoff
    )
    # a negative numerator degree drags the product window down by the
    # same amount, so the expansions must certify correspondingly higher
    factor_hi = hi - min(0, base)
    for beta in data.J:
        series = multiply(
            series,
            expand_inverse(
                GRASS_SYSTEM, CSTAR_GRADING, beta, (build_lo, factor_hi), height_cutoff
            ),
        )
    if lo < series.window[0]:
        series = widen_window_down(series, lo)
    return restrict_window(series, window)


def swap_blocks_weight(mu: Weight) -> Weight:
    """Weight action of the block swap exchanging e_i and e*_i.

    As a permutation of the six coordinate lines it is the product of the
    longest Weyl element with the Levi longest element.
    """
    c = mu.coords
    eps = [sum(c[j:]) for j in range(5)] + [0]
    swapped = [eps[(i + 3) % 6] for i in range(6)]
    return Weight(tuple(swapped[i] - swapped[i + 1] for i in range(5)))


def _window_character(series: TruncatedSeries) -> Character:
    # every stored term of a restricted product survives the height and
    # degree pruning, so the read-off is exact on its support
    return Character(series.terms())


def unstable_character_bounds(
    component: str,
    k: int,
    window: tuple[int, int],
    height_cutoff: int = DEFAULT_HEIGHT_CUTOFF,
) -> tuple[Character, Character]:
    """Per-weight lower and upper bounds on an unstable-stratum character.

    The upper bound is the character of the covering cell closure; the
    lower bound subtracts the two boundary-cell characters and floors at
    zero.  The second stratum is handled through the block swap: its
    character at parameter k is the swapped image of the first stratum's
    at -k, so the window reverses.  Bounds are exact zero below the first
    stratum's degree floor and above the second's ceiling; elsewhere they
    are valid on weights within the height cutoff.
    """
    lo, hi = window
    if component == "F2":
        lower, upper = unstable_character_bounds(
            "F1", -k, (-hi, -lo), height_cutoff
        )
        return (
            lower.map_weights(swap_blocks_weight),
            upper.map_weights(swap_blocks_weight),
        )
    if component != "F1":
        raise ValueError(f"unknown component {component!r}")
    top = component_cell("F1")
    upper = _window_character(
        kempf_character(top.w, k, window, height_cutoff)
    )
    lower = upper
    for cell in enumerate_cells():
        if cell.codim == top.codim + 1 and closure_contains(top, cell):
            lower = lower - _window_character(
                kempf_character(cell.w, k, window, height_cutoff)
            )
    return lower.floor_zero(), upper


def cousin_terms(
    w: WeylElement,
    k: int,
    depth: int,
    window: tuple[int, int],
    height_cutoff: int = DEFAULT_HEIGHT_CUTOFF,
) -> tuple[TruncatedSeries, ...]:
    """Character series of the closure strata below a cell, by depth.

    Term j sums the characters of the cells of codimension codim(w)+j
    inside the closure of the cell of ``w``; the sequence stops early when
    no cells remain (depth 0 is the cell itself).
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    _check_minimal(w)
    lo, hi = window
    base_cell = next(c for c in enumerate_cells() if c.w == w)
    out = []
    for j in range(depth + 1):
        group = [
            c
            for c in enumerate_cells()
            if c.codim == base_cell.codim + j
            and closure_contains(base_cell, c)
        ]
        if not group:
            break
        build_lo = min(
            [0, lo]
            + [CSTAR_GRADING.degree(_numerator(c.w, k)) for c in group]
        )
        total = None
        for c in group:
            series = kempf_character(
                c.w, k, (build_lo, hi), height_cutoff
            )
            total = series if total is None else add(total, series)
        out.append(restrict_window(total, window))
    return tuple(out)


def grade_slice(series: TruncatedSeries, n: int) -> Character:
    """All terms of one scaling degree; errors outside the window."""
    return grade_project(series, n)
