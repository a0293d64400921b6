"""Character-ring arithmetic.

Finitely supported characters over a weight lattice, irreducible characters
via the Freudenthal recursion, and truncated expansions of products of
geometric series 1/(1 - e^beta).

A :class:`TruncatedSeries` represents

    e^{numerator_exponent} * prod e^{alpha} / prod_{beta in denominator} (1 - e^beta)

expanded over the cone ``numerator_exponent + N . denominator``.  Two
truncation axes keep it finite: a window of degrees under a fixed grading
cocharacter, and a cutoff on the height of the offset from the numerator
exponent.  Within the window, multiplicities of weights whose offset height
is at most the cutoff are exact; beyond the cutoff they are lower bounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .rootsys import (
    Root,
    RootSystem,
    Weight,
    dominant_representative,
    half_sum_positive,
    reflect_weight,
    root_inner,
    root_to_weight,
    weight_to_root,
)

__all__ = [
    "Character",
    "Grading",
    "TruncatedSeries",
    "TruncationError",
    "weyl_character",
    "weyl_dimension",
    "expand_inverse",
    "multiply",
    "add",
    "restrict_window",
    "widen_window_down",
    "grade_project",
    "series_unit",
    "series_of_weight",
]


class TruncationError(Exception):
    """A query fell outside the certified region of a truncated object."""


# ---------------------------------------------------------------------------
# characters

class Character:
    """A finitely supported integer combination of formal exponentials e^mu."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Weight, int] | None = None):
        self.terms: dict[Weight, int] = {
            w: m for w, m in (terms or {}).items() if m != 0
        }

    @staticmethod
    def of_weight(w: Weight, mult: int = 1) -> "Character":
        return Character({w: mult})

    def __eq__(self, other) -> bool:
        return isinstance(other, Character) and self.terms == other.terms

    def __hash__(self):  # pragma: no cover - characters are not hashed
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "Character") -> "Character":
        out = dict(self.terms)
        for w, m in other.terms.items():
            out[w] = out.get(w, 0) + m
        return Character(out)

    def __sub__(self, other: "Character") -> "Character":
        out = dict(self.terms)
        for w, m in other.terms.items():
            out[w] = out.get(w, 0) - m
        return Character(out)

    def __mul__(self, other: "Character") -> "Character":
        out: dict[Weight, int] = {}
        for w1, m1 in self.terms.items():
            for w2, m2 in other.terms.items():
                key = w1 + w2
                out[key] = out.get(key, 0) + m1 * m2
        return Character(out)

    def dual(self) -> "Character":
        """The character of the dual module: negated support."""
        return Character({-w: m for w, m in self.terms.items()})

    def multiplicity(self, w: Weight) -> int:
        return self.terms.get(w, 0)

    def dimension(self) -> int:
        return sum(self.terms.values())

    def floor_zero(self) -> "Character":
        return Character({w: m for w, m in self.terms.items() if m > 0})

    def map_weights(self, f) -> "Character":
        out: dict[Weight, int] = {}
        for w, m in self.terms.items():
            key = f(w)
            out[key] = out.get(key, 0) + m
        return Character(out)

    def support(self) -> set[Weight]:
        return set(self.terms)

    def sorted_items(self) -> list[tuple[Weight, int]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].coords)

    def to_tsv(self) -> str:
        lines = [
            ",".join(str(c) for c in w.coords) + "\t" + str(m)
            for w, m in self.sorted_items()
        ]
        return "\n".join(lines)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Character({len(self.terms)} terms, dim {self.dimension()})"


# ---------------------------------------------------------------------------
# invariant bilinear form on weights (wraps the root-coordinate form)
#
# With d the symmetrizer, (fundamental_i, alpha_j) = d_j delta_ij, so pairing
# a weight in fundamental coordinates against a vector in root coordinates is
# a single weighted dot product; no change of basis is needed.

@lru_cache(maxsize=None)
def _root_lengths(system: RootSystem) -> tuple[Fraction, ...]:
    return tuple(
        root_inner(
            system,
            tuple(1 if j == i else 0 for j in range(system.rank)),
            tuple(1 if j == i else 0 for j in range(system.rank)),
        )
        / 2
        for i in range(system.rank)
    )


@lru_cache(maxsize=None)
def _fund_gram(system: RootSystem) -> tuple[tuple[Fraction, ...], ...]:
    d = _root_lengths(system)
    rows = [
        weight_to_root(
            system, Weight(tuple(1 if j == i else 0 for j in range(system.rank)))
        )
        for i in range(system.rank)
    ]
    return tuple(
        tuple(rows[i][j] * d[j] for j in range(system.rank))
        for i in range(system.rank)
    )


def _form(system: RootSystem, x: Weight, y: Weight) -> Fraction:
    gram = _fund_gram(system)
    total = Fraction(0)
    for i in range(system.rank):
        if x.coords[i]:
            row = gram[i]
            for j in range(system.rank):
                if y.coords[j]:
                    total += x.coords[i] * y.coords[j] * row[j]
    return total


def _form_weight_root(system: RootSystem, x: Weight, beta: Root) -> Fraction:
    d = _root_lengths(system)
    return sum(
        (
            x.coords[j] * d[j] * beta.coords[j]
            for j in range(system.rank)
            if x.coords[j] and beta.coords[j]
        ),
        Fraction(0),
    )


# ---------------------------------------------------------------------------
# irreducible characters

def _dominant_below(system: RootSystem, lam: Weight) -> list[Weight]:
    """Dominant weights mu with lam - mu a nonnegative root-lattice vector,
    ordered by increasing height of lam - mu.

    Every such mu satisfies lam - mu <= lam - w0(lam) coordinatewise in
    simple-root coordinates, so scanning that box is complete.
    """
    lowest = -dominant_representative(system, -lam)
    box = weight_to_root(system, lam - lowest)
    assert all(c.denominator == 1 and c >= 0 for c in box)
    n = system.rank
    cartan = system.cartan
    found: list[tuple[int, tuple[int, ...]]] = []
    for combo in itertools.product(*(range(int(c) + 1) for c in box)):
        coords = tuple(
            lam.coords[i]
            - sum(cartan[i][j] * combo[j] for j in range(n) if combo[j])
            for i in range(n)
        )
        if all(c >= 0 for c in coords):
            found.append((sum(combo), coords))
    return [Weight(c) for _, c in sorted(found)]


@lru_cache(maxsize=None)
def _orbit(system: RootSystem, mu: Weight) -> frozenset[Weight]:
    seen = {mu}
    frontier = [mu]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(1, system.rank + 1):
                img = reflect_weight(system, i, w)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return frozenset(seen)


def weyl_character(system: RootSystem, lam: Weight) -> Character:
    """Character of the irreducible module with highest weight ``lam``.

    Multiplicities come from the Freudenthal recursion,

        ((lam+rho, lam+rho) - (mu+rho, mu+rho)) m(mu)
            = 2 sum_{alpha > 0} sum_{k >= 1} m(mu + k alpha) (mu + k alpha, alpha),

    evaluated on dominant weights in decreasing order and spread over Weyl
    orbits.  Works uniformly for product systems.
    """
    if not lam.is_dominant():
        raise ValueError(f"highest weight {lam.coords} is not dominant")
    rho = half_sum_positive(system)
    lam_norm = _form(system, lam + rho, lam + rho)
    mult: dict[Weight, int] = {}
    dominants = _dominant_below(system, lam)
    for mu in dominants:
        if mu == lam:
            mult[mu] = 1
            continue
        total = Fraction(0)
        for alpha in system.positive_roots:
            alpha_w = root_to_weight(system, alpha)
            k = 1
            while True:
                nu = mu + alpha_w.scale(k)
                nu_plus = dominant_representative(system, nu)
                m = mult.get(nu_plus)
                if m is None:
                    # nu is above lam or outside the support: every further k
                    # only moves higher along alpha, so stop scanning
                    diff = weight_to_root(system, lam - nu_plus)
                    if any(x < 0 or x.denominator != 1 for x in diff):
                        break
                    m = 0
                if m:
                    total += 2 * m * _form_weight_root(system, nu, alpha)
                k += 1
        denom = lam_norm - _form(system, mu + rho, mu + rho)
        if total == 0:
            m_mu = 0
        else:
            m_mu = total / denom
            assert m_mu.denominator == 1 and m_mu > 0, (lam, mu, m_mu)
            m_mu = int(m_mu)
        if m_mu:
            mult[mu] = m_mu
    out: dict[Weight, int] = {}
    for mu, m in mult.items():
        for w in _orbit(system, mu):
            out[w] = m
    return Character(out)


def weyl_dimension(system: RootSystem, lam: Weight) -> int:
    """dim of the irreducible with highest weight lam, by the product formula."""
    if not lam.is_dominant():
        raise ValueError(f"highest weight {lam.coords} is not dominant")
    rho = half_sum_positive(system)
    num = Fraction(1)
    for alpha in system.positive_roots:
        num *= _form_weight_root(system, lam + rho, alpha) / _form_weight_root(
            system, rho, alpha
        )
    assert num.denominator == 1
    return int(num)


# ---------------------------------------------------------------------------
# gradings

@dataclass(frozen=True)
class Grading:
    """An integer grading cocharacter, recorded by its values on the
    fundamental weights."""

    system: RootSystem
    values: tuple[int, ...]

    def degree(self, w: Weight) -> int:
        return sum(v * c for v, c in zip(self.values, w.coords))

    def root_degree(self, r: Root) -> int:
        c = self.system.cartan
        return sum(
            self.values[i] * c[i][j] * r.coords[j]
            for i in range(self.system.rank)
            for j in range(self.system.rank)
            if r.coords[j] and c[i][j]
        )


# ---------------------------------------------------------------------------
# truncated series

class TruncatedSeries:
    """Windowed expansion of a cone series; see the module docstring.

    Internally terms are keyed by the offset ``mu - numerator_exponent`` in
    simple-root coordinates; all offsets lie in the nonnegative cone spanned
    by the denominator roots.
    """

    __slots__ = (
        "system",
        "grading",
        "numerator_exponent",
        "denominator",
        "window",
        "height_cutoff",
        "offsets",
    )

    def __init__(
        self,
        system: RootSystem,
        grading: Grading,
        numerator_exponent: Weight,
        denominator: tuple[Root, ...],
        window: tuple[int, int],
        height_cutoff: int,
        offsets: dict[tuple[int, ...], int],
    ):
        if window[0] > window[1]:
            raise ValueError(f"empty window {window}")
        self.system = system
        self.grading = grading
        self.numerator_exponent = numerator_exponent
        self.denominator = tuple(sorted(denominator, key=lambda r: r.coords))
        self.window = window
        self.height_cutoff = height_cutoff
        self.offsets = offsets

    # -- bookkeeping helpers

    def base_degree(self) -> int:
        return self.grading.degree(self.numerator_exponent)

    def weight_of(self, offset: tuple[int, ...]) -> Weight:
        shift = Weight(
            tuple(
                sum(
                    self.system.cartan[i][j] * offset[j]
                    for j in range(self.system.rank)
                )
                for i in range(self.system.rank)
            )
        )
        return self.numerator_exponent + shift

    def _offset_degrees(self) -> dict[tuple[int, ...], int]:
        """Degree of each stored term, computed linearly in the offset."""
        n = self.system.rank
        cartan = self.system.cartan
        values = self.grading.values
        per_root = tuple(
            sum(values[i] * cartan[i][j] for i in range(n)) for j in range(n)
        )
        base = self.base_degree()
        return {
            o: base + sum(d * x for d, x in zip(per_root, o) if x)
            for o in self.offsets
        }

    def offset_of(self, w: Weight) -> tuple[Fraction, ...]:
        return weight_to_root(self.system, w - self.numerator_exponent)

    def terms(self) -> dict[Weight, int]:
        return {self.weight_of(o): m for o, m in self.offsets.items()}

    def is_certified(self, w: Weight) -> bool:
        """True when the stored multiplicity of ``w`` is exact: integral
        offset of height at most the cutoff, degree inside the window."""
        d = self.grading.degree(w)
        if not self.window[0] <= d <= self.window[1]:
            return False
        off = self.offset_of(w)
        if any(x.denominator != 1 for x in off):
            return True  # off-lattice weights never occur: zero is exact
        return sum(x for x in off) <= self.height_cutoff

    def multiplicity(self, w: Weight) -> int:
        off = self.offset_of(w)
        if any(x.denominator != 1 for x in off):
            return 0
        key = tuple(int(x) for x in off)
        return self.offsets.get(key, 0)

    def min_degree(self) -> int | None:
        degs = self._offset_degrees().values()
        return min(degs) if degs else None

    def max_degree(self) -> int | None:
        degs = self._offset_degrees().values()
        return max(degs) if degs else None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.system == other.system
            and self.grading == other.grading
            and self.window == other.window
            and self.height_cutoff == other.height_cutoff
            and self.terms() == other.terms()
        )

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return (
            f"TruncatedSeries({len(self.offsets)} terms, window {self.window}, "
            f"H {self.height_cutoff})"
        )


DEFAULT_HEIGHT_CUTOFF = 12


def series_unit(
    system: RootSystem,
    grading: Grading,
    window: tuple[int, int],
    height_cutoff: int = DEFAULT_HEIGHT_CUTOFF,
) -> TruncatedSeries:
    """The series e^0."""
    return series_of_weight(
        system, grading, Weight((0,) * system.rank), window, height_cutoff
    )


def series_of_weight(
    system: RootSystem,
    grading: Grading,
    w: Weight,
    window: tuple[int, int],
    height_cutoff: int = DEFAULT_HEIGHT_CUTOFF,
) -> TruncatedSeries:
    """The one-term series e^w."""
    zero = (0,) * system.rank
    d = grading.degree(w)
    offsets = {zero: 1} if window[0] <= d <= window[1] else {}
    return TruncatedSeries(system, grading, w, (), window, height_cutoff, offsets)


def expand_inverse(
    system: RootSystem,
    grading: Grading,
    beta: Root,
    window: tuple[int, int],
    height_cutoff: int | None = None,
) -> TruncatedSeries:
    """Geometric series sum_{k>=0} e^{k beta} for a positive root ``beta``.

    A strictly positive degree bounds the expansion by the window alone; a
    zero or negative degree needs the explicit height cutoff (each step adds
    at least one unit of height, so the cutoff keeps the sum finite).
    """
    if any(c < 0 for c in beta.coords):
        raise ValueError(f"{beta.coords} is not a positive root")
    deg = grading.root_degree(beta)
    if height_cutoff is None:
        if deg <= 0:
            raise ValueError(
                f"root {beta.coords} has degree {deg} <= 0; "
                "an explicit height cutoff is required"
            )
        height_cutoff = DEFAULT_HEIGHT_CUTOFF
    ht = sum(beta.coords)
    offsets: dict[tuple[int, ...], int] = {}
    k = 0
    while k * ht <= height_cutoff and (deg <= 0 or k * deg <= window[1]):
        if window[0] <= k * deg <= window[1]:
            offsets[tuple(k * c for c in beta.coords)] = 1
        k += 1
    return TruncatedSeries(
        system,
        grading,
        Weight((0,) * system.rank),
        (beta,),
        window,
        height_cutoff,
        offsets,
    )


def multiply(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Product of two cone series.

    A retained weight of the product is exact only if every splitting of it
    lands inside both factors' windows and height cutoffs, so the product
    window tops out at ``min`` over factors of (own top + partner's base
    degree).  Both factor windows must reach down to their own base degree,
    and negative-degree denominators are not supported here: with them no
    degree window certifies a product (certification would be height-only).
    """
    if a.system != b.system:
        raise ValueError("mismatched lattices")
    if a.grading != b.grading:
        raise ValueError("mismatched gradings")
    floors = []
    for s in (a, b):
        if any(s.grading.root_degree(r) < 0 for r in s.denominator):
            raise ValueError("negative-degree denominator root in a product")
        # a sum of series can carry terms below its own base degree; the
        # true floor is the lowest degree any term can have
        floor = s.base_degree()
        if s.offsets:
            floor = min(floor, s.min_degree())
        if s.window[0] > floor:
            raise ValueError(
                f"factor window {s.window} clips its degree floor "
                f"{floor}; product would be uncertifiable"
            )
        floors.append(floor)
    system = a.system
    n = system.rank
    cutoff = min(a.height_cutoff, b.height_cutoff)
    base = a.numerator_exponent + b.numerator_exponent
    d_max = min(a.window[1] + floors[1], b.window[1] + floors[0])
    window = (min(floors[0] + floors[1], d_max), d_max)

    out: dict[tuple[int, ...], int] = {}
    deg_a = a._offset_degrees()
    deg_b = b._offset_degrees()
    height_b = {ob: sum(ob) for ob in b.offsets}
    top = window[1]
    for oa, ma in a.offsets.items():
        ha = sum(oa)
        da = deg_a[oa]
        for ob, mb in b.offsets.items():
            if ha + height_b[ob] > cutoff or da + deg_b[ob] > top:
                continue
            key = tuple(x + y for x, y in zip(oa, ob))
            out[key] = out.get(key, 0) + ma * mb
    return TruncatedSeries(
        system,
        a.grading,
        base,
        a.denominator + b.denominator,
        window,
        cutoff,
        out,
    )


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Sum of two series sharing a window.

    The terms of ``b`` are rebased onto ``a``'s numerator exponent, which
    must differ from ``b``'s by a root-lattice vector.  Both windows must
    reach down to both base degrees, so the sum is complete from its true
    degree floor and stays a valid ``multiply`` factor.  The height cutoff
    shrinks so that a height certified against the common base is certified
    in both summands.
    """
    if a.system != b.system:
        raise ValueError("mismatched lattices")
    if a.grading != b.grading:
        raise ValueError("mismatched gradings")
    if a.window != b.window:
        raise ValueError(f"mismatched windows {a.window} and {b.window}")
    if a.window[0] > min(a.base_degree(), b.base_degree()):
        raise ValueError(
            "window floor above a summand's base degree; "
            "sum would be uncertifiable"
        )
    delta = weight_to_root(
        a.system, b.numerator_exponent - a.numerator_exponent
    )
    if any(x.denominator != 1 for x in delta):
        raise ValueError(
            "numerator exponents differ by a non-root-lattice vector"
        )
    shift = tuple(int(x) for x in delta)
    n = a.system.rank
    cutoff = min(a.height_cutoff, b.height_cutoff + sum(shift))
    out = dict(a.offsets)
    for ob, m in b.offsets.items():
        key = tuple(ob[i] + shift[i] for i in range(n))
        out[key] = out.get(key, 0) + m
    return TruncatedSeries(
        a.system,
        a.grading,
        a.numerator_exponent,
        tuple(set(a.denominator) | set(b.denominator)),
        a.window,
        cutoff,
        out,
    )


def restrict_window(s: TruncatedSeries, window: tuple[int, int]) -> TruncatedSeries:
    """Shrink the certified window, dropping terms outside it."""
    if not (s.window[0] <= window[0] and window[1] <= s.window[1]):
        raise TruncationError(
            f"window {window} is not contained in the certified "
            f"window {s.window}"
        )
    degrees = s._offset_degrees()
    kept = {
        o: m
        for o, m in s.offsets.items()
        if window[0] <= degrees[o] <= window[1]
    }
    return TruncatedSeries(
        s.system,
        s.grading,
        s.numerator_exponent,
        s.denominator,
        window,
        s.height_cutoff,
        kept,
    )


def widen_window_down(s: TruncatedSeries, new_low: int) -> TruncatedSeries:
    """Extend the certified window downward without recomputation.

    Sound only when nothing can live below the current floor: every
    denominator root must have nonnegative degree and the floor must not
    exceed the base degree, so the added range is exactly zero.
    """
    if new_low > s.window[0]:
        raise ValueError(
            f"new floor {new_low} is above the current window {s.window}"
        )
    if any(s.grading.root_degree(r) < 0 for r in s.denominator):
        raise ValueError(
            "negative-degree denominator roots put terms below the floor"
        )
    if s.window[0] > s.base_degree():
        raise ValueError(
            f"window {s.window} starts above the base degree "
            f"{s.base_degree()}; the gap below is not known to be empty"
        )
    return TruncatedSeries(
        s.system,
        s.grading,
        s.numerator_exponent,
        s.denominator,
        (new_low, s.window[1]),
        s.height_cutoff,
        dict(s.offsets),
    )


def grade_project(s: TruncatedSeries, n: int) -> Character:
    """All terms of degree exactly ``n``; raises outside the window."""
    if not s.window[0] <= n <= s.window[1]:
        raise TruncationError(
            f"degree {n} outside certified window {s.window}; "
            "re-run with a wider truncation"
        )
    out: dict[Weight, int] = {}
    degrees = s._offset_degrees()
    for off, m in s.offsets.items():
        if degrees[off] == n:
            w = s.weight_of(off)
            out[w] = out.get(w, 0) + m
    return Character(out)
