"""Root systems, Weyl groups, weights, and parabolic coset combinatorics.

Conventions used throughout the package:

* ``Root`` coordinates are integers in the simple-root basis.
* ``Weight`` coordinates are integers in the fundamental-weight basis.
* The Cartan matrix is indexed so that ``cartan[i][j] = <alpha_j, alpha_i_vee>``;
  consequently the fundamental coordinates of a root are ``C @ root_coords``
  and column ``j`` of ``C`` is ``alpha_j`` written in fundamental coordinates.
* Simple-root indices in the public API are 1-based (``s_1 .. s_rank``).

Everything is an immutable value; all operations are pure functions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Root",
    "Weight",
    "RootSystem",
    "WeylElement",
    "build_root_system",
    "pairing",
    "act",
    "coset_reps",
    "dominant_conjugate",
    "half_sum_positive",
    "simple_root",
    "fundamental_weight",
    "root_to_weight",
    "weight_to_root",
    "reflect_root",
    "reflect_weight",
    "weyl_element",
    "identity_element",
    "longest_parabolic",
    "weyl_group_order",
    "root_height",
    "root_inner",
    "coroot_pairing",
    "system_to_dict",
    "weight_from_json",
]


@dataclass(frozen=True)
class Root:
    """A root, stored in simple-root coordinates."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    def __add__(self, other: "Root") -> "Root":
        return Root(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Root") -> "Root":
        return Root(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Root":
        return Root(tuple(-a for a in self.coords))

    def is_positive(self) -> bool:
        return any(self.coords) and all(c >= 0 for c in self.coords)

    def is_negative(self) -> bool:
        return any(self.coords) and all(c <= 0 for c in self.coords)


@dataclass(frozen=True)
class Weight:
    """A weight, stored in fundamental-weight coordinates."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def scale(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.coords))

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def is_strictly_dominant(self) -> bool:
        return all(c > 0 for c in self.coords)


@dataclass(frozen=True, eq=False)
class RootSystem:
    """A finite crystallographic root system.

    ``positive_roots`` is sorted graded-lexicographically on simple-root
    coordinates, which fixes the order of every exposed sequence.  Systems
    appear as cache keys throughout, so the structural hash is computed once
    up front.
    """

    type_label: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "_hash",
            hash((self.type_label, self.rank, self.cartan, self.positive_roots)),
        )

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (
            isinstance(other, RootSystem)
            and self.type_label == other.type_label
            and self.rank == other.rank
            and self.cartan == other.cartan
            and self.positive_roots == other.positive_roots
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"RootSystem({self.type_label})"


# ---------------------------------------------------------------------------
# construction

_CLASSICAL_COUNTS = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "E": {6: 72, 7: 126, 8: 240},
    "F": {4: 48},
    "G": {2: 12},
}

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3, "E": 6, "F": 4, "G": 2}
_MAX_RANK = {"E": 8, "F": 4, "G": 2}


def _simple_cartan(series: str, rank: int) -> list[list[int]]:
    if series not in _MIN_RANK:
        raise ValueError(f"unknown series {series!r}")
    if rank < _MIN_RANK[series] or rank > _MAX_RANK.get(series, 10**9):
        raise ValueError(f"invalid rank {rank} for series {series}")
    c = [[2 * (i == j) for j in range(rank)] for i in range(rank)]

    def bond(i: int, j: int, down: int = -1, up: int = -1) -> None:
        c[i][j] = down
        c[j][i] = up

    if series in ("A", "B", "C"):
        for i in range(rank - 1):
            bond(i, i + 1)
        if series == "B" and rank >= 2:
            # alpha_rank is short: <alpha_{r-1}, alpha_r_vee> = -2
            c[rank - 1][rank - 2] = -2
        if series == "C":
            # alpha_rank is long: <alpha_r, alpha_{r-1}_vee> = -2
            c[rank - 2][rank - 1] = -2
    elif series == "D":
        for i in range(rank - 2):
            bond(i, i + 1)
        bond(rank - 3, rank - 1)
    elif series == "E":
        # Bourbaki numbering: chain 1-3-4-5-6(-7-8), node 2 hangs off node 4.
        chain = [1, 3, 4, 5, 6, 7, 8][: rank - 1]
        for a, b in zip(chain, chain[1:]):
            bond(a - 1, b - 1)
        bond(2 - 1, 4 - 1)
    elif series == "F":
        bond(0, 1)
        bond(2, 3)
        # middle double bond, alpha_3 short
        c[1][2] = -1
        c[2][1] = -2
    elif series == "G":
        # alpha_1 short, alpha_2 long
        c[0][1] = -3
        c[1][0] = -1
    return c


def _parse_label(type_label: str, rank: int | None) -> list[tuple[str, int]]:
    """Parse ``("A", 5)``, ``("A5", None)`` or ``("A2xA2", None)`` forms."""
    if rank is not None:
        return [(type_label, rank)]
    factors = []
    for part in type_label.split("x"):
        part = part.strip()
        if len(part) < 2 or not part[0].isalpha() or not part[1:].isdigit():
            raise ValueError(f"malformed type label {part!r}")
        factors.append((part[0].upper(), int(part[1:])))
    return factors


def _close_under_reflections(cartan: list[list[int]]) -> list[tuple[int, ...]]:
    rank = len(cartan)
    simples = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    roots: set[tuple[int, ...]] = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(rank):
                p = sum(cartan[i][j] * beta[j] for j in range(rank))
                img = tuple(
                    beta[j] - (p if j == i else 0) for j in range(rank)
                )
                if img not in roots:
                    roots.add(img)
                    nxt.append(img)
        frontier = nxt
    return [r for r in roots if all(c >= 0 for c in r)]


@lru_cache(maxsize=None)
def build_root_system(type_label: str, rank: int | None = None) -> RootSystem:
    """Build a root system by reflection closure from its simple roots.

    Accepts either a series letter plus rank (``build_root_system("A", 5)``),
    a combined label (``"A5"``), or a product label (``"A2xA2"``) whose
    factors are laid out block-diagonally.  Repeated calls with the same
    label return the same instance, which keeps cache keys cheap everywhere
    downstream.
    """
    factors = _parse_label(type_label, rank)
    blocks = [_simple_cartan(series, r) for series, r in factors]
    total = sum(len(b) for b in blocks)
    cartan = [[0] * total for _ in range(total)]
    offset = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                cartan[offset + i][offset + j] = v
        offset += len(b)

    # graded-lex order: by height, then with earlier simple coords dominating,
    # so the simple roots appear first and in index order
    positive = _close_under_reflections(cartan)
    positive.sort(key=lambda r: (sum(r), tuple(-c for c in r)))
    label = "x".join(f"{s}{r}" for s, r in factors)

    expected = 0
    for series, r in factors:
        rule = _CLASSICAL_COUNTS[series]
        expected += rule[r] if isinstance(rule, dict) else rule(r)
    if 2 * len(positive) != expected:
        raise AssertionError(
            f"root count {2 * len(positive)} != classical count {expected} for {label}"
        )

    return RootSystem(
        type_label=label,
        rank=total,
        cartan=tuple(tuple(row) for row in cartan),
        positive_roots=tuple(Root(r) for r in positive),
    )


# ---------------------------------------------------------------------------
# cached per-system lookups

@lru_cache(maxsize=None)
def _root_set(system: RootSystem) -> frozenset[tuple[int, ...]]:
    out = set()
    for r in system.positive_roots:
        out.add(r.coords)
        out.add((-r).coords)
    return frozenset(out)


def all_roots(system: RootSystem) -> frozenset[tuple[int, ...]]:
    return _root_set(system)


def is_root(system: RootSystem, root: Root) -> bool:
    return root.coords in _root_set(system)


@lru_cache(maxsize=None)
def _reflection_matrix(system: RootSystem, i: int) -> tuple[tuple[int, ...], ...]:
    """Matrix of s_i acting on simple-root coordinates (columns are images)."""
    n = system.rank
    c = system.cartan
    return tuple(
        tuple(
            (1 if k == j else 0) - (c[i - 1][j] if k == i - 1 else 0)
            for j in range(n)
        )
        for k in range(n)
    )


def root_height(root: Root) -> int:
    return sum(root.coords)


def simple_root(system: RootSystem, i: int) -> Root:
    if not 1 <= i <= system.rank:
        raise IndexError(f"simple index {i} out of range 1..{system.rank}")
    return Root(tuple(int(j == i - 1) for j in range(system.rank)))


def fundamental_weight(system: RootSystem, i: int) -> Weight:
    if not 1 <= i <= system.rank:
        raise IndexError(f"simple index {i} out of range 1..{system.rank}")
    return Weight(tuple(int(j == i - 1) for j in range(system.rank)))


def root_to_weight(system: RootSystem, root: Root) -> Weight:
    """Fundamental coordinates of a root: ``C @ root_coords``."""
    c = system.cartan
    return Weight(
        tuple(
            sum(c[i][j] * root.coords[j] for j in range(system.rank))
            for i in range(system.rank)
        )
    )


@lru_cache(maxsize=None)
def _cartan_inverse(system: RootSystem) -> tuple[tuple[Fraction, ...], ...]:
    n = system.rank
    aug = [
        [Fraction(system.cartan[i][j]) for j in range(n)]
        + [Fraction(1 if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return tuple(tuple(aug[i][n:]) for i in range(n))


def weight_to_root(system: RootSystem, weight: Weight) -> tuple[Fraction, ...]:
    """Simple-root coordinates of a weight (exact, possibly non-integral).

    The coordinate vector solves cartan @ x = coords, evaluated with the
    cached inverse of the Cartan matrix.
    """
    n = system.rank
    inv = _cartan_inverse(system)
    return tuple(
        sum(
            (inv[i][j] * weight.coords[j] for j in range(n) if weight.coords[j]),
            Fraction(0),
        )
        for i in range(n)
    )


def pairing(system: RootSystem, x: Root | Weight, i: int) -> int:
    """Evaluate ``<x, alpha_i_vee>``.

    For a weight this is its i-th fundamental coordinate; for a root it is
    row i of the Cartan matrix applied to the root's coordinates.
    """
    if not 1 <= i <= system.rank:
        raise IndexError(f"simple index {i} out of range 1..{system.rank}")
    if isinstance(x, Weight):
        return x.coords[i - 1]
    c = system.cartan[i - 1]
    return sum(c[j] * x.coords[j] for j in range(system.rank))


def reflect_root(system: RootSystem, i: int, root: Root) -> Root:
    p = pairing(system, root, i)
    coords = list(root.coords)
    coords[i - 1] -= p
    return Root(tuple(coords))


def reflect_weight(system: RootSystem, i: int, weight: Weight) -> Weight:
    p = weight.coords[i - 1]
    alpha_fund = tuple(system.cartan[k][i - 1] for k in range(system.rank))
    return Weight(tuple(w - p * a for w, a in zip(weight.coords, alpha_fund)))


# ---------------------------------------------------------------------------
# Weyl elements

def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _identity_matrix(n: int):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _word_matrix(system: RootSystem, word: tuple[int, ...]):
    """Action matrix on simple-root coordinates; word applies right to left."""
    m = _identity_matrix(system.rank)
    for i in word:
        m = _mat_mul(m, _reflection_matrix(system, i))
    return m


def _word_from_matrices(system: RootSystem, m, minv) -> tuple[int, ...]:
    """Lexicographically least reduced word, by greedy left-descent stripping.

    ``i`` is a left descent of w exactly when w^{-1}(alpha_i) is negative;
    stripping the smallest such descent at every step yields the lex-least
    reduced word for w.  ``m``/``minv`` are the simple-root-coordinate action
    matrices of w and its inverse.
    """
    n = system.rank
    ident = _identity_matrix(n)
    out: list[int] = []
    while m != ident:
        for i in range(1, n + 1):
            if all(minv[k][i - 1] <= 0 for k in range(n)):
                out.append(i)
                s = _reflection_matrix(system, i)
                m = _mat_mul(s, m)
                minv = _mat_mul(minv, s)
                break
        else:  # pragma: no cover - would mean a non-identity element with no descent
            raise AssertionError("no left descent found for non-identity element")
    return tuple(out)


def _canonicalize(system: RootSystem, word: tuple[int, ...]) -> tuple[int, ...]:
    n = system.rank
    for i in word:
        if not 1 <= i <= n:
            raise IndexError(f"simple index {i} out of range 1..{n}")
    m = _word_matrix(system, word)
    minv = _word_matrix(system, tuple(reversed(word)))
    return _word_from_matrices(system, m, minv)


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element, stored as its canonical reduced word.

    The canonical form is the lexicographically least reduced word, so word
    equality is element equality; ``len(word)`` is the Coxeter length.
    """

    system: RootSystem
    word: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.word)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if self.system != other.system:
            raise ValueError("mismatched root systems")
        return weyl_element(self.system, self.word + other.word)

    def inverse(self) -> "WeylElement":
        return weyl_element(self.system, tuple(reversed(self.word)))


def weyl_element(system: RootSystem, word: tuple[int, ...] | list[int]) -> WeylElement:
    return WeylElement(system, _canonicalize(system, tuple(word)))


def identity_element(system: RootSystem) -> WeylElement:
    return WeylElement(system, ())


def act(w: WeylElement, x: Root | Weight):
    """Apply a Weyl element; the word acts right to left on x."""
    system = w.system
    if isinstance(x, Root):
        for i in reversed(w.word):
            x = reflect_root(system, i, x)
        return x
    for i in reversed(w.word):
        x = reflect_weight(system, i, x)
    return x


def longest_parabolic(system: RootSystem, subset: frozenset[int] | set[int]) -> WeylElement:
    """Longest element of the parabolic subgroup generated by ``subset``."""
    sub = set(subset)
    for i in sub:
        if not 1 <= i <= system.rank:
            raise IndexError(f"simple index {i} out of range 1..{system.rank}")
    # Send the subset-supported regular weight to its antidominant conjugate.
    v = Weight(tuple(1 if (j + 1) in sub else 0 for j in range(system.rank)))
    word: list[int] = []
    while True:
        i = next((i for i in sorted(sub) if v.coords[i - 1] > 0), None)
        if i is None:
            break
        v = reflect_weight(system, i, v)
        word.append(i)
    return weyl_element(system, tuple(reversed(word)))


def coset_reps(
    system: RootSystem, parabolic_subset: frozenset[int] | set[int]
) -> tuple[WeylElement, ...]:
    """Minimal-length representatives of W / W_P, sorted by length then word.

    w is the minimal element of its coset exactly when it keeps every simple
    root of the parabolic positive.  The set of minimal representatives is
    closed downward under the left weak order, so a breadth-first closure
    from the identity under length-increasing left multiplications finds all
    of them.
    """
    n = system.rank
    sub = sorted(set(parabolic_subset))
    for i in sub:
        if not 1 <= i <= n:
            raise IndexError(f"simple index {i} out of range 1..{n}")

    def col_positive(mat, j: int) -> bool:
        return all(mat[k][j - 1] >= 0 for k in range(n))

    ident = _identity_matrix(n)
    seen = {ident}
    frontier = [(ident, ident)]
    elements = [ident]
    inverses = {ident: ident}
    while frontier:
        nxt = []
        for m, minv in frontier:
            for i in range(1, n + 1):
                # s_i * w is longer exactly when w^{-1}(alpha_i) is positive
                if not col_positive(minv, i):
                    continue
                s = _reflection_matrix(system, i)
                nm = _mat_mul(s, m)
                if nm in seen:
                    continue
                if not all(col_positive(nm, j) for j in sub):
                    continue
                nminv = _mat_mul(minv, s)
                seen.add(nm)
                elements.append(nm)
                inverses[nm] = nminv
                nxt.append((nm, nminv))
        frontier = nxt
    reps = [
        WeylElement(system, _word_from_matrices(system, m, inverses[m]))
        for m in elements
    ]
    return tuple(sorted(reps, key=lambda w: (len(w), w.word)))


def weyl_group_order(system: RootSystem) -> int:
    """Order of the Weyl group, counted by exhaustive word closure."""
    return len(coset_reps(system, set()))


@lru_cache(maxsize=None)
def dominant_representative(system: RootSystem, mu: Weight) -> Weight:
    """Dominant representative of a weight's Weyl orbit.

    Same descent as :func:`dominant_conjugate` but without constructing the
    moving element, for callers that only need the chamber representative.
    """
    v = mu
    while True:
        i = next((j + 1 for j, c in enumerate(v.coords) if c < 0), None)
        if i is None:
            return v
        v = reflect_weight(system, i, v)


@lru_cache(maxsize=None)
def dominant_conjugate(
    system: RootSystem, mu: Weight
) -> tuple[Weight, WeylElement, int, bool]:
    """Dominant representative of a weight's Weyl orbit.

    Returns ``(mu_plus, w, length, regular)`` with ``act(w, mu) = mu_plus``
    dominant.  ``regular`` is True when the orbit is free, equivalently when
    ``mu_plus`` is strictly dominant; in that case ``w`` is the unique element
    moving ``mu`` to the dominant chamber and ``length`` is its Coxeter
    length.
    """
    v = mu
    applied: list[int] = []
    while True:
        i = next((j + 1 for j, c in enumerate(v.coords) if c < 0), None)
        if i is None:
            break
        v = reflect_weight(system, i, v)
        applied.append(i)
    w = weyl_element(system, tuple(reversed(applied)))
    return v, w, len(w), v.is_strictly_dominant()


def half_sum_positive(system: RootSystem) -> Weight:
    """rho, the half sum of positive roots: all-ones in fundamental coords."""
    return Weight((1,) * system.rank)


# ---------------------------------------------------------------------------
# invariant bilinear form

@lru_cache(maxsize=None)
def _symmetrizer(system: RootSystem) -> tuple[Fraction, ...]:
    """d_i with diag(d) @ C symmetric, normalized to d=1 on each component's
    first node; gives the invariant form via (alpha_i, alpha_j) = d_i c_ij."""
    n = system.rank
    c = system.cartan
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and c[i][j] != 0 and d[j] is None:
                    d[j] = d[i] * Fraction(c[i][j], c[j][i])
                    stack.append(j)
    return tuple(x for x in d)  # type: ignore[misc]


def root_inner(system: RootSystem, a, b) -> Fraction:
    """(x, y) for vectors in simple-root coordinates (ints or Fractions)."""
    d = _symmetrizer(system)
    c = system.cartan
    total = Fraction(0)
    for i in range(system.rank):
        if a[i] == 0:
            continue
        for j in range(system.rank):
            if b[j] != 0 and c[i][j] != 0:
                total += a[i] * b[j] * d[i] * c[i][j]
    return total


def coroot_pairing(system: RootSystem, x, beta) -> Fraction:
    """<x, beta^vee> = 2 (x, beta) / (beta, beta), in root coordinates."""
    denom = root_inner(system, beta, beta)
    if denom == 0:
        raise ValueError("coroot of the zero vector")
    return 2 * root_inner(system, x, beta) / denom


# ---------------------------------------------------------------------------
# serialization

def system_to_dict(system: RootSystem) -> dict:
    return {
        "type": system.type_label,
        "rank": system.rank,
        "cartan": [list(row) for row in system.cartan],
        "positive_roots": [list(r.coords) for r in system.positive_roots],
    }


def system_to_json(system: RootSystem) -> str:
    return json.dumps(system_to_dict(system), sort_keys=True)


def weight_from_json(data: list[int]) -> Weight:
    return Weight(tuple(int(v) for v in data))
