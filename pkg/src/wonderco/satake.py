"""Satake diagrams, restricted root systems, and criterion matrices.

A Satake diagram decorates a Dynkin diagram with a set of black (compact)
vertices and an involutive arrow pairing of white vertices.  From that data
this module rebuilds the induced involution on the ambient root lattice,
splits the roots into the pointwise-fixed part and its complement, forms
the restricted root system carried by the white classes, and extracts the
integer matrices consumed by the exponent criterion in :mod:`.opcrit`.

The built-in catalog covers the diagrams exercised elsewhere in the
package; :func:`parse_diagram` accepts the same three-directive text format
(``type``, ``black``, ``arrow``) for diagrams supplied by hand.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .rootsys import (
    Root,
    RootSystem,
    all_roots,
    build_root_system,
    coroot_pairing,
    is_root,
    simple_root,
)
from .rootsys import _simple_cartan  # noqa: F401  (series templates for labeling)

__all__ = [
    "DiagramError",
    "SatakeDiagram",
    "RestrictedSystem",
    "DiagramComponent",
    "make_diagram",
    "parse_diagram",
    "format_diagram",
    "catalog_names",
    "catalog_diagram",
    "CATALOG",
    "theta_of_simple",
    "theta_matrix",
    "apply_theta",
    "check_involution",
    "phi_split",
    "minus_theta_fixed_whites",
    "restricted_system",
    "family_choices",
    "criterion_matrices",
    "decompose",
]


class DiagramError(ValueError):
    """The decorated diagram violates a structural requirement."""


# ---------------------------------------------------------------------------
# diagrams

@dataclass(frozen=True)
class SatakeDiagram:
    """A Dynkin diagram with black vertices and white arrow pairs.

    Vertices are 1-based simple-root indices of ``system``.  ``arrows`` is a
    sorted tuple of sorted pairs of distinct white vertices.
    """

    system: RootSystem
    black: frozenset[int]
    arrows: tuple[tuple[int, int], ...]

    def whites(self) -> tuple[int, ...]:
        return tuple(
            i for i in range(1, self.system.rank + 1) if i not in self.black
        )

    def arrow_partner(self, i: int) -> int:
        for a, b in self.arrows:
            if i == a:
                return b
            if i == b:
                return a
        return i


def make_diagram(
    system: RootSystem,
    black: set[int] | frozenset[int] = frozenset(),
    arrows: list[tuple[int, int]] | tuple[tuple[int, int], ...] = (),
) -> SatakeDiagram:
    n = system.rank
    black = frozenset(black)
    for i in black:
        if not 1 <= i <= n:
            raise DiagramError(f"black vertex {i} out of range 1..{n}")
    seen: set[int] = set()
    norm = []
    for a, b in arrows:
        if not (1 <= a <= n and 1 <= b <= n):
            raise DiagramError(f"arrow ({a},{b}) out of range 1..{n}")
        if a == b:
            raise DiagramError(f"arrow ({a},{b}) must join distinct vertices")
        if a in black or b in black:
            raise DiagramError(f"arrow ({a},{b}) touches a black vertex")
        if a in seen or b in seen:
            raise DiagramError(f"vertex in more than one arrow: ({a},{b})")
        seen.update((a, b))
        norm.append((min(a, b), max(a, b)))
    return SatakeDiagram(system, black, tuple(sorted(norm)))


def parse_diagram(text: str) -> SatakeDiagram:
    """Build a diagram from ``type``/``black``/``arrow`` directives."""
    type_label: str | None = None
    black: set[int] = set()
    arrows: list[tuple[int, int]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "type":
            if len(rest) != 1 or type_label is not None:
                raise DiagramError(f"malformed type line: {line!r}")
            type_label = rest[0]
        elif head == "black":
            black.update(int(x) for x in rest)
        elif head == "arrow":
            if len(rest) != 2:
                raise DiagramError(f"malformed arrow line: {line!r}")
            arrows.append((int(rest[0]), int(rest[1])))
        else:
            raise DiagramError(f"unknown directive {head!r}")
    if type_label is None:
        raise DiagramError("missing 'type' line")
    return make_diagram(build_root_system(type_label), black, arrows)


def format_diagram(d: SatakeDiagram) -> str:
    lines = [f"type {d.system.type_label}"]
    if d.black:
        lines.append("black " + " ".join(str(i) for i in sorted(d.black)))
    for a, b in d.arrows:
        lines.append(f"arrow {a} {b}")
    return "\n".join(lines)


CATALOG: dict[str, str] = {
    "PGL6-PSp6": "type A5\nblack 1 3 5",
    "PGL3-GL2": "type A2\narrow 1 2",
    "PGL4-GL3": "type A3\nblack 2\narrow 1 3",
    "PGL5-GL4": "type A4\nblack 2 3\narrow 1 4",
    "PGL6-GL5": "type A5\nblack 2 3 4\narrow 1 5",
    "PSp4-SL2xSp2": "type C2\nblack 1",
    "PSp6-SL2xSp4": "type C3\nblack 1 3",
    "PSp8-SL2xSp6": "type C4\nblack 1 3 4",
    "PSO5-SO4": "type B2\nblack 2",
    "PSO6-SO5": "type D3\nblack 2 3",
    "PSO7-SO6": "type B3\nblack 2 3",
    "PSO8-SO7": "type D4\nblack 2 3 4",
    "split-A1": "type A1",
    "split-A2": "type A2",
    "GxG-A1": "type A1xA1\narrow 1 2",
    "GxG-A2": "type A2xA2\narrow 1 3\narrow 2 4",
    "E6-F4": "type E6\nblack 2 3 4 5",
    "F4-PSO9": "type F4\nblack 1 2 3",
}


def catalog_names() -> tuple[str, ...]:
    return tuple(sorted(CATALOG))


@lru_cache(maxsize=None)
def catalog_diagram(name: str) -> SatakeDiagram:
    try:
        text = CATALOG[name]
    except KeyError:
        raise KeyError(
            f"unknown diagram {name!r}; available: {', '.join(catalog_names())}"
        ) from None
    return parse_diagram(text)


# ---------------------------------------------------------------------------
# the induced involution

def theta_of_simple(d: SatakeDiagram, i: int) -> Root:
    """Image of the i-th simple root under the diagram's involution.

    Black vertices are fixed.  For a white vertex the image is minus the
    highest root supported on the arrow partner (with coefficient one) and
    the black vertices; that maximum must be unique.
    """
    n = d.system.rank
    if not 1 <= i <= n:
        raise IndexError(f"simple index {i} out of range 1..{n}")
    if i in d.black:
        return simple_root(d.system, i)
    partner = d.arrow_partner(i)
    candidates = []
    for beta in d.system.positive_roots:
        ok = True
        for j in range(1, n + 1):
            c = beta.coords[j - 1]
            if j == partner:
                ok = c == 1
            elif j not in d.black:
                ok = c == 0
            if not ok:
                break
        if ok:
            candidates.append(beta)
    maximal = [
        b
        for b in candidates
        if not any(
            o != b and all(x >= y for x, y in zip(o.coords, b.coords))
            for o in candidates
        )
    ]
    if len(maximal) != 1:
        raise DiagramError(
            f"white vertex {i}: no unique highest root over the black part "
            f"({len(maximal)} maximal candidates)"
        )
    return -maximal[0]


@lru_cache(maxsize=None)
def theta_matrix(d: SatakeDiagram) -> tuple[tuple[int, ...], ...]:
    """The involution in simple-root coordinates; column j is theta(alpha_j).

    Raises :class:`DiagramError` unless the map squares to the identity and
    permutes the roots.
    """
    n = d.system.rank
    cols = [theta_of_simple(d, j).coords for j in range(1, n + 1)]
    mat = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    for i in range(n):
        for j in range(n):
            entry = sum(mat[i][k] * mat[k][j] for k in range(n))
            if entry != (i == j):
                raise DiagramError("involution does not square to the identity")
    for beta in d.system.positive_roots:
        if not is_root(d.system, _apply(mat, beta)):
            raise DiagramError(
                f"involution maps {beta.coords} outside the root system"
            )
    return mat


def _apply(mat: tuple[tuple[int, ...], ...], r: Root) -> Root:
    n = len(mat)
    return Root(
        tuple(sum(mat[i][j] * r.coords[j] for j in range(n)) for i in range(n))
    )


def apply_theta(d: SatakeDiagram, r: Root) -> Root:
    return _apply(theta_matrix(d), r)


def check_involution(d: SatakeDiagram) -> bool:
    """True when the diagram induces a genuine involution of the roots."""
    try:
        theta_matrix(d)
    except DiagramError:
        return False
    return True


def phi_split(d: SatakeDiagram) -> tuple[tuple[Root, ...], tuple[Root, ...]]:
    """(pointwise-fixed roots, positive roots off the black span)."""
    theta_matrix(d)  # validate first
    fixed = []
    moved_positive = []
    for coords in sorted(all_roots(d.system)):
        r = Root(coords)
        if all(
            c == 0 or (j + 1) in d.black for j, c in enumerate(r.coords)
        ):
            fixed.append(r)
        elif r.is_positive():
            moved_positive.append(r)
    return tuple(fixed), tuple(moved_positive)


def minus_theta_fixed_whites(d: SatakeDiagram) -> tuple[int, ...]:
    """White vertices whose simple root is negated by the involution."""
    out = []
    for i in d.whites():
        if theta_of_simple(d, i) == -simple_root(d.system, i):
            out.append(i)
    return tuple(out)


# ---------------------------------------------------------------------------
# restricted system

@dataclass(frozen=True)
class RestrictedSystem:
    """The restricted root data carried by the white classes.

    ``classes`` lists the white vertex orbits under the arrow pairing;
    ``gammas[k]`` is alpha_i - theta(alpha_i) for i in the k-th class (an
    ambient root-lattice vector), twice the restricted simple root.
    ``cartan`` is the restricted Cartan matrix, ``families[k]`` the positive
    roots off the black span restricting onto the k-th restricted simple
    root, and ``nonreduced`` records whether some restricted root occurs
    together with its double.
    """

    diagram: SatakeDiagram
    classes: tuple[tuple[int, ...], ...]
    gammas: tuple[Root, ...]
    cartan: tuple[tuple[int, ...], ...]
    type_label: str
    nonreduced: bool
    families: tuple[tuple[Root, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.classes)


def _restriction(d: SatakeDiagram, r: Root) -> tuple[Fraction, ...]:
    image = apply_theta(d, r)
    return tuple(
        Fraction(a - b, 2) for a, b in zip(r.coords, image.coords)
    )


def restricted_system(d: SatakeDiagram) -> RestrictedSystem:
    """Restricted roots, Cartan matrix, type label, and criterion families.

    Beyond the involution checks this enforces the symmetric-space axioms
    that the diagram alone does not guarantee: no root may have alpha +
    theta(alpha) again a root, and the restricted simple roots must pair
    integrally.
    """
    system = d.system
    theta_matrix(d)
    whites = d.whites()
    if not whites:
        raise DiagramError("diagram has no white vertices")
    in_class: set[int] = set()
    classes = []
    for i in whites:
        if i in in_class:
            continue
        orbit = tuple(sorted({i, d.arrow_partner(i)}))
        in_class.update(orbit)
        classes.append(orbit)
    classes_t = tuple(classes)

    _, phi1_plus = phi_split(d)
    for alpha in phi1_plus:
        total = alpha + apply_theta(d, alpha)
        if is_root(system, total):
            raise DiagramError(
                f"alpha + theta(alpha) is a root for alpha = {alpha.coords}; "
                "the diagram is not of symmetric-space type"
            )

    sigmas = []
    for orbit in classes_t:
        reps = {
            _restriction(d, simple_root(system, i)) for i in orbit
        }
        if len(reps) != 1:
            raise DiagramError(
                f"arrow class {orbit} has inconsistent restrictions"
            )
        sigmas.append(next(iter(reps)))
    gammas = []
    for s in sigmas:
        coords = tuple(2 * x for x in s)
        if any(x.denominator != 1 for x in coords):
            raise DiagramError("restricted simple root off the half lattice")
        gammas.append(Root(tuple(int(x) for x in coords)))

    r = len(classes_t)
    cartan_rows = []
    for i in range(r):
        row = []
        for j in range(r):
            v = coroot_pairing(system, sigmas[j], sigmas[i])
            if v.denominator != 1:
                raise DiagramError(
                    f"restricted pairing <sigma_{j + 1}, sigma_{i + 1}^vee> "
                    f"= {v} is not an integer"
                )
            row.append(int(v))
        cartan_rows.append(tuple(row))
    cartan = tuple(cartan_rows)

    restrictions = {}
    for alpha in phi1_plus:
        restrictions.setdefault(_restriction(d, alpha), []).append(alpha)
    sigma_set = set(restrictions)
    sigma_set |= {tuple(-x for x in s) for s in sigma_set}
    divisible = [
        tuple(2 * x for x in s) in sigma_set for s in sigmas
    ]

    families = tuple(
        tuple(sorted(restrictions.get(s, []), key=lambda x: x.coords))
        for s in sigmas
    )
    for orbit, fam in zip(classes_t, families):
        if not fam:
            raise DiagramError(f"arrow class {orbit} has an empty family")

    label = _identify_type(cartan, divisible)
    return RestrictedSystem(
        diagram=d,
        classes=classes_t,
        gammas=tuple(gammas),
        cartan=cartan,
        type_label=label,
        nonreduced=any(divisible),
        families=families,
    )


def _identify_type(
    cartan: tuple[tuple[int, ...], ...], divisible: list[bool]
) -> str:
    r = len(cartan)
    comp_of = list(range(r))

    def find(x: int) -> int:
        while comp_of[x] != x:
            comp_of[x] = comp_of[comp_of[x]]
            x = comp_of[x]
        return x

    for i in range(r):
        for j in range(r):
            if i != j and cartan[i][j] != 0:
                comp_of[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(r):
        groups.setdefault(find(i), []).append(i)
    labels = []
    for verts in sorted(groups.values(), key=lambda g: g[0]):
        sub = tuple(
            tuple(cartan[i][j] for j in verts) for i in verts
        )
        if any(divisible[i] for i in verts):
            labels.append(f"BC{len(verts)}")
        else:
            labels.append(_match_series(sub))
    return "x".join(labels)


def _match_series(mat: tuple[tuple[int, ...], ...]) -> str:
    r = len(mat)
    for series in "ABCDEFG":
        try:
            template = _simple_cartan(series, r)
        except ValueError:
            continue
        for perm in itertools.permutations(range(r)):
            if all(
                mat[perm[i]][perm[j]] == template[i][j]
                for i in range(r)
                for j in range(r)
            ):
                return f"{series}{r}"
    raise DiagramError(f"restricted Cartan matrix {mat} matches no series")


# ---------------------------------------------------------------------------
# criterion matrices

def _matrix_for(
    rs: RestrictedSystem, choice: tuple[Root, ...]
) -> tuple[tuple[int, ...], ...]:
    d = rs.diagram
    rows = []
    for alpha in choice:
        negated = apply_theta(d, alpha) == -alpha
        row = []
        for gamma in rs.gammas:
            v = coroot_pairing(d.system, gamma.coords, alpha.coords)
            if negated:
                v = v / 2
            if v.denominator != 1:
                raise DiagramError(
                    f"criterion entry <{gamma.coords}, {alpha.coords}^vee> "
                    f"is not an integer"
                )
            row.append(int(v))
        rows.append(tuple(row))
    return tuple(rows)


def family_choices(rs: RestrictedSystem):
    """All one-root-per-family selections with their criterion matrices.

    Rows follow the family order; a row for a root negated by the involution
    is halved (its restriction is a full restricted root, not half of one).
    """
    for combo in itertools.product(*rs.families):
        yield combo, _matrix_for(rs, combo)


def criterion_matrices(rs: RestrictedSystem) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """The distinct criterion matrices over all family selections, sorted."""
    return tuple(sorted({m for _, m in family_choices(rs)}))


# ---------------------------------------------------------------------------
# decomposition

@dataclass(frozen=True)
class DiagramComponent:
    """A connected piece of a diagram (bonds and arrows both connect).

    ``kind`` is "group" when the piece is two bond-connected halves swapped
    by arrows (the doubled form of a single group), else "symmetric".
    """

    vertices: tuple[int, ...]
    kind: str


def decompose(d: SatakeDiagram) -> tuple[DiagramComponent, ...]:
    n = d.system.rank
    c = d.system.cartan
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        parent[find(a)] = find(b)

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if c[i - 1][j - 1] != 0:
                union(i, j)
    bond_pieces: dict[int, set[int]] = {}
    for i in range(1, n + 1):
        bond_pieces.setdefault(find(i), set()).add(i)
    halves_all = [frozenset(p) for p in bond_pieces.values()]
    for a, b in d.arrows:
        union(a, b)
    groups: dict[int, list[int]] = {}
    for i in range(1, n + 1):
        groups.setdefault(find(i), []).append(i)

    out = []
    for verts in sorted(groups.values(), key=lambda g: g[0]):
        vset = set(verts)
        halves = [h for h in halves_all if h <= vset]
        if len(halves) == 1:
            out.append(DiagramComponent(tuple(verts), "symmetric"))
            continue
        if len(halves) != 2:
            raise DiagramError(
                f"component {sorted(vset)} joins {len(halves)} bond pieces"
            )
        if vset & d.black:
            raise DiagramError(
                f"doubled component {sorted(vset)} contains black vertices"
            )
        h1, h2 = halves
        for v in h1:
            if d.arrow_partner(v) not in h2:
                raise DiagramError(
                    f"vertex {v} lacks an arrow into the opposite half"
                )
        for v, w in itertools.product(sorted(h1), sorted(h1)):
            if c[v - 1][w - 1] != c[d.arrow_partner(v) - 1][d.arrow_partner(w) - 1]:
                raise DiagramError(
                    f"arrows of component {sorted(vset)} are not a diagram "
                    "isomorphism between the halves"
                )
        out.append(DiagramComponent(tuple(verts), "group"))
    return tuple(out)
