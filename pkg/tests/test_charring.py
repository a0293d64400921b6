"""Tests for character arithmetic and truncated series."""

import itertools
from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wonderco.charring import (
    Character,
    Grading,
    TruncationError,
    add,
    expand_inverse,
    grade_project,
    multiply,
    restrict_window,
    series_of_weight,
    series_unit,
    weyl_character,
    weyl_dimension,
    widen_window_down,
)
from wonderco.rootsys import (
    Root,
    Weight,
    act,
    build_root_system,
    coset_reps,
    dominant_conjugate,
    half_sum_positive,
    weight_to_root,
    weyl_element,
)

A1 = build_root_system("A", 1)
A2 = build_root_system("A", 2)
B2 = build_root_system("B", 2)
A2xA2 = build_root_system("A2xA2")
A5 = build_root_system("A", 5)

KEMPF_GRADING = Grading(A5, (1, 2, 3, 2, 1))


# ---------------------------------------------------------------------------
# oracles

def kostant_partition(system, vec):
    """Number of ways to write vec as a nonnegative integer combination of
    positive roots, by direct recursion."""
    roots = tuple(r.coords for r in system.positive_roots)
    n = system.rank

    @lru_cache(maxsize=None)
    def count(v, idx):
        if not any(v):
            return 1
        if idx == len(roots):
            return 0
        r = roots[idx]
        total = 0
        k = 0
        while all(v[i] - k * r[i] >= 0 for i in range(n)):
            total += count(tuple(v[i] - k * r[i] for i in range(n)), idx + 1)
            k += 1
        return total

    if any(x < 0 or (isinstance(x, Fraction) and x.denominator != 1) for x in vec):
        return 0
    return count(tuple(int(x) for x in vec), 0)


def kostant_character(system, lam):
    """Weight multiplicities via the alternating partition-function sum."""
    rho = half_sum_positive(system)
    elements = coset_reps(system, frozenset())
    lowest = -dominant_conjugate(system, -lam)[0]
    box = weight_to_root(system, lam - lowest)
    assert all(c.denominator == 1 for c in box)
    terms = {}
    for combo in itertools.product(*(range(int(c) + 1) for c in box)):
        shift = Weight(
            tuple(
                sum(system.cartan[i][j] * combo[j] for j in range(system.rank))
                for i in range(system.rank)
            )
        )
        mu = lam - shift
        m = 0
        for w in elements:
            v = weight_to_root(system, act(w, lam + rho) - (mu + rho))
            p = kostant_partition(system, v)
            if p:
                m += (-1) ** len(w.word) * p
        if m:
            terms[mu] = m
    return Character(terms)


def brute_terms(series):
    """Fully expand a cone series by unbounded convolution up to the height
    cutoff, ignoring the window."""
    n = series.system.rank
    acc = {(0,) * n: 1}
    for beta in series.denominator:
        new = {}
        for off, m in acc.items():
            k = 0
            while sum(off) + k * sum(beta.coords) <= series.height_cutoff:
                key = tuple(off[i] + k * beta.coords[i] for i in range(n))
                new[key] = new.get(key, 0) + m
                k += 1
        acc = new
    return {
        series.weight_of(off): m for off, m in acc.items()
    }


# ---------------------------------------------------------------------------
# Character algebra

class TestCharacter:
    def test_zero_multiplicities_dropped(self):
        c = Character({Weight((1, 0)): 2, Weight((0, 1)): 0})
        assert c.terms == {Weight((1, 0)): 2}

    def test_ring_operations(self):
        a = Character.of_weight(Weight((1, 0)))
        b = Character.of_weight(Weight((0, 1)), 3)
        assert (a + b).dimension() == 4
        assert (a - a) == Character()
        assert (a * b).terms == {Weight((1, 1)): 3}

    def test_dual_negates_support(self):
        c = Character({Weight((2, -1)): 1, Weight((0, 3)): 4})
        assert c.dual().terms == {Weight((-2, 1)): 1, Weight((0, -3)): 4}
        assert c.dual().dual() == c

    def test_dual_is_multiplicative(self):
        a = Character({Weight((1, 0)): 1, Weight((-1, 1)): 2})
        b = Character({Weight((0, -1)): 3})
        assert (a * b).dual() == a.dual() * b.dual()

    def test_floor_zero(self):
        c = Character({Weight((1,)): 2, Weight((0,)): -1})
        assert c.floor_zero().terms == {Weight((1,)): 2}

    def test_map_weights_merges(self):
        c = Character({Weight((1, 2)): 1, Weight((2, 1)): 1})
        folded = c.map_weights(lambda w: Weight(tuple(sorted(w.coords))))
        assert folded.terms == {Weight((1, 2)): 2}

    def test_tsv_sorted(self):
        c = Character({Weight((1, 0)): 2, Weight((-1, 1)): 1})
        assert c.to_tsv() == "-1,1\t1\n1,0\t2"

    @given(
        st.lists(
            st.tuples(
                st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
                st.integers(-2, 2),
            ),
            max_size=5,
        ),
        st.lists(
            st.tuples(
                st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
                st.integers(-2, 2),
            ),
            max_size=5,
        ),
    )
    def test_product_distributes(self, pairs_a, pairs_b):
        def build(pairs):
            d = {}
            for coords, m in pairs:
                w = Weight(coords)
                d[w] = d.get(w, 0) + m
            return Character(d)

        a, b = build(pairs_a), build(pairs_b)
        c = Character.of_weight(Weight((1, -1)), 2)
        assert (a + b) * c == a * c + b * c


# ---------------------------------------------------------------------------
# irreducible characters

class TestWeylCharacter:
    def test_rejects_nondominant(self):
        with pytest.raises(ValueError):
            weyl_character(A2, Weight((-1, 0)))

    def test_trivial(self):
        assert weyl_character(A2, Weight((0, 0))).terms == {Weight((0, 0)): 1}

    @pytest.mark.parametrize("n", range(6))
    def test_a1_string(self, n):
        ch = weyl_character(A1, Weight((n,)))
        assert ch.terms == {Weight((n - 2 * k,)): 1 for k in range(n + 1)}

    def test_a2_vector(self):
        ch = weyl_character(A2, Weight((1, 0)))
        assert ch.terms == {
            Weight((1, 0)): 1,
            Weight((-1, 1)): 1,
            Weight((0, -1)): 1,
        }

    def test_a2_adjoint(self):
        ch = weyl_character(A2, Weight((1, 1)))
        assert ch.dimension() == 8
        assert ch.multiplicity(Weight((0, 0))) == 2
        assert all(m == 1 for w, m in ch.terms.items() if w != Weight((0, 0)))

    @pytest.mark.parametrize(
        "system,lam,dim",
        [
            (B2, (1, 0), 5),
            (B2, (0, 1), 4),
            (B2, (1, 1), 16),
            (B2, (2, 0), 14),
            (A2, (2, 1), 15),
            (A2, (3, 0), 10),
            (A2xA2, (1, 0, 0, 1), 9),
        ],
    )
    def test_dimensions(self, system, lam, dim):
        lam = Weight(lam)
        ch = weyl_character(system, lam)
        assert ch.dimension() == dim
        assert weyl_dimension(system, lam) == dim

    @pytest.mark.parametrize(
        "system,lam",
        [
            (A1, (4,)),
            (A2, (2, 2)),
            (A2, (3, 1)),
            (B2, (1, 1)),
            (A2xA2, (1, 1, 2, 0)),
        ],
    )
    def test_matches_alternating_sum(self, system, lam):
        lam = Weight(lam)
        assert weyl_character(system, lam) == kostant_character(system, lam)

    def test_product_system_factorizes(self):
        left = weyl_character(A2, Weight((2, 1)))
        right = weyl_character(A2, Weight((0, 2)))
        embed_l = left.map_weights(lambda w: Weight(w.coords + (0, 0)))
        embed_r = right.map_weights(lambda w: Weight((0, 0) + w.coords))
        assert weyl_character(A2xA2, Weight((2, 1, 0, 2))) == embed_l * embed_r

    def test_weyl_invariance(self):
        ch = weyl_character(A2, Weight((2, 1)))
        for word in [(1,), (2,), (1, 2), (2, 1, 2)]:
            w = weyl_element(A2, word)
            assert ch.map_weights(lambda x: act(w, x)) == ch

    def test_self_dual_adjoint(self):
        ch = weyl_character(A2, Weight((1, 1)))
        assert ch.dual() == ch

    def test_dual_is_lowest_weight_flip(self):
        lam = Weight((2, 0))
        ch = weyl_character(A2, lam)
        assert ch.dual() == weyl_character(A2, Weight((0, 2)))


# ---------------------------------------------------------------------------
# gradings

class TestGrading:
    def test_degree_values(self):
        g = KEMPF_GRADING
        assert g.degree(Weight((0, 0, 1, 0, 0))) == 3
        assert g.degree(Weight((1, 0, 0, 0, 0))) == 1
        assert g.degree(Weight((-1, 0, 1, 0, -1))) == 1

    def test_root_degrees_count_middle_node(self):
        g = KEMPF_GRADING
        for r in A5.positive_roots:
            assert g.root_degree(r) == 2 * r.coords[2]


# ---------------------------------------------------------------------------
# truncated series

class TestSeries:
    def test_positive_degree_expansion(self):
        alpha3 = A5.positive_roots[2]
        s = expand_inverse(A5, KEMPF_GRADING, alpha3, (0, 5))
        degs = sorted(KEMPF_GRADING.degree(w) for w in s.terms())
        assert degs == [0, 2, 4]

    def test_zero_degree_needs_cutoff(self):
        alpha1 = A5.positive_roots[0]
        assert KEMPF_GRADING.root_degree(alpha1) == 0
        with pytest.raises(ValueError):
            expand_inverse(A5, KEMPF_GRADING, alpha1, (0, 5))
        s = expand_inverse(A5, KEMPF_GRADING, alpha1, (0, 5), height_cutoff=7)
        assert len(s.offsets) == 8
        assert {KEMPF_GRADING.degree(w) for w in s.terms()} == {0}

    def test_rejects_negative_root(self):
        with pytest.raises(ValueError):
            expand_inverse(A5, KEMPF_GRADING, -A5.positive_roots[2], (0, 5))

    def test_negative_degree_with_cutoff(self):
        down = Grading(A5, (-1, -2, -3, -2, -1))
        alpha3 = A5.positive_roots[2]
        s = expand_inverse(A5, down, alpha3, (-6, 0), height_cutoff=4)
        degs = sorted(down.degree(w) for w in s.terms())
        assert degs == [-6, -4, -2, 0]

    def test_geometric_multiplicities(self):
        alpha3 = A5.positive_roots[2]
        s = expand_inverse(A5, KEMPF_GRADING, alpha3, (0, 12))
        sq = multiply(s, s)
        for k in range(7):
            w = sq.weight_of(tuple(c * k for c in alpha3.coords))
            assert sq.multiplicity(w) == k + 1

    def test_shifted_window(self):
        lam = Weight((0, 0, 3, 0, 0))
        e = series_of_weight(A5, KEMPF_GRADING, lam, (0, 19))
        s = expand_inverse(A5, KEMPF_GRADING, A5.positive_roots[2], (0, 19))
        p = multiply(e, s)
        assert p.window == (9, 19)
        assert p.min_degree() == 9

    def test_grade_project_outside_window(self):
        s = series_unit(A5, KEMPF_GRADING, (0, 4))
        with pytest.raises(TruncationError):
            grade_project(s, 5)
        assert grade_project(s, 0).dimension() == 1
        assert grade_project(s, 3) == Character()

    def test_multiply_rejects_mismatch(self):
        s = series_unit(A5, KEMPF_GRADING, (0, 4))
        t = series_unit(A5, Grading(A5, (1, 1, 1, 1, 1)), (0, 4))
        with pytest.raises(ValueError):
            multiply(s, t)
        u = series_unit(A2, Grading(A2, (1, 1)), (0, 4))
        with pytest.raises(ValueError):
            multiply(s, u)

    def test_multiply_rejects_clipped_base(self):
        lam = Weight((0, 0, 1, 0, 0))
        e = series_of_weight(A5, KEMPF_GRADING, lam, (5, 9))
        s = expand_inverse(A5, KEMPF_GRADING, A5.positive_roots[2], (0, 9))
        with pytest.raises(ValueError):
            multiply(e, s)

    def test_product_is_commutative(self):
        g = KEMPF_GRADING
        a = expand_inverse(A5, g, A5.positive_roots[2], (0, 10))
        b = expand_inverse(A5, g, A5.positive_roots[8], (0, 10), height_cutoff=9)
        assert multiply(a, b) == multiply(b, a)

    def test_product_against_convolution(self):
        g = KEMPF_GRADING
        window = (0, 14)
        factors = [
            expand_inverse(A5, g, A5.positive_roots[i], window, height_cutoff=8)
            for i in (0, 2, 6, 8)
        ]
        prod = factors[0]
        for f in factors[1:]:
            prod = multiply(prod, f)
        brute = brute_terms(prod)
        for w, m in brute.items():
            if prod.is_certified(w):
                assert prod.multiplicity(w) == m, w
        for w, m in prod.terms().items():
            if prod.is_certified(w):
                assert brute.get(w, 0) == m, w

    @given(st.sets(st.integers(0, 14), min_size=1, max_size=3), st.integers(0, 3))
    @settings(max_examples=25, deadline=None)
    def test_random_products_match_convolution(self, root_idx, shift):
        g = KEMPF_GRADING
        window = (0, 10)
        lam = Weight((shift, 0, 0, 0, shift))
        prod = series_of_weight(A5, g, lam, window, height_cutoff=6)
        for i in sorted(root_idx):
            prod = multiply(
                prod,
                expand_inverse(A5, g, A5.positive_roots[i], window, height_cutoff=6),
            )
        brute = brute_terms(prod)
        for w in set(brute) | set(prod.terms()):
            if prod.is_certified(w):
                assert prod.multiplicity(w) == brute.get(w, 0)

    def test_grade_slices_partition_terms(self):
        g = KEMPF_GRADING
        s = expand_inverse(A5, g, A5.positive_roots[2], (0, 8))
        total = sum(
            grade_project(s, n).dimension() for n in range(s.window[0], s.window[1] + 1)
        )
        assert total == sum(s.offsets.values())


class TestSeriesCombination:
    def geometric(self, shift_coords, window, cutoff=8):
        s = series_of_weight(A5, KEMPF_GRADING, Weight(shift_coords), window, cutoff)
        return multiply(
            s,
            expand_inverse(A5, KEMPF_GRADING, A5.positive_roots[2], window, cutoff),
        )

    def test_add_merges_terms(self):
        window = (0, 8)
        a = self.geometric((0, 0, 0, 0, 0), window)
        alpha3 = A5.positive_roots[2]
        b = self.geometric(
            tuple(sum(A5.cartan[i][j] * alpha3.coords[j] for j in range(5)) for i in range(5)),
            window,
        )
        b = widen_window_down(b, 0)
        total = add(a, b)
        for w in set(a.terms()) | set(b.terms()):
            assert total.multiplicity(w) == a.multiplicity(w) + b.multiplicity(w)

    def test_add_rebases_onto_first_numerator(self):
        window = (0, 6)
        a = series_of_weight(A5, KEMPF_GRADING, Weight((0, 0, 0, 0, 0)), window)
        shifted = Weight(tuple(A5.cartan[i][2] for i in range(5)))
        b = series_of_weight(A5, KEMPF_GRADING, shifted, window)
        total = add(a, b)
        assert total.numerator_exponent == a.numerator_exponent
        assert total.multiplicity(Weight((0, 0, 0, 0, 0))) == 1
        assert total.multiplicity(shifted) == 1

    def test_add_rejects_mismatched_windows(self):
        a = self.geometric((0, 0, 0, 0, 0), (0, 8))
        b = self.geometric((0, 0, 0, 0, 0), (0, 10))
        with pytest.raises(ValueError, match="windows"):
            add(a, b)

    def test_add_rejects_off_lattice_shift(self):
        window = (0, 6)
        a = series_of_weight(A5, KEMPF_GRADING, Weight((0, 0, 0, 0, 0)), window)
        b = series_of_weight(A5, KEMPF_GRADING, Weight((1, 0, 0, 0, 0)), window)
        with pytest.raises(ValueError, match="root-lattice"):
            add(a, b)

    def test_add_rejects_clipped_base(self):
        window = (4, 8)
        a = series_of_weight(A5, KEMPF_GRADING, Weight((0, 0, 2, 0, 0)), window)
        b = series_of_weight(A5, KEMPF_GRADING, Weight((0, 0, 1, 0, 0)), window)
        with pytest.raises(ValueError, match="floor above"):
            add(a, b)

    def test_sum_multiplies_like_convolution(self):
        # a sum whose second numerator sits lower exercises the effective
        # degree floor inside multiply
        window = (0, 8)
        high = Weight(tuple(A5.cartan[i][2] for i in range(5)))
        a = series_of_weight(A5, KEMPF_GRADING, high, window)
        b = series_of_weight(A5, KEMPF_GRADING, Weight((0, 0, 0, 0, 0)), window)
        total = add(a, b)
        geom = expand_inverse(A5, KEMPF_GRADING, A5.positive_roots[2], window)
        prod = multiply(total, geom)
        direct_a = multiply(a, geom)
        direct_b = multiply(b, geom)
        for w in set(direct_a.terms()) | set(direct_b.terms()):
            if prod.is_certified(w):
                assert prod.multiplicity(w) == (
                    direct_a.multiplicity(w) + direct_b.multiplicity(w)
                )

    def test_restrict_drops_terms(self):
        s = self.geometric((0, 0, 0, 0, 0), (0, 8))
        cut = restrict_window(s, (2, 6))
        assert cut.window == (2, 6)
        degs = {KEMPF_GRADING.degree(w) for w in cut.terms()}
        assert degs == {2, 4, 6}

    def test_restrict_rejects_escape(self):
        s = self.geometric((0, 0, 0, 0, 0), (0, 8))
        with pytest.raises(TruncationError, match="not contained"):
            restrict_window(s, (0, 10))

    def test_widen_adds_certified_emptiness(self):
        lam = Weight((0, 0, 2, 0, 0))
        s = restrict_window(self.geometric(lam.coords, (0, 10)), (6, 10))
        widened = widen_window_down(s, 0)
        assert widened.window == (0, 10)
        assert widened.terms() == s.terms()
        probe = Weight((0, 0, 0, 0, 0))
        assert widened.is_certified(probe)
        assert widened.multiplicity(probe) == 0

    def test_widen_rejects_upward(self):
        s = self.geometric((0, 0, 0, 0, 0), (0, 8))
        with pytest.raises(ValueError, match="above the current window"):
            widen_window_down(s, 3)

    def test_widen_rejects_clipped_base(self):
        lam = Weight((0, 0, 2, 0, 0))
        raw = self.geometric(lam.coords, (0, 10))
        clipped = restrict_window(raw, (8, 10))
        with pytest.raises(ValueError, match="above the base degree"):
            widen_window_down(clipped, 0)
