"""
Unit tests for the classification engine: descriptors, membership oracles,
conductors, generators, the orbit test and normalization
"""

import os
import random
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.classification import (
    EXACT_ZERO,
    AlgebraicBranch,
    Character,
    MembershipVerdict,
    PolySubring,
    PsiCase,
    StreamAlpha,
    UnitsCase,
    apply_character,
    conductor,
    crucial_generators,
    crucial_membership,
    element_membership,
    finite_alpha,
    generators,
    membership,
    n_condition_check,
    normalize,
    omega,
    orbit_equivalent,
    orbit_test,
    p2_sample_check,
    solve_character,
    theta_phi_membership,
    translate_lambda,
)
from src.fields import CycloField, root_of_unity
from src.errors import (
    ExponentDomainError,
    InconsistentFlags,
    InvalidDescriptor,
    PreconditionFailed,
    Undetermined,
    ZeroInput,
)
from src.polys import Automorphism, LaurentPoly
from src.series import HahnSeries, make_stream, valuation
from src.utils.config import configure
from tests.fixture_generator import generate_laurent, generate_polynomial

t = LaurentPoly.gen("t")
y = LaurentPoly.gen("y")
half = Fraction(1, 2)
u = HahnSeries.monomial(1)
sqrt_t = HahnSeries.monomial(half)

IN = MembershipVerdict.IN
NOT_IN = MembershipVerdict.NOT_IN
IN_CONDUCTOR = MembershipVerdict.IN_CONDUCTOR


def psi(value):
    return PsiCase(finite_alpha(value))


def integers_stream(**params):
    return StreamAlpha(make_stream("integers", params))


def _i_character():
    return Character(4, root_of_unity(4, CycloField.of(4)))


class TestOmega:
    """Test the valuation f -> nu(f(t, alpha))"""

    def test_exact_zero_at_a_root(self):
        assert omega(y ** 2 - t, finite_alpha(sqrt_t)) is EXACT_ZERO

    def test_monomial_order(self):
        assert omega(y / t, finite_alpha(sqrt_t)) == -half
        assert omega(LaurentPoly.constant(1), finite_alpha(sqrt_t)) == 0

    def test_rejects_zero_and_negative_y(self):
        with pytest.raises(ZeroInput):
            omega(LaurentPoly.zero(), finite_alpha(0))
        with pytest.raises(ExponentDomainError, match="negative powers of y"):
            omega(y ** -1, finite_alpha(0))

    def test_stream_without_a_certified_term(self):
        configure(precision_cap="8")
        # (1 - t) y - t vanishes at sum t^i
        f = (1 - t) * y - t
        with pytest.raises(Undetermined):
            omega(f, integers_stream())
        result = membership(f, PsiCase(integers_stream()))
        assert result.verdict is MembershipVerdict.UNDETERMINED
        assert result.precision == 8
        assert not result.is_decided


class TestMotivatingExample:
    """Membership in Psi(0) = k[t, y, y/t, y/t^2, ...]"""

    def setup_method(self):
        self.A = psi(0)

    def test_conductor_elements(self):
        for f in [y, y / t, y / t ** 3, y / t ** 7, t * y ** 5 / t ** 3]:
            result = membership(f, self.A)
            assert result.verdict is IN_CONDUCTOR
            assert result.is_member

    def test_laurent_part(self):
        assert membership(t, self.A).verdict is IN
        assert membership(t ** -1, self.A).verdict is NOT_IN
        assert membership(t ** -1 + y / t ** 2, self.A).verdict is NOT_IN

    def test_crucial_ideal(self):
        assert crucial_membership(t, self.A).verdict is IN
        assert crucial_membership(y, self.A).is_member
        assert crucial_membership(y / t ** 5, self.A).is_member
        assert crucial_membership(1 + t, self.A).verdict is NOT_IN

    def test_conductor(self):
        assert conductor(self.A) == y

    def test_zero_is_in_the_conductor(self):
        assert membership(LaurentPoly.zero(), self.A).verdict is IN_CONDUCTOR

    def test_generators(self):
        assert [str(g) for g in generators(finite_alpha(0), 3)] == ["y/t", "y/t^2", "y/t^3"]
        for g in generators(finite_alpha(0), 3):
            assert membership(g.to_laurent(), self.A).is_member


class TestSquareRootExample:
    """Membership in Psi(t^(1/2)) = k[t, y] + (y^2 - t) k[t, t^-1, y]"""

    def setup_method(self):
        self.A = psi(sqrt_t)

    def test_conductor_multiples(self):
        assert membership((y ** 2 - t) / t ** 5, self.A).verdict is IN_CONDUCTOR
        assert conductor(self.A) == y ** 2 - t

    def test_examples(self):
        assert membership(y, self.A).verdict is IN
        assert membership(y / t, self.A).verdict is NOT_IN
        assert membership(y ** 2 / t, self.A).verdict is IN

    def test_oracle_agrees_with_decomposition(self):
        rng = random.Random(11)
        for _ in range(500):
            f = generate_laurent(rng, (-4, 4), 4)
            reduced = {}
            for (i, j), c in f.terms.items():
                key = (i + j // 2, j % 2)
                reduced[key] = reduced.get(key, 0) + c
            expected = all(i >= 0 for (i, _), c in reduced.items() if c)
            assert membership(f, self.A).is_member == expected

    def test_generators(self):
        names = [str(g) for g in generators(finite_alpha(sqrt_t), 2)]
        assert names == ["(y - t^(1/2))/t", "(y - t^(1/2))/t^2"]
        for g in generators(finite_alpha(sqrt_t), 2):
            assert element_membership(g, finite_alpha(sqrt_t)).is_member


class TestStreamDescriptors:
    """Test stream-backed alphas"""

    def test_generators_follow_the_support(self):
        alpha = integers_stream()
        assert [str(g) for g in generators(alpha, 2)] == ["y/t", "(y - t)/t^2"]
        assert [str(g) for g in crucial_generators(alpha, 2)] == ["(y - t)/t", "(y - t - t^2)/t^2"]

    def test_generator_orders(self):
        alpha = integers_stream()
        orders = [element_membership(g, alpha).order for g in generators(alpha, 3)]
        assert orders == [0, 0, 0]
        crucial = [element_membership(g, alpha).order for g in crucial_generators(alpha, 2)]
        assert crucial == [1, 1]

    def test_to_laurent(self):
        g = generators(integers_stream(), 2)[1]
        assert g.to_laurent() == (y - t) / t ** 2
        with pytest.raises(ExponentDomainError):
            generators(finite_alpha(sqrt_t), 1)[0].to_laurent()

    def test_transcendental_conductor(self):
        gap = StreamAlpha(make_stream("geometric_gap"), transcendental=True)
        assert conductor(PsiCase(gap)) is None

    def test_unflagged_stream_conductor(self):
        with pytest.raises(Undetermined, match="not declared transcendental"):
            conductor(PsiCase(integers_stream()))

    def test_generator_count(self):
        with pytest.raises(ValueError, match="at least one generator"):
            generators(finite_alpha(0), 0)


class TestAlgebraicBranch:
    """Test descriptors given by a minimal polynomial and a prefix"""

    def test_conductor_is_the_minimal_polynomial(self):
        alpha = AlgebraicBranch(y ** 2 - t, sqrt_t)
        assert conductor(PsiCase(alpha)) == y ** 2 - t
        assert alpha.has_finite_support()

    def test_exact_zero_by_division(self):
        alpha = AlgebraicBranch(y ** 2 - t - t ** 3, sqrt_t)
        assert not alpha.has_finite_support()
        assert omega((y ** 2 - t - t ** 3) * (y + 1), alpha) is EXACT_ZERO
        assert omega(y, alpha) == half

    def test_rejects_squares(self):
        with pytest.raises(InvalidDescriptor, match="not squarefree"):
            AlgebraicBranch((y - t) ** 2, u)

    def test_rejects_ambiguous_prefix(self):
        with pytest.raises(InvalidDescriptor, match="matches 2 roots"):
            AlgebraicBranch(y ** 2 - t, HahnSeries((), known_below=half))


class TestOrbits:
    """Test the character action and the orbit test"""

    def test_sign_change(self):
        chi = orbit_equivalent(finite_alpha(sqrt_t), finite_alpha(-sqrt_t))
        assert chi == Character(2, -1)
        assert chi.order() == 2
        assert chi.to_dict() == {"N": 2, "zeta": "-1"}

    def test_inequivalent_pairs(self):
        assert orbit_equivalent(finite_alpha(sqrt_t), finite_alpha(HahnSeries.monomial(Fraction(1, 3)))) is None
        a = finite_alpha(sqrt_t + u)
        b = finite_alpha(sqrt_t + u * 2)
        assert orbit_equivalent(a, b) is None

    def test_reflexive_and_symmetric(self):
        alpha = finite_alpha(sqrt_t + u)
        assert orbit_equivalent(alpha, alpha).is_identity()
        a, b = finite_alpha(sqrt_t), finite_alpha(-sqrt_t)
        assert orbit_equivalent(b, a) == orbit_equivalent(a, b).inverse()

    def test_character_carries_alpha(self):
        alpha = sqrt_t + HahnSeries.monomial(Fraction(3, 4), 2) + u
        chi = _i_character()
        beta = apply_character(chi, alpha)
        found = orbit_equivalent(finite_alpha(alpha), finite_alpha(beta))
        assert apply_character(found, alpha) == beta

    def test_action_preserves_valuation_and_support(self):
        chi = _i_character()
        for a in [sqrt_t + u, HahnSeries.monomial(Fraction(1, 4), 3), u * 5]:
            image = apply_character(chi, a)
            assert image.support() == a.support()
            assert valuation(image) == valuation(a)

    def test_algebraic_branches_compare_past_separation(self):
        plus = AlgebraicBranch(y ** 2 - t - t ** 3, sqrt_t)
        minus = AlgebraicBranch(y ** 2 - t - t ** 3, -sqrt_t)
        report = orbit_test(plus, minus)
        assert report.equivalent
        assert report.exact
        assert report.compared_below == Fraction(3, 2)
        assert report.character == Character(2, -1)

    def test_different_minimal_polynomials(self):
        report = orbit_test(AlgebraicBranch(y ** 2 - t - t ** 3, sqrt_t), finite_alpha(sqrt_t))
        assert not report.equivalent

    def test_streams_are_compared_up_to_the_cap(self):
        configure(precision_cap="10")
        report = orbit_test(integers_stream(), integers_stream())
        assert report.equivalent
        assert not report.exact
        assert report.compared_below == 10
        assert report.to_dict()["compared_below"] == "10"

    def test_transcendental_stream_against_algebraic(self):
        gap = StreamAlpha(make_stream("geometric_gap"), transcendental=True)
        report = orbit_test(gap, finite_alpha(sqrt_t))
        assert not report.equivalent
        assert report.exact

    def test_solve_character(self):
        assert solve_character([]) == Character.identity()
        assert solve_character([(Fraction(0), 2)]) is None
        assert solve_character([(half, -1)]) == Character(2, -1)


class TestUnitsCase:
    """Membership in the units-case algebra of alpha = 1 + u"""

    def setup_method(self):
        self.alpha = finite_alpha(1 + u)
        self.A = UnitsCase(self.alpha)

    def test_members(self):
        assert membership(t, self.A).verdict is IN
        assert membership(t - 1, self.A).verdict is IN
        assert membership(y * (t - 1), self.A).verdict is IN
        assert membership(y * (t - 1) ** 2, self.A).verdict is IN
        assert membership(t ** -1, self.A).verdict is IN
        assert membership(y, self.A).verdict is NOT_IN

    def test_crucial_ideal(self):
        assert self.A.lam == 1
        assert self.A.crucial_element() == t - 1
        assert crucial_membership(t - 1, self.A).verdict is IN
        assert crucial_membership(y * (t - 1) ** 2, self.A).verdict is IN
        assert crucial_membership(y * (t - 1), self.A).verdict is NOT_IN

    def test_t_powers_do_not_change_membership(self):
        rng = random.Random(5)
        for _ in range(50):
            f = generate_laurent(rng, (-2, 2), 2)
            if f.is_zero():
                continue
            verdict = membership(f, self.A).verdict
            for m in (-2, 1, 3):
                assert membership(f * t ** m, self.A).verdict is verdict

    def test_polynomial_subring(self):
        B = PolySubring(self.A)
        assert theta_phi_membership(y * (t - 1), B).verdict is IN
        assert theta_phi_membership(y, B).verdict is NOT_IN
        assert theta_phi_membership(t ** -1, B).verdict is NOT_IN
        with pytest.raises(PreconditionFailed):
            theta_phi_membership(y, self.A)

    def test_constant_alpha_is_rejected(self):
        with pytest.raises(InvalidDescriptor, match="is constant"):
            UnitsCase(finite_alpha(2))

    def test_zero_constant_term(self):
        A = UnitsCase(finite_alpha(u))
        with pytest.raises(InvalidDescriptor, match="nonzero constant term"):
            membership(t, A)
        assert membership(t, PolySubring(A)).verdict is IN

    def test_conductor(self):
        conductor_poly = conductor(self.A)
        assert conductor_poly.degree("y") == 1
        assert membership(conductor_poly, self.A).verdict is IN_CONDUCTOR


class TestNCondition:
    """Test the check on units-case alphas"""

    def test_examples(self):
        assert n_condition_check(finite_alpha(1 + u))
        assert not n_condition_check(finite_alpha(2))
        assert not n_condition_check(finite_alpha(u))
        assert n_condition_check(integers_stream(shift=1))


class TestNormalize:
    """Test case normalization"""

    def test_case_ii(self):
        form = normalize(True, True)
        assert form.case == "ii"
        assert form.to_dict() == {"case": "ii"}

    def test_case_i(self):
        assert normalize(True, False, k=0).sigma.is_identity()
        form = normalize(False, True, k=2)
        assert form.sigma == Automorphism(swap=True, twist=2)
        assert form.to_dict() == {"case": "i", "sigma": {"swap": True, "twist": 2}}

    def test_twist_moves_sample_to_y(self):
        form = normalize(True, False, sample=t ** 2 * y)
        assert form.sigma.apply(t ** 2 * y) == y

    def test_inconsistent_flags(self):
        with pytest.raises(InconsistentFlags):
            normalize(False, False)
        with pytest.raises(InconsistentFlags, match="needs k"):
            normalize(True, False)
        with pytest.raises(InconsistentFlags, match="nonnegative"):
            normalize(True, False, k=-1)
        with pytest.raises(InconsistentFlags, match="disagrees"):
            normalize(True, False, k=3, sample=t ** 2 * y)
        with pytest.raises(InconsistentFlags, match="not of the form"):
            normalize(True, False, sample=y ** 2)


class TestTranslate:
    """Test t -> t - lambda on the units family"""

    def setup_method(self):
        self.A = UnitsCase(finite_alpha(1 + u))

    def test_shifts_the_constant_term(self):
        moved = translate_lambda(self.A, 1)
        assert moved.lam == 2
        assert moved.crucial_element() == t - 2

    def test_round_trip_and_identity(self):
        assert translate_lambda(translate_lambda(self.A, 1), -1) == self.A
        assert translate_lambda(self.A, 0) is self.A

    def test_psi_case_is_rejected(self):
        with pytest.raises(InvalidDescriptor, match="units family"):
            translate_lambda(psi(0), 1)

    def test_zero_constant_term(self):
        with pytest.raises(InvalidDescriptor):
            translate_lambda(self.A, -1)
        moved = translate_lambda(PolySubring(self.A), -1)
        assert isinstance(moved, PolySubring)
        assert moved.inner.lam == 0

    def test_membership_moves_with_the_substitution(self):
        rng = random.Random(3)
        moved = translate_lambda(self.A, 1)
        for _ in range(40):
            f = generate_polynomial(rng, ("t", "y"))
            shifted = f.substitute({"t": t + 1})
            assert membership(f, moved).verdict is membership(shifted, self.A).verdict


class TestPropertyP2:
    """Sampled check that r q in A implies r in A or q in A"""

    @pytest.mark.parametrize("descriptor", [
        psi(0),
        psi(sqrt_t),
        UnitsCase(finite_alpha(1 + u)),
    ])
    def test_no_counterexamples(self, descriptor):
        report = p2_sample_check(descriptor, trials=200, seed=1)
        assert report.holds
        assert report.accepted == 200
        assert report.to_dict()["counterexamples"] == []

    def test_rejection_sampling_alone(self):
        report = p2_sample_check(psi(0), trials=50, seed=2, absorb_after=None)
        assert report.holds
        assert report.accepted == 50
        assert report.absorbed == 0
        assert report.rejected > 0

    def test_drawn_pairs_are_mostly_unabsorbed(self):
        report = p2_sample_check(psi(0), trials=100, seed=1)
        assert report.absorbed < report.accepted // 2
        assert report.to_dict()["rejected"] == report.rejected

    def test_trivial_pair(self):
        from src.classification.sampling import check_pair

        product, left, right = check_pair(y / t, t, psi(0))
        assert product.is_member and left.is_member


polys = st.dictionaries(
    st.tuples(st.integers(-3, 3), st.integers(0, 3)), st.integers(-2, 2), max_size=5
).map(LaurentPoly)


class TestOracleProperties:
    """Property checks of the membership oracles"""

    @settings(max_examples=200, deadline=None)
    @given(polys)
    def test_psi_zero_is_syntactic(self, f):
        expected = all(i >= 0 for (i, j) in f.terms if j == 0)
        assert membership(f, psi(0)).is_member == expected

    @settings(max_examples=200, deadline=None)
    @given(polys)
    def test_localization_by_t(self, f):
        for A in (psi(0), psi(sqrt_t)):
            if membership(f, A).is_member:
                assert membership(t * f, A).is_member
                assert crucial_membership(t * f, A).is_member

    @settings(max_examples=100, deadline=None)
    @given(polys)
    def test_conductor_absorbs_laurent_factors(self, f):
        A = psi(sqrt_t)
        assert membership(conductor(A) * f * t ** -3, A).verdict is IN_CONDUCTOR

    @settings(max_examples=50, deadline=None)
    @given(st.integers(1, 4))
    def test_generators_are_members(self, n):
        for alpha in (finite_alpha(0), finite_alpha(sqrt_t), integers_stream()):
            for g in generators(alpha, n):
                assert element_membership(g, alpha).is_member
            assert membership(t ** -1, PsiCase(alpha)).verdict is NOT_IN


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
