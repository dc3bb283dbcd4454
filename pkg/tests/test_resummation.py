"""Tests for the arctangent-branch resummation schemes."""

import math
from fractions import Fraction

import pytest

from winterspec.core import Kind, LevelIndex
from winterspec.jets import Jet, jet_arctan
from winterspec.perturbation import coefficients
from winterspec.resummation import (
    BRANCH_TABLE,
    FALLBACK_RADIUS,
    Branch,
    _argument_jet,
    _H_OFFSET,
    _N4_FALLBACK,
    branch_H,
    branch_H_jet,
    branch_argument,
    branch_for_level,
    fixed_point_momentum,
    phi_closed_n1,
    phi_functions,
    recursive_momentum,
    series_momentum,
)
from winterspec.spectrum_exact import exact_level


def representative_n(spec):
    """Smallest admissible n that also labels a positive-momentum level."""
    return max(spec.min_n, 1) if spec.l <= 0 else spec.min_n


def quartic_branch_series(t0, terms=6):
    """Exact power series t(xi) solving xi t^4 + 4 t^3 - 10 xi t^2 - 4 t + 5 xi = 0.

    Order-by-order Newton update over Fractions around the free root t0;
    the linearization dF/dt(t0, 0) = 12 t0^2 - 4 never vanishes for
    t0 in {0, +1, -1}, so every coefficient is uniquely determined.
    """

    def poly_mul(a, b, cap):
        out = [Fraction(0)] * cap
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if i + j >= cap:
                    break
                out[i + j] += ai * bj
        return out

    cap = terms + 1
    t = [Fraction(0)] * cap
    t[0] = Fraction(t0)
    slope = 12 * Fraction(t0) ** 2 - 4
    for m in range(1, cap):
        t2 = poly_mul(t, t, cap)
        t3 = poly_mul(t2, t, cap)
        t4 = poly_mul(t3, t, cap)
        xi_t4 = [Fraction(0)] + t4[:-1]
        xi_t2 = [Fraction(0)] + t2[:-1]
        residual = [4 * a - 4 * b + xa - 10 * xb for a, b, xa, xb in zip(t3, t, xi_t4, xi_t2)]
        residual[1] += 5
        t[m] = -residual[m] / slope
    return tuple(t[:terms])


class TestBranchTable:
    def test_entry_count_and_keys(self):
        assert len(BRANCH_TABLE) == 10
        per_n = {N: {b for (m, b) in BRANCH_TABLE if m == N} for N in (1, 2, 3, 4)}
        assert per_n[1] == {Branch.RESONANT}
        assert per_n[2] == {Branch.RESONANT, Branch.NONRES_UP}
        assert per_n[3] == {Branch.RESONANT, Branch.NONRES_UP, Branch.NONRES_DOWN}
        assert per_n[4] == {
            Branch.RESONANT,
            Branch.NONRES_UP,
            Branch.NONRES_DOWN,
            Branch.NONRES_MID,
        }

    def test_coupling_flavor(self):
        # odd cavity ratios run in the rescaled coupling, even ones in z itself
        for (N, _), spec in BRANCH_TABLE.items():
            assert spec.coupling == ("zeta" if N in (1, 3) else "z")

    def test_coupling_value(self):
        spec1 = BRANCH_TABLE[(1, Branch.RESONANT)]
        assert spec1.coupling_value(0.3) == pytest.approx(0.6, abs=1e-15)
        spec3 = BRANCH_TABLE[(3, Branch.NONRES_UP)]
        assert spec3.coupling_value(0.3) == pytest.approx(0.4, abs=1e-15)
        spec2 = BRANCH_TABLE[(2, Branch.RESONANT)]
        assert spec2.coupling_value(0.3) == 0.3
        spec4 = BRANCH_TABLE[(4, Branch.NONRES_MID)]
        assert spec4.coupling_value(-1.7) == -1.7

    def test_shift_is_l_over_n(self):
        for (N, _), spec in BRANCH_TABLE.items():
            assert spec.shift == Fraction(spec.l, N)

    def test_min_n_by_branch(self):
        for (N, b), spec in BRANCH_TABLE.items():
            if b in (Branch.RESONANT, Branch.NONRES_DOWN):
                assert spec.min_n == 1
            else:
                assert spec.min_n == 0

    def test_nu_eff(self):
        spec = BRANCH_TABLE[(4, Branch.NONRES_UP)]
        assert spec.nu_eff(2) == pytest.approx(math.pi * 2.25, abs=1e-15)
        res = BRANCH_TABLE[(3, Branch.RESONANT)]
        assert res.nu_eff(5) == pytest.approx(5 * math.pi, abs=1e-15)


class TestBranchForLevel:
    @pytest.mark.parametrize(
        "index, branch",
        [
            (LevelIndex(1, 2, 0), Branch.RESONANT),
            (LevelIndex(2, 0, 1), Branch.NONRES_UP),
            (LevelIndex(3, 1, -1), Branch.NONRES_DOWN),
            (LevelIndex(4, 1, 2), Branch.NONRES_MID),
            (LevelIndex(4, 3, 0), Branch.RESONANT),
        ],
    )
    def test_mapping(self, index, branch):
        spec = branch_for_level(index)
        assert spec.branch is branch
        assert spec.l == index.l
        assert spec.N == index.N

    def test_exceptional_rejected(self):
        with pytest.raises(ValueError):
            branch_for_level(LevelIndex(2, 2, 0, kind=Kind.EXCEPTIONAL))

    def test_unsupported_ratio(self):
        with pytest.raises(ValueError):
            branch_for_level(LevelIndex(5, 1, 0))


class TestBranchH:
    def test_vanishes_at_origin(self):
        for N, b in BRANCH_TABLE:
            assert branch_H(N, b, 0.0) == 0.0

    def test_n1_is_arctangent(self):
        for x in (-2.0, -0.3, 0.01, 0.7, 4.0):
            assert branch_H(1, Branch.RESONANT, x) == pytest.approx(
                math.atan(x), abs=1e-15
            )

    def test_n2_resonant_closed_form(self):
        # H = atan((sqrt(1 + 3 x^2) - 1) / x), the inverted quadratic
        for x in (-1.5, -0.2, 0.4, 2.0):
            root = math.sqrt(1.0 + 3.0 * x * x)
            assert branch_H(2, Branch.RESONANT, x) == pytest.approx(
                math.atan((root - 1.0) / x), abs=1e-14
            )

    def test_offset_table(self):
        assert set(_H_OFFSET) == {
            (3, Branch.NONRES_UP),
            (3, Branch.NONRES_DOWN),
            (4, Branch.NONRES_UP),
            (4, Branch.NONRES_DOWN),
        }
        assert _H_OFFSET[(3, Branch.NONRES_UP)] == pytest.approx(-math.pi / 3)
        assert _H_OFFSET[(3, Branch.NONRES_DOWN)] == pytest.approx(math.pi / 3)
        assert _H_OFFSET[(4, Branch.NONRES_UP)] == pytest.approx(-math.pi / 4)
        assert _H_OFFSET[(4, Branch.NONRES_DOWN)] == pytest.approx(math.pi / 4)

    def test_matches_argument_plus_offset(self, rng):
        # away from the fallback region H is literally atan of the real
        # branch argument shifted by the table offset
        for N, b in BRANCH_TABLE:
            off = _H_OFFSET.get((N, b), 0.0)
            for _ in range(25):
                x = rng.uniform(-3.0, 3.0)
                if abs(x) < 1e-2:
                    continue
                arg = branch_argument(N, b, x)
                assert branch_H(N, b, x) == pytest.approx(
                    math.atan(arg.real) + off, abs=1e-13
                )

    def test_argument_is_real(self, rng):
        for N, b in BRANCH_TABLE:
            for _ in range(200):
                x = rng.uniform(-3.0, 3.0)
                if abs(x) < 1e-3:
                    continue
                arg = branch_argument(N, b, x)
                assert abs(arg.imag) <= 1e-12 * max(1.0, abs(arg.real))

    def test_resonant_branches_are_odd(self):
        for N in (1, 2, 3, 4):
            for x in (0.02, 0.3, 1.7):
                assert abs(
                    branch_H(N, Branch.RESONANT, x) + branch_H(N, Branch.RESONANT, -x)
                ) <= 1e-11

    def test_up_down_mirror(self):
        # flipping the coupling sign swaps the two detuned branches
        for N in (3, 4):
            for x in (0.02, 0.3, 1.7):
                assert abs(
                    branch_H(N, Branch.NONRES_UP, x)
                    + branch_H(N, Branch.NONRES_DOWN, -x)
                ) <= 1e-11


class TestQuarticFallback:
    def test_series_match_newton_oracle_exactly(self):
        for branch, t0 in (
            (Branch.RESONANT, 0),
            (Branch.NONRES_UP, 1),
            (Branch.NONRES_DOWN, -1),
        ):
            assert _N4_FALLBACK[branch] == quartic_branch_series(t0)

    def test_mid_branch_needs_no_fallback(self):
        assert Branch.NONRES_MID not in _N4_FALLBACK
        # the inverted form stays finite through the origin
        assert branch_H(4, Branch.NONRES_MID, 1e-9) == pytest.approx(0.0, abs=1e-8)

    def test_seam_continuity(self):
        for b in (Branch.RESONANT, Branch.NONRES_UP, Branch.NONRES_DOWN):
            for r in (FALLBACK_RADIUS, -FALLBACK_RADIUS):
                inner = branch_H(4, b, r * (1.0 - 1e-6))
                outer = branch_H(4, b, r * (1.0 + 1e-6))
                assert abs(outer - inner) <= 1e-6

    def test_fallback_taylor_predicts_radical_values(self):
        # polynomial route extrapolated past the seam must meet the
        # radical route within its own cancellation noise
        for b in (Branch.RESONANT, Branch.NONRES_UP, Branch.NONRES_DOWN):
            jet = branch_H_jet(4, b, Jet.variable(0.0, 5))
            for x in (3e-4, -3e-4):
                taylor = sum(c.real * x**m for m, c in enumerate(jet.coeffs))
                assert abs(taylor - branch_H(4, b, x)) <= 1e-7

    def test_fallback_jet_matches_radical_jet_at_origin(self):
        for b in (Branch.RESONANT, Branch.NONRES_UP, Branch.NONRES_DOWN):
            a = Jet.variable(0.0, 5)
            fallback = branch_H_jet(4, b, a)
            tower = jet_arctan(_argument_jet(4, b, a))
            off = _H_OFFSET.get((4, b), 0.0)
            for m, (f, t) in enumerate(zip(fallback.coeffs, tower.coeffs)):
                want = t + off if m == 0 else t
                assert abs(f - want) <= 1e-12


class TestRecursiveScheme:
    def test_depth_one_example(self):
        # N = 1, n = 1 at rescaled coupling 0.1: w = pi + atan(0.1 pi)
        res = recursive_momentum(1, Branch.RESONANT, 1, 0.05, order=1)
        assert res.w == pytest.approx(math.pi + math.atan(0.1 * math.pi), abs=1e-13)
        assert res.w == pytest.approx(3.44598845, abs=5e-9)
        assert res.iterations == 1
        assert res.converged is True
        assert res.scheme == "recursive"

    def test_depth_ladder_tightens(self):
        exact = exact_level(1, 0.15, LevelIndex(1, 1, 0))
        errs = [
            abs(recursive_momentum(1, Branch.RESONANT, 1, 0.15, order=m).k - exact)
            for m in range(1, 6)
        ]
        assert all(a > b for a, b in zip(errs, errs[1:]))

    def test_deep_recursion_reaches_fixed_point(self):
        for (N, b), spec in BRANCH_TABLE.items():
            n = representative_n(spec)
            for z in (0.2, -0.2):
                deep = recursive_momentum(N, b, n, z, order=12)
                fp = fixed_point_momentum(N, b, n, z, tol=1e-15, max_iter=200)
                assert deep.w == pytest.approx(fp.w, rel=1e-7)

    def test_order_validation(self):
        with pytest.raises(ValueError):
            recursive_momentum(1, Branch.RESONANT, 1, 0.1, order=0)

    def test_min_n_validation(self):
        with pytest.raises(ValueError):
            recursive_momentum(2, Branch.RESONANT, 0, 0.1)
        with pytest.raises(ValueError):
            recursive_momentum(4, Branch.NONRES_DOWN, 0, 0.1)

    def test_slope_at_origin_matches_series(self):
        # central difference through the recursion, including the N = 4
        # polynomial fallback, must reproduce -kappa c1
        d = 1e-6
        for (N, b), spec in BRANCH_TABLE.items():
            n = representative_n(spec)
            pc = coefficients(LevelIndex(N, n, spec.l))
            kp = recursive_momentum(N, b, n, d, order=3).k
            km = recursive_momentum(N, b, n, -d, order=3).k
            slope = (kp - km) / (2.0 * d)
            assert slope == pytest.approx(-float(pc.kappa) * pc.coeffs[0], rel=1e-7)


class TestFixedPointScheme:
    def test_agrees_with_exact_spectrum(self, rng):
        for (N, b), spec in BRANCH_TABLE.items():
            checked = 0
            while checked < 12:
                z = rng.uniform(-2.0, 2.0)
                if abs(z) < 1e-3:
                    continue
                n = rng.randint(representative_n(spec), spec.min_n + 4)
                res = fixed_point_momentum(N, b, n, z)
                exact = exact_level(N, z, LevelIndex(N, n, spec.l))
                assert res.k == pytest.approx(exact, rel=1e-10)
                assert res.converged or res.last_increment < 1e-11
                checked += 1

    def test_bookkeeping(self):
        res = fixed_point_momentum(4, Branch.NONRES_MID, 1, 0.4)
        assert res.scheme == "fixed_point"
        assert res.order is None
        assert res.effective_index == pytest.approx(1.5)
        assert res.k == pytest.approx(res.w / math.pi, abs=0.0)

    def test_tight_tolerance_converges(self):
        # last-ulp oscillation at the default tolerance; one notch looser
        # settles cleanly
        res = fixed_point_momentum(4, Branch.RESONANT, 4, -1.588, tol=1e-12)
        assert res.converged is True

    def test_exhaustion_reported_not_raised(self):
        res = fixed_point_momentum(2, Branch.RESONANT, 1, 0.3, max_iter=3)
        assert res.converged is False
        assert res.iterations == 3
        # starting from zero, m capped sweeps retrace the depth-m recursion
        assert res.w == recursive_momentum(2, Branch.RESONANT, 1, 0.3, order=3).w


class TestSeriesScheme:
    def test_order_one_equals_depth_one_recursion(self, rng):
        for (N, b), spec in BRANCH_TABLE.items():
            n = representative_n(spec)
            for _ in range(5):
                z = rng.uniform(-1.5, 1.5)
                s = series_momentum(N, b, n, z, order=1)
                r = recursive_momentum(N, b, n, z, order=1)
                assert s.w == r.w

    def test_small_coupling_accuracy(self):
        for (N, b), spec in BRANCH_TABLE.items():
            n = representative_n(spec)
            for z in (0.02, -0.02):
                s = series_momentum(N, b, n, z, order=5)
                fp = fixed_point_momentum(N, b, n, z, tol=1e-15, max_iter=200)
                assert s.w == pytest.approx(fp.w, rel=1e-7)

    def test_bookkeeping(self):
        res = series_momentum(3, Branch.NONRES_DOWN, 2, 0.1, order=4)
        assert res.scheme == "series"
        assert res.order == 4
        assert res.iterations == 4
        assert res.effective_index == pytest.approx(2.0 - 1.0 / 3.0)
        # last summand of the truncated series is recorded as the increment
        phis = phi_functions(3, Branch.NONRES_DOWN, res.effective_index * math.pi * (4.0 / 3.0) * 0.1, 4)
        c = (4.0 / 3.0) * 0.1
        assert res.last_increment == pytest.approx(abs(phis[3] * c**3), rel=1e-12)

    def test_phi_order_validation(self):
        with pytest.raises(ValueError):
            phi_functions(1, Branch.RESONANT, 0.5, 0)

    def test_phi_order_one_is_plain_h(self):
        for N, b in BRANCH_TABLE:
            for eta in (-0.8, 0.3):
                assert phi_functions(N, b, eta, 1) == (branch_H(N, b, eta),)

    def test_phi_closed_forms_n1(self):
        for eta in (-2.0, -0.4, 0.1, 0.9, 3.0):
            closed = phi_closed_n1(eta)
            got = phi_functions(1, Branch.RESONANT, eta, 3)
            for a, b in zip(got, closed):
                assert a == pytest.approx(b, abs=5e-15)

    def test_phi2_closed_form_n2(self):
        # phi_2 = H'(eta) phi_1(eta) with H' of the inverted quadratic
        for eta in (-1.3, -0.5, 0.3, 1.1, 2.5):
            root = math.sqrt(1.0 + 3.0 * eta * eta)
            h1 = math.atan((root - 1.0) / eta)
            hp = (1.0 + 0.5 / root) / (1.0 + 4.0 * eta * eta)
            got = phi_functions(2, Branch.RESONANT, eta, 2)
            assert got[0] == pytest.approx(h1, abs=1e-14)
            assert got[1] == pytest.approx(hp * h1, abs=1e-13)
