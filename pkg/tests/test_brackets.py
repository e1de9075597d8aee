"""Tests for the bracket-matrix evaluators and the tensor-form cross-checks."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plie import sampling
from plie.brackets import (
    BracketSpec,
    HoloFn1,
    antisymmetrize,
    ao_minus_bivector,
    ao_plus_bivector,
    double_bivector,
    dual_group_bivector,
    dual_bases,
    gl_mult_bivector,
    pairing,
    prime_bivector,
    s1_product_bivector,
    s_bivector,
    s_bivector_tensor,
    sts_bivector,
    sts_rhs_tensor,
    zak_complex_bivector,
    zak_real_bivector,
)
from plie.errors import ConfigError
from plie.points import DualPair, SPoint, SpinPoint, SpinTuple
from plie.tensors import dj_r, r_pm

F_AFF = HoloFn1(lambda t: 2 + t, lambda t: 1 + 0 * t, "F")
G_AFF = HoloFn1(lambda t: -1 + 0 * t, lambda t: 0 * t, "G")

KAPPAS = [1.0, 1j, 2.0 - 1.0j]

complex_entries = st.complex_numbers(max_magnitude=0.8, allow_nan=False, allow_infinity=False)


def _spoint(seed, n, d, radius=1.0):
    return sampling.sample_spoint(seed, 0, n, d, radius)


def test_antisymmetrize_is_exact():
    rng = np.random.default_rng(1)
    M = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    A = antisymmetrize(M)
    np.testing.assert_array_equal(A, -A.T)
    np.testing.assert_array_equal(np.diag(A), np.zeros(5))
    np.testing.assert_array_equal(np.triu(A, 1), np.triu(M, 1))


class TestSBivector:
    def test_zero_point(self):
        n, d = 2, 3
        kappa = 2.0 - 1.0j
        M = s_bivector(kappa, SPoint.zero(n, d))
        nd = n * d
        np.testing.assert_array_equal(M[:nd, :nd], np.zeros((nd, nd)))
        np.testing.assert_array_equal(M[nd:, nd:], np.zeros((nd, nd)))
        # {A(i,al), B(be,k)} = kappa delta_albe delta_ik; B block is ordered (al,i)
        cross = M[:nd, nd:]
        for i in range(n):
            for a in range(d):
                for b in range(d):
                    for k in range(n):
                        expected = kappa if (a == b and i == k) else 0.0
                        assert cross[i * d + a, b * n + k] == expected

    @pytest.mark.parametrize("kappa", KAPPAS)
    def test_scalar_case(self, kappa):
        A, B = 0.37 - 0.21j, -0.54 + 0.8j
        M = s_bivector(kappa, SPoint([[A]], [[B]]))
        assert abs(M[0, 1] - kappa * (1 + A * B)) < 1e-15
        assert M[0, 0] == 0 and M[1, 1] == 0

    @pytest.mark.parametrize("n,d", [(1, 1), (2, 2), (3, 2), (2, 4), (4, 4)])
    @pytest.mark.parametrize("kappa", KAPPAS)
    def test_matches_tensor_oracle(self, n, d, kappa):
        p = _spoint(n * 100 + d, n, d)
        M = s_bivector(kappa, p)
        T = antisymmetrize(s_bivector_tensor(kappa, p))
        assert np.max(np.abs(M - T)) < 1e-13

    def test_kappa_antilinearity(self):
        p = _spoint(7, 3, 2)
        np.testing.assert_array_equal(s_bivector(1.5j, p), -s_bivector(-1.5j, p))

    @given(
        a=st.lists(complex_entries, min_size=2, max_size=2),
        b=st.lists(complex_entries, min_size=2, max_size=2),
    )
    @settings(max_examples=25, deadline=None)
    def test_oracle_agreement_property(self, a, b):
        p = SPoint(np.array(a).reshape(2, 1), np.array(b).reshape(1, 2))
        M = s_bivector(1.0, p)
        T = antisymmetrize(s_bivector_tensor(1.0, p))
        assert np.max(np.abs(M - T)) < 1e-13


class TestProductBivector:
    def test_d1_equals_s(self):
        s = sampling.sample_spin(3, 0, 4, 1.0)
        t = SpinTuple([s])
        np.testing.assert_array_equal(
            s1_product_bivector(1.0, t), s_bivector(1.0, s.as_spoint())
        )

    def test_zero_point_cross_block(self):
        n, d, kappa = 3, 2, 2.0 + 1.0j
        M = s1_product_bivector(kappa, SpinTuple.zero(n, d))
        for a in range(d):
            off = 2 * n * a
            blk = M[off : off + n, off + n : off + 2 * n]
            np.testing.assert_allclose(blk, kappa * np.eye(n))
        # off-diagonal copy blocks vanish
        assert np.max(np.abs(M[: 2 * n, 2 * n :])) == 0


class TestOscillatorVariants:
    def test_ao_plus_zero_point(self):
        n, d = 2, 2
        M = ao_plus_bivector(1.0, SPoint.zero(n, d))
        nd = n * d
        np.testing.assert_allclose(M[:nd, nd:], -_cross_delta(n, d))

    def test_prime_zero_point(self):
        n, d, kappa = 3, 2, 2.0 - 1.0j
        M = prime_bivector(kappa, SPoint.zero(n, d))
        nd = n * d
        np.testing.assert_allclose(M[:nd, nd:], kappa * _cross_delta(n, d))

    def test_ao_minus_zero_point(self):
        n, d = 2, 3
        M = ao_minus_bivector(1.0, SPoint.zero(n, d))
        nd = n * d
        np.testing.assert_allclose(M[:nd, nd:], -_cross_delta(n, d))


def _cross_delta(n: int, d: int) -> np.ndarray:
    """delta_albe delta_ik in the (i,al) x (be,k) block ordering."""
    out = np.zeros((n * d, n * d))
    for i in range(n):
        for a in range(d):
            out[i * d + a, a * n + i] = 1.0
    return out


class TestGlMult:
    def test_identity_point(self):
        M = gl_mult_bivector(1.0, np.eye(3))
        assert np.max(np.abs(M)) == 0

    @pytest.mark.parametrize("ell", [1, 2, 3])
    def test_matches_commutator_form(self, ell):
        g = sampling.sample_gl(5, ell, ell, 1.0)
        r = dj_r(ell)
        kappa = 0.7 - 0.3j
        oracle = kappa * (r.lmul1(g).lmul2(g) - r.rmul1(g).rmul2(g))
        np.testing.assert_allclose(
            gl_mult_bivector(kappa, g),
            antisymmetrize(oracle.array.reshape(ell * ell, ell * ell)),
            atol=1e-14,
        )

    def test_diagonal_point(self):
        M = gl_mult_bivector(1.0, np.diag([2.0, 3.0]))
        # chart order: g11 g12 g21 g22
        assert M[0, 3] == 0  # {g11, g22}
        assert M[1, 2] == 0  # {g12, g21}: coefficient sgn(2-1)+sgn(1-2) = 0


class TestDouble:
    def test_identity_point(self):
        M = double_bivector(1.0, np.eye(2), np.eye(2))
        assert np.max(np.abs(M)) == 0

    def test_scalar_case(self):
        M = double_bivector(1.0, np.array([[0.4 + 0.1j]]), np.array([[-0.2j]]))
        assert np.max(np.abs(M)) == 0

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            double_bivector(1.0, np.eye(2), np.eye(3))


class TestDualGroup:
    def test_identity_point(self):
        M = dual_group_bivector(1.0, DualPair.identity(3))
        assert np.max(np.abs(M)) == 0

    def test_scalar_case(self):
        M = dual_group_bivector(1.0, DualPair([[2.0]], [[0.5]]))
        np.testing.assert_array_equal(M, np.zeros((1, 1)))

    def test_restriction_of_double(self):
        from plie.charts import glstar_free_indices

        pair = sampling.sample_dual(9, 0, 3, 0.4)
        idx = glstar_free_indices(3)
        full = double_bivector(1.0, pair.hplus, pair.hminus)
        np.testing.assert_allclose(
            dual_group_bivector(1.0, pair), full[np.ix_(idx, idx)], atol=1e-14
        )


class TestSts:
    def test_identity_point(self):
        assert np.max(np.abs(sts_bivector(1.0, np.eye(3)))) < 1e-15

    def test_scalar_case(self):
        assert np.max(np.abs(sts_bivector(1.0, np.array([[1.7]])))) == 0

    @pytest.mark.parametrize("ell", [2, 3, 4])
    def test_matches_tensor_oracle(self, ell):
        h = sampling.sample_gl(11, ell, ell, 1.0)
        kappa = 2.0 - 1.0j
        oracle = sts_rhs_tensor(kappa, h, ell).array.reshape(ell * ell, ell * ell)
        np.testing.assert_allclose(sts_bivector(kappa, h), antisymmetrize(oracle), atol=1e-13)


class TestZakrzewski:
    def test_n1_cross_entry(self):
        a, b = 0.3 + 0.1j, 0.2 - 0.4j
        kappa = 1.5 - 0.5j
        M = zak_complex_bivector(kappa, F_AFF, G_AFF, SpinPoint([a], [b]))
        t = a * b
        expected = 0.5 * kappa * F_AFF.eval(t) - 0.5 * kappa * G_AFF.eval(t) * a * b
        assert abs(M[0, 1] - expected) < 1e-15

    def test_real_case_n1(self):
        eps = 0.8
        u, ubar = 0.3 + 0.1j, 0.2 - 0.4j
        M = zak_real_bivector(eps, F_AFF, G_AFF, np.array([u]), np.array([ubar]))
        t = u * ubar
        expected = -1j * eps * F_AFF.eval(t) + 1j * eps * G_AFF.eval(t) * t
        assert abs(M[0, 1] - expected) < 1e-15

    def test_real_case_rejects_zero_epsilon(self):
        with pytest.raises(ConfigError):
            zak_real_bivector(0.0, F_AFF, G_AFF, np.array([1.0]), np.array([1.0]))

    @pytest.mark.parametrize("n", [1, 2, 4])
    @pytest.mark.parametrize("kappa", KAPPAS)
    def test_affine_case_reduces_to_s(self, n, kappa):
        """With F = 2+t and G = -1 the spin bracket coincides with S(n,1)."""
        s = sampling.sample_spin(13, n, n, 0.6)
        Mz = zak_complex_bivector(kappa, F_AFF, G_AFF, s)
        Ms = s_bivector(kappa, s.as_spoint())
        assert np.max(np.abs(Mz - Ms)) < 1e-13


class TestHoloFn1:
    def test_affine_constructor(self):
        f = HoloFn1.affine(2.0, 3.0)
        assert f.eval(1.5) == 6.5 and f.deriv(0.0) == 3.0

    def test_rejects_wrong_derivative(self):
        with pytest.raises(ValueError):
            HoloFn1(lambda t: t * t, lambda t: 3 * t, "bad")


class TestDualBases:
    @pytest.mark.parametrize("ell", [1, 2, 3])
    @pytest.mark.parametrize("kappa", KAPPAS)
    def test_duality(self, ell, kappa):
        db = dual_bases(ell, kappa)
        n = len(db.Ta)
        G = np.array([[pairing(kappa, db.Ta[p], db.Tb[q]) for q in range(n)] for p in range(n)])
        np.testing.assert_allclose(G, np.eye(n), atol=1e-14)

    @pytest.mark.parametrize("ell", [1, 2, 3, 4])
    def test_resolution_identity(self, ell):
        kappa = 2.0 - 1.0j
        db = dual_bases(ell, kappa)
        accZ = np.zeros((ell, ell, ell, ell), dtype=complex)
        accW = np.zeros((ell, ell, ell, ell), dtype=complex)
        for (X, _), (Z, W) in zip(db.Ta, db.Tb):
            accZ += np.einsum("ij,kl->ijkl", X, Z)
            accW += np.einsum("ij,kl->ijkl", X, W)
        assert np.max(np.abs(accZ + kappa * r_pm(ell, -1).array)) < 1e-13
        assert np.max(np.abs(accW + kappa * r_pm(ell, +1).array)) < 1e-13

    def test_rejects_zero_kappa(self):
        with pytest.raises(ConfigError):
            dual_bases(2, 0.0)


class TestBracketSpec:
    def test_unknown_kind(self):
        with pytest.raises(ConfigError):
            BracketSpec("Quadratic", 1.0, n=2, d=2)

    def test_missing_sizes(self):
        with pytest.raises(ConfigError):
            BracketSpec("S", 1.0, n=2)
        with pytest.raises(ConfigError):
            BracketSpec("GLmult", 1.0)

    def test_zero_kappa(self):
        with pytest.raises(ConfigError):
            BracketSpec("S", 0.0, n=1, d=1)

    def test_zak_requires_functions(self):
        with pytest.raises(ConfigError):
            BracketSpec("ZakC", 1.0, n=2)

    @pytest.mark.parametrize(
        "spec,dim",
        [
            (BracketSpec("S", 1.0, n=2, d=3), 12),
            (BracketSpec("Sprod", 1.0, n=2, d=3), 12),
            (BracketSpec("GLmult", 1.0, ell=3), 9),
            (BracketSpec("Double", 1.0, ell=2), 8),
            (BracketSpec("DualGroup", 1.0, ell=3), 9),
            (BracketSpec("ZakC", 1.0, n=4, F=F_AFF, G=G_AFF), 8),
        ],
    )
    def test_dim(self, spec, dim):
        assert spec.dim == dim
        assert spec.chart().dim == dim

    def test_pack_bivector_roundtrip(self):
        spec = BracketSpec("S", 1.0, n=2, d=2)
        p = _spoint(17, 2, 2)
        bv = spec.bivector_at(p)
        np.testing.assert_array_equal(bv.matrix, s_bivector(1.0, p))
        assert bv.chart.dim == 8

    def test_every_bivector_is_antisymmetric(self):
        specs = [
            BracketSpec("S", 1j, n=2, d=2),
            BracketSpec("Sprod", 1j, n=2, d=2),
            BracketSpec("AOplus", 1j, n=2, d=2),
            BracketSpec("AOminus", 1j, n=2, d=2),
            BracketSpec("Prime", 1j, n=2, d=2),
            BracketSpec("GLmult", 1j, ell=3),
            BracketSpec("Double", 1j, ell=2),
            BracketSpec("STS", 1j, ell=3),
            BracketSpec("ZakC", 1j, n=3, F=F_AFF, G=G_AFF),
            BracketSpec("ZakR", epsilon=0.5, n=3, F=F_AFF, G=G_AFF),
        ]
        for spec in specs:
            x = sampling.sample_vector(23, 0, spec.dim, 1.0)
            M = spec.bivector(x)
            np.testing.assert_array_equal(M, -M.T)
