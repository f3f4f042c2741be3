import numpy as np
import pytest

from suslov.errors import InvalidInertiaError
from suslov.liegroup import hat
from suslov.model import (GENERIC, GENERIC_M0, InertiaTensor, build_model, constrained_energy,
                          continuous_multiplier, embed_dstar, energy_gradient, eps_rhs, mu1, mu2,
                          mu3_cont, nu1, nu2, nu3_cont, reduced_lagrangian, reference_flow,
                          reference_trajectory, signed_distance, taylor_flow)


def test_presets_are_valid(generic, special):
    assert generic.I11 == 3 and generic.I23 == 0.5
    assert special.I11 == special.I22 and special.I13 == 0


def test_invalid_inertia_names_minor():
    with pytest.raises(InvalidInertiaError, match="minor 3"):
        build_model(InertiaTensor(1, 1, -1, 0, 0))
    with pytest.raises(InvalidInertiaError, match="minor 1"):
        build_model(InertiaTensor(-1, 1, 1, 0, 0))


def test_J_identity(generic, rng):
    for w in rng.normal(size=(10, 3)):
        lhs = generic.J @ hat(w) + hat(w) @ generic.J
        assert np.max(np.abs(lhs - hat(generic.I @ w))) <= 1e-12


class TestLagrangian:
    def test_values(self, generic):
        assert reduced_lagrangian(generic, np.zeros(3)) == 0
        assert reduced_lagrangian(generic, np.array([1.0, 0, 0])) == pytest.approx(1.5)

    def test_trace_form(self, generic, rng):
        for w in rng.normal(size=(100, 3)) * 3:
            q = reduced_lagrangian(generic, w)
            assert abs(reduced_lagrangian(generic, w, form="trace") - q) <= 1e-12 * max(1, q)


class TestVectorField:
    def test_equilibrium_line(self, generic):
        M = np.array([generic.I11 * generic.I23, -generic.I13 * generic.I22])
        assert np.array_equal(eps_rhs(generic, M), [0, 0])

    def test_value(self, generic):
        assert np.allclose(eps_rhs(generic, np.array([1.0, 0])), [0, 1 / 9], atol=1e-16)

    def test_energy_conserved(self, generic, rng):
        for M in rng.normal(size=(100, 2)) * 10:
            d = energy_gradient(generic, M) @ eps_rhs(generic, M)
            assert abs(d) <= 1e-13 * max(1, np.max(np.abs(M)) ** 3)


class TestEnergyGeometry:
    def test_energy(self, generic):
        assert constrained_energy(generic, (0, 0)) == 0
        assert constrained_energy(generic, (2, 2)) == pytest.approx(28 / 24)
        unit = build_model(InertiaTensor(1, 1, 1.5, 0, 0))
        assert constrained_energy(unit, (3, 4)) == pytest.approx(12.5)

    def test_embed(self, generic):
        assert np.array_equal(embed_dstar(generic, (0, 0)), [0, 0, 0])
        assert embed_dstar(generic, (12, 0))[2] == pytest.approx(4)
        diag = build_model(InertiaTensor(1, 2, 3, 0, 0))
        assert embed_dstar(diag, (5, -7))[2] == 0

    def test_signed_distance(self, generic, rng):
        for M in rng.normal(size=(20, 2)) * 10:
            assert abs(signed_distance(generic, embed_dstar(generic, M))) <= 1e-13 * max(1, np.abs(M).max())
        n = generic.normal
        assert signed_distance(generic, n) == pytest.approx(np.linalg.norm(n))
        assert signed_distance(generic, (0, 0, 1)) == pytest.approx(-12 / np.sqrt(16 + 9 / 4 + 144))


class TestFlows:
    def test_equilibrium_fixed(self, generic):
        M = np.array([generic.I11 * generic.I23, -generic.I13 * generic.I22]) * 2.5
        assert np.array_equal(taylor_flow(generic, M, 0.1), M)
        assert np.allclose(reference_flow(generic, M, 0.1), M, atol=1e-13)

    def test_eps_zero(self, generic):
        assert np.array_equal(taylor_flow(generic, (1.0, 2.0), 0.0), [1, 2])

    def test_taylor_order(self, generic):
        eps = np.geomspace(1e-1, 1e-3, 7)
        M = np.array([1.0, 1.0])
        err = [np.linalg.norm(taylor_flow(generic, M, e) - reference_flow(generic, M, e)) for e in eps]
        assert np.polyfit(np.log(eps), np.log(err), 1)[0] >= 3.8

    @pytest.mark.parametrize("M", [(1.0, 1.0), (0.5, -0.8), (-2.0, 0.3)])
    def test_series_coefficients_by_differences(self, generic, special, other, M):
        # third-order quotients of the exact flow approach the closed-form coefficients
        for m in (generic, special, other):
            M1, M2 = M
            e = 2e-3
            r = reference_flow(m, M, e)
            c = (r - np.array(M) - e * np.array([mu1(m, M1, M2), nu1(m, M1, M2)])
                 - e * e * np.array([mu2(m, M1, M2), nu2(m, M1, M2)])) / e ** 3
            want = np.array([mu3_cont(m, M1, M2), nu3_cont(m, M1, M2)])
            assert np.linalg.norm(c - want) <= 0.01 * np.linalg.norm(want) + 1e-9

    def test_reference_energy(self, generic):
        E0 = constrained_energy(generic, GENERIC_M0)
        out = reference_trajectory(generic, GENERIC_M0, np.linspace(0, 1, 11))
        drift = max(abs(constrained_energy(generic, M) - E0) for M in out) / E0
        assert drift <= 1e-11

    def test_reference_self_consistent(self, generic):
        a = reference_flow(generic, (1.0, 1.0), 0.5, tol=1e-10)
        b = reference_flow(generic, (1.0, 1.0), 0.5, tol=5e-11)
        assert np.max(np.abs(a - b)) <= 1e-10

    def test_reference_tol_floor(self, generic):
        with pytest.raises(ValueError):
            reference_flow(generic, (1, 1), 0.1, tol=1e-15)


class TestMultiplier:
    def test_zero(self, generic):
        assert continuous_multiplier(generic, (0.0, 0.0)) == 0

    def test_diagonal(self):
        m = build_model(InertiaTensor(1, 2, 3, 0, 0))
        M = np.array([0.7, -1.3])
        M3 = np.array([*M, 0.0])
        assert continuous_multiplier(m, M) == pytest.approx(-np.cross(M3, m.Iinv @ M3)[2])

    def test_tangency_identity(self, generic, rng):
        # third component of the full equation equals d/dt of the plane-embedded M3
        for M in rng.normal(size=(10, 2)) * 3:
            M3 = embed_dstar(generic, M)
            dM = eps_rhs(generic, M)
            chain = (generic.I13 * generic.I22 * dM[0] + generic.I11 * generic.I23 * dM[1]) / (
                generic.I11 * generic.I22)
            rhs3 = np.cross(M3, generic.Iinv @ M3)[2] + continuous_multiplier(generic, M)
            assert abs(rhs3 - chain) <= 1e-12 * max(1, abs(chain))

    def test_tangency_along_flow(self, generic, rng):
        h = 1e-3
        for M in rng.normal(size=(5, 2)) * 3:
            fd = (embed_dstar(generic, reference_flow(generic, M, h))[2]
                  - embed_dstar(generic, reference_flow(generic, M, -h))[2]) / (2 * h)
            M3 = embed_dstar(generic, M)
            rhs3 = np.cross(M3, generic.Iinv @ M3)[2] + continuous_multiplier(generic, M)
            assert abs(fd - rhs3) <= 1e-6 * max(1, abs(rhs3))
