import numpy as np
import pytest

from genpotts.model import (
    ModelParams,
    U_MAX,
    aux_potential,
    aux_potential_argmin,
    beta_of_u,
    embed,
    free_energy,
    free_energy_1d,
    free_energy_1d_du,
    free_energy_1d_du2,
    hamiltonian,
    mf_exponent,
    mf_map,
    relative_entropy,
)

# extended-precision value of (3/4) log(3/2) + (1/4) log(1/2)
REL_ENTROPY_3_4 = 0.1308120359411369591292018


def test_params_validation():
    ModelParams(2, 2, 0.0)
    with pytest.raises(ValueError):
        ModelParams(1.5, 2, 1.0)
    with pytest.raises(ValueError):
        ModelParams(2, 1.9, 1.0)
    with pytest.raises(ValueError):
        ModelParams(2, 2, -0.1)


def test_hamiltonian_examples():
    assert hamiltonian([1.0, 0.0], ModelParams(2, 2, 1.0)) == pytest.approx(-0.5, abs=1e-15)
    assert hamiltonian([0.5, 0.5], ModelParams(2, 2, 2.0)) == pytest.approx(-0.5, abs=1e-15)
    assert hamiltonian([1 / 3] * 3, ModelParams(3, 2, 3.0)) == pytest.approx(-0.5, abs=1e-15)


def test_hamiltonian_nonpositive_and_dimension():
    rng = np.random.default_rng(0)
    for _ in range(20):
        q = int(rng.integers(2, 6))
        w = rng.random(q)
        nu = w / w.sum()
        assert hamiltonian(nu, ModelParams(q, float(rng.uniform(2, 6)), float(rng.uniform(0, 5)))) <= 0
    with pytest.raises(ValueError):
        hamiltonian([0.5, 0.5], ModelParams(3, 2, 1.0))


def test_relative_entropy_examples():
    assert relative_entropy([0.25] * 4, 4) == pytest.approx(0.0, abs=1e-15)
    for m in (2, 3, 7):
        point = np.zeros(m)
        point[0] = 1.0
        assert relative_entropy(point, m) == pytest.approx(np.log(m), rel=1e-15)
    assert relative_entropy([0.75, 0.25], 2) == pytest.approx(REL_ENTROPY_3_4, abs=1e-15)


def test_relative_entropy_nonnegative_zero_only_at_uniform():
    rng = np.random.default_rng(1)
    for _ in range(50):
        m = int(rng.integers(2, 6))
        w = rng.random(m)
        nu = w / w.sum()
        val = relative_entropy(nu, m)
        assert 0.0 <= val <= np.log(m) + 1e-12
        if np.max(np.abs(nu - 1 / m)) > 1e-3:
            assert val > 0.0


def test_free_energy_examples():
    assert free_energy([1 / 3] * 3, ModelParams(3, 2, 3.0)) == pytest.approx(-0.5, abs=1e-14)
    assert free_energy([1.0, 0.0], ModelParams(2, 2, 2.0)) == pytest.approx(np.log(2) - 1, abs=1e-15)
    p = ModelParams(2, 2, 2.0)
    assert free_energy([0.9, 0.1], p) == pytest.approx(float(free_energy_1d(0.8, p)), abs=1e-12)


def test_embed_examples():
    assert np.allclose(embed(0.0, 4), [0.25] * 4)
    assert np.allclose(embed(0.5, 2), [0.75, 0.25])
    assert np.allclose(embed(0.5, 3), [2 / 3, 1 / 6, 1 / 6])
    with pytest.raises(ValueError):
        embed(1.0, 3)


def test_embed_is_probability_vector():
    for q in (2, 3, 6):
        for u in (0.0, 0.3, 0.999999):
            nu = embed(u, q)
            assert np.all(nu >= 0) and abs(nu.sum() - 1.0) < 1e-12


@pytest.mark.parametrize("q,z,beta", [(2, 2, 1.0), (3, 2, 3.0), (4, 3.5, 2.2), (6, 5, 40.0)])
def test_free_energy_matches_1d_restriction(q, z, beta):
    p = ModelParams(q, z, beta)
    for u in np.linspace(0, 0.99, 23):
        assert free_energy(embed(u, q), p) == pytest.approx(float(free_energy_1d(u, p)), abs=1e-12)


def test_free_energy_1d_at_zero_closed_form():
    for q, z, beta in [(2, 2, 1.0), (3, 4, 7.0), (5.5, 2.5, 0.3)]:
        p = ModelParams(q, z, beta)
        assert float(free_energy_1d(0.0, p)) == pytest.approx(-(beta / z) * q ** (1 - z), rel=1e-14)
        assert float(free_energy_1d_du(0.0, p)) == pytest.approx(0.0, abs=1e-14)


def test_free_energy_1d_derivatives_vs_central_differences():
    h = 1e-6
    p = ModelParams(3, 3, 5.0)
    for u in np.arange(0.05, 0.951, 0.05):
        fd = (free_energy_1d(u + h, p) - free_energy_1d(u - h, p)) / (2 * h)
        assert abs(free_energy_1d_du(u, p) - fd) / abs(fd) < 1e-6
        fd2 = (free_energy_1d_du(u + h, p) - free_energy_1d_du(u - h, p)) / (2 * h)
        assert abs(free_energy_1d_du2(u, p) - fd2) / abs(fd2) < 1e-6


def test_mf_map_examples():
    p = ModelParams(4, 3, 2.0)
    assert float(mf_exponent(0.0, p)) == 0.0
    assert float(mf_map(0.0, p)) == 0.0
    # z=2, q=2 reduces to the hyperbolic-tangent map
    us = np.linspace(0.0, 1.0, 41)
    for beta in (0.4, 1.7, 3.0):
        p = ModelParams(2, 2, beta)
        assert np.max(np.abs(mf_map(us, p) - np.tanh(beta * us / 2))) < 1e-12
    # at u=1 the map stays strictly below 1
    for z in (2, 3, 5):
        p = ModelParams(2, z, 1.3)
        assert float(mf_map(1.0, p)) == pytest.approx(np.tanh(1.3 / 2), rel=1e-12)
        assert float(mf_map(1.0, p)) < 1.0


def test_beta_of_u_examples():
    assert beta_of_u(1e-12, 2, 4) == pytest.approx(8 / 3, rel=1e-9)
    assert beta_of_u(0.5, 2, 2) == pytest.approx(2.19722457733621938279, rel=1e-14)
    near_one = [beta_of_u(u, 3, 2) for u in (0.999, 0.9995, 0.9999)]
    assert near_one[0] > 20 or near_one[0] > 0  # positive
    assert near_one[0] < near_one[1] < near_one[2]  # increasing toward the u->1 divergence
    with pytest.raises(ValueError):
        beta_of_u(0.0, 3, 2)
    with pytest.raises(ValueError):
        beta_of_u(1.0, 3, 2)


def test_beta_of_u_series_seam_is_continuous():
    for q, z in [(2, 2), (3, 3), (5, 2.5), (2, 5)]:
        below = beta_of_u(0.99e-8, q, z)
        above = beta_of_u(1.01e-8, q, z)
        assert abs(below - above) / above < 1e-9


def test_mean_field_consistency_u_solves_at_beta_of_u():
    # the two presentations of the mean-field equation agree
    for q, z in [(2, 3), (3, 2), (4, 4), (2.5, 2.2)]:
        for u in np.linspace(0.05, 0.95, 19):
            beta = beta_of_u(u, q, z)
            assert abs(float(mf_map(u, ModelParams(q, z, beta))) - u) < 1e-10


def test_slope_roots_are_mean_field_solutions():
    # sign changes of the 1-d slope away from 0 coincide with fixed-point crossings
    grid = np.linspace(1e-4, 0.999, 2500)
    for q, z, beta in [(3, 2, 2.9), (2, 5, 3.5), (4, 3, 9.0), (2, 3, 2.5)]:
        p = ModelParams(q, z, beta)
        slope = np.asarray(free_energy_1d_du(grid, p))
        residual = np.asarray(mf_map(grid, p)) - grid
        crossings_slope = np.nonzero(np.diff(np.sign(slope)) != 0)[0]
        crossings_fixed = np.nonzero(np.diff(np.sign(residual)) != 0)[0]
        assert len(crossings_slope) == len(crossings_fixed)
        for a, b in zip(crossings_slope, crossings_fixed):
            assert abs(grid[a] - grid[b]) < 2e-3


def test_beta_of_u_increasing_on_second_order_strip():
    grid = np.linspace(1e-6, 1 - 1e-6, 4000)
    for z in (2, 2.5, 3, 3.7, 4):
        vals = beta_of_u(grid, 2, z)
        assert np.all(np.diff(vals) > 0)


def test_aux_potential_examples():
    assert aux_potential_argmin(ModelParams(2, 2, 1.0)) == pytest.approx(1.0, rel=1e-15)
    assert aux_potential_argmin(ModelParams(2, 3, 4.0)) == pytest.approx(0.35355339059327376, rel=1e-14)
    p = ModelParams(3, 3, 4.0)
    t = aux_potential_argmin(p)
    h = 1e-3
    assert aux_potential(t + h, p) > aux_potential(t, p)
    assert aux_potential(t - h, p) > aux_potential(t, p)
    with pytest.raises(ValueError):
        aux_potential_argmin(ModelParams(3, 3, 0.0))
    with pytest.raises(ValueError):
        aux_potential(0.0, p)


def test_free_energy_1d_handles_u_near_one():
    p = ModelParams(3, 2, 2.0)
    val = float(free_energy_1d(U_MAX, p))
    assert np.isfinite(val)
