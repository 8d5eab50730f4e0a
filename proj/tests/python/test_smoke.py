import numpy as np
import pytest

import faithful

cp = pytest.importorskip("cvxpy")


def partial_trace(rho, d, keep):
    t = rho.reshape(d, d, d, d)
    return np.einsum("ijkj->ik", t) if keep == 0 else np.einsum("jijk->ik", t)


def reference_sdp(rho, d):
    n = d * d
    chi = cp.Variable((n, n), hermitian=True)
    eye = np.eye(d) / d
    constraints = [
        chi >> 0,
        cp.partial_trace(chi, [d, d], axis=0) == eye,
        cp.partial_trace(chi, [d, d], axis=1) == eye,
    ]
    problem = cp.Problem(cp.Maximize(cp.real(cp.trace(rho @ chi))), constraints)
    problem.solve(solver=cp.CLARABEL)
    return problem.value


def test_sampled_states_are_density_matrices():
    for d in (2, 3):
        rho = faithful.sample("bures", d, 5, 0)
        assert rho.shape == (d * d, d * d)
        assert np.allclose(rho, rho.conj().T)
        assert abs(np.trace(rho) - 1) < 1e-12
        assert np.linalg.eigvalsh(rho).min() > -1e-12
    assert np.array_equal(faithful.sample("hs", 3, 5, 1), faithful.sample("hs", 3, 5, 1))


def test_x_operator_formula():
    d = 3
    rho = faithful.sample("hs", d, 6, 0)
    ra, rb = partial_trace(rho, d, 0), partial_trace(rho, d, 1)
    expected = rho - (np.kron(ra, np.eye(d)) + np.kron(np.eye(d), rb)) / d + 2 / d**2 * np.eye(d * d)
    assert np.allclose(faithful.x_operator(rho), expected, atol=1e-13)


@pytest.mark.parametrize("d", [2, 3])
def test_sdp_matches_reference_solver(d):
    for i in range(3):
        rho = faithful.sample("bures", d, 7, i)
        ours = faithful.sdp_max_overlap(rho)
        assert ours["converged"]
        assert abs(ours["optimum"] - reference_sdp(rho, d)) < 1e-5
        chi = ours["chi"]
        assert np.allclose(partial_trace(chi, d, 0), np.eye(d) / d, atol=1e-9)
        assert np.linalg.eigvalsh(chi).min() > -1e-9


def test_pure_state_singlet_fraction():
    rng = np.random.default_rng(3)
    d = 3
    psi = rng.normal(size=d * d) + 1j * rng.normal(size=d * d)
    psi /= np.linalg.norm(psi)
    s = np.linalg.svd(psi.reshape(d, d), compute_uv=False)
    value, v = faithful.max_singlet_fraction(np.outer(psi, psi.conj()), restarts=20)
    assert abs(value - s.sum() ** 2 / d) < 1e-9
    assert np.allclose(v.conj().T @ v, np.eye(d), atol=1e-10)


def test_classify():
    report = faithful.classify(faithful.isotropic(3, 0.5))
    assert report["verdict"] == "faithful-3c"
    assert report["annotations"]["teleportation_advantage"]
    target = np.array(report["certificates"]["target"]["re"]) + 1j * np.array(report["certificates"]["target"]["im"])
    assert np.real(target.conj() @ faithful.isotropic(3, 0.5) @ target) > 1 / 3
    assert faithful.classify(np.eye(9) / 9)["verdict"] == "ppt-unfaithful"
    with pytest.raises(ValueError):
        faithful.classify(np.eye(9))
    with pytest.raises(ValueError):
        faithful.classify(np.eye(6) / 6)


def test_table_and_witness_tools():
    counts = faithful.run_table("bures", 3, 20, 1, workers=2)
    assert sum(counts.values()) == 20
    assert counts == faithful.run_table("bures", 3, 20, 1, workers=1)

    assert faithful.obs4_detectable(np.array([1 / np.sqrt(2), 0.5, 0.5]), 2)[0]
    c = faithful.obs5_counterexample(np.array([0.9, 0.3, 0.316]), 2)
    assert c["detected_by_target"] and c["undetected_by_max_entangled"]
    z = faithful.rfw_decomposition(np.array([0.8, 0.6]))
    assert z["off_diagonal_mass"] < 1e-12
    assert abs(sum(z["weights"]) - 1) < 1e-14
