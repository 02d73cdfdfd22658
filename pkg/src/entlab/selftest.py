"""Fast runtime self-checks over every module's invariants.

Used by the ``selftest`` CLI command; the pytest suite runs the same
invariants at full scale.
"""

from __future__ import annotations

import numpy as np

from . import cmat, experiment, measures, qstate, sampler


def _random_hermitian(rng: sampler.RngStream, n: int) -> np.ndarray:
    u = rng.uniforms(n, 4, 4)
    v = rng.uniforms(n, 4, 4)
    a = (u - 0.5) + 1j * (v - 0.5)
    return a + np.conj(a.transpose(0, 2, 1))


def check_linalg(n: int = 2000) -> None:
    rng = sampler.RngStream(101)
    herm = _random_hermitian(rng, n)
    for m in herm[:200]:
        dec = cmat.hermitian_eig(m)
        u, w = dec.eigenvectors, dec.eigenvalues
        assert np.all(np.diff(w) <= 0)
        assert np.abs(u @ np.conj(u.T) - np.eye(4)).max() < 1e-10
        assert np.abs((u * w) @ np.conj(u.T) - m).max() < cmat.TOL.reconstruction
    w = cmat.eigvalsh_desc(herm)
    traces = np.einsum("nii->n", herm).real
    assert np.abs(w.sum(axis=1) - traces).max() < 1e-10
    pt = cmat.partial_transpose_b(herm)
    assert np.array_equal(cmat.partial_transpose_b(pt), herm)
    assert np.array_equal(np.einsum("nii->n", pt), np.einsum("nii->n", herm))
    g = rng.uniforms(n, 4, 4) - 0.5 + 1j * (rng.uniforms(n, 4, 4) - 0.5)
    psd = g @ np.conj(g.transpose(0, 2, 1))
    psd /= np.einsum("nii->n", psd).real[:, None, None]
    s = cmat.psd_sqrt(psd)
    assert np.abs(s @ s - psd).max() < cmat.TOL.reconstruction


def check_states(n_grid: int = 26) -> None:
    for f in np.linspace(0.25, 1.0, n_grid):
        rho = qstate.werner_state(float(f))
        w = cmat.eigvalsh_desc(rho.matrix)
        expect = np.sort([f, (1 - f) / 3, (1 - f) / 3, (1 - f) / 3])[::-1]
        assert np.abs(w - expect).max() < 1e-12
    for alpha in np.linspace(0.0, 1.0, n_grid):
        rho = qstate.pure_schmidt(float(alpha))
        assert np.abs(rho.matrix @ rho.matrix - rho.matrix).max() < 1e-12
    assert np.abs(qstate.singlet().matrix - qstate.werner_state(1.0).matrix).max() < 1e-15


def check_measures(n: int = 2000) -> None:
    for f in np.linspace(0.5, 1.0, 26):
        rho = qstate.werner_state(float(f))
        assert abs(measures.concurrence(rho) - (2 * f - 1)) < 1e-10
        assert abs(measures.e_negative(rho) - (f - 0.5)) < 1e-10
    rng = sampler.RngStream(103)
    kets = rng.uniforms(n, 4) - 0.5 + 1j * (rng.uniforms(n, 4) - 0.5)
    kets /= np.linalg.norm(kets, axis=1)[:, None]
    pures = kets[:, :, None] * np.conj(kets[:, None, :])
    c = measures.concurrence_batch(pures)
    en = measures.e_negative_batch(pures)
    assert np.abs(c - 2 * en).max() < 1e-9
    rhos = sampler.random_density_batch(sampler.RngStream(104), n)
    table = measures.measure_table(rhos)
    assert np.all(table["concurrence"] >= 2 * table["e_negative"] - 1e-9)
    sep = table["separable"]
    assert np.array_equal(sep, table["e_negative"] <= measures.EPS_SEP)


def check_sampler(n: int = 2000) -> None:
    a = sampler.random_density_batch(sampler.RngStream(105), n)
    b = sampler.random_density_batch(sampler.RngStream(105), n)
    assert np.array_equal(a, b)
    rhos, probs = sampler.random_density_batch(sampler.RngStream(106), n, return_probs=True)
    u = sampler.random_cue_unitary(sampler.RngStream(107))
    assert np.abs(u @ np.conj(u.T) - np.eye(4)).max() < 1e-12
    w = cmat.eigvalsh_desc(rhos)
    assert np.abs(w - np.sort(probs, axis=1)[:, ::-1]).max() < 1e-10


def check_experiment(n_pairs: int = 256) -> None:
    cfg1 = experiment.ExperimentConfig(seed=108, n_pairs=n_pairs)
    cfg2 = experiment.ExperimentConfig(seed=108, n_pairs=n_pairs, threads=2)
    s1 = experiment.run_experiment(cfg1)
    s2 = experiment.run_experiment(cfg2)
    assert np.array_equal(s1.pairs, s2.pairs)
    assert s1.p_entangled == s2.p_entangled
    assert s1.n_pairs == n_pairs
    assert s1.states_drawn == s1.states_kept + s1.states_discarded
    assert s1.states_kept == 2 * (s1.n_pairs + s1.n_ties_excluded)


SUITES = (
    ("linear algebra invariants", check_linalg),
    ("state constructors", check_states),
    ("measure oracles", check_measures),
    ("sampler determinism and spectra", check_sampler),
    ("experiment determinism and counting", check_experiment),
)


def run_selftest(verbose: bool = True) -> bool:
    """Run every suite; returns True iff all pass."""
    ok = True
    for name, fn in SUITES:
        try:
            fn()
        except AssertionError as exc:
            ok = False
            if verbose:
                print(f"[FAIL] {name}: {exc}")
        else:
            if verbose:
                print(f"[PASS] {name}")
    return ok
