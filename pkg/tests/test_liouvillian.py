"""Operator algebra, rotating-frame Hamiltonian, and Lindblad generator checks.

The generator tests pin the two conventions everything downstream relies on:
column-stacking vectorization and the sqrt(2*kappa)*a cavity jump (amplitude
decays at kappa, populations at 2*kappa).
"""

import math

import numpy as np
import pytest
import scipy.sparse as sp
from scipy.sparse.linalg import expm_multiply

from vitats import (
    CoherentPump,
    DimensionMismatch,
    HilbertSpec,
    ParameterError,
    SystemParams,
    ThermalPump,
    assemble_liouvillian,
    build_hamiltonian_rotating,
    build_operators,
    collapse_set,
    liouvillian_at,
    manifold,
    unvec,
    vec,
)
from vitats.liouvillian import trace_indices


def _dense(op):
    return np.asarray(op.todense())


def test_hilbert_spec_indexing():
    spec = HilbertSpec(n_max=4)
    assert spec.dim == 15
    assert spec.index(0, "g") == 0
    assert spec.index(0, "e") == 2
    assert spec.index(3, "f") == 10
    with pytest.raises(ParameterError):
        spec.index(5, "g")
    with pytest.raises(ParameterError):
        HilbertSpec(n_max=0)


def test_operator_algebra():
    spec = HilbertSpec(n_max=7)
    ops = build_operators(spec)
    comm = _dense(ops.a @ ops.a_dag - ops.a_dag @ ops.a)
    # canonical commutator holds strictly below the truncation edge
    below = np.arange(3 * spec.n_max)
    assert np.allclose(comm[np.ix_(below, below)], np.eye(3 * spec.n_max),
                       atol=1e-14)
    # the top photon block absorbs the truncation defect: 1 - (n_max+1)
    top = 3 * spec.n_max
    assert comm[top, top] == pytest.approx(-spec.n_max)
    assert np.allclose(_dense(ops.n_op), _dense(ops.a_dag @ ops.a), atol=0)
    sig = ops.sigma
    assert np.allclose(_dense(sig[("e", "g")] @ sig[("g", "e")]),
                       _dense(sig[("e", "e")]), atol=0)
    assert np.allclose(_dense(sig[("g", "e")] @ sig[("e", "g")]),
                       _dense(sig[("g", "g")]), atol=0)
    # atomic and photonic factors commute
    assert (ops.a @ sig[("e", "f")] - sig[("e", "f")] @ ops.a).nnz == 0
    evals = np.sort(np.linalg.eigvalsh(_dense(ops.n_op)))
    assert np.allclose(evals, np.repeat(np.arange(spec.n_max + 1), 3), atol=1e-12)


def test_hamiltonian_matrix_elements():
    p = SystemParams.from_effective(5.0, 1.0, eta=3.0, kappa=0.2, delta=1.4,
                                    pump=CoherentPump(Omega=0.7), epsilon=0.05)
    spec = HilbertSpec(n_max=5)
    h = _dense(build_hamiltonian_rotating(p, Delta=2.0, spec=spec))
    idx = spec.index
    for n in range(spec.n_max):
        assert h[idx(n + 1, "f"), idx(n, "e")] == pytest.approx(
            3.0 * math.sqrt(n + 1), rel=1e-14)
        assert h[idx(n + 1, "g"), idx(n, "g")] == pytest.approx(
            0.7 * math.sqrt(n + 1), rel=1e-14)
    for n in range(spec.n_max + 1):
        assert h[idx(n, "e"), idx(n, "g")] == pytest.approx(0.05, rel=1e-14)
        assert h[idx(n, "e"), idx(n, "e")] == pytest.approx(2.0 - 0.7, rel=1e-14)
        assert h[idx(n, "f"), idx(n, "f")] == pytest.approx(2.0 + 0.7, rel=1e-14)
    assert np.allclose(h, h.conj().T, atol=0)


def test_hamiltonian_hermitian_random():
    rng = np.random.default_rng(17)
    for _ in range(100):
        ge, gf = rng.uniform(0.0, 8.0, size=2)
        p = SystemParams.from_effective(
            ge, gf, eta=rng.uniform(0, 20), kappa=rng.uniform(0, 5),
            delta=rng.uniform(-10, 10),
            pump=CoherentPump(Omega=rng.uniform(0, 2),
                              pump_detuning=rng.uniform(-3, 3)),
            epsilon=rng.uniform(0, 0.5))
        h = build_hamiltonian_rotating(p, float(rng.uniform(-30, 30)),
                                       HilbertSpec(n_max=3))
        defect = (h - h.conj().T)
        assert defect.nnz == 0 or np.abs(defect.data).max() < 1e-12


def test_hamiltonian_eigenvalues_match_dressed_manifolds():
    # probe- and pump-free resonant Hamiltonian: zeros on all |n,g>, the
    # decoupled edge states, and +-eta*sqrt(n+1) for each coupled doublet
    p = SystemParams.from_effective(5.0, 1.0, eta=2.3, kappa=0.5)
    n_max = 6
    spec = HilbertSpec(n_max=n_max)
    h = _dense(build_hamiltonian_rotating(p, Delta=0.0, spec=spec, epsilon=0.0))
    got = np.sort(np.linalg.eigvalsh(h))
    expected = [0.0] * (n_max + 3)
    for n in range(n_max):
        m = manifold(n, p)
        expected.extend([m.omega_minus, m.omega_plus])
        assert m.splitting == pytest.approx(2 * 2.3 * math.sqrt(n + 1), rel=1e-12)
    assert np.allclose(got, np.sort(expected), atol=1e-12)


def test_hamiltonian_eigenvalues_match_dressed_manifolds_detuned():
    p = SystemParams.from_effective(5.0, 1.0, eta=2.3, kappa=0.5, delta=3.1)
    n_max = 5
    spec = HilbertSpec(n_max=n_max)
    # Delta = delta/2 zeroes the e level; each doublet then sits at
    # delta/2 + omega_-+ relative to |n,g>
    h = _dense(build_hamiltonian_rotating(p, Delta=3.1 / 2, spec=spec,
                                          epsilon=0.0))
    idx = spec.index
    for n in range(n_max):
        block = np.array([[h[idx(n, "e"), idx(n, "e")],
                           h[idx(n, "e"), idx(n + 1, "f")]],
                          [h[idx(n + 1, "f"), idx(n, "e")],
                           h[idx(n + 1, "f"), idx(n + 1, "f")]]])
        m = manifold(n, p)
        evals = np.sort(np.linalg.eigvalsh(block))
        assert evals[0] == pytest.approx(3.1 / 2 + m.omega_minus, rel=1e-12)
        assert evals[1] == pytest.approx(3.1 / 2 + m.omega_plus, rel=1e-12)


def test_collapse_set_contents():
    p = SystemParams(gamma={("e", "g"): 4.0, ("f", "g"): 1.0, ("e", "e"): 0.5},
                     eta=2.0, kappa=0.8)
    spec = HilbertSpec(n_max=2)
    ops = build_operators(spec)
    cs = collapse_set(p, spec)
    # n_th = 0: no raising jump; order is cavity, then sorted gamma pairs
    assert len(cs) == 4
    assert (cs[0] - math.sqrt(1.6) * ops.a).nnz == 0
    assert (cs[1] - math.sqrt(0.5) * ops.sigma[("e", "e")]).nnz == 0
    assert (cs[2] - math.sqrt(4.0) * ops.sigma[("g", "e")]).nnz == 0
    assert (cs[3] - math.sqrt(1.0) * ops.sigma[("g", "f")]).nnz == 0

    thermal = SystemParams(gamma={("e", "g"): 4.0}, kappa=0.8,
                           pump=ThermalPump(n_th=0.25))
    cs = collapse_set(thermal, spec)
    assert len(cs) == 3
    assert (cs[0] - math.sqrt(2 * 0.8 * 1.25) * ops.a).nnz == 0
    assert (cs[1] - math.sqrt(2 * 0.8 * 0.25) * ops.a_dag).nnz == 0

    # kappa = 0 with no thermal pump contributes no cavity jump at all
    lossless = SystemParams(gamma={("e", "g"): 4.0}, kappa=0.0)
    assert len(collapse_set(lossless, spec)) == 1


def test_vec_convention_and_trace_indices():
    rng = np.random.default_rng(29)
    d = 6
    rho = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    b = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    assert np.allclose(np.kron(b.T, a) @ vec(rho), vec(a @ rho @ b), atol=1e-12)
    assert np.allclose(unvec(vec(rho), d), rho, atol=0)
    assert vec(rho)[1] == rho[1, 0]
    assert np.allclose(vec(rho)[trace_indices(d)], np.diag(rho), atol=0)


def test_cavity_amplitude_decays_at_kappa():
    # undriven g-sector: <a>(t) = <a>(0) exp(-kappa t) exactly, even with
    # the coupling on, since sigma_fe has no support in the g sector
    kappa = 0.7
    p = SystemParams(gamma={}, eta=3.0, kappa=kappa)
    spec = HilbertSpec(n_max=3)
    sop = liouvillian_at(p, 0.0, spec, epsilon=0.0)
    psi = np.zeros(spec.dim)
    psi[spec.index(0, "g")] = 1 / math.sqrt(2)
    psi[spec.index(1, "g")] = 1 / math.sqrt(2)
    rho0 = np.outer(psi, psi).astype(complex)
    ops = build_operators(spec)
    a = _dense(ops.a)
    assert np.trace(a @ rho0) == pytest.approx(0.5, rel=1e-14)
    for t in (0.3, 1.0, 2.5):
        rho_t = unvec(expm_multiply(sop.matrix * t, vec(rho0)), spec.dim)
        got = np.trace(a @ rho_t)
        assert got.real == pytest.approx(0.5 * math.exp(-kappa * t), rel=1e-9)
        assert abs(got.imag) < 1e-12


def test_fock_decay_rates_from_generator_action():
    # population |1,g><1,g| drains at 2*kappa into |0,g><0,g|; the
    # photon coherence |1,g><0,g| is an eigenvector with eigenvalue -kappa
    kappa = 0.9
    p = SystemParams(gamma={}, eta=0.0, kappa=kappa)
    spec = HilbertSpec(n_max=2)
    sop = liouvillian_at(p, 0.0, spec, epsilon=0.0)
    d = spec.dim
    pop1 = np.zeros((d, d), dtype=complex)
    pop1[spec.index(1, "g"), spec.index(1, "g")] = 1.0
    pop0 = np.zeros((d, d), dtype=complex)
    pop0[spec.index(0, "g"), spec.index(0, "g")] = 1.0
    deriv = unvec(sop.matrix @ vec(pop1), d)
    assert np.allclose(deriv, 2 * kappa * (pop0 - pop1), atol=1e-14)

    coh = np.zeros((d, d), dtype=complex)
    coh[spec.index(1, "g"), spec.index(0, "g")] = 1.0
    deriv = unvec(sop.matrix @ vec(coh), d)
    assert np.allclose(deriv, -kappa * coh, atol=1e-14)


def test_trace_and_hermiticity_preserved():
    rng = np.random.default_rng(33)
    spec = HilbertSpec(n_max=2)
    d = spec.dim
    tr_idx = trace_indices(d)
    for k in range(100):
        pump = (ThermalPump(n_th=float(rng.uniform(0, 0.5))) if k % 2
                else CoherentPump(Omega=float(rng.uniform(0, 1)),
                                  pump_detuning=float(rng.uniform(-2, 2))))
        p = SystemParams(
            gamma={("e", "g"): float(rng.uniform(0, 6)),
                   ("e", "f"): float(rng.uniform(0, 2)),
                   ("f", "g"): float(rng.uniform(0, 2)),
                   ("e", "e"): float(rng.uniform(0, 1)),
                   ("f", "f"): float(rng.uniform(0, 1))},
            eta=float(rng.uniform(0, 8)), kappa=float(rng.uniform(0.01, 3)),
            delta=float(rng.uniform(-4, 4)), pump=pump,
            epsilon=float(rng.uniform(0, 0.3)))
        sop = liouvillian_at(p, float(rng.uniform(-20, 20)), spec)
        x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        rho = x + x.conj().T
        deriv = unvec(sop.matrix @ vec(rho), d)
        scale = max(1.0, float(np.abs(deriv).max()))
        assert abs(vec(deriv)[tr_idx].sum()) <= 1e-10 * scale
        assert np.abs(deriv - deriv.conj().T).max() <= 1e-10 * scale


def test_vacuum_ground_state_is_stationary():
    p = SystemParams.from_effective(5.0, 1.0, eta=4.0, kappa=1.0)
    spec = HilbertSpec(n_max=4)
    sop = liouvillian_at(p, 7.3, spec, epsilon=0.0)
    rho = np.zeros((spec.dim, spec.dim), dtype=complex)
    rho[0, 0] = 1.0
    assert np.abs(sop.matrix @ vec(rho)).max() == 0.0


def test_delta_dependence_is_affine():
    # dL/dDelta = -i(I kron P - P^T kron I) with P = |e><e| + |f><f|;
    # the linear-response sweep reuses one factorization because of this
    p = SystemParams.from_effective(5.0, 1.0, eta=4.0, kappa=1.0, delta=2.0,
                                    pump=ThermalPump(n_th=0.1))
    spec = HilbertSpec(n_max=3)
    ops = build_operators(spec)
    proj = (ops.sigma[("e", "e")] + ops.sigma[("f", "f")]).tocsr()
    eye = sp.identity(spec.dim, format="csr", dtype=complex)
    slope = -1j * (sp.kron(eye, proj, format="csr")
                   - sp.kron(proj.T, eye, format="csr"))
    l1 = liouvillian_at(p, -3.0, spec).matrix
    l2 = liouvillian_at(p, 11.0, spec).matrix
    diff = (l2 - l1) - 14.0 * slope
    assert diff.nnz == 0 or np.abs(diff.data).max() < 1e-12


def test_superoperator_metadata_and_shapes():
    p = SystemParams.from_effective(5.0, 1.0, eta=4.0, kappa=1.0,
                                    pump=CoherentPump(Omega=0.4,
                                                      pump_detuning=1.5))
    spec = HilbertSpec(n_max=2)
    sop = liouvillian_at(p, 6.0, spec)
    assert sop.spec == spec
    assert sop.probe_detuning == 6.0
    assert sop.pump_detuning == 1.5
    assert sop.matrix.shape == (spec.dim ** 2, spec.dim ** 2)
    assert sop.matrix.dtype == complex


def test_dimension_mismatch_raised():
    spec = HilbertSpec(n_max=2)
    bad = sp.identity(4, format="csr", dtype=complex)
    with pytest.raises(DimensionMismatch):
        assemble_liouvillian(bad, [], spec)
    good = sp.identity(spec.dim, format="csr", dtype=complex)
    with pytest.raises(DimensionMismatch):
        assemble_liouvillian(good, [bad], spec)
