"""Acceptance suite: end-to-end checks of the published invariants.

Each criterion pairs a closed-form or independently computed oracle with
the library's output at the stated tolerance and, where stated, a runtime
budget. One pass/fail line per criterion is printed in the terminal
summary (see conftest.py).
"""

import itertools
import time
from math import comb

import numpy as np

from edtransfer import catalog, edcrit, spectral, transfer
from edtransfer.edcrit import VarietySpec, build_lagrange_system
from edtransfer.homotopy import SquareSystem, TrackOptions, bezout_bound, solve
from edtransfer.polyalg import MultiPoly


def test_criterion_1_rank_varieties():
    rng = np.random.default_rng(101)
    started = time.perf_counter()
    for n, t, r in [(2, 2, 1), (3, 3, 1), (3, 3, 2), (3, 4, 1), (3, 4, 2), (4, 5, 2)]:
        entry = catalog.rank_variety(n, t, r)
        assert entry.expected_ed_degree == comb(n, r)
        assert len(entry.spec.components) == comb(n, r)
        info = transfer.variety_dimension(entry.spec, seed=1)
        assert info["dim_M"] == r * (n + t - r)
        for _ in range(100):
            Y = rng.standard_normal((n, t))
            lifted = transfer.matrix_ed_critical(Y, entry.spec)
            assert len(lifted) == comb(n, r)
            assert all(p.is_real for p in lifted)
            assert all(p.criticality_residual < 1e-7 for p in lifted)
            U, s, Vt = np.linalg.svd(Y)
            truncated = U[:, :r] @ np.diag(s[:r]) @ Vt[:r]
            best = min(lifted, key=lambda p: np.linalg.norm(Y - p.X))
            assert np.linalg.norm(best.X - truncated) < 1e-8
    assert time.perf_counter() - started < 5.0


def test_criterion_2_essential_variety():
    rng = np.random.default_rng(102)
    started = time.perf_counter()
    entry = catalog.essential_variety()
    assert entry.expected_ed_degree == 6
    assert transfer.variety_dimension(entry.spec, seed=1)["dim_M"] == 6
    for _ in range(100):
        Y = rng.standard_normal((3, 3))
        lifted = transfer.matrix_ed_critical(Y, entry.spec)
        assert len(lifted) == 6
        assert all(p.is_real for p in lifted)
        for p in lifted:
            sv = np.linalg.svd(p.X.real, compute_uv=False)
            assert abs(sv[0] - sv[1]) < 1e-7
            assert sv[2] < 1e-7
    assert time.perf_counter() - started < 2.0


def test_criterion_3_orthogonal_group():
    rng = np.random.default_rng(103)
    started = time.perf_counter()
    for n in (1, 2, 3, 4):
        entry = catalog.orthogonal_group(n)
        result = edcrit.ed_degree(entry.spec, trials=3, seed=5)
        assert result.count == 2**n and result.stable
        while True:
            Y = rng.standard_normal((n, n))
            if abs(np.linalg.det(Y)) > 0.1:
                break
        lifted = transfer.matrix_ed_critical(Y, entry.spec)
        assert len(lifted) == 2**n
        assert all(p.is_real for p in lifted)
        U, _, Vt = np.linalg.svd(Y)
        procrustes = U @ Vt
        best = min(lifted, key=lambda p: np.linalg.norm(Y - p.X))
        assert np.linalg.norm(best.X - procrustes) < 1e-8
    assert time.perf_counter() - started < 2.0


def test_criterion_4_sl_pm():
    started = time.perf_counter()
    for n, expect in ((2, 8), (3, 24)):
        entry = catalog.sl_pm(n)
        result = edcrit.ed_degree(entry.spec, trials=5, seed=7)
        assert result.count == n * 2**n == expect
        assert result.stable, result.per_trial
        # data at the origin on the det = +1 component
        plus = tuple(c for c in entry.spec.components if c.label == "det=+1")
        spec_plus = VarietySpec(n=n, t=n, components=plus)
        pts = edcrit.ed_critical_points(spec_plus, np.zeros(n))
        assert len(pts) == n * 2 ** (n - 1)
    assert time.perf_counter() - started < 30.0


def test_criterion_5_fermat():
    rng = np.random.default_rng(105)
    started = time.perf_counter()
    for n in (2, 3):
        entry = catalog.fermat(n, 2)
        result = edcrit.ed_degree(entry.spec, trials=3, seed=9)
        assert result.count == 2 and result.stable
        # sphere oracle: the critical points of y are +- y / |y|
        y = 2.0 * rng.standard_normal(n)
        pts = edcrit.ed_critical_points(entry.spec, y)
        want = sorted(tuple(np.round(s * y / np.linalg.norm(y), 8)) for s in (1, -1))
        got = sorted(tuple(np.round(p.x.real, 8)) for p in pts)
        assert np.allclose(want, got, atol=1e-7)
    entry = catalog.fermat(2, 4)
    result = edcrit.ed_degree(entry.spec, trials=5, seed=11)
    system = build_lagrange_system(entry.spec.components[0], np.zeros(2))
    assert result.stable, result.per_trial
    assert result.count <= bezout_bound(system)
    assert time.perf_counter() - started < 30.0


def test_criterion_6_transfer_identity():
    rng = np.random.default_rng(106)
    for entry in catalog.default_entries():
        S = entry.spec
        degree = entry.expected_ed_degree
        if degree is None:
            degree = edcrit.ed_degree(S, trials=3, seed=13).count
        for _ in range(20):
            Y = rng.standard_normal((S.n, S.t))
            lifted = transfer.matrix_ed_critical(Y, S)
            assert len(lifted) == degree, entry.name
            assert all(p.criticality_residual < 1e-7 for p in lifted)


def test_criterion_7_algebraic_svd():
    assert spectral.has_algebraic_svd(np.array([[1.0, 1j], [0.0, 0.0]])) == "no"
    rng = np.random.default_rng(107)
    for _ in range(1000):
        n = int(rng.integers(1, 5))
        t = int(rng.integers(n, 5))
        A = rng.standard_normal((n, t)) + 1j * rng.standard_normal((n, t))
        assert spectral.has_algebraic_svd(A) == "yes"
        assert spectral.algebraic_svd(A).residual < 1e-7
    for _ in range(200):
        n = int(rng.integers(1, 5))
        t = int(rng.integers(n, 5))
        A = rng.standard_normal((n, t))
        d = np.sort(np.abs(spectral.singular_value_vector(A)))[::-1]
        s = np.linalg.svd(A, compute_uv=False)
        assert np.max(np.abs(d - s)) < 1e-8


def test_criterion_8_quotient_invariance():
    rng = np.random.default_rng(108)
    for _ in range(1000):
        n = int(rng.integers(1, 5))
        t = int(rng.integers(n, 5))
        X = rng.standard_normal((n, t)) + 1j * rng.standard_normal((n, t))
        U, _ = np.linalg.qr(rng.standard_normal((n, n)))
        V, _ = np.linalg.qr(rng.standard_normal((t, t)))
        a = spectral.quotient_map(X)
        b = spectral.quotient_map(U @ X @ V.T)
        assert np.max(np.abs(a - b)) < 1e-9 * max(1.0, np.max(np.abs(a)))


# -- criterion 9: independent root-finding oracle ---------------------------


def random_dense_system(rng, n, max_deg=3):
    polys = []
    for _ in range(n):
        d = int(rng.integers(1, max_deg + 1))
        terms = {
            e: rng.standard_normal() + 1j * rng.standard_normal()
            for e in itertools.product(range(d + 1), repeat=n)
            if sum(e) <= d
        }
        polys.append(MultiPoly(n, terms))
    return SquareSystem(polys)


def _oracle_eval(X, E, C, n):
    m = X.shape[0]
    F = np.empty((m, n), dtype=complex)
    J = np.empty((m, n, n), dtype=complex)
    for i in range(n):
        F[:, i] = np.prod(X[:, None, :] ** E[i][None, :, :], axis=2) @ C[i]
        for j in range(n):
            Ed = E[i].copy()
            mask = Ed[:, j] > 0
            Ed[:, j] = np.maximum(Ed[:, j] - 1, 0)
            md = np.prod(X[:, None, :] ** Ed[None, :, :], axis=2)
            J[:, i, j] = md @ (C[i] * E[i][:, j] * mask)
    return F, J


def oracle_roots(system, rng, starts=10**4, iters=60):
    """All regular roots by damped Newton from many random complex starts.

    Shares no evaluation or tracking code with the solver under test; the
    dense coefficient arrays are rebuilt here from the raw term maps.
    """
    n = system.num_vars
    eqs = [sorted(p.terms.items()) for p in system.polys]
    E = [np.array([e for e, _ in eq], dtype=float) for eq in eqs]
    C = [np.array([c for _, c in eq]) for eq in eqs]
    radii = 10.0 ** rng.uniform(-1.0, 1.0, size=(starts, 1))
    X = radii * (rng.standard_normal((starts, n)) + 1j * rng.standard_normal((starts, n)))
    active = np.arange(starts)
    done = []
    for _ in range(iters):
        if active.size == 0:
            break
        Xa = X[active]
        F, J = _oracle_eval(Xa, E, C, n)
        try:
            dX = np.linalg.solve(J, -F[..., None])[..., 0]
        except np.linalg.LinAlgError:
            dX = np.linalg.solve(J + 1e-12 * np.eye(n), -F[..., None])[..., 0]
        bad = ~np.isfinite(dX).all(axis=1)
        dX[bad] = 0
        # halve the step until the residual stops growing
        fn0 = np.linalg.norm(F, axis=1)
        step = np.ones((active.size, 1))
        Xn = Xa + dX
        for _ in range(4):
            Fn, _ = _oracle_eval(Xn, E, C, n)
            grow = np.linalg.norm(Fn, axis=1) > fn0
            if not grow.any():
                break
            step[grow] *= 0.5
            Xn = Xa + step * dX
        X[active] = Xn
        converged = np.linalg.norm(step * dX, axis=1) < 1e-13 * (
            1.0 + np.linalg.norm(Xn, axis=1)
        )
        done.extend(active[converged])
        active = active[~converged & ~bad]
    done.extend(active)
    roots = []
    for idx in done:
        x = X[idx]
        if not np.all(np.isfinite(x)):
            continue
        resid = max(
            abs(np.sum(Ci * np.prod(x[None, :] ** Ei, axis=1)))
            for Ei, Ci in zip(E, C)
        )
        if resid > 1e-8 * max(1.0, np.linalg.norm(x)) ** 3:
            continue
        if any(np.linalg.norm(x - r) < 1e-6 * max(1.0, np.linalg.norm(r))
               for r in roots):
            continue
        roots.append(x)
    return roots


def test_criterion_9_solver_oracle():
    rng = np.random.default_rng(20260825)
    for k in range(50):
        n = int(rng.integers(1, 4))
        system = random_dense_system(rng, n)
        sols = solve(system, TrackOptions(rng_seed=100 + k))
        oracle = oracle_roots(system, rng)
        assert len(sols.points) == len(oracle), (k, len(sols.points), len(oracle))
        for p in sols.points:
            assert min(np.linalg.norm(p - r) for r in oracle) < 1e-6, k
