"""Lifting diagonal-restriction critical points to matrix space.

Given data Y = U Diag(y) V^T, every critical point x of y on the diagonal
restriction lifts to X = U Diag(x) V^T, and the matrix-side tangent space
at X is spanned by the two skew families and the diagonal images of the
restriction's tangent vectors. Criticality of each lift is verified
against that spanning set through the trace pairing.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import edcrit, spectral
from .edcrit import VarietySpec
from .homotopy import TrackOptions


class TransferError(Exception):
    """A lifted point failed matrix-side criticality: by the transfer
    theorem this cannot happen for generic data, so it signals a bug or
    badly degenerate input."""


@dataclass(frozen=True)
class PartitionData:
    """Magnitude pattern of a singular-value vector: block sizes of the
    distinct nonzero groups plus the multiplicity of zero."""

    rho: int
    p: tuple
    p0: int

    def __post_init__(self):
        if any(pl < 1 for pl in self.p) or self.p0 < 0:
            raise ValueError("invalid partition block sizes")

    @property
    def n(self):
        return self.p0 + sum(self.p)


def partition_of(x, tol=1e-7):
    """Group |x| (sorted nonincreasing) into equal-value blocks; entries
    below tol*scale count as zeros."""
    v = np.sort(np.abs(np.asarray(x, dtype=float)))[::-1]
    scale = max(1.0, v[0]) if v.size else 1.0
    blocks = []
    p0 = 0
    for val in v:
        if val < tol * scale:
            p0 += 1
        elif blocks and abs(val - blocks[-1][0]) < tol * scale:
            blocks[-1][1] += 1
        else:
            blocks.append([val, 1])
    return PartitionData(rho=len(blocks), p=tuple(b[1] for b in blocks), p0=p0)


def dim_fiber(P: PartitionData, n, t):
    """Dimension of the orbit of Diag(x) under bi-orthogonal multiplication."""
    if P.n != n or n > t:
        raise ValueError("partition inconsistent with matrix shape")
    sizes = [P.p0] + list(P.p)
    pairs = sum(
        sizes[i] * sizes[j]
        for i in range(len(sizes))
        for j in range(i + 1, len(sizes))
    )
    q = P.p0 + t - n
    return pairs + t * (t - 1) // 2 - q * (q - 1) // 2


def dim_M(dim_S, P: PartitionData, n, t):
    """Matrix-variety dimension: restriction dimension plus generic fiber."""
    return dim_S + dim_fiber(P, n, t)


def tangent_space_S(component, x, tol=1e-8):
    """Basis of the restriction's tangent space at a regular point of the
    given component (null space of the generator Jacobian)."""
    if component.kind == "affine-subspace":
        return [np.asarray(d, dtype=complex) for d in component.affine.directions]
    x = np.asarray(x, dtype=complex)
    jac = np.array([[g.eval(x) for g in f.grad()] for f in component.generators])
    _, svals, Vt = np.linalg.svd(jac)
    scale = max(1.0, svals[0] if svals.size else 0.0)
    rank = int(np.sum(svals > tol * scale))
    return [Vt[k].conj() for k in range(rank, component.num_vars())]


def _diag_embed(a, n, t):
    D = np.zeros((n, t), dtype=complex)
    D[np.arange(n), np.arange(n)] = a
    return D


def tangent_basis_M(U, x, V, tangent_S):
    """Spanning set of the matrix-side tangent space at X = U Diag(x) V^T.

    Possibly redundant; orthogonality tests downstream are unaffected by
    redundancy, which avoids numerical rank decisions here.
    """
    U = np.asarray(U, dtype=complex)
    V = np.asarray(V, dtype=complex)
    n, t = U.shape[0], V.shape[0]
    x = np.asarray(x, dtype=complex)
    if len(x) != n:
        raise ValueError("singular-value vector has wrong length")
    for Q, s in ((U, n), (V, t)):
        if np.linalg.norm(Q.T @ Q - np.eye(s)) > 1e-8 * s:
            raise ValueError("U and V must be complex orthogonal to 1e-8")
    D = _diag_embed(x, n, t)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            Z = np.zeros((n, n), dtype=complex)
            Z[i, j], Z[j, i] = 1.0, -1.0
            out.append(U @ Z @ D @ V.T)
    for i in range(t):
        for j in range(i + 1, t):
            Z = np.zeros((t, t), dtype=complex)
            Z[i, j], Z[j, i] = 1.0, -1.0
            out.append(U @ D @ Z.T @ V.T)
    for a in tangent_S:
        out.append(U @ _diag_embed(np.asarray(a, dtype=complex), n, t) @ V.T)
    return out


def verify_criticality(Y, X, basis, tol=1e-7):
    """Max normalized trace pairing of Y - X against the tangent spanning
    set; criticality holds iff the returned residual is below tol."""
    Y = np.asarray(Y, dtype=complex)
    X = np.asarray(X, dtype=complex)
    R = Y - X
    nr = np.linalg.norm(R)
    worst = 0.0
    for T in basis:
        pairing = abs(np.trace(R @ T.T))
        worst = max(worst, pairing / max(1.0, nr * np.linalg.norm(T)))
    return worst


@dataclass
class LiftedCriticalPoint:
    X: np.ndarray
    x: edcrit.EDCriticalPoint
    U: np.ndarray
    V: np.ndarray
    criticality_residual: float
    is_real: bool

    def to_jsonable(self):
        return {
            "X": [[[z.real, z.imag] for z in row] for row in self.X],
            "x": self.x.to_jsonable(),
            "criticality_residual": self.criticality_residual,
            "is_real": self.is_real,
        }


def decompose_data(Y):
    """Simultaneous-SVD-ready decomposition Y = U Diag(y) V^T.

    Real data uses the classical SVD; complex data requires an algebraic
    SVD. Warns when the eigenvalues of Y Y^T are not safely distinct (the
    simultaneous-SVD hypothesis), which is measure-zero for random data.
    """
    Y = np.asarray(Y)
    if np.iscomplexobj(Y) and np.max(np.abs(Y.imag)) > 0:
        verdict = spectral.has_algebraic_svd(Y)
        if verdict != "yes":
            raise TransferError(
                f"data matrix admits no algebraic SVD (verdict: {verdict})"
            )
        fact = spectral.algebraic_svd(Y)
        U, y, V = fact.U, fact.d, fact.V
    else:
        fact = spectral.svd_real(Y.real if np.iscomplexobj(Y) else Y)
        U = fact.U.astype(complex)
        V = fact.V.astype(complex)
        y = fact.sigma.astype(complex)
    lams = y**2
    scale = max(1.0, float(np.max(np.abs(lams))))
    gaps = [
        abs(lams[i] - lams[j])
        for i in range(len(lams))
        for j in range(i + 1, len(lams))
    ]
    if gaps and min(gaps) < 1e-6 * scale:
        warnings.warn(
            "eigenvalues of Y Y^T are not safely distinct; the simultaneous "
            "SVD hypothesis may fail for this data",
            stacklevel=2,
        )
    return U, y, V


def matrix_ed_critical(Y, S: VarietySpec, opts: TrackOptions = TrackOptions(),
                       tol=1e-7):
    """All ED critical points of Y on the matrix variety induced by S,
    obtained by solving on the diagonal restriction and lifting."""
    Y = np.asarray(Y)
    if Y.shape != (S.n, S.t):
        raise TransferError(f"data shape {Y.shape} does not match ({S.n}, {S.t})")
    U, y, V = decompose_data(Y)
    points = edcrit.ed_critical_points(S, y, opts)
    by_label = {c.label: c for c in S.components}

    lifted = []
    for p in sorted(points, key=lambda q: edcrit._lex_key(q.x)):
        comp = by_label[p.component]
        X = U @ _diag_embed(p.x, S.n, S.t) @ V.T
        basis = tangent_basis_M(U, p.x, V, tangent_space_S(comp, p.x))
        resid = verify_criticality(Y, X, basis, tol)
        if resid > tol:
            raise TransferError(
                f"lifted point on component {p.component!r} fails matrix-side "
                f"criticality: residual {resid:.2e} > {tol:.1e}"
            )
        lifted.append(
            LiftedCriticalPoint(
                X=X,
                x=p,
                U=U,
                V=V,
                criticality_residual=float(resid),
                is_real=bool(np.max(np.abs(X.imag)) < 1e-7 * max(1.0, np.linalg.norm(X))),
            )
        )
    return lifted


def sample_real_point(component, rng, max_tries=20, newton_iters=100):
    """A real sample point on one component, for dimension calculations."""
    n = component.num_vars()
    if component.kind == "affine-subspace":
        aff = component.affine
        x = aff.base.copy()
        for d in aff.directions:
            x = x + rng.standard_normal() * np.asarray(d)
        return x
    grads = [f.grad() for f in component.generators]
    for _ in range(max_tries):
        x = rng.standard_normal(n)
        for _ in range(newton_iters):
            f = np.array([float(p.eval(x).real) for p in component.generators])
            if np.max(np.abs(f)) < 1e-10:
                return x
            jac = np.array([[float(g.eval(x).real) for g in gr] for gr in grads])
            dx, *_ = np.linalg.lstsq(jac, -f, rcond=None)
            if not np.all(np.isfinite(dx)):
                break
            x = x + dx
    raise TransferError(
        f"could not sample a real point on component {component.label!r}"
    )


def variety_dimension(S: VarietySpec, seed=0):
    """dim(S), the partition of a generic sample, and dim(M)."""
    rng = np.random.default_rng(seed)
    best = None
    for c in S.components:
        x = sample_real_point(c, rng)
        P = partition_of(x)
        d = dim_M(c.dim(), P, S.n, S.t)
        if best is None or d > best[0]:
            best = (d, c.dim(), P, x)
    d, dim_S, P, x = best
    return {"dim_S": dim_S, "partition": P, "dim_fiber": dim_fiber(P, S.n, S.t),
            "dim_M": d, "sample": x}
