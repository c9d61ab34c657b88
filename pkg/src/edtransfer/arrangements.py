"""Fast exact path for absolutely symmetric subspace arrangements.

Critical points of an affine arrangement are the orthogonal projections of
the data onto each maximal component, and are all real for real data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polyalg import all_signed_permutations, group_generators


class ArrangementError(Exception):
    pass


@dataclass(frozen=True)
class AffineComponent:
    base: np.ndarray
    directions: tuple  # orthonormal direction vectors, possibly empty
    label: str = ""

    @classmethod
    def create(cls, base, directions=(), label=""):
        base = np.asarray(base, dtype=float)
        dirs = _orthonormalize([np.asarray(d, dtype=float) for d in directions])
        return cls(base=base, directions=tuple(dirs), label=label)

    @property
    def n(self):
        return len(self.base)

    @property
    def dim(self):
        return len(self.directions)


def _orthonormalize(vectors, tol=1e-12):
    basis = []
    for v in vectors:
        w = v.astype(float).copy()
        for b in basis:
            w -= (b @ w) * b
        nw = np.linalg.norm(w)
        if nw > tol * max(1.0, np.linalg.norm(v)):
            basis.append(w / nw)
    return basis


def project(y, c: AffineComponent):
    """Orthogonal projection of y onto the affine component.

    Uses the transpose pairing, so it also applies to complex data with the
    real direction vectors of the component.
    """
    y = np.asarray(y)
    if y.shape != c.base.shape:
        raise ArrangementError("dimension mismatch")
    p = c.base.astype(y.dtype if np.iscomplexobj(y) else float).copy()
    for d in c.directions:
        p = p + (d @ (y - c.base)) * d
    return p


def contains(big: AffineComponent, small: AffineComponent, tol=1e-10):
    """Whether `small` is a subset of `big`, via projection residuals."""
    if np.linalg.norm(project(small.base, big) - small.base) > tol * max(
        1.0, np.linalg.norm(small.base)
    ):
        return False
    for d in small.directions:
        x = small.base + d
        if np.linalg.norm(project(x, big) - x) > tol * max(1.0, np.linalg.norm(x)):
            return False
    return True


def same_subspace(a, b, tol=1e-10):
    return contains(a, b, tol) and contains(b, a, tol)


def maximal_components(comps):
    """Drop every component contained in another; deduplicate equals."""
    comps = list(comps)
    kept = []
    for i, c in enumerate(comps):
        redundant = False
        for j, other in enumerate(comps):
            if i == j:
                continue
            if contains(other, c) and not (same_subspace(other, c) and j > i):
                redundant = True
                break
        if not redundant:
            kept.append(c)
    return kept


def symmetrize(c: AffineComponent, n=None):
    """Orbit of the component under all signed permutations, deduplicated.

    Guarded at n <= 8: the group has 2^n * n! elements.
    """
    n = c.n if n is None else n
    if n != c.n:
        raise ArrangementError("component dimension mismatch")
    if n > 8:
        raise ArrangementError("signed-permutation orbit guarded to n <= 8")
    orbit = []
    for g in all_signed_permutations(n):
        base = g.apply_point(c.base).astype(float)
        dirs = [g.apply_point(d).astype(float) for d in c.directions]
        cand = AffineComponent.create(base, dirs, label=c.label)
        if not any(same_subspace(cand, o) for o in orbit):
            orbit.append(cand)
    return orbit


def is_arrangement_symmetric(comps, tol=1e-10):
    """Whether the union of components is invariant under every generating
    signed permutation (adjacent transpositions and sign flips)."""
    if not comps:
        return True
    n = comps[0].n
    for g in group_generators(n):
        for c in comps:
            base = g.apply_point(c.base).astype(float)
            dirs = [g.apply_point(d).astype(float) for d in c.directions]
            image = AffineComponent.create(base, dirs)
            if not any(same_subspace(image, o, tol) for o in comps):
                return False
    return True


def affine_from_generators(generators, label=""):
    """Solution set of degree-1 generators as base + orthonormal directions."""
    if not generators:
        raise ArrangementError("no generators")
    n = generators[0].num_vars
    A = np.zeros((len(generators), n))
    b = np.zeros(len(generators))
    for i, p in enumerate(generators):
        if p.degree() > 1:
            raise ArrangementError("affine components need degree-1 generators")
        for exps, coeff in p.terms.items():
            if abs(coeff.imag) > 1e-12:
                raise ArrangementError("affine generators must be real")
            s = sum(exps)
            if s == 0:
                b[i] = -coeff.real
            else:
                A[i, exps.index(1)] = coeff.real
    base, *_ = np.linalg.lstsq(A, b, rcond=None)
    if np.linalg.norm(A @ base - b) > 1e-9 * max(1.0, np.linalg.norm(b)):
        raise ArrangementError("inconsistent affine generators")
    _, svals, Vt = np.linalg.svd(A)
    rank = int(np.sum(svals > 1e-10 * max(1.0, svals[0] if len(svals) else 0.0)))
    directions = [Vt[k] for k in range(rank, n)]
    return AffineComponent.create(base, directions, label=label)


@dataclass
class ArrangementCriticalPoint:
    x: np.ndarray
    component: str
    residual: float
    is_real: bool = True


def arrangement_critical(y, comps, dedupe_tol=1e-9):
    """One projection per maximal component; coinciding projections (a
    non-generic data point) are counted once and flagged."""
    points = []
    non_generic = False
    for c in comps:
        p = project(y, c)
        dup = False
        for q in points:
            if np.linalg.norm(p - q.x) < dedupe_tol * max(1.0, np.linalg.norm(q.x)):
                dup = True
                non_generic = True
                break
        if dup:
            continue
        resid = max(
            (abs(d @ (np.asarray(y) - p)) for d in c.directions), default=0.0
        )
        points.append(
            ArrangementCriticalPoint(
                x=p,
                component=c.label,
                residual=float(resid),
                is_real=not np.iscomplexobj(p) or bool(np.max(np.abs(p.imag)) < 1e-7),
            )
        )
    return points, non_generic
