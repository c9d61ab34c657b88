"""Total-degree homotopy continuation for square polynomial systems.

Start system g_i = x_i^d_i - 1 deformed into the target with the gamma
trick H(x,t) = (1-t)*gamma*g(x) + t*f(x). Path tracking runs in the
compiled kernel when available (see ``_core``); endpoints are polished by
plain Newton on f and deduplicated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

import numpy as np

from ._core import kernel
from .polyalg import PolyError


class SolveError(Exception):
    pass


class NewtonError(SolveError):
    """Newton refinement failed: singular Jacobian or no convergence."""


@dataclass(frozen=True)
class TrackOptions:
    step_init: float = 0.1
    step_min: float = 1e-10
    corrector_tol: float = 1e-10
    endpoint_tol: float = 1e-8
    divergence_bound: float = 1e8
    dedupe_tol: float = 1e-6
    max_newton_iters: int = 50
    rng_seed: int = 42
    max_steps: int = 20000
    singular_tol: float = 1e-8

    def __post_init__(self):
        for name in ("step_init", "step_min", "corrector_tol", "endpoint_tol",
                     "divergence_bound", "dedupe_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.step_min > self.step_init:
            raise ValueError("step_min must not exceed step_init")

    def with_seed(self, seed):
        return replace(self, rng_seed=seed)


class SquareSystem:
    """m polynomials in m variables, with per-equation total degrees."""

    def __init__(self, polys):
        polys = list(polys)
        if not polys:
            raise PolyError("empty system")
        m = polys[0].num_vars
        if len(polys) != m:
            raise PolyError(
                f"system has {len(polys)} equations in {m} variables; must be square"
            )
        if any(p.num_vars != m for p in polys):
            raise PolyError("equations have inconsistent numbers of variables")
        if any(p.is_zero() or p.degree() < 1 for p in polys):
            raise PolyError("every equation must be nonconstant")
        self.polys = polys
        self.degrees = [p.degree() for p in polys]
        self.num_vars = m
        self._packed = None
        self._jac_polys = None

    @property
    def jacobian_polys(self):
        if self._jac_polys is None:
            self._jac_polys = [g for p in self.polys for g in p.grad()]
        return self._jac_polys

    def packed(self):
        """Flat (offsets, exps, coeffs) arrays for f and its Jacobian."""
        if self._packed is None:
            self._packed = (_pack(self.polys, self.num_vars),
                            _pack(self.jacobian_polys, self.num_vars))
        return self._packed

    def eval(self, x):
        x = np.asarray(x, dtype=complex)
        (off, exps, coeffs), _ = self.packed()
        return _eval_packed(off, exps, coeffs, x, len(self.polys))

    def jacobian(self, x):
        x = np.asarray(x, dtype=complex)
        _, (off, exps, coeffs) = self.packed()
        m = self.num_vars
        return _eval_packed(off, exps, coeffs, x, m * m).reshape(m, m)

    def residual(self, x):
        return float(np.max(np.abs(self.eval(x))))


def _pack(polys, num_vars):
    offsets = [0]
    exps = []
    coeffs = []
    for p in polys:
        for e, c in sorted(p.terms.items()):
            exps.append(e)
            coeffs.append(c)
        if not p.terms:
            # keep reduceat segments valid for zero polynomials
            exps.append((0,) * num_vars)
            coeffs.append(0.0)
        offsets.append(len(coeffs))
    return (np.asarray(offsets, dtype=np.int64),
            np.asarray(exps, dtype=np.int64).reshape(len(coeffs), num_vars),
            np.asarray(coeffs, dtype=np.complex128))


def _eval_packed(offsets, exps, coeffs, x, m):
    monomials = coeffs * np.prod(x[None, :] ** exps, axis=1)
    return np.add.reduceat(monomials, offsets[:-1])[:m]


@dataclass
class SolutionSet:
    points: list
    path_diagnostics: list = field(default_factory=list)
    bezout: int = 0

    @property
    def num_failed(self):
        return sum(1 for s in self.path_diagnostics if s == "failed")

    def to_jsonable(self):
        return {
            "bezout": self.bezout,
            "num_points": len(self.points),
            "path_diagnostics": {
                s: self.path_diagnostics.count(s)
                for s in ("converged", "diverged", "failed", "singular")
            },
            "points": [[[z.real, z.imag] for z in p] for p in self.points],
        }


def bezout_bound(system: SquareSystem) -> int:
    out = 1
    for d in system.degrees:
        out *= d
    return out


def newton_refine(system, x0, tol=1e-12, max_iters=50):
    """Newton's method on the square system from x0; raises on failure."""
    x = np.asarray(x0, dtype=complex)
    for _ in range(max_iters):
        f = system.eval(x)
        if np.max(np.abs(f)) < tol:
            return x
        jac = system.jacobian(x)
        try:
            dx = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError:
            raise NewtonError("singular Jacobian") from None
        if not np.all(np.isfinite(dx)):
            raise NewtonError("divergent Newton update")
        x = x + dx
    if np.max(np.abs(system.eval(x))) < tol:
        return x
    raise NewtonError(f"no convergence within {max_iters} iterations")


def _start_points(degrees):
    roots = [
        [np.exp(2j * np.pi * k / d) for k in range(d)]
        for d in degrees
    ]
    for combo in itertools.product(*roots):
        yield np.array(combo, dtype=complex)


def _dedupe(points, tol):
    kept = []
    for p in points:
        if all(
            np.linalg.norm(p - q) >= tol * max(1.0, np.linalg.norm(q))
            for q in kept
        ):
            kept.append(p)
    return kept


def _sort_points(points):
    def key(p):
        return tuple(itertools.chain.from_iterable(
            (round(z.real, 9), round(z.imag, 9)) for z in p
        ))
    return sorted(points, key=key)


def solve(system: SquareSystem, opts: TrackOptions = TrackOptions()) -> SolutionSet:
    """Track all Bezout-many paths and return the regular solutions found.

    Endpoints whose Jacobian is numerically singular are flagged and
    excluded from the returned points. Output ordering is deterministic
    for a fixed (system, opts).
    """
    rng = np.random.default_rng(opts.rng_seed)
    gamma = np.exp(2j * np.pi * rng.random())
    degrees = np.asarray(system.degrees, dtype=np.int64)
    (f_off, f_exps, f_coeffs), (j_off, j_exps, j_coeffs) = system.packed()

    raw = []
    diagnostics = []
    for x0 in _start_points(system.degrees):
        x_end, status = kernel.track_path(
            np.ascontiguousarray(x0), gamma, degrees,
            f_off, f_exps, f_coeffs, j_off, j_exps, j_coeffs,
            opts.step_init, opts.step_min, opts.corrector_tol,
            opts.divergence_bound, opts.max_steps,
        )
        if status == kernel.STATUS_DIVERGED:
            diagnostics.append("diverged")
            continue
        if status == kernel.STATUS_FAILED:
            diagnostics.append("failed")
            continue
        try:
            x = newton_refine(system, x_end, tol=opts.endpoint_tol,
                              max_iters=opts.max_newton_iters)
        except NewtonError:
            diagnostics.append("failed")
            continue
        svals = np.linalg.svd(system.jacobian(x), compute_uv=False)
        if svals[-1] < opts.singular_tol * max(1.0, svals[0]):
            diagnostics.append("singular")
            continue
        diagnostics.append("converged")
        raw.append(x)

    points = _sort_points(_dedupe(_sort_points(raw), opts.dedupe_tol))
    return SolutionSet(points=points, path_diagnostics=diagnostics,
                       bezout=bezout_bound(system))
