"""ED critical points and ED degree of the diagonal restriction.

For each complete-intersection component, the criticality conditions are
solved as the square Lagrange system

    x_i - y_i + sum_j lambda_j * df_j/dx_i = 0     (i = 1..n)
    f_j = 0                                        (j = 1..codim)

by homotopy continuation; affine-subspace components take the projection
fast path. Counts over several random complex data points give the ED
degree together with an honest stability flag.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import arrangements, homotopy, polyalg
from .arrangements import AffineComponent
from .homotopy import SquareSystem, TrackOptions
from .polyalg import MultiPoly

REAL_TOL = 1e-7
REGULARITY_TOL = 1e-8


class SpecError(Exception):
    pass


@dataclass(frozen=True)
class ComponentSpec:
    """One irreducible component of the diagonal restriction."""

    kind: str  # 'affine-subspace' | 'complete-intersection'
    label: str
    generators: tuple = ()
    affine: AffineComponent | None = None

    def __post_init__(self):
        if self.kind == "complete-intersection":
            if not self.generators:
                raise SpecError(f"component {self.label!r} has no generators")
        elif self.kind == "affine-subspace":
            if self.affine is None:
                raise SpecError(f"component {self.label!r} has no affine data")
        else:
            raise SpecError(
                f"unsupported component kind {self.kind!r}: only complete "
                "intersections and affine subspaces are accepted"
            )

    @classmethod
    def complete_intersection(cls, generators, label):
        return cls(kind="complete-intersection", label=label,
                   generators=tuple(generators))

    @classmethod
    def affine_subspace(cls, base=None, directions=(), generators=(), label=""):
        if generators:
            aff = arrangements.affine_from_generators(list(generators), label=label)
        else:
            aff = AffineComponent.create(base, directions, label=label)
        return cls(kind="affine-subspace", label=label,
                   generators=tuple(generators), affine=aff)

    @property
    def codim(self):
        if self.kind == "complete-intersection":
            return len(self.generators)
        return self.affine.n - self.affine.dim

    def num_vars(self):
        if self.kind == "complete-intersection":
            return self.generators[0].num_vars
        return self.affine.n

    def dim(self):
        return self.num_vars() - self.codim


@dataclass(frozen=True)
class VarietySpec:
    n: int
    t: int
    components: tuple

    def __post_init__(self):
        if self.n > self.t:
            raise SpecError("need n <= t")
        for c in self.components:
            if c.num_vars() != self.n:
                raise SpecError(
                    f"component {c.label!r} lives in {c.num_vars()} variables, "
                    f"spec says {self.n}"
                )

    @property
    def is_arrangement(self):
        return all(c.kind == "affine-subspace" for c in self.components)

    def dim(self):
        return max(c.dim() for c in self.components)

    def check_symmetric(self):
        """Whether the union of components is invariant under signed
        permutations. May raise IndeterminateError from the sampling path."""
        if self.is_arrangement:
            return arrangements.is_arrangement_symmetric(
                [c.affine for c in self.components]
            )
        polys = []
        for c in self.components:
            if c.kind == "complete-intersection":
                polys.extend(c.generators)
            else:
                aff = c.affine
                for k in range(aff.n):
                    coeffs = np.eye(aff.n)[k] - sum(
                        (d[k] * np.asarray(d) for d in aff.directions),
                        np.zeros(aff.n),
                    )
                    terms = {
                        tuple(np.eye(aff.n, dtype=int)[j]): coeffs[j]
                        for j in range(aff.n)
                    }
                    terms[(0,) * aff.n] = -(coeffs @ aff.base)
                    polys.append(MultiPoly(aff.n, terms))
        return polyalg.is_abs_symmetric(polys)


@dataclass
class EDCriticalPoint:
    x: np.ndarray
    multipliers: np.ndarray
    component: str
    residual: float
    is_real: bool

    def to_jsonable(self):
        return {
            "x": [[z.real, z.imag] for z in self.x],
            "component": self.component,
            "residual": self.residual,
            "is_real": self.is_real,
        }


def build_lagrange_system(c: ComponentSpec, y) -> SquareSystem:
    """Square criticality system in (x, lambda) for a complete intersection."""
    if c.kind != "complete-intersection":
        raise SpecError(
            "affine subspaces use the arrangement fast path, not a Lagrange system"
        )
    y = np.asarray(y, dtype=complex)
    n = c.num_vars()
    if len(y) != n:
        raise SpecError("data point has wrong dimension")
    k = c.codim
    total = n + k

    def lift(p):
        return MultiPoly(total, {e + (0,) * k: v for e, v in p.terms.items()})

    lams = [MultiPoly.variable(total, n + j) for j in range(k)]
    grads = [[lift(g) for g in f.grad()] for f in c.generators]
    eqs = []
    for i in range(n):
        p = MultiPoly.variable(total, i) - complex(y[i])
        for j in range(k):
            p = p + lams[j] * grads[j][i]
        eqs.append(p)
    eqs.extend(lift(f) for f in c.generators)
    return SquareSystem(eqs)


def _component_critical_points(c, y, opts):
    y = np.asarray(y, dtype=complex)
    n = len(y)
    if c.kind == "affine-subspace":
        p = arrangements.project(y, c.affine)
        resid = max(
            (abs(d @ (y - p)) for d in c.affine.directions), default=0.0
        )
        return [
            EDCriticalPoint(
                x=np.asarray(p, dtype=complex),
                multipliers=np.zeros(0, dtype=complex),
                component=c.label,
                residual=float(resid),
                is_real=bool(np.max(np.abs(np.asarray(p, dtype=complex).imag),
                                    initial=0.0) < REAL_TOL),
            )
        ]

    system = build_lagrange_system(c, y)
    sols = homotopy.solve(system, opts)
    grads = [f.grad() for f in c.generators]
    out = []
    for z in sols.points:
        x, lam = z[:n], z[n:]
        jac = np.array([[g.eval(x) for g in gr] for gr in grads])
        svals = np.linalg.svd(jac, compute_uv=False)
        if svals[-1] < REGULARITY_TOL * max(1.0, svals[0]):
            continue  # not a regular point of the component
        stat = (y - x) - sum(lam[j] * jac[j] for j in range(len(lam)))
        resid = max(
            float(np.max(np.abs(stat))),
            max(abs(f.eval(x)) for f in c.generators),
        )
        out.append(
            EDCriticalPoint(
                x=x,
                multipliers=lam,
                component=c.label,
                residual=resid,
                is_real=bool(np.max(np.abs(x.imag)) < REAL_TOL),
            )
        )
    return out


def _on_component(c, x, tol=1e-7):
    if c.kind == "affine-subspace":
        p = arrangements.project(x, c.affine)
        return np.linalg.norm(p - x) < tol * max(1.0, np.linalg.norm(x))
    scale = max(1.0, np.linalg.norm(x)) ** max(f.degree() for f in c.generators)
    return all(abs(f.eval(x)) < tol * scale for f in c.generators)


def ed_critical_points(S: VarietySpec, y, opts: TrackOptions = TrackOptions()):
    """Union of per-component critical points, discarding any point that
    lies on two distinct components (outside the regular locus)."""
    y = np.asarray(y, dtype=complex)
    per_component = [
        (c, _component_critical_points(c, y, opts)) for c in S.components
    ]

    kept = []
    for c, pts in per_component:
        for p in pts:
            overlap = any(
                other is not c and _on_component(other, p.x)
                for other, _ in per_component
            )
            if not overlap:
                kept.append(p)

    dedup = []
    for p in sorted(kept, key=lambda q: (q.component, _lex_key(q.x))):
        if all(
            np.linalg.norm(p.x - q.x) >= opts.dedupe_tol * max(1.0, np.linalg.norm(q.x))
            for q in dedup
        ):
            dedup.append(p)
    return dedup


def _lex_key(x):
    return tuple(v for z in x for v in (round(z.real, 9), round(z.imag, 9)))


def random_data(n, rng, real=False):
    if real:
        return rng.standard_normal(n).astype(complex)
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


@dataclass
class EDDegreeResult:
    count: int
    stable: bool
    per_trial: list = field(default_factory=list)


def ed_degree(S: VarietySpec, trials=3, seed=42,
              opts: TrackOptions = TrackOptions()) -> EDDegreeResult:
    """Modal critical-point count over random complex Gaussian data."""
    if trials < 2:
        raise ValueError("need at least 2 trials")
    rng = np.random.default_rng(seed)
    counts = []
    for k in range(trials):
        y = random_data(S.n, rng)
        pts = ed_critical_points(S, y, opts.with_seed(seed + 1000 * k))
        counts.append(len(pts))
    modal = Counter(counts).most_common(1)[0][0]
    return EDDegreeResult(
        count=modal,
        stable=all(cnt == modal for cnt in counts),
        per_trial=counts,
    )
