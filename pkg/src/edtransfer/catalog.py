"""Built-in variety specifications with expected invariants.

Rank varieties, the essential variety, and the orthogonal group reduce to
subspace arrangements; SL_n^+- and the Fermat hypersurfaces are complete
intersections solved by continuation. Fermat ED degrees are deliberately
computed, never hard-coded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .edcrit import ComponentSpec, SpecError, VarietySpec
from .polyalg import MultiPoly


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    spec: VarietySpec
    expected_ed_degree: int | None  # None means "computed, not known a priori"
    expected_dim_M: int
    notes: str = ""


def rank_variety(n, t, r) -> CatalogEntry:
    """Matrices of rank at most r: all coordinate r-subspaces on the diagonal."""
    if not (0 < r < n <= t):
        raise SpecError("need 0 < r < n <= t")
    comps = []
    for keep in itertools.combinations(range(n), r):
        dirs = [np.eye(n)[k] for k in keep]
        label = "axes-" + "".join(str(k + 1) for k in keep)
        comps.append(
            ComponentSpec.affine_subspace(base=np.zeros(n), directions=dirs,
                                          label=label)
        )
    return CatalogEntry(
        name=f"rank:{n},{t},{r}",
        spec=VarietySpec(n=n, t=t, components=tuple(comps)),
        expected_ed_degree=comb(n, r),
        expected_dim_M=r * (n + t - r),
        notes=f"{comb(n, r)} coordinate subspaces of dimension {r}",
    )


def essential_variety() -> CatalogEntry:
    """3x3 matrices with two equal singular values and a zero third one;
    the diagonal restriction is six lines in R^3."""
    comps = []
    for (i, j), s in itertools.product(itertools.combinations(range(3), 2), (1, -1)):
        d = np.zeros(3)
        d[i], d[j] = 1.0, float(s)
        sign = "+" if s == 1 else "-"
        comps.append(
            ComponentSpec.affine_subspace(
                base=np.zeros(3), directions=[d],
                label=f"line x{i + 1}={sign}x{j + 1}",
            )
        )
    return CatalogEntry(
        name="essential",
        spec=VarietySpec(n=3, t=3, components=tuple(comps)),
        expected_ed_degree=6,
        expected_dim_M=6,
        notes="six lines x_i = +-x_j with the remaining coordinate zero",
    )


def orthogonal_group(n) -> CatalogEntry:
    """O(n): the diagonal restriction is the 2^n sign vectors."""
    if n < 1:
        raise SpecError("need n >= 1")
    if n > 10:
        raise SpecError("orthogonal-group catalog entry guarded to n <= 10")
    comps = []
    for signs in itertools.product((1.0, -1.0), repeat=n):
        label = "point " + "".join("+" if s > 0 else "-" for s in signs)
        comps.append(
            ComponentSpec.affine_subspace(base=np.array(signs), directions=[],
                                          label=label)
        )
    return CatalogEntry(
        name=f"orthogonal:{n}",
        spec=VarietySpec(n=n, t=n, components=tuple(comps)),
        expected_ed_degree=2**n,
        expected_dim_M=n * (n - 1) // 2,
        notes="2^n isolated sign vectors",
    )


def _product_poly(n, constant):
    return MultiPoly(n, {(1,) * n: 1.0, (0,) * n: -constant})


def sl_pm(n) -> CatalogEntry:
    """Matrices with det = +-1: two product-hypersurface components."""
    if not (2 <= n <= 4):
        raise SpecError("sl_pm supported for 2 <= n <= 4 (Bezout growth)")
    comps = (
        ComponentSpec.complete_intersection([_product_poly(n, 1.0)], "det=+1"),
        ComponentSpec.complete_intersection([_product_poly(n, -1.0)], "det=-1"),
    )
    return CatalogEntry(
        name=f"sl_pm:{n}",
        spec=VarietySpec(n=n, t=n, components=comps),
        expected_ed_degree=n * 2**n,
        expected_dim_M=n * n - 1,
        notes="product of coordinates equal to +-1",
    )


def fermat(n, d, t=None) -> CatalogEntry:
    """Schatten d-norm sphere for even d: one Fermat hypersurface component.

    The ED degree is computed numerically and checked for seed stability
    only; no external closed form is baked in.
    """
    if d < 2 or d % 2 != 0:
        raise SpecError("need even d >= 2")
    if n < 2 or n * d > 16:
        raise SpecError("fermat entry guarded to small n*d")
    t = n if t is None else t
    poly = MultiPoly(
        n,
        {tuple(d if j == k else 0 for j in range(n)): 1.0 for k in range(n)}
        | {(0,) * n: -1.0},
    )
    return CatalogEntry(
        name=f"fermat:{n},{d}",
        spec=VarietySpec(
            n=n, t=t,
            components=(ComponentSpec.complete_intersection([poly], "fermat"),),
        ),
        expected_ed_degree=2 if d == 2 else None,
        expected_dim_M=n * t - 1,
        notes="sum of d-th powers equal to one",
    )


def get(name: str) -> CatalogEntry:
    """Look up `family` or `family:comma,separated,params`."""
    family, _, params = name.partition(":")
    args = [int(p) for p in params.split(",") if p] if params else []
    builders = {
        "rank": rank_variety,
        "essential": essential_variety,
        "orthogonal": orthogonal_group,
        "sl_pm": sl_pm,
        "fermat": fermat,
    }
    if family not in builders:
        raise SpecError(
            f"unknown catalog family {family!r}; choose from {sorted(builders)}"
        )
    try:
        return builders[family](*args)
    except TypeError as exc:
        raise SpecError(f"bad parameters for {family!r}: {exc}") from None


def default_entries():
    """Desk-scale entries exercised by the acceptance suite."""
    return [
        rank_variety(2, 2, 1),
        rank_variety(3, 4, 1),
        rank_variety(3, 3, 2),
        essential_variety(),
        orthogonal_group(2),
        orthogonal_group(3),
        sl_pm(2),
        fermat(2, 2),
        fermat(3, 2),
    ]
