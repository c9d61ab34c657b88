"""Lagrange criticality systems and critical-point counts on the
diagonal restriction."""

import numpy as np
import pytest

from edtransfer.edcrit import (
    ComponentSpec,
    SpecError,
    VarietySpec,
    build_lagrange_system,
    ed_critical_points,
    ed_degree,
)
from edtransfer.homotopy import TrackOptions
from edtransfer.polyalg import parse_poly

VARS2 = ["x1", "x2"]


def circle_spec():
    gen = parse_poly("x1^2 + x2^2 - 1", VARS2)
    comp = ComponentSpec.complete_intersection([gen], "circle")
    return VarietySpec(n=2, t=2, components=(comp,))


def test_component_spec_validation():
    with pytest.raises(SpecError):
        ComponentSpec.complete_intersection([], "empty")
    with pytest.raises(SpecError):
        ComponentSpec(kind="mystery", label="bad")
    comp = ComponentSpec.affine_subspace(base=[0.0, 0.0], directions=[[1.0, 1.0]],
                                         label="line")
    assert comp.codim == 1 and comp.dim() == 1


def test_variety_spec_validation():
    comp = ComponentSpec.affine_subspace(base=[0.0, 0.0], label="pt")
    with pytest.raises(SpecError):
        VarietySpec(n=2, t=1, components=(comp,))
    with pytest.raises(SpecError):
        VarietySpec(n=3, t=3, components=(comp,))


def test_build_lagrange_system_circle():
    spec = circle_spec()
    system = build_lagrange_system(spec.components[0], [3.0, 0.0])
    assert system.num_vars == 3
    assert system.degrees == [2, 2, 2]
    # (x1, x2, lambda) = (1, 0, 1) is critical for y = (3, 0)
    assert system.residual([1.0, 0.0, 1.0]) < 1e-14
    assert system.residual([-1.0, 0.0, -2.0]) < 1e-14


def test_build_lagrange_system_rejects_affine():
    comp = ComponentSpec.affine_subspace(base=[0.0, 0.0], label="pt")
    with pytest.raises(SpecError):
        build_lagrange_system(comp, [0.0, 0.0])
    spec = circle_spec()
    with pytest.raises(SpecError):
        build_lagrange_system(spec.components[0], [1.0, 2.0, 3.0])


def test_circle_critical_points_from_outside():
    pts = ed_critical_points(circle_spec(), [3.0, 0.0])
    assert len(pts) == 2
    got = sorted(tuple(np.round(p.x.real, 8)) for p in pts)
    assert np.allclose(got, [(-1.0, 0.0), (1.0, 0.0)])
    assert all(p.is_real and p.residual < 1e-7 for p in pts)


def test_data_on_the_variety_is_critical_for_itself():
    y = np.array([0.6, 0.8])
    pts = ed_critical_points(circle_spec(), y)
    dists = [np.linalg.norm(p.x - y) for p in pts]
    assert min(dists) < 1e-8
    lam = pts[int(np.argmin(dists))].multipliers
    assert np.max(np.abs(lam)) < 1e-7


def test_circle_ed_degree():
    res = ed_degree(circle_spec(), trials=3, seed=1)
    assert res.count == 2 and res.stable
    assert res.per_trial == [2, 2, 2]


def test_ed_degree_requires_two_trials():
    with pytest.raises(ValueError):
        ed_degree(circle_spec(), trials=1)


def test_points_on_two_components_are_discarded():
    # both projections of the origin land on the other line as well,
    # outside the regular locus of the union
    comps = tuple(
        ComponentSpec.affine_subspace(base=[0.0, 0.0], directions=[d], label=lbl)
        for d, lbl in ([[1.0, 1.0], "plus"], [[1.0, -1.0], "minus"])
    )
    spec = VarietySpec(n=2, t=2, components=comps)
    assert ed_critical_points(spec, [0.0, 0.0]) == []
    assert len(ed_critical_points(spec, [2.0, 0.5])) == 2


def test_check_symmetric():
    assert circle_spec().check_symmetric()
    lone = ComponentSpec.affine_subspace(
        base=[0.0, 0.0], directions=[[1.0, 1.0]], label="line"
    )
    assert not VarietySpec(n=2, t=2, components=(lone,)).check_symmetric()


def test_seeded_runs_are_reproducible():
    spec = circle_spec()
    y = np.array([0.3 + 0.7j, -1.1 + 0.2j])
    a = ed_critical_points(spec, y, TrackOptions(rng_seed=3))
    b = ed_critical_points(spec, y, TrackOptions(rng_seed=3))
    assert len(a) == len(b)
    for p, q in zip(a, b):
        assert np.array_equal(p.x, q.x)
