"""Command-line front end.

Subcommands: eddegree, critical, dimension, asvd, catalog. Variety specs
come from the built-in catalog (`--catalog name:params`) or a JSON file
(`--spec file.json`); matrices are JSON 2-D arrays with plain-real or
[re, im] entries. `--json` emits a machine-readable report.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

import numpy as np

from . import arrangements, catalog, edcrit, spectral, transfer
from .edcrit import ComponentSpec, SpecError, VarietySpec
from .homotopy import TrackOptions
from .polyalg import IndeterminateError, parse_poly

SCHEMA_VERSION = 1


class CliError(Exception):
    pass


def _digest(obj):
    return hashlib.sha256(
        json.dumps(obj, sort_keys=True, default=str).encode()
    ).hexdigest()[:16]


def load_spec_file(path) -> VarietySpec:
    with open(path) as fh:
        data = json.load(fh)
    n, t = int(data["n"]), int(data["t"])
    names = [f"x{k + 1}" for k in range(n)]
    comps = []
    for k, cdata in enumerate(data["components"]):
        kind = cdata.get("kind", "complete-intersection")
        label = cdata.get("label", f"component-{k}")
        if kind == "complete-intersection":
            gens = [parse_poly(src, names) for src in cdata["generators"]]
            comps.append(ComponentSpec.complete_intersection(gens, label))
        elif kind == "affine-subspace":
            if "generators" in cdata:
                gens = [parse_poly(src, names) for src in cdata["generators"]]
                comps.append(
                    ComponentSpec.affine_subspace(generators=gens, label=label)
                )
            else:
                comps.append(
                    ComponentSpec.affine_subspace(
                        base=cdata["base"],
                        directions=cdata.get("directions", []),
                        label=label,
                    )
                )
        else:
            raise CliError(f"unknown component kind {kind!r}")
    return VarietySpec(n=n, t=t, components=tuple(comps))


def resolve_spec(args) -> tuple:
    if bool(args.catalog) == bool(args.spec):
        raise CliError("exactly one of --catalog or --spec is required")
    if args.catalog:
        entry = catalog.get(args.catalog)
        return entry.spec, {"catalog": args.catalog}
    return load_spec_file(args.spec), {"spec_file": args.spec}


def load_matrix(path):
    with open(path) as fh:
        rows = json.load(fh)
    def scalar(v):
        if isinstance(v, list):
            return complex(v[0], v[1])
        return complex(v)
    M = np.array([[scalar(v) for v in row] for row in rows])
    if np.max(np.abs(M.imag)) == 0:
        return M.real
    return M


def _complex_list(x):
    return [[float(z.real), float(z.imag)] for z in np.asarray(x, dtype=complex)]


def make_report(command, source, seed, started, **payload):
    return {
        "schema": SCHEMA_VERSION,
        "command": command,
        "input_digest": _digest(source),
        "seed": seed,
        "elapsed_seconds": round(time.perf_counter() - started, 4),
        **payload,
    }


def emit(report, as_json):
    if as_json:
        print(json.dumps(report, indent=2, default=str))
    return report


def cmd_eddegree(args):
    started = time.perf_counter()
    spec, source = resolve_spec(args)
    try:
        if not spec.check_symmetric():
            print("error: the variety is not absolutely symmetric", file=sys.stderr)
            return 2
    except IndeterminateError as exc:
        print(f"error: symmetry check indeterminate: {exc}", file=sys.stderr)
        return 2

    if spec.is_arrangement:
        comps = arrangements.maximal_components(
            [c.affine for c in spec.components]
        )
        count, stable, per_trial = len(comps), True, []
    else:
        result = edcrit.ed_degree(
            spec, trials=args.trials, seed=args.seed,
            opts=TrackOptions(rng_seed=args.seed),
        )
        count, stable, per_trial = result.count, result.stable, result.per_trial

    report = make_report(
        "eddegree", source, args.seed, started,
        ed_degree=count, stable=stable, per_trial=per_trial,
    )
    emit(report, args.json)
    if not args.json:
        print(f"EDdegree = {count} (stable={stable})")
    return 0 if stable else 3


def cmd_critical(args):
    started = time.perf_counter()
    spec, source = resolve_spec(args)
    Y = load_matrix(args.matrix)
    source["matrix"] = args.matrix

    non_generic = False
    if np.isrealobj(Y):
        svals = np.linalg.svd(Y, compute_uv=False)
        scale = max(1.0, float(svals[0]))
        gaps = -np.diff(svals)
        non_generic = bool(
            svals[-1] < 1e-8 * scale
            or (gaps.size and float(np.min(gaps)) < 1e-8 * scale)
        )

    try:
        lifted = transfer.matrix_ed_critical(
            Y, spec, opts=TrackOptions(rng_seed=args.seed), tol=args.tol
        )
    except transfer.TransferError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    dists = [float(np.linalg.norm(np.asarray(Y, dtype=complex) - p.X)) for p in lifted]
    nearest = int(np.argmin(dists)) if dists else None
    report = make_report(
        "critical", source, args.seed, started,
        count=len(lifted),
        non_generic_input=non_generic,
        nearest_index=nearest,
        points=[
            {**p.to_jsonable(), "distance": d} for p, d in zip(lifted, dists)
        ],
    )
    emit(report, args.json)
    if not args.json:
        print(f"{len(lifted)} critical points "
              f"({sum(p.is_real for p in lifted)} real)")
        if nearest is not None:
            print(f"nearest point: index {nearest}, distance {dists[nearest]:.6g}")
        if non_generic:
            print("warning: data matrix is non-generic (tied or zero singular values)")
    return 0


def cmd_dimension(args):
    started = time.perf_counter()
    spec, source = resolve_spec(args)
    info = transfer.variety_dimension(spec, seed=args.seed)
    P = info["partition"]
    report = make_report(
        "dimension", source, args.seed, started,
        dim_S=info["dim_S"],
        partition={"rho": P.rho, "p": list(P.p), "p0": P.p0},
        dim_fiber=info["dim_fiber"],
        dim_M=info["dim_M"],
    )
    emit(report, args.json)
    if not args.json:
        print(f"dim(S) = {info['dim_S']}, fiber = {info['dim_fiber']}, "
              f"dim(M) = {info['dim_M']}")
    return 0


def cmd_asvd(args):
    started = time.perf_counter()
    A = np.asarray(load_matrix(args.matrix), dtype=complex)
    verdict = spectral.has_algebraic_svd(A)
    payload = {"verdict": verdict}
    if verdict == "yes":
        fact = spectral.algebraic_svd(A)
        payload.update(
            d=_complex_list(fact.d),
            U=[_complex_list(row) for row in fact.U],
            V=[_complex_list(row) for row in fact.V],
            residual=fact.residual,
        )
    report = make_report("asvd", {"matrix": args.matrix}, args.seed, started,
                         **payload)
    emit(report, args.json)
    if not args.json:
        print(f"algebraic SVD: {verdict}")
        if verdict == "yes":
            print(f"d = {payload['d']}, residual = {payload['residual']:.2e}")
    return 0


def cmd_catalog(args):
    started = time.perf_counter()
    rows = []
    for entry in catalog.default_entries():
        rows.append({
            "name": entry.name,
            "n": entry.spec.n,
            "t": entry.spec.t,
            "expected_ed_degree": entry.expected_ed_degree,
            "expected_dim_M": entry.expected_dim_M,
        })
    report = make_report("catalog list", {}, args.seed, started, entries=rows)
    emit(report, args.json)
    if not args.json:
        for r in rows:
            deg = r["expected_ed_degree"]
            print(f"{r['name']:<16} n={r['n']} t={r['t']} "
                  f"eddegree={'computed' if deg is None else deg} "
                  f"dim={r['expected_dim_M']}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="edtransfer",
        description="ED degrees of orthogonally invariant matrix varieties "
                    "via their diagonal restrictions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, matrix=False, spec=True):
        if spec:
            p.add_argument("--catalog", help="built-in spec, e.g. sl_pm:2")
            p.add_argument("--spec", help="variety spec JSON file")
        if matrix:
            p.add_argument("--matrix", required=True, help="matrix JSON file")
        p.add_argument("--trials", type=int, default=3)
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--tol", type=float, default=1e-7)
        p.add_argument("--json", action="store_true")

    common(sub.add_parser("eddegree", help="ED degree of the variety"))
    common(sub.add_parser("critical", help="lifted critical points of a matrix"),
           matrix=True)
    common(sub.add_parser("dimension", help="dimension of the matrix variety"))
    common(sub.add_parser("asvd", help="algebraic SVD of a matrix"),
           matrix=True, spec=False)
    common(sub.add_parser("catalog", help="list built-in varieties"), spec=False)
    return parser


HANDLERS = {
    "eddegree": cmd_eddegree,
    "critical": cmd_critical,
    "dimension": cmd_dimension,
    "asvd": cmd_asvd,
    "catalog": cmd_catalog,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return HANDLERS[args.command](args)
    except (CliError, SpecError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
