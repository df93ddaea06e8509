"""``fusion-gerbe`` command-line entry point."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time

import numpy as np

from . import alcove, diffgeo, junction
from .alcove import Region, WeightTriple, classify_region, enumerate_FZ, valid_chart_triples, vertices
from .fusion import compute_V, fusion_product, verify_theorem, verlinde_coeff
from .obstruction import ACCEPTED_INTERIOR_EPSILON, boundary_char_index, fusion_2iso_exists
from .su2 import LAMBDA, PAULI, algebra_element, random_su2, tr

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULT_TOLERANCES = {
    "junction": 1e-10,
    "face_ad": 1e-10,
    "face_winding": 1e-9,
    "omega": 1e-9,
    "pw": 1e-5,
    "period": 1e-6,
    "connection": 1e-10,
}
# residuals of these checks come from finite differences and grow like step^2
FD_CHECKS = {"pw"}
REFERENCE_STEP = 1e-4

# order in which child seeds are handed out; appending keeps old streams stable
GEOMETRY_CHECKS = ("junction", "face_signs", "omega", "pw", "period", "connection")
PERIOD_WEIGHTS = (0.5, 1.0, 1.5, 2.7)


class UsageError(Exception):
    pass


def _default_workers() -> int:
    raw = os.environ.get("FUSION_GERBE_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _tolerance(text: str):
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    try:
        return name.strip(), float(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad tolerance value in {text!r}") from exc


def _global_options(suppress: bool) -> argparse.ArgumentParser:
    # Shared by the top-level parser and every subparser so the options may
    # appear on either side of the subcommand. Subparsers suppress defaults
    # to avoid clobbering values given before the subcommand.
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--format", choices=("text", "json", "csv"), default=d("text"))
    p.add_argument("--seed", type=int, default=d(0))
    p.add_argument("--workers", type=int, default=d(None))
    p.add_argument("--tolerance", type=_tolerance, action="append", default=d([]), metavar="NAME=VALUE")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fusion-gerbe",
        description="su(2)_k fusion rules from representation theory and from gerbe geometry.",
        parents=[_global_options(False)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    shared = [_global_options(True)]

    p = sub.add_parser("fusion", parents=shared, help="fusion product of two weights")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--mu", type=int, required=True)

    p = sub.add_parser("verify", parents=shared, help="compare both fusion sets for k = 1..N")
    p.add_argument("--max-level", type=int, required=True)
    p.add_argument("--interior-epsilon", type=int, choices=(0, 1), default=ACCEPTED_INTERIOR_EPSILON)

    p = sub.add_parser("polytope", parents=shared, help="export the lattice points of the fusion tetrahedron")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--out", default=None, help="JSON file to write (default: standard output)")

    p = sub.add_parser("geometry-check", parents=shared, help="numerical checks of the differential identities")
    p.add_argument("--level", type=int, default=4)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--step", type=float, default=REFERENCE_STEP)
    return parser


# -- output helpers -----------------------------------------------------------


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _text(header, rows) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in cells)


def _table(fmt, header, rows, payload) -> str:
    if fmt == "json":
        return _json(payload)
    if fmt == "csv":
        return _csv(header, rows)
    return _text(header, rows)


def _check_level(k: int) -> None:
    if k < 1:
        raise UsageError(f"level must be >= 1, got {k}")


# -- commands -----------------------------------------------------------------


def cmd_fusion(k: int, lam: int, mu: int, fmt: str, out=None) -> int:
    out = out or sys.stdout
    _check_level(k)
    for name, w in (("lambda", lam), ("mu", mu)):
        if not 0 <= w <= k:
            raise UsageError(f"--{name} must lie in 0..{k}, got {w}")
    product = fusion_product(lam, mu, k)
    rows = []
    for nu, n in product.support().items():
        raw, _ = verlinde_coeff(lam, mu, nu, k)
        geometric = fusion_2iso_exists(WeightTriple(lam, mu, nu, k))
        rows.append({"nu": nu, "n": n, "geometric": geometric, "verlinde": round(raw, 12)})
    payload = {"schema_version": SCHEMA_VERSION, "level": k, "lambda": lam, "mu": mu, "coefficients": rows}
    header = ["nu", "n", "geometric", "verlinde"]
    out.write(_table(fmt, header, [[r[h] for h in header] for r in rows], payload))
    return EXIT_OK if all(r["geometric"] for r in rows) else EXIT_FAIL


def cmd_verify(k_max: int, workers: int, fmt: str, interior_epsilon: int = ACCEPTED_INTERIOR_EPSILON,
               out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if k_max < 1:
        raise UsageError(f"--max-level must be >= 1, got {k_max}")
    results = []
    for k in range(1, k_max + 1):
        start = time.perf_counter()
        report = verify_theorem(k, interior_epsilon=interior_epsilon, workers=workers)
        # timing goes to stderr so stdout stays byte-identical between runs
        err.write(f"k={k}: {time.perf_counter() - start:.3f}s\n")
        results.append({
            "level": k,
            "integer_points": len(enumerate_FZ(k)),
            "V": len(report.V),
            "VG": len(report.VG),
            "verdict": report.verdict,
            "difference": [list(t) for t in report.difference],
        })
    ok = all(r["verdict"] for r in results)
    payload = {"schema_version": SCHEMA_VERSION, "interior_epsilon": interior_epsilon, "levels": results, "verdict": ok}
    header = ["level", "integer_points", "V", "VG", "verdict", "difference"]
    rows = [[r["level"], r["integer_points"], r["V"], r["VG"], r["verdict"],
             " ".join(f"({a},{b},{c})" for a, b, c in r["difference"])] for r in results]
    out.write(_table(fmt, header, rows, payload))
    return EXIT_OK if ok else EXIT_FAIL


def polytope_export(k: int) -> dict:
    fusion = compute_V(k)
    points = enumerate_FZ(k)
    return {
        "schema_version": SCHEMA_VERSION,
        "level": k,
        "vertices": [list(v.as_int()) for v in vertices(k)],
        "integer_points": [
            {"weights": list(t.as_int()), "region": classify_region(t).region.value, "fusion": t.as_int() in fusion}
            for t in points
        ],
        "fusion_points": [list(t) for t in sorted(fusion)],
    }


def cmd_polytope(k: int, out_path, fmt: str, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    _check_level(k)
    data = polytope_export(k)
    text = _json(data)
    if out_path is None:
        out.write(text)
        return EXIT_OK
    try:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        err.write(f"fusion-gerbe: cannot write {out_path}: {exc}\n")
        return EXIT_FAIL
    summary = {"schema_version": SCHEMA_VERSION, "level": k, "out": str(out_path),
               "integer_points": len(data["integer_points"]), "fusion_points": len(data["fusion_points"])}
    header = ["level", "integer_points", "fusion_points", "out"]
    out.write(_table(fmt, header, [[summary[h] for h in header]], summary))
    return EXIT_OK


def _unit_direction(rng):
    c = rng.standard_normal(3)
    return algebra_element(c / np.linalg.norm(c))


def _describe(t: WeightTriple) -> str:
    return f"(lam={t.lam!r}, mu={t.mu!r}, nu={t.nu!r}, k={t.k})"


def _check_junction(rng, k, n):
    pts = alcove.sample_f_dot(rng, k, n) + enumerate_FZ(k)
    return [(junction.junction_residual(t), _describe(t)) for t in pts]


def _check_face_signs(rng, k, n):
    out = []
    for face, expected in junction.FACE_SIGN_TABLE.items():
        pts = junction.integer_face_points(face, k) + junction.sample_face(rng, face, k, n)
        for t in pts:
            rep = junction.face_report(t)
            # a sign mismatch is reported as an infinite residual
            res = rep["ad_residual"] if rep["signs"] == expected else math.inf
            out.append(("face_ad", res, f"{face} {_describe(t)} signs={rep['signs']}"))
            out.append(("face_winding", rep["integrality"], f"{face} {_describe(t)}"))
    return out


def _check_omega(rng, k, n):
    out = []
    for t in alcove.sample_f_dot(rng, k, n):
        h = random_su2(rng)
        for A in (1, 2, 3):
            for B in (1, 2, 3):
                closed = abs(diffgeo.omega_contract(t, h, A, B))
                pulled = abs(diffgeo.omega_pullback(t, h, 1j * PAULI[A - 1], 1j * PAULI[B - 1]))
                out.append((max(closed, pulled), f"{_describe(t)} A={A} B={B}"))
    return out


def _check_pw(rng, k, n, step):
    out = []
    for i in range(n):
        g1, g2 = random_su2(rng, 2)
        frame = [(_unit_direction(rng), _unit_direction(rng)) for _ in range(3)]
        out.append((diffgeo.pw_residual(g1, g2, frame, k, step), f"sample {i}"))
    return out


def _check_period(k):
    out = []
    for lam in PERIOD_WEIGHTS:
        if lam > k:
            continue
        for l in (0, 1):
            expected = 2 * math.pi * (alcove.chart_vertex(l, k) - lam)
            got = diffgeo.period_integral(lam, l, k)
            out.append((abs(got - expected), f"lam={lam} chart={l}"))
    return out


def _check_connection(rng, k):
    out = []
    for t in enumerate_FZ(k):
        if classify_region(t).region is Region.INTERIOR:
            continue
        for charts in valid_chart_triples(t):
            h, x = random_su2(rng), _unit_direction(rng)
            xi = boundary_char_index(t, charts)
            simple = float(np.real(1j * xi * tr(LAMBDA @ diffgeo.theta_left(h, x))))
            res = abs(diffgeo.eval_A_connection(t, charts, h, x) - simple)
            out.append((res, f"{_describe(t)} charts={charts}"))
    return out


def run_geometry(k: int, samples: int, seed: int, step: float, tolerances: dict):
    """Run every numeric check and return ``(name, count, max_residual, tolerance, worst_sample)`` rows."""
    children = np.random.SeedSequence(seed).spawn(len(GEOMETRY_CHECKS))
    rngs = {name: np.random.default_rng(c) for name, c in zip(GEOMETRY_CHECKS, children)}
    scale = max(1.0, (step / REFERENCE_STEP) ** 2)
    tol = {name: value * (scale if name in FD_CHECKS else 1.0) for name, value in DEFAULT_TOLERANCES.items()}
    tol.update(tolerances)

    grouped = {
        "junction": _check_junction(rngs["junction"], k, samples),
        "omega": _check_omega(rngs["omega"], k, samples),
        "pw": _check_pw(rngs["pw"], k, samples, step),
        "period": _check_period(k),
        "connection": _check_connection(rngs["connection"], k),
    }
    for name, res, where in _check_face_signs(rngs["face_signs"], k, samples):
        grouped.setdefault(name, []).append((res, where))

    rows = []
    for name in DEFAULT_TOLERANCES:
        entries = grouped.get(name, [])
        worst = max(entries, key=lambda e: e[0]) if entries else (0.0, "")
        rows.append((name, len(entries), float(worst[0]), tol[name], worst[1]))
    return rows


def cmd_geometry(k: int, samples: int, seed: int, step: float, tolerances: dict, fmt: str, out=None) -> int:
    out = out or sys.stdout
    _check_level(k)
    if samples < 1:
        raise UsageError(f"--samples must be >= 1, got {samples}")
    if not step > 0:
        raise UsageError(f"--step must be positive, got {step}")
    unknown = set(tolerances) - set(DEFAULT_TOLERANCES)
    if unknown:
        raise UsageError(f"unknown tolerance name(s): {', '.join(sorted(unknown))}")
    rows = run_geometry(k, samples, seed, step, tolerances)
    checks = [
        {"check": name, "count": n, "max_residual": res, "tolerance": t, "pass": res < t,
         "worst_sample": where if res >= t else None}
        for name, n, res, t, where in rows
    ]
    ok = all(c["pass"] for c in checks)
    payload = {"schema_version": SCHEMA_VERSION, "level": k, "samples": samples, "seed": seed, "step": step,
               "checks": checks, "pass": ok}
    header = ["check", "count", "max_residual", "tolerance", "pass", "worst_sample"]
    table_rows = [[c["check"], c["count"], f"{c['max_residual']:.3e}", f"{c['tolerance']:.1e}", c["pass"],
                   c["worst_sample"] or ""] for c in checks]
    out.write(_table(fmt, header, table_rows, payload))
    return EXIT_OK if ok else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    workers = args.workers if args.workers is not None else _default_workers()
    try:
        if workers < 1:
            raise UsageError(f"--workers must be >= 1, got {workers}")
        if args.command == "fusion":
            return cmd_fusion(args.level, args.lam, args.mu, args.format)
        if args.command == "verify":
            return cmd_verify(args.max_level, workers, args.format, args.interior_epsilon)
        if args.command == "polytope":
            return cmd_polytope(args.level, args.out, args.format)
        return cmd_geometry(args.level, args.samples, args.seed, args.step, dict(args.tolerance), args.format)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"fusion-gerbe: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
