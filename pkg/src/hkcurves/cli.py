"""Command line toolkit: reductions, curve reports, splittings, metrics.

Every command takes one explicit --seed and derives per-item seeds as
seed * count + index, so reruns with the same arguments write the same
bytes to stdout.  Timing lines go to stderr only.  Exit codes: 0 all
checks passed, 1 a verification failed, 2 unreadable input, 3 readable
input that is not a usable object, 4 numeric extraction failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, TypeVar

import numpy as np

from .acm_curve import (
    ACMCurve,
    LinearMatrix,
    fiber_hilbert_function,
    random_sigma_curve,
    restrict_to_fiber,
    stratum_check,
)
from .cohomology import cohomology_table, ellia_stability_check, normal_sheaf_report
from .exact_algebra.linalg import ExactMatrix
from .exact_algebra.scalars import GaussianRational, format_gauss, parse_gauss
from .pencil import (
    apply_gauge,
    canonical_pair,
    kronecker_reduce,
    pair_stabilizer_dimension,
    random_injective_pencil,
)
from .rational_curve import (
    RationalCurveMap,
    normal_splitting_type,
    random_rational_map,
    riemann_roch_consistent,
    stability_check,
    validate_map,
)
from .twistor_metric import extract_metric, frames_report, scan_chart

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_NUMERIC = 4

_T = TypeVar("_T")


class ParseFailure(Exception):
    """Unreadable input: bad JSON or a bad scalar literal."""


class InvalidObject(Exception):
    """Readable input that does not describe a usable object."""


class NumericFailure(Exception):
    """Extraction broke down; carries a reproduction bundle."""

    def __init__(self, message: str, bundle: Dict[str, Any]):
        super().__init__(message)
        self.bundle = bundle


# ---------------------------------------------------------------------------
# shared plumbing


def _stderr(message: str) -> None:
    print(message, file=sys.stderr)


def _timing(label: str, t0: float) -> None:
    _stderr(f"[time] {label}: {time.perf_counter() - t0:.3f}s")


def _emit_json(doc: Dict[str, Any], out: Optional[Path], name: str) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    sys.stdout.write(text)
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        (out / name).write_text(text)


def _write_gram_csv(path: Path, gram: np.ndarray) -> None:
    lines = [",".join(f"{x:.17g}" for x in row) for row in gram]
    path.write_text("\n".join(lines) + "\n")


def _pool(fn: Callable[[int], _T], count: int) -> List[_T]:
    if count <= 1:
        return [fn(k) for k in range(count)]
    with ThreadPoolExecutor(max_workers=min(8, count)) as pool:
        return list(pool.map(fn, range(count)))


def _load_json(path: str) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseFailure(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseFailure(f"{path} is not JSON: {exc}") from exc


def _matrix_literals(m: ExactMatrix) -> List[List[str]]:
    return [[format_gauss(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def _literal_matrix(value: Any, rows: int, cols: int, label: str) -> ExactMatrix:
    if not isinstance(value, list) or len(value) != rows:
        raise InvalidObject(f"{label} must be a {rows} x {cols} array of literals")
    parsed = []
    for row in value:
        if not isinstance(row, list) or len(row) != cols:
            raise InvalidObject(f"{label} must be a {rows} x {cols} array of literals")
        out_row = []
        for entry in row:
            if not isinstance(entry, str):
                raise InvalidObject(f"{label} entries must be literal strings")
            try:
                out_row.append(parse_gauss(entry))
            except ValueError as exc:
                raise ParseFailure(f"bad literal {entry!r} in {label}: {exc}") from exc
        parsed.append(out_row)
    return ExactMatrix(parsed)


def curve_to_document(
    curve: ACMCurve, metadata: Optional[Dict[str, Any]] = None
) -> Dict[str, Any]:
    m = curve.matrix
    doc: Dict[str, Any] = {"r": m.r}
    for name in ("A1", "A2", "A3", "A4"):
        doc[name] = _matrix_literals(getattr(m, name))
    if metadata is not None:
        doc["metadata"] = metadata
    return doc


def document_to_curve(doc: Any) -> ACMCurve:
    if not isinstance(doc, dict):
        raise InvalidObject("curve document must be a JSON object")
    r = doc.get("r")
    if not isinstance(r, int) or r < 1:
        raise InvalidObject("curve document needs an integer field r >= 1")
    mats = {}
    for name in ("A1", "A2", "A3", "A4"):
        if name not in doc:
            raise InvalidObject(f"curve document missing field {name}")
        mats[name] = _literal_matrix(doc[name], r + 1, r, name)
    try:
        matrix = LinearMatrix(r=r, **mats)
        return ACMCurve(matrix)
    except ValueError as exc:
        raise InvalidObject(str(exc)) from exc


def document_to_map(doc: Any) -> RationalCurveMap:
    if not isinstance(doc, dict) or "forms" not in doc:
        raise InvalidObject("map document must be an object with a forms field")
    forms = doc["forms"]
    if not isinstance(forms, list) or len(forms) != 4:
        raise InvalidObject("forms must list exactly four coefficient rows")
    lengths = {len(f) for f in forms if isinstance(f, list)}
    if len(lengths) != 1 or not all(isinstance(f, list) for f in forms):
        raise InvalidObject("forms rows must be lists of one common length")
    parsed = []
    for idx, row in enumerate(forms):
        coeffs = []
        for entry in row:
            if not isinstance(entry, str):
                raise InvalidObject("form coefficients must be literal strings")
            try:
                coeffs.append(parse_gauss(entry))
            except ValueError as exc:
                raise ParseFailure(f"bad literal {entry!r} in forms[{idx}]") from exc
        parsed.append(tuple(coeffs))
    try:
        return RationalCurveMap(tuple(parsed))
    except ValueError as exc:
        raise InvalidObject(str(exc)) from exc


def _fiber_parameters(count: int, seed: int) -> List[GaussianRational]:
    rng = random.Random(seed)
    out: List[GaussianRational] = []
    while len(out) < count:
        t = GaussianRational(
            Fraction(rng.randint(-9, 9), rng.randint(1, 4)),
            Fraction(rng.randint(-9, 9), rng.randint(1, 4)),
        )
        if t not in out:
            out.append(t)
    return out


# ---------------------------------------------------------------------------
# kronecker


def cmd_kronecker(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    S, T = canonical_pair(args.r)

    def work(index: int) -> Dict[str, Any]:
        A1, A2 = random_injective_pencil(args.r, args.seed * args.count + index)
        entry: Dict[str, Any] = {"index": index}
        try:
            red = kronecker_reduce(A1, A2)
            identity = apply_gauge(A1, A2, red.P, red.Q) == (S, T)
        except (ValueError, AssertionError) as exc:
            entry["identity"] = False
            entry["stabilizer_dimension"] = None
            entry["error"] = str(exc)
            entry["ok"] = False
            return entry
        stab = pair_stabilizer_dimension(A1, A2)
        entry["identity"] = bool(identity)
        entry["stabilizer_dimension"] = stab
        entry["ok"] = bool(identity) and stab == 1
        return entry

    results = _pool(work, args.count)
    passed = all(e["ok"] for e in results)
    doc = {
        "command": "kronecker",
        "r": args.r,
        "count": args.count,
        "seed": args.seed,
        "results": results,
        "passed": passed,
    }
    _emit_json(doc, args.out, "kronecker_report.json")
    _timing("kronecker", t0)
    return EXIT_PASS if passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# acm verify


def _verify_stages(
    curve: ACMCurve, seed: int, num_fibers: int
) -> List[Dict[str, Any]]:
    stages: List[Dict[str, Any]] = []
    r = curve.matrix.r

    t0 = time.perf_counter()
    stages.append(
        {"stage": "base_avoidance", "ok": bool(curve.certified.base_avoidance)}
    )
    stages.append(
        {"stage": "sigma_invariance", "ok": bool(curve.certified.sigma_invariance)}
    )
    cert = curve.certificate()
    stages.append(
        {
            "stage": "resolution_certificate",
            "ok": bool(cert.ok),
            "dimensions": list(cert.dimensions),
            "expected": list(cert.expected),
            "mismatches": [list(m) for m in cert.mismatches],
        }
    )
    _timing("certificates", t0)
    if not cert.ok:
        return stages

    t0 = time.perf_counter()
    table = cohomology_table(curve, r - 3, r + 1)
    ellia = ellia_stability_check(curve)
    stages.append(
        {
            "stage": "cohomology",
            "ok": bool(ellia),
            "table": [
                {"k": k, "h0": row[0], "h1": row[1], "h2": row[2], "h3": row[3]}
                for k, row in zip(range(table.kmin, table.kmax + 1), table.rows)
            ],
            "ellia_stable": bool(ellia),
        }
    )
    _timing("cohomology", t0)

    t0 = time.perf_counter()
    normal = normal_sheaf_report(curve)
    stages.append(
        {
            "stage": "normal_sections",
            "ok": bool(normal.ok),
            "h0_N": normal.sections,
            "expected": normal.expected,
            "h0_N_minus_1": normal.sections_minus_1,
            "expected_minus_1": normal.expected_minus_1,
        }
    )
    _timing("normal sections", t0)

    t0 = time.perf_counter()
    fibers = []
    fibers_ok = True
    for t in _fiber_parameters(num_fibers, seed):
        scheme = restrict_to_fiber(curve, t)
        stratum = stratum_check(scheme)
        length_ok = scheme.length() == curve.degree
        fibers.append(
            {
                "t": format_gauss(t),
                "length": scheme.length(),
                "expected_length": curve.degree,
                "hilbert": list(fiber_hilbert_function(scheme)),
                "stratum": bool(stratum),
            }
        )
        fibers_ok = fibers_ok and length_ok and stratum
    stages.append({"stage": "fibers", "ok": fibers_ok, "fibers": fibers})
    _timing("fibers", t0)
    return stages


def cmd_acm_verify(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    curve = document_to_curve(_load_json(args.curve))
    stages = _verify_stages(curve, args.seed, args.fibers)
    failed = next((s["stage"] for s in stages if not s["ok"]), None)
    doc = {
        "command": "acm verify",
        "input": args.curve,
        "seed": args.seed,
        "r": curve.matrix.r,
        "degree": curve.degree,
        "genus": curve.genus,
        "stages": stages,
        "failed_stage": failed,
        "passed": failed is None,
    }
    _emit_json(doc, args.out, "acm_verify_report.json")
    _timing("acm verify", t0)
    return EXIT_PASS if failed is None else EXIT_FAIL


# ---------------------------------------------------------------------------
# acm random


def cmd_acm_random(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()

    def work(index: int) -> Optional[ACMCurve]:
        try:
            return random_sigma_curve(args.r, args.seed * args.count + index)
        except ValueError:
            return None

    curves = _pool(work, args.count)
    args.out.mkdir(parents=True, exist_ok=True)
    written = []
    for index, curve in enumerate(curves):
        if curve is None:
            _stderr(f"warning: no certified curve at index {index}; skipped")
            continue
        name = f"curve_r{args.r}_s{args.seed}_{index:03d}.json"
        doc = curve_to_document(curve, metadata={"seed": args.seed, "index": index})
        (args.out / name).write_text(json.dumps(doc, indent=2) + "\n")
        written.append(name)
    summary = {
        "command": "acm random",
        "r": args.r,
        "count": args.count,
        "seed": args.seed,
        "written": written,
    }
    _emit_json(summary, None, "")
    _timing("acm random", t0)
    return EXIT_PASS if len(written) == args.count else EXIT_FAIL


# ---------------------------------------------------------------------------
# rational


def cmd_rational(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    if args.map is not None:
        rmap = document_to_map(_load_json(args.map))
        validation = validate_map(rmap)
        doc: Dict[str, Any] = {
            "command": "rational",
            "input": args.map,
            "degree": rmap.degree,
            "validation": {
                "base_point_free": validation.base_point_free,
                "immersion": validation.immersion,
                "ok": validation.ok,
                "witness": None
                if validation.witness is None
                else [format_gauss(w) for w in validation.witness],
            },
        }
        if not validation.ok:
            doc["passed"] = False
            _emit_json(doc, args.out, "rational_report.json")
            _timing("rational", t0)
            return EXIT_INVALID
        splitting = normal_splitting_type(rmap)
        doc["a"] = splitting.a
        doc["b"] = splitting.b
        doc["stable"] = stability_check(splitting)
        doc["riemann_roch"] = riemann_roch_consistent(rmap, splitting)
        doc["passed"] = bool(doc["riemann_roch"])
        _emit_json(doc, args.out, "rational_report.json")
        _timing("rational", t0)
        return EXIT_PASS if doc["passed"] else EXIT_FAIL

    if args.d is None:
        raise InvalidObject("rational needs either --map FILE or --d")

    def work(index: int) -> Dict[str, Any]:
        entry: Dict[str, Any] = {"index": index}
        try:
            rmap = random_rational_map(args.d, args.seed * args.count + index)
            splitting = normal_splitting_type(rmap)
        except (ValueError, ArithmeticError) as exc:
            entry["error"] = str(exc)
            entry["ok"] = False
            return entry
        entry["a"] = splitting.a
        entry["b"] = splitting.b
        entry["stable"] = stability_check(splitting)
        entry["sum_ok"] = splitting.a + splitting.b == 4 * args.d - 2
        entry["ok"] = entry["sum_ok"]
        return entry

    results = _pool(work, args.count)
    histogram: Dict[str, int] = {}
    for entry in results:
        if "a" in entry:
            key = f"{entry['a']},{entry['b']}"
            histogram[key] = histogram.get(key, 0) + 1
    passed = all(e["ok"] for e in results)
    stable_count = sum(1 for e in results if e.get("stable"))
    doc = {
        "command": "rational",
        "d": args.d,
        "count": args.count,
        "seed": args.seed,
        "results": results,
        "histogram": {k: histogram[k] for k in sorted(histogram)},
        "stable_fraction": stable_count / max(1, args.count),
        "passed": passed,
    }
    _emit_json(doc, args.out, "rational_report.json")
    _timing("rational", t0)
    return EXIT_PASS if passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# metric


def cmd_metric(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()

    def work(index: int):
        chart = scan_chart(
            args.r, args.seed, args.count, index, args.skip_sigma_gauge
        )
        try:
            return extract_metric(chart)
        except (ArithmeticError, np.linalg.LinAlgError) as exc:
            bundle = {
                "command": "metric",
                "r": args.r,
                "count": args.count,
                "seed": args.seed,
                "index": index,
                "skip_sigma_gauge": args.skip_sigma_gauge,
                "chart": {
                    name: _matrix_literals(getattr(chart, name))
                    for name in ("A1", "A2", "A3", "A4")
                },
                "error": str(exc),
            }
            raise NumericFailure(str(exc), bundle) from exc

    frames = _pool(work, args.count)
    report = frames_report(args.r, frames, args.skip_sigma_gauge)
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        for index, frame in enumerate(frames):
            _write_gram_csv(args.out / f"gram_point_{index:02d}.csv", frame.gram)
    doc = {
        "command": "metric",
        "r": args.r,
        "count": args.count,
        "seed": args.seed,
        "skip_sigma_gauge": args.skip_sigma_gauge,
        "signatures": [list(s) for s in report.signatures],
        "signature_constant": report.signature_constant,
        "max_relative_deviation": float(report.max_relative_deviation),
        "max_fit_residual": float(report.max_fit_residual),
        "max_quaternion_residual": float(report.max_quaternion_residual),
        "passed": report.passed,
    }
    _emit_json(doc, args.out, "metric_report.json")
    _timing("metric", t0)
    return EXIT_PASS if report.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# cohomology table


def cmd_cohomology_table(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    if args.curve is not None:
        curve = document_to_curve(_load_json(args.curve))
        source = args.curve
    else:
        if args.r is None:
            raise InvalidObject("cohomology table needs --curve FILE or --r")
        curve = random_sigma_curve(args.r, args.seed)
        source = f"random_sigma_curve(r={args.r}, seed={args.seed})"
    r = curve.matrix.r
    table = cohomology_table(curve, r - 3, r + 1)
    ellia = ellia_stability_check(curve)
    doc = {
        "command": "cohomology table",
        "input": source,
        "r": r,
        "kmin": table.kmin,
        "kmax": table.kmax,
        "rows": [
            {"k": k, "h0": row[0], "h1": row[1], "h2": row[2], "h3": row[3]}
            for k, row in zip(range(table.kmin, table.kmax + 1), table.rows)
        ],
        "ellia_stable": bool(ellia),
        "passed": bool(ellia),
    }
    _emit_json(doc, args.out, "cohomology_table.json")
    _timing("cohomology table", t0)
    return EXIT_PASS if ellia else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hkcurves",
        description="Exact verification toolkit for determinantal space "
        "curves, their fibers, normal bundles, and metrics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_kron = sub.add_parser("kronecker", help="reduce random injective pencils")
    p_kron.add_argument("--r", type=int, required=True)
    p_kron.add_argument("--count", type=int, default=10)
    p_kron.add_argument("--seed", type=int, default=0)
    p_kron.add_argument("--out", type=Path, default=None)
    p_kron.set_defaults(func=cmd_kronecker)

    p_acm = sub.add_parser("acm", help="determinantal curve commands")
    acm_sub = p_acm.add_subparsers(dest="acm_command", required=True)

    p_verify = acm_sub.add_parser("verify", help="full report on one curve file")
    p_verify.add_argument("curve", help="curve document (JSON)")
    p_verify.add_argument("--fibers", type=int, default=5)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--out", type=Path, default=None)
    p_verify.set_defaults(func=cmd_acm_verify)

    p_random = acm_sub.add_parser("random", help="write certified curve documents")
    p_random.add_argument("--r", type=int, required=True)
    p_random.add_argument("--count", type=int, default=1)
    p_random.add_argument("--seed", type=int, default=0)
    p_random.add_argument("--out", type=Path, required=True)
    p_random.set_defaults(func=cmd_acm_random)

    p_rat = sub.add_parser("rational", help="splitting types of rational maps")
    p_rat.add_argument("--d", type=int, default=None)
    p_rat.add_argument("--count", type=int, default=20)
    p_rat.add_argument("--seed", type=int, default=0)
    p_rat.add_argument("--map", default=None, help="explicit map document (JSON)")
    p_rat.add_argument("--out", type=Path, default=None)
    p_rat.set_defaults(func=cmd_rational)

    p_metric = sub.add_parser("metric", help="metric constancy scan")
    p_metric.add_argument("--r", type=int, required=True)
    p_metric.add_argument("--count", type=int, default=10)
    p_metric.add_argument("--seed", type=int, default=0)
    p_metric.add_argument("--skip-sigma-gauge", action="store_true")
    p_metric.add_argument("--out", type=Path, default=None)
    p_metric.set_defaults(func=cmd_metric)

    p_coh = sub.add_parser("cohomology", help="cohomology commands")
    coh_sub = p_coh.add_subparsers(dest="cohomology_command", required=True)
    p_table = coh_sub.add_parser("table", help="twisted ideal cohomology table")
    p_table.add_argument("--r", type=int, default=None)
    p_table.add_argument("--curve", default=None, help="curve document (JSON)")
    p_table.add_argument("--seed", type=int, default=0)
    p_table.add_argument("--out", type=Path, default=None)
    p_table.set_defaults(func=cmd_cohomology_table)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseFailure as exc:
        _stderr(f"parse error: {exc}")
        return EXIT_PARSE
    except InvalidObject as exc:
        _stderr(f"invalid input object: {exc}")
        return EXIT_INVALID
    except NumericFailure as exc:
        _stderr(f"numeric extraction failure: {exc}")
        _emit_json(exc.bundle, args.out, "reproduction_bundle.json")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
