"""Command-line front end.

Every command reads JSON (``--input PATH``, ``-`` for stdin, or
``preset:NAME`` for a bundled file), writes a JSON report with
``"schema": "1"`` to ``--output`` or stdout, and exits with

* 0 when every check passes,
* 1 when an identity fails (``failed_tags`` lists the equation tags),
* 2 on malformed input or an unknown command,
* 3 when a resource cap is exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from importlib import resources

from .exact.serialize import SchemaError, scalar_from_json, scalar_to_json
from .fedosov import FedosovConnection, FedosovData, NotClosedError, equivariance_check, kappa0_identities
from .fedosov.connection import CapError
from .fedosov.sections import BundleSection
from .groups.matrix_group import GroupExplosionError, group_from_json
from .hochschild import (
    Bimodule,
    HochschildComplex,
    ResourceCapError,
    TwistedGroupAlgebra,
    UnsupportedError,
    algebra_from_json,
    decomposition_check,
    differential_suite,
    hkr_cocycle_defect,
    homotopy_suite,
    koszul_ext,
    random_polynomial,
    symmetrizer_morita,
)
from .hochschild.algebra import AlgebraError
from .orbifold.chen_ruan import (
    IncompleteInputError,
    general_orbifold_cohomology,
    linear_orbifold_cohomology,
    loci_from_json,
    unobstructedness_check,
)
from .weyl.checks import cycle_suite, moyal_suite

__all__ = ["COMMANDS", "InputError", "execute", "main", "run"]

log = logging.getLogger("orbiquant")

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

DEFAULT_INPUTS = {
    "chen-ruan": "preset:z2_sp2",
    "fedosov-star": "preset:star_linear_c2",
    "fedosov-verify": "preset:fedosov_linear_c2",
    "hochschild": "preset:algebra_dual_z2",
    "decomposition-check": "preset:algebra_dual_z2",
    "homotopy-check": "preset:algebra_dual_z2",
    "weyl-cycle-check": "preset:z4_sp2",
    "koszul-ext": "preset:koszul_d2",
}


class InputError(ValueError):
    """Unreadable or malformed input; maps to exit status 2."""


# --- input ---------------------------------------------------------------------

def preset_names() -> list[str]:
    folder = resources.files("orbiquant") / "presets"
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".json"))


def _read_text(path: str) -> tuple[str, str]:
    if path == "-":
        return sys.stdin.read(), "<stdin>"
    if path.startswith("preset:"):
        name = path[len("preset:"):]
        res = resources.files("orbiquant") / "presets" / f"{name}.json"
        if not res.is_file():
            raise InputError(f"unknown preset {name!r}; available: {', '.join(preset_names())}")
        return res.read_text(), path
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read(), path
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def load_json(path: str):
    text, label = _read_text(path)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        err = InputError(f"{label}: malformed JSON at line {exc.lineno} column {exc.colno} (char {exc.pos}): {exc.msg}")
        err.position = {"line": exc.lineno, "column": exc.colno, "char": exc.pos}
        raise err from exc
    if isinstance(obj, dict) and "schema" in obj and str(obj["schema"]) != "1":
        raise InputError(f"{label}: unsupported schema version {obj['schema']!r}")
    return obj


def _positive(name: str, value):
    if value is not None and value < 1:
        raise InputError(f"--{name} must be positive, got {value}")
    return value


def _poly_from_json(terms, dim: int) -> dict:
    if not isinstance(terms, list):
        raise SchemaError("polynomials are lists of {xdeg, coeff} terms")
    out: dict = {}
    for t in terms:
        e = tuple(int(v) for v in t["xdeg"])
        if len(e) != dim or any(v < 0 for v in e):
            raise SchemaError(f"bad xdeg {list(e)}")
        out[e] = out.get(e, 0) + scalar_from_json(t["coeff"])
    return {e: c for e, c in out.items() if c != 0}


def _section_to_json(a: BundleSection) -> list[dict]:
    return [
        {"xdeg": list(x), "hbar": k, "coeff": scalar_to_json(v)}
        for (x, k), v in sorted(a.function_part().items(), key=lambda kv: (kv[0][1], kv[0][0]))
    ]


def _finish(report: dict, checks: list[dict]) -> dict:
    report["checks"] = checks
    report["passed"] = all(c["passed"] for c in checks)
    report["failed_tags"] = sorted({c["tag"] for c in checks if not c["passed"]})
    return report


# --- commands --------------------------------------------------------------------

def cmd_chen_ruan(obj, args) -> dict:
    if isinstance(obj, dict) and "classes" in obj:
        data, h3 = loci_from_json(obj)
        report = {"mode": "generic", **general_orbifold_cohomology(data).to_json()}
        try:
            report["unobstructed"] = unobstructedness_check(data, h3)
        except IncompleteInputError as exc:
            report["unobstructed"] = {"hypotheses_met": None, "missing": exc.missing}
        return report
    G = group_from_json(obj, bound=args.max_group)
    return {"mode": "linear", "group_order": G.order, **linear_orbifold_cohomology(G).to_json()}


def _fedosov_data(obj) -> FedosovData:
    if isinstance(obj, str) and obj == "flat":
        return FedosovData.flat(1)
    return FedosovData.from_json(obj)


def cmd_fedosov_star(obj, args) -> dict:
    if not isinstance(obj, dict) or "f" not in obj or "g" not in obj:
        raise SchemaError("fedosov-star input needs 'data', 'f' and 'g'")
    data = _fedosov_data(obj.get("data", "flat"))
    order = args.hbar_cap or int(obj.get("hbar_order", 3))
    _positive("hbar-cap", order)
    cap = args.weight_cap if args.weight_cap is not None else 2 * order
    conn = FedosovConnection(data, cap=cap)
    space = data.space
    f = BundleSection.function(space, _poly_from_json(obj["f"], data.dim))
    g = BundleSection.function(space, _poly_from_json(obj["g"], data.dim))
    prod = conn.star(f, g, order)
    return {"hbar_order": order, "connection_cap": conn.cap, "star": _section_to_json(prod),
            "checks": [], "passed": True, "failed_tags": []}


def cmd_fedosov_verify(obj, args) -> dict:
    from .fedosov import verify_fedosov

    spec_obj = obj.get("data", obj) if isinstance(obj, dict) else obj
    data = _fedosov_data(spec_obj)
    W = args.weight_cap if args.weight_cap is not None else data.weight_cap
    order = args.hbar_cap or 4
    trials = args.trials or 20
    report = verify_fedosov(data, weight_cap=W, hbar_order=order, trials=trials, seed=args.seed)
    checks = list(report["checks"])
    extra = {}
    if isinstance(obj, dict) and "group" in obj:
        G = group_from_json(obj["group"], bound=args.max_group)
        eq = equivariance_check(data, G, pairs=trials, hbar_order=min(order, 3), seed=args.seed)
        extra["equivariance"] = {k: eq[k] for k in ("group_order", "data_invariant", "invariance_failures")}
        if eq["invariance_failures"]:
            checks.append({"name": "data invariant under the group", "tag": "assume", "passed": False,
                           "failures": eq["invariance_failures"]})
        checks.extend(eq["checks"])
        for rep in G.class_representatives():
            k0 = kappa0_identities(G.elements[rep], data, cap=min(W + 2, 8))
            for c in k0["checks"]:
                checks.append({**c, "element": rep})
    report = {k: v for k, v in report.items() if k not in ("checks", "passed")}
    report.update(extra)
    return _finish(report, checks)


def _degrees(obj, default=(0, 1, 2)) -> list[int]:
    qs = obj.get("degrees", list(default)) if isinstance(obj, dict) else list(default)
    try:
        qs = [int(q) for q in qs]
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"degrees must be integers: {exc}") from exc
    if any(q < 0 for q in qs):
        raise SchemaError("degrees must be non-negative")
    return qs


def _variant(obj) -> str:
    v = obj.get("variant", "homology") if isinstance(obj, dict) else "homology"
    if v not in ("homology", "cohomology"):
        raise SchemaError(f"variant must be 'homology' or 'cohomology', got {v!r}")
    return v


def cmd_hochschild(obj, args) -> dict:
    A = algebra_from_json(obj)
    qs, variant = _degrees(obj), _variant(obj)
    AG = TwistedGroupAlgebra(A)
    base = HochschildComplex(A, Bimodule.regular(A))
    twisted = HochschildComplex(AG, Bimodule.regular(AG))
    dim = (lambda C, q: C.homology_dim(q)) if variant == "homology" else (lambda C, q: C.cohomology_dim(q))
    return {
        "algebra": A.name,
        "algebra_dim": A.dim,
        "group_order": A.group.order,
        "variant": variant,
        "HH_A": {str(q): dim(base, q) for q in qs},
        "HH_AG": {str(q): dim(twisted, q) for q in qs},
        "morita": symmetrizer_morita(A),
        "checks": [],
        "passed": True,
        "failed_tags": [],
    }


def cmd_decomposition(obj, args) -> dict:
    A = algebra_from_json(obj)
    variant = _variant(obj)
    rows = [decomposition_check(A, q, variant) for q in _degrees(obj)]
    checks = [
        {"name": f"dim HH_{r['q']}(A[G]) = dim HH_{r['q']}(A, A[G])^G", "tag": "FLT", "passed": r["equal"],
         "lhs_dim": r["lhs_dim"], "rhs_dim": r["rhs_dim"], "q": r["q"]}
        for r in rows
    ]
    return _finish({"algebra": A.name, "group_order": A.group.order, "variant": variant}, checks)


def cmd_homotopy(obj, args) -> dict:
    A = algebra_from_json(obj)
    trials = args.trials or 500
    m = int(obj.get("max_m", 3)) if isinstance(obj, dict) else 3
    q = int(obj.get("max_q", 3)) if isinstance(obj, dict) else 3
    checks = [homotopy_suite(A, trials, args.seed, m, q)]
    checks += differential_suite(A, max(1, trials // 5), args.seed + 1, m, q)
    return _finish({"algebra": A.name, "group_order": A.group.order, "seed": args.seed,
                    "max_bidegree": [m, q]}, checks)


def cmd_weyl_cycle(obj, args) -> dict:
    G = group_from_json(obj, bound=args.max_group)
    trials = args.trials or 1000
    checks = moyal_suite(G.space, trials, args.seed) + [cycle_suite(G)]
    return _finish({"group_order": G.order, "dim": G.space.dim, "seed": args.seed}, checks)


def cmd_koszul(obj, args) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError("koszul-ext input must be an object with 'd'")
    import random
    from math import comb

    d = int(obj.get("d", 2))
    cap = args.weight_cap if args.weight_cap is not None else int(obj.get("degree_cap", 4))
    _positive("weight-cap", cap)
    ext = koszul_ext(d, cap)
    expected = [comb(t + d - 1, d - 1) for t in range(cap + 1)]
    vanish = all(not any(dims) for i, dims in ext.items() if i != d)
    rng = random.Random(args.seed)
    trials = args.trials or 20
    bad = 0
    for _ in range(trials):
        f = random_polynomial(rng, d)
        polys = [random_polynomial(rng, d) for _ in range(d + 1)]
        if hkr_cocycle_defect(f, polys, d):
            bad += 1
    checks = [
        {"name": "Ext^i = 0 for i != d", "tag": "Ext-A-0", "passed": vanish},
        {"name": "dim Ext^d_t = dim (A_0)_t", "tag": "Ext-A-0", "passed": ext.get(d) == expected,
         "expected": expected},
        {"name": "HKR cochains are cocycles", "tag": "HKR", "passed": bad == 0, "trials": trials, "failures": bad},
    ]
    return _finish({"d": d, "degree_cap": cap, "ext": {str(i): v for i, v in sorted(ext.items())}}, checks)


COMMANDS = {
    "chen-ruan": cmd_chen_ruan,
    "fedosov-star": cmd_fedosov_star,
    "fedosov-verify": cmd_fedosov_verify,
    "hochschild": cmd_hochschild,
    "decomposition-check": cmd_decomposition,
    "homotopy-check": cmd_homotopy,
    "weyl-cycle-check": cmd_weyl_cycle,
    "koszul-ext": cmd_koszul,
}

HELP = {
    "chen-ruan": "additive orbifold cohomology of V/G (group file) or of generic fixed-locus data",
    "fedosov-star": "star product of two polynomials for given Fedosov data",
    "fedosov-verify": "run the Fedosov identity suite (optionally equivariance and kappa_0)",
    "hochschild": "Hochschild (co)homology of A and of A[G]",
    "decomposition-check": "compare HH(A[G]) with the G-invariants of HH(A, A[G])",
    "homotopy-check": "contracting homotopy and differentials of the mixed resolution",
    "weyl-cycle-check": "Moyal associativity and b psi(g) = 0 for a symplectic group",
    "koszul-ext": "graded Ext of the polynomial ring and HKR cocycles",
}


# --- driver ------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="orbiquant", description="Exact computations for symplectic orbifolds.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, help=HELP[name])
        p.add_argument("--input", "-i", help="JSON input path, '-' for stdin or preset:NAME")
        if name == "chen-ruan":
            p.add_argument("--group", dest="input", help="group file (same as --input)")
            p.add_argument("--data", dest="input", help="fixed-locus file (same as --input)")
        p.add_argument("--output", "-o", help="write the report here instead of stdout")
        p.add_argument("--weight-cap", type=int)
        p.add_argument("--hbar-cap", type=int)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-group", type=int, default=1000)
        p.add_argument("--trials", type=int)
    return parser


def execute(argv: list[str] | None = None) -> tuple[int, dict, str | None]:
    """Parse ``argv`` and run the job; returns ``(status, report, output_path)``."""
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise InputError("missing command; choose one of " + ", ".join(COMMANDS))
        for flag in ("weight_cap", "hbar_cap", "max_group", "trials"):
            _positive(flag.replace("_", "-"), getattr(args, flag))
        if args.seed < 0:
            raise InputError("--seed must be non-negative")
    except InputError as exc:
        return EXIT_INPUT, {"schema": "1", "status": EXIT_INPUT, "error": str(exc)}, None

    if args.verbose:
        logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    base = {"schema": "1", "command": args.command}
    try:
        obj = load_json(args.input or DEFAULT_INPUTS[args.command])
        start = time.perf_counter()
        report = COMMANDS[args.command](obj, args)
        log.info("%s finished in %.2fs", args.command, time.perf_counter() - start)
    except InputError as exc:
        err = {**base, "status": EXIT_INPUT, "error": str(exc)}
        if getattr(exc, "position", None):
            err["position"] = exc.position
        return EXIT_INPUT, err, args.output
    except CapError as exc:
        return EXIT_CAP, {**base, "status": EXIT_CAP, "error": str(exc)}, args.output
    except (ResourceCapError, GroupExplosionError, MemoryError, RecursionError) as exc:
        return EXIT_CAP, {**base, "status": EXIT_CAP, "error": f"{type(exc).__name__}: {exc}"}, args.output
    except (SchemaError, NotClosedError, AlgebraError, UnsupportedError, IncompleteInputError,
            KeyError, TypeError, ValueError, IndexError) as exc:
        return EXIT_INPUT, {**base, "status": EXIT_INPUT, "error": f"{type(exc).__name__}: {exc}"}, args.output

    report = {**report, **base}
    status = EXIT_OK if report.get("passed", True) else EXIT_FAILED
    report["status"] = status
    return status, report, args.output


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    """``(status, report)`` for ``argv``; nothing is written."""
    status, report, _ = execute(argv)
    return status, report


def main(argv: list[str] | None = None) -> int:
    status, report, out_path = execute(argv)
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out_path:
        try:
            with open(out_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {out_path}: {exc.strerror}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.write(text)
    if status == EXIT_FAILED:
        print("failed identities: " + ", ".join(report.get("failed_tags", [])), file=sys.stderr)
    elif status != EXIT_OK:
        print("error: " + report.get("error", ""), file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
