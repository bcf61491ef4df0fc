"""Command-line interface.

Exit codes: 0 = success / check passed, 1 = a check failed,
2 = usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, is_dataclass

from . import cluster as cluster_mod
from . import smallscale as smallscale_mod
from .codebook import codebook_names, dumps_code, get_code, loads_code
from .gauging import double_gauge_check, gauge, symmetry_model_from_code, ungauge_css
from .pauli import CodeSpec, render_diagram, verify_stabilizer
from .poly import LaurentPoly
from .syzygy import bounded_kernel, certify_on_torus
from .torus import count_logical, logical_operator_gap, shape_of

PASS = 0
FAIL = 1
USAGE = 2


def _load(path: str) -> CodeSpec:
    try:
        return get_code(path)
    except KeyError:
        pass
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return loads_code(fh.read())
    except FileNotFoundError:
        raise SystemExit(f"error: no such file or codebook entry: {path}")
    except (json.JSONDecodeError, KeyError, ValueError) as exc:
        raise SystemExit(f"error: cannot parse code file {path}: {exc}")


def _emit(payload, as_json: bool) -> None:
    if as_json:
        if is_dataclass(payload):
            payload = asdict(payload)
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        print(payload if isinstance(payload, str) else str(payload))


def _parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise SystemExit(f"error: expected comma-separated integers, got {text!r}")


def _model_of(code: CodeSpec):
    try:
        return symmetry_model_from_code(code)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")


def cmd_verify(args) -> int:
    code = _load(args.code)
    report = verify_stabilizer(code)
    if args.json:
        witness = None
        if report.witness:
            t, u, p = report.witness
            witness = {"row": t, "col": u, "polynomial": str(p)}
        _emit({"code": code.name, "passed": report.passed, "witness": witness}, True)
    else:
        print(f"{code.name}: {report}")
    return PASS if report.passed else FAIL


def cmd_render(args) -> int:
    code = _load(args.code)
    print(f"{code.name} (dim {code.dim}, {code.q_per_site} qubits/site)")
    print(render_diagram(code.full_sigma()))
    return PASS


def cmd_codebook(args) -> int:
    if args.action == "list":
        for name in codebook_names():
            print(name)
        return PASS
    if not args.name:
        print("error: codebook dump needs a name", file=sys.stderr)
        return USAGE
    print(dumps_code(get_code(args.name)), end="")
    return PASS


def cmd_logical(args) -> int:
    code = _load(args.code)
    shape = shape_of(_parse_ints(args.lengths))
    report = count_logical(code, shape)
    gap = logical_operator_gap(code, shape)
    payload = {
        "code": code.name,
        "lengths": list(shape.lengths),
        "n_qubits": report.n_qubits,
        "n_generator_translates": report.n_generator_translates,
        "stab_rank": report.stab_rank,
        "k_encoded": report.k_encoded,
        "bulk_term": report.bulk_term,
        "c_constant": report.c_constant,
        "logical_operator_gap": gap[2],
    }
    if args.json:
        _emit(payload, True)
    else:
        print(
            f"{code.name} on {shape.lengths}: k = {report.k_encoded} "
            f"(n = {report.n_qubits}, rank = {report.stab_rank}, "
            f"gap = {gap[2]}, bulk = {report.bulk_term}, c = {report.c_constant})"
        )
    return PASS


def cmd_kernel(args) -> int:
    code = _load(args.code)
    model = _model_of(code)
    box = _parse_ints(args.box) if args.box else None
    kb = bounded_kernel(model.constraint_map, box)
    lines = [f"{len(kb.generators)} kernel generator(s) in box {kb.box}:"]
    for g in kb.generators:
        lines.append("  (" + ", ".join(str(p) for p in g) + ")")
    ok = True
    if args.certify:
        rep = certify_on_torus(kb, _parse_ints(args.certify))
        lines.append(str(rep))
        ok = rep.passed
    if args.json:
        _emit(
            {
                "generators": [[str(p) for p in g] for g in kb.generators],
                "box": list(kb.box),
                "certified_tori": [list(t) for t in kb.certified_tori],
                "passed": ok,
            },
            True,
        )
    else:
        print("\n".join(lines))
    return PASS if ok else FAIL


def cmd_gauge(args) -> int:
    code = _load(args.code)
    model = _model_of(code)
    box = _parse_ints(args.box) if args.box else None
    gauged, cx = gauge(model, box)
    out = dumps_code(gauged)
    if not cx.mu_certified:
        print("warning: kernel certification inconclusive; enlarge --box", file=sys.stderr)
    print(out, end="")
    return PASS if cx.mu_certified else FAIL


def cmd_ungauge(args) -> int:
    code = _load(args.code)
    try:
        model = ungauge_css(code)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")
    matter = CodeSpec(
        name=f"{code.name}-ungauged",
        dim=model.dim,
        q_per_site=model.matter_q,
        css=True,
        sigma_z=model.constraint_map,
        notes=model.notes,
    )
    print(dumps_code(matter), end="")
    return PASS


def cmd_duality_check(args) -> int:
    code = _load(args.code)
    report = double_gauge_check(code)
    if args.json:
        _emit(
            {
                "code": code.name,
                "passed": report.passed,
                "forward_match": report.forward_match,
                "dual_match": report.dual_match,
                "diff": report.diff,
            },
            True,
        )
    else:
        print(f"{code.name}: {report}")
    return PASS if report.passed else FAIL


def cmd_cluster(args) -> int:
    code = _load(args.code)
    model = _model_of(code)
    spec = cluster_mod.build_cluster(model)
    if args.gauge_sublattice:
        if args.gauge_sublattice == "both":
            res = cluster_mod.gauge_sublattice(spec, "both")
        else:
            res = cluster_mod.gauge_sublattice(spec, args.gauge_sublattice)
        print(dumps_code(res.code), end="")
        return PASS
    print(dumps_code(spec.to_code(f"cluster_{code.name}")), end="")
    return PASS


def cmd_smallscale(args) -> int:
    code = _load(args.model)
    model = _model_of(code)
    shape = shape_of(_parse_ints(args.lengths))
    from .pauli import PauliColumn

    zero = LaurentPoly.zero(model.dim)
    one = LaurentPoly.one(model.dim)
    single_x = PauliColumn(model.dim, model.matter_q, (one,) + (zero,) * (model.matter_q - 1),
                           (zero,) * model.matter_q)
    bond = PauliColumn(model.dim, model.matter_q,
                       (zero,) * model.matter_q,
                       tuple(model.constraint_map.entries[q][0] for q in range(model.matter_q)))
    reports = []
    which = args.check
    try:
        if which in ("all", "lemma2"):
            reports.append(smallscale_mod.check_lemma2(model, shape, cap=args.cap))
        if which in ("all", "lemma3"):
            reports.append(smallscale_mod.check_lemma3(model, shape, single_x, cap=args.cap))
            reports.append(smallscale_mod.check_lemma3(model, shape, bond, cap=args.cap))
        if which in ("all", "claim1"):
            reports.append(smallscale_mod.check_claim1(model, shape, single_x, cap=args.cap))
            reports.append(smallscale_mod.check_claim1(model, shape, bond, cap=args.cap))
        if which in ("all", "elements"):
            reports.append(smallscale_mod.check_matrix_elements(model, shape, single_x, cap=args.cap))
        if which in ("all", "groundspace"):
            reports.append(smallscale_mod.check_groundspace_span(model, shape, cap=args.cap))
    except smallscale_mod.QubitCapExceeded as exc:
        raise SystemExit(f"error: {exc}")
    ok = all(r.passed for r in reports)
    if args.json:
        _emit([str(r) for r in reports], True)
    else:
        for r in reports:
            print(r)
    return PASS if ok else FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stabgauge",
        description="translation-invariant stabilizer models, gauging duality, exact checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = add("verify", cmd_verify, "check that all stabilizer translates commute")
    p.add_argument("code", help="code file or codebook name")

    p = add("render", cmd_render, "per-site letter diagram of the generators")
    p.add_argument("code")

    p = add("codebook", cmd_codebook, "list or dump built-in codes")
    p.add_argument("action", choices=["list", "dump"])
    p.add_argument("name", nargs="?")

    p = add("logical", cmd_logical, "count encoded qubits on a torus")
    p.add_argument("code")
    p.add_argument("--lengths", required=True, help="comma-separated torus lengths")

    p = add("kernel", cmd_kernel, "box-local kernel generators of the constraint map")
    p.add_argument("code")
    p.add_argument("--box", help="comma-separated box extents")
    p.add_argument("--certify", help="torus lengths for certification")

    p = add("gauge", cmd_gauge, "gauge a matter model into a CSS code")
    p.add_argument("code")
    p.add_argument("--box", help="comma-separated box extents for the kernel search")

    p = add("ungauge", cmd_ungauge, "read the matter model off a CSS code")
    p.add_argument("code")

    p = add("duality-check", cmd_duality_check, "ungauge then regauge, both orders")
    p.add_argument("code")

    p = add("cluster", cmd_cluster, "build the cluster model of a matter model")
    p.add_argument("code")
    p.add_argument("--gauge-sublattice", choices=["matter", "gauge", "both"])

    p = add("smallscale", cmd_smallscale, "dense state-vector checks on a tiny torus")
    p.add_argument("--model", required=True, help="code file or codebook name")
    p.add_argument("--lengths", required=True)
    p.add_argument(
        "--check",
        default="all",
        choices=["all", "lemma2", "lemma3", "claim1", "elements", "groundspace"],
    )
    p.add_argument("--cap", type=int, default=smallscale_mod.DEFAULT_QUBIT_CAP)
    return parser


def cli_main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except SystemExit as exc:
        if exc.code not in (0, None) and isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return USAGE
        return exc.code or 0
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    raise SystemExit(cli_main())


if __name__ == "__main__":
    main()
