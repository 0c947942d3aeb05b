"""Command-line front end.

Subcommands: eval, invariants, alpha, homeo, models, batch.  ``--json``
switches every output (including errors) to the documented JSON shape,
serialized deterministically (sorted keys, fixed separators) so that
re-parsing and re-serializing is byte-identical.

Exit codes: 0 success, 1 parse or domain error, 2 internal consistency
error, 3 model-check failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import curvature, dsl, minimax
from .algebra import TriState
from .alpha import alpha_squared
from .errors import ConsistencyError, FourfoldError, ParseError
from .invariants import invariants
from .obstructions import freedman_class, homeomorphic, verdict, verdict_json

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2
EXIT_MODEL_CHECK = 3


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _emit_error(err: Exception, as_json: bool, out) -> int:
    code = EXIT_INTERNAL if isinstance(err, ConsistencyError) else EXIT_INPUT
    if as_json:
        payload = {"error": {"kind": type(err).__name__, "message": str(err)}}
        position = getattr(err, "position", None)
        if position is not None:
            payload["error"]["position"] = position
        print(_dumps(payload), file=out)
    else:
        print(f"error: {err}", file=sys.stderr)
    return code


def _record_json(r) -> dict:
    data = {
        "chi": r.chi,
        "tau": r.tau,
        "b_plus": r.b_plus,
        "b_minus": r.b_minus,
        "b1": r.b1,
        "spin": r.spin.value,
        "simply_connected": r.simply_connected.value,
        "psc": r.psc.value,
        "scalar_flat": r.scalar_flat.value,
        "complex": None,
    }
    if r.complex_data is not None:
        c = r.complex_data
        data["complex"] = {
            "is_complex": c.is_complex,
            "c1sq": c.c1sq,
            "c1sq_minimal_model": c.c1sq_minimal_model,
            "chi_h": c.chi_h,
            "ample_K": c.ample_K,
            "minimal": c.minimal,
            "blowup_count": c.blowup_count,
        }
    return data


def _cmd_eval(args, out) -> int:
    v = verdict(dsl.parse(args.expr))
    if args.json:
        print(_dumps(verdict_json(v)), file=out)
        return EXIT_OK
    r = v.record
    print(f"expr: {dsl.format_expr(v.expression)}", file=out)
    print(f"conclusion: {v.conclusion_text}", file=out)
    print(
        f"chi={r.chi} tau={r.tau} b+={r.b_plus} b-={r.b_minus} spin={r.spin.value}",
        file=out,
    )
    alpha_text = str(v.alpha.value) if v.alpha.value is not None else v.alpha.status.value
    print(f"alpha^2 = {alpha_text} ({v.alpha.status.value})", file=out)
    if args.certificate:
        print("certificate:", file=out)
        for line in v.certificate:
            print(f"  {line}", file=out)
    return EXIT_OK


def _cmd_invariants(args, out) -> int:
    r = invariants(dsl.parse(args.expr))
    if args.json:
        payload = {"expr": dsl.format_expr(dsl.parse(args.expr))}
        payload.update(_record_json(r))
        print(_dumps(payload), file=out)
        return EXIT_OK
    b1_text = r.b1 if r.b1 is not None else "unknown"
    print(f"chi = {r.chi}", file=out)
    print(f"tau = {r.tau}", file=out)
    print(f"b+ = {r.b_plus}", file=out)
    print(f"b- = {r.b_minus}", file=out)
    print(f"b1 = {b1_text}", file=out)
    print(f"spin = {r.spin.value}", file=out)
    print(f"simply_connected = {r.simply_connected.value}", file=out)
    print(f"psc = {r.psc.value}", file=out)
    print(f"scalar_flat = {r.scalar_flat.value}", file=out)
    if r.complex_data is not None:
        c = r.complex_data
        print(
            f"complex: c1^2 = {c.c1sq}, c1^2(min model) = {c.c1sq_minimal_model}, "
            f"chi_h = {c.chi_h}, blow-ups = {c.blowup_count}, "
            f"minimal = {'yes' if c.minimal else 'no'}, "
            f"ample_K = {'yes' if c.ample_K else 'no'}",
            file=out,
        )
    return EXIT_OK


def _cmd_alpha_expr(args, out) -> int:
    a = alpha_squared(dsl.parse(args.expr))
    if args.json:
        payload = {
            "expr": dsl.format_expr(dsl.parse(args.expr)),
            "alpha_sq": {
                "status": a.status.value,
                "value": str(a.value) if a.value is not None else None,
            },
            "trace": list(a.trace),
        }
        print(_dumps(payload), file=out)
        return EXIT_OK
    value_text = str(a.value) if a.value is not None else a.status.value
    print(f"alpha^2 = {value_text} ({a.status.value})", file=out)
    for line in a.trace:
        print(f"  {line}", file=out)
    return EXIT_OK


def _cmd_alpha_form(args, out) -> int:
    space = minimax.QuadraticFormSpace.from_files(args.form, args.classes)
    result = minimax.alpha_squared_numeric(
        space,
        tolerance=args.tolerance,
        max_iter=args.max_iter,
        seed=args.seed,
    )
    oracle = None
    if space.dimension <= 6:
        oracle = minimax.alpha_brute_oracle(space)
    if args.json:
        payload = {
            "value": result.value,
            "iterations": result.iterations,
            "converged": result.converged,
            "boundary": result.boundary,
            "b_plus": space.b_plus,
            "b_minus": space.b_minus,
            "oracle": None,
        }
        if oracle is not None:
            payload["oracle"] = {
                "value": oracle.value,
                "boundary": oracle.boundary,
                "difference": abs(result.value - oracle.value),
            }
        print(_dumps(payload), file=out)
        return EXIT_OK
    print(f"signature: (b+, b-) = ({space.b_plus}, {space.b_minus})", file=out)
    flag = "" if result.converged else "  [did not converge]"
    print(f"alpha^2 (numeric) = {result.value:.8g}{flag}", file=out)
    print(f"iterations = {result.iterations}", file=out)
    if result.boundary:
        print("note: minimizer near the chart boundary; infimum may not be attained", file=out)
    if oracle is not None:
        print(f"alpha^2 (oracle)  = {oracle.value:.8g}", file=out)
        print(f"difference        = {abs(result.value - oracle.value):.3g}", file=out)
    return EXIT_OK


def _cmd_homeo(args, out) -> int:
    e1, e2 = dsl.parse(args.expr1), dsl.parse(args.expr2)
    answer = homeomorphic(e1, e2)
    r1, r2 = invariants(e1), invariants(e2)

    def triple(r):
        if r.simply_connected is not TriState.YES or r.spin is TriState.UNKNOWN:
            return None
        return {
            "chi": r.chi,
            "tau": r.tau,
            "parity": "even" if r.spin is TriState.YES else "odd",
        }

    t1, t2 = triple(r1), triple(r2)
    canonical = None
    if answer is TriState.YES and t1 is not None:
        canonical = freedman_class(r1).canonical
    if args.json:
        payload = {"result": answer.value, "left": t1, "right": t2, "canonical": canonical}
        print(_dumps(payload), file=out)
        return EXIT_OK
    print(answer.value, file=out)
    for label, t in (("left", t1), ("right", t2)):
        if t is not None:
            print(f"{label}: (chi, tau, parity) = ({t['chi']}, {t['tau']}, {t['parity']})", file=out)
        else:
            print(f"{label}: triple unavailable (not known simply connected)", file=out)
    if canonical is not None:
        print(f"canonical: {canonical}", file=out)
    return EXIT_OK


def _fr_text(x) -> str:
    return str(x) if x is not None else "n/a"


def _cmd_models(args, out) -> int:
    rows = curvature.run_model_checks()
    if args.json:
        payload = []
        for row in rows:
            payload.append({
                "name": row["name"],
                "ok": row["ok"],
                "gb_plus": _fr_text(row["gb_plus"]) if row["gb_plus"] is not None else None,
                "gb_minus": _fr_text(row["gb_minus"]) if row["gb_minus"] is not None else None,
                "kaehler_spectrum": row["kaehler_spectrum"],
                "weitzenboeck": _fr_text(row["weitzenboeck"]) if row["weitzenboeck"] is not None else None,
                "saturation": row["saturation"],
            })
        print(_dumps({"models": payload, "all_ok": all(r["ok"] for r in rows)}), file=out)
    else:
        header = f"{'model':44} {'gb+':>5} {'gb-':>5} {'kaehler':>8} {'wzb':>5} {'sat':>5} {'ok':>3}"
        print(header, file=out)
        for row in rows:
            def cell(value, width):
                if value is None:
                    return "-".rjust(width)
                if value is True:
                    return "yes".rjust(width)
                if value is False:
                    return "NO".rjust(width)
                return str(value).rjust(width)
            print(
                f"{row['name']:44} {cell(row['gb_plus'], 5)} {cell(row['gb_minus'], 5)} "
                f"{cell(row['kaehler_spectrum'], 8)} {cell(row['weitzenboeck'], 5)} "
                f"{cell(row['saturation'], 5)} {'ok' if row['ok'] else 'BAD':>3}",
                file=out,
            )
    if args.check and not all(r["ok"] for r in rows):
        return EXIT_MODEL_CHECK
    return EXIT_OK


def _cmd_batch(args, out) -> int:
    with open(args.file) as fh:
        lines = fh.read().splitlines()
    worst = EXIT_OK
    for line in lines:
        text = line.strip()
        # A leading "#" marks a comment: inside expressions "#" is always
        # infix, so the prefix position is unambiguous.
        if not text or text.startswith("#"):
            continue
        try:
            v = verdict(dsl.parse(text))
        except FourfoldError as err:
            code = _emit_error(err, args.json, out)
            worst = max(worst, code)
            continue
        if args.json:
            print(_dumps(verdict_json(v)), file=out)
        else:
            print(f"{dsl.format_expr(v.expression)}: {v.conclusion_text}", file=out)
    return worst


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fourfold",
        description="Invariants, alpha^2, and Einstein-metric verdicts for "
        "expressions over 4-manifold atoms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="verdict for one expression")
    p_eval.add_argument("expr")
    p_eval.add_argument("--certificate", action="store_true")
    p_eval.add_argument("--json", action="store_true")

    p_inv = sub.add_parser("invariants", help="exact invariant record")
    p_inv.add_argument("expr")
    p_inv.add_argument("--json", action="store_true")

    p_alpha = sub.add_parser("alpha", help="alpha^2 by catalog, or numerically with --form")
    p_alpha.add_argument("expr", nargs="?")
    p_alpha.add_argument("--form", help="intersection form file (rows of integers)")
    p_alpha.add_argument("--classes", help="candidate class file (rows of integers)")
    p_alpha.add_argument("--tolerance", type=float, default=1e-6)
    p_alpha.add_argument("--seed", type=int, default=0)
    p_alpha.add_argument("--max-iter", type=int, default=8000)
    p_alpha.add_argument("--json", action="store_true")

    p_homeo = sub.add_parser("homeo", help="compare homeomorphism types")
    p_homeo.add_argument("expr1")
    p_homeo.add_argument("expr2")
    p_homeo.add_argument("--json", action="store_true")

    p_models = sub.add_parser("models", help="curvature model catalog checks")
    p_models.add_argument("--check", action="store_true",
                          help="exit nonzero if any residual is nonzero")
    p_models.add_argument("--json", action="store_true")

    p_batch = sub.add_parser("batch", help="evaluate one expression per line")
    p_batch.add_argument("file")
    p_batch.add_argument("--json", action="store_true")

    return parser


def run(argv, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        if args.command == "eval":
            return _cmd_eval(args, out)
        if args.command == "invariants":
            return _cmd_invariants(args, out)
        if args.command == "alpha":
            if args.form or args.classes:
                if not (args.form and args.classes):
                    print("error: --form and --classes go together", file=sys.stderr)
                    return EXIT_INPUT
                if args.expr is not None:
                    print("error: give either an expression or --form, not both",
                          file=sys.stderr)
                    return EXIT_INPUT
                return _cmd_alpha_form(args, out)
            if args.expr is None:
                print("error: an expression or --form/--classes is required", file=sys.stderr)
                return EXIT_INPUT
            return _cmd_alpha_expr(args, out)
        if args.command == "homeo":
            return _cmd_homeo(args, out)
        if args.command == "models":
            return _cmd_models(args, out)
        if args.command == "batch":
            return _cmd_batch(args, out)
    except ConsistencyError as err:
        return _emit_error(err, getattr(args, "json", False), out)
    except FourfoldError as err:
        return _emit_error(err, getattr(args, "json", False), out)
    except FileNotFoundError as err:
        return _emit_error(err, getattr(args, "json", False), out)
    raise AssertionError("unreachable: unknown command")


def main() -> None:
    sys.exit(run(sys.argv[1:]))
