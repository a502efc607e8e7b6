"""Command-line front end.

Exit codes: 0 ok, 2 parse error, 3 invalid matrix, 10 undecided or
exhausted, 11 refuted or violation found.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .fpmod import FpModule, ass_primes, support
from .lococo import LococoError, check_ci, ci_transfer_check, local_cohomology, torsion_family
from .rings import RingSpec
from .scenarios import SCENARIOS, run_scenario
from .serialize import InvalidMatrixError, ModuleParseError, dumps, load_module
from .serrecat import (
    CONFIRMED,
    EXHAUSTED,
    REFUTED,
    UNDECIDED,
    ExtCat,
    SuppCat,
    closure_audit,
    member,
    parse_descriptor,
    serre_criterion,
    witness_ses,
)
from .sesalg import SES, ExactnessError
from .symmod import SymSES, from_fp, predicate, rational_dimension, sym_support

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_UNDECIDED, EXIT_REFUTED = 0, 2, 3, 10, 11


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _ring(args) -> Optional[RingSpec]:
    if args.ring is None:
        return None
    try:
        return RingSpec.parse(args.ring)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, f"bad --ring: {exc}") from exc


def _module(path, ring):
    try:
        return load_module(path, ring)
    except ModuleParseError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from exc
    except InvalidMatrixError as exc:
        raise CliError(EXIT_INVALID, str(exc)) from exc


def _descriptor(text, ring):
    try:
        return parse_descriptor(text, ring)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from exc


def _yes(b: bool) -> str:
    return "yes" if b else "no"


# -- commands -----------------------------------------------------------------


def cmd_info(args):
    m = _module(args.file, _ring(args))
    sym = from_fp(m) if isinstance(m, FpModule) else m
    flags = {w: predicate(sym, w) for w in ("fg", "artinian", "torsion")}
    if isinstance(m, FpModule):
        ass = sorted(ass_primes(m), key=lambda q: q.p or 0)
        out = {"ring": str(m.ring), "rank": m.rank, "factors": list(m.factors),
               "support": str(support(m)), "ass": [str(q) for q in ass], **flags}
        text = (f"rank {m.rank}, factors {list(m.factors)}, supp {support(m)}, "
                f"ass {{{','.join(str(q) for q in ass)}}}")
    else:
        out = {"ring": str(m.ring), "atoms": m.to_json()["atoms"], "support": str(sym_support(m)),
               "rational_dimension": rational_dimension(m), **flags}
        text = f"{m}: artinian: {_yes(flags['artinian'])}, fg: {_yes(flags['fg'])}, supp {sym_support(m)}"
    return EXIT_OK, out, text


def cmd_member(args):
    m = _module(args.file, _ring(args))
    c = _descriptor(args.descriptor, m.ring)
    v = member(m, c)
    out = {"module": str(m), "descriptor": str(c), **v.to_json()}
    text = f"{m} in {c}: {v.decision}" + (f"\n  witness: {v.witness}" if v.witness else "")
    if v.note:
        text += f"\n  note: {v.note}"
    return (EXIT_UNDECIDED if v.decision == UNDECIDED else EXIT_OK), out, text


def cmd_witness(args):
    m = _module(args.file, _ring(args))
    c = _descriptor(args.descriptor, m.ring)
    if isinstance(m, FpModule) and isinstance(c, ExtCat) and isinstance(c.first, SuppCat) \
            and isinstance(c.second, SuppCat):
        try:
            ses = witness_ses(m, c)
        except ValueError as exc:
            return EXIT_REFUTED, {"module": str(m), "descriptor": str(c), "error": str(exc)}, str(exc)
        return EXIT_OK, {"module": str(m), "descriptor": str(c), "witness": ses.to_json(),
                         "witness_text": str(ses)}, str(ses)
    v = member(m, c)
    if v.decision == UNDECIDED:
        return EXIT_UNDECIDED, {"module": str(m), "descriptor": str(c), **v.to_json()}, v.note
    if v.witness is None:
        msg = f"{m} has no witness sequence for {c}: {v.decision}"
        return EXIT_REFUTED, {"module": str(m), "descriptor": str(c), **v.to_json()}, msg
    return EXIT_OK, {"module": str(m), "descriptor": str(c), **v.to_json()}, str(v.witness)


def cmd_criterion(args):
    ring = _ring(args) or RingSpec()
    c1, c2 = _descriptor(args.first, ring), _descriptor(args.second, ring)
    res = serre_criterion(c1, c2, ring, budget=args.budget, seed=args.seed, workers=args.workers)
    code = {CONFIRMED: EXIT_OK, REFUTED: EXIT_REFUTED, EXHAUSTED: EXIT_UNDECIDED}[res.outcome]
    text = f"ext({c1},{c2}) over {ring}: {res.outcome}\n  {res.reason}"
    if res.certificate:
        text += f"\n  certificate: {res.certificate['witness_text']}"
    return code, res.to_json(), text


def cmd_audit(args):
    ring = _ring(args) or RingSpec()
    c = _descriptor(args.descriptor, ring)
    rep = closure_audit(c, ring, budget=args.budget, seed=args.seed)
    text = f"audit {c} over {ring}: {rep.checks} checks, {len(rep.violations)} violations"
    if rep.certificate:
        text += f"\n  certificate: {rep.certificate.get('ses') or rep.certificate.get('module')}"
    return (EXIT_REFUTED if rep.violations else EXIT_OK), rep.to_json(), text


def cmd_lococo(args):
    ring = _ring(args)
    try:
        if args.action == "compute":
            if not args.module:
                raise CliError(EXIT_PARSE, "lococo compute needs --module")
            m = _module(args.module, ring)
            res = local_cohomology(m)
            text = f"H^0 = {res.h0}, H^1 = {res.h1}, dim = {res.dim_input}"
            return EXIT_OK, res.to_json(), text
        ring = ring or RingSpec()
        need = 1 if args.action == "ci" else 2
        if len(args.descriptors) != need:
            raise CliError(EXIT_PARSE, f"lococo {args.action} takes {need} descriptor(s)")
        if args.action == "ci":
            c = _descriptor(args.descriptors[0], ring)
            rep = check_ci(c, torsion_family(ring), ring)
            return (EXIT_OK if rep.passed else EXIT_REFUTED), rep.to_json(), f"(C_I) for {c}: {rep.to_json()['status']}"
        c1, c2 = (_descriptor(t, ring) for t in args.descriptors[:2])
        rep = ci_transfer_check(c1, c2, ring, budget=args.budget, seed=args.seed)
        code = EXIT_OK if rep.consistent else EXIT_REFUTED
        return code, rep.to_json(), f"(C_I) transfer ({c1},{c2}): {rep.to_json()['status']}"
    except LococoError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from exc


def cmd_scenario(args):
    if args.list or not args.name:
        return EXIT_OK, {"scenarios": sorted(SCENARIOS)}, "\n".join(sorted(SCENARIOS))
    names = sorted(SCENARIOS) if args.name == "all" else [args.name]
    try:
        results = [run_scenario(n, seed=args.seed, budget=args.budget) for n in names]
    except KeyError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from exc
    lines = []
    for sc in results:
        lines.append(f"{sc.name}: {'PASS' if sc.ok else 'FAIL'}")
        for st in sc.steps:
            lines.append(f"  [{'ok' if st.ok else 'XX'}] {st.name}: {st.actual}")
    ok = all(sc.ok for sc in results)
    return (EXIT_OK if ok else EXIT_REFUTED), {"results": [sc.to_json() for sc in results]}, "\n".join(lines)


def cmd_validate(args):
    ring = _ring(args)
    try:
        data = json.loads(Path(args.file).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(EXIT_PARSE, f"cannot read {args.file}: {exc}") from exc
    if isinstance(data, dict) and "witness" in data and isinstance(data["witness"], dict):
        data = data["witness"]
    try:
        if "pieces" in data:
            ses = SymSES.from_json(data, ring)
            ses.validate()
        else:
            r = ring or RingSpec.parse(data.get("ring", "Z"))
            ses = SES.from_json(r, data)
    except (KeyError, TypeError) as exc:
        raise CliError(EXIT_PARSE, f"not a sequence: {exc}") from exc
    except (ExactnessError, ValueError) as exc:
        raise CliError(EXIT_INVALID, f"sequence does not validate: {exc}") from exc
    return EXIT_OK, {"valid": True, "sequence": str(ses)}, f"valid: {ses}"


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", help="Z or Z_(p); module files may also name their ring")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=1000)
    common.add_argument("--json", action="store_true", help="print a JSON report")

    parser = argparse.ArgumentParser(prog="serrext", description="Extension subcategories of Serre subcategories over Z and Z_(p).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", parents=[common], help="canonical form, support and associated primes")
    p.add_argument("file")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("member", parents=[common], help="membership verdict")
    p.add_argument("file")
    p.add_argument("descriptor")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("witness", parents=[common], help="witness short exact sequence")
    p.add_argument("file")
    p.add_argument("descriptor")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("criterion", parents=[common], help="is ext(A,B) a Serre subcategory?")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_criterion)

    p = sub.add_parser("audit", parents=[common], help="closure audit of one descriptor")
    p.add_argument("descriptor")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("lococo", parents=[common], help="local cohomology and (C_I) checks over Z_(p)")
    p.add_argument("action", choices=["compute", "ci", "transfer"])
    p.add_argument("descriptors", nargs="*")
    p.add_argument("--module")
    p.set_defaults(func=cmd_lococo)

    p = sub.add_parser("scenario", parents=[common], help="run a bundled scenario")
    p.add_argument("name", nargs="?", help=f"one of {', '.join(sorted(SCENARIOS))}, or 'all'")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("validate", parents=[common], help="re-validate a sequence JSON file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, payload, text = args.func(args)
    except CliError as exc:
        code, payload, text = exc.code, {"error": str(exc)}, f"error: {exc}"
    if args.json:
        print(dumps(payload))
    else:
        print(text, file=sys.stderr if code in (EXIT_PARSE, EXIT_INVALID) else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
