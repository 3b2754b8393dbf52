"""Command line interface.

Exit codes: 0 success, 1 a check came out negative, 2 bad input,
3 a computation ran out of budget.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .groebner import GBCache, Ideal, ResourceExhausted, buchberger, ideal_intersection, krull_dimension
from .paperlab.claims import CLAIM_GROUPS, Session
from .paperlab.report import run_claims
from .polymatrix import PolyMatrix, matrix_from_json, minors
from .polyring import GF32003, Field, ParseError, Ring, order_from_string
from .specialize import (
    BudgetExhausted,
    IdentificationSequence,
    InfeasiblePresentation,
    LabeledMatrix,
    check_theorem,
    survey_presentations,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

log = logging.getLogger("minorideals")


class InputError(Exception):
    pass


# ------------------------------------------------------------ file formats


def _read_json(path: str | Path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: invalid JSON: {e.msg}") from None


def _field(args, override: str | None = None) -> Field:
    text = override or args.field
    try:
        return Field.from_string(text) if text else GF32003
    except ValueError as e:
        raise InputError(str(e)) from None


def load_matrix_obj(obj, where: str, base: Path, field: Field, override: bool = False) -> PolyMatrix:
    """A matrix given inline or as a path relative to ``base``.

    With ``override`` the field replaces one declared by the matrix itself.
    """
    if isinstance(obj, str):
        path = base / obj
        obj, where = _read_json(path), str(path)
    if override and isinstance(obj, dict) and isinstance(obj.get("ring"), dict):
        obj = {**obj, "ring": {**obj["ring"], "field": str(field)}}
    try:
        return matrix_from_json(obj, None, field)
    except ParseError as e:
        raise InputError(f"{where}: {e}") from None
    except (ValueError, KeyError, TypeError) as e:
        raise InputError(f"{where}: {e}") from None


def load_ideal(path: str | Path, field_override: str | None = None) -> Ideal:
    """Read ``{ring: {vars, field}, generators}`` or ``{matrix, minors}``."""
    path = Path(path)
    obj = _read_json(path)
    if not isinstance(obj, dict):
        raise InputError(f"{path}: an ideal file holds a JSON object")
    if "matrix" in obj:
        try:
            fld = Field.from_string(field_override or obj.get("field", "gf:32003"))
        except ValueError as e:
            raise InputError(f"{path}: {e}") from None
        M = load_matrix_obj(obj["matrix"], f"{path}: matrix", path.parent, fld, bool(field_override))
        t = obj.get("minors")
        if not isinstance(t, int):
            raise InputError(f"{path}: 'minors' must be an integer")
        try:
            return Ideal(M.ring, minors(M, t))
        except ValueError as e:
            raise InputError(f"{path}: {e}") from None
    spec = obj.get("ring")
    if not isinstance(spec, dict) or "vars" not in spec:
        raise InputError(f"{path}: need a 'ring' object with 'vars', or a 'matrix'")
    try:
        fld = Field.from_string(field_override or spec.get("field", "gf:32003"))
        ring = Ring(tuple(spec["vars"]), fld)
    except (ValueError, TypeError) as e:
        raise InputError(f"{path}: ring: {e}") from None
    gens = []
    for k, s in enumerate(obj.get("generators", [])):
        try:
            gens.append(ring.parse(str(s)))
        except ParseError as e:
            raise InputError(f"{path}: generators[{k}]: {e}") from None
    return Ideal(ring, gens)


def load_labeled(path: str | Path) -> LabeledMatrix:
    obj = _read_json(path)
    try:
        return LabeledMatrix.from_json(obj)
    except ValueError as e:
        raise InputError(f"{path}: {e}") from None


def load_sequence(path: str | Path) -> IdentificationSequence:
    obj = _read_json(path)
    try:
        return IdentificationSequence.from_json(obj)
    except (ValueError, KeyError, TypeError) as e:
        raise InputError(f"{path}: {e}") from None


# ---------------------------------------------------------------- commands


def _emit(obj):
    print(json.dumps(obj, indent=1, ensure_ascii=False))


def _budget(args) -> dict:
    return {"max_pairs": args.max_pairs, "max_steps": args.max_steps, "cache": args.cache}


def _order(args):
    try:
        return order_from_string(args.order)
    except ValueError as e:
        raise InputError(str(e)) from None


def cmd_gb(args):
    I = load_ideal(args.ideal, args.field)
    G = buchberger(I, _order(args), **_budget(args))
    _emit(G.to_json())
    return EXIT_OK


def _dim(args):
    I = load_ideal(args.ideal, args.field)
    G = buchberger(I, _order(args), **_budget(args))
    return I.ring, krull_dimension(G)


def cmd_dim(args):
    ring, d = _dim(args)
    _emit({"dim": d.dim, "nvars": ring.nvars, "independent_set": list(d.witness)})
    return EXIT_OK


def cmd_height(args):
    ring, d = _dim(args)
    _emit({"height": ring.nvars - d.dim, "nvars": ring.nvars, "dim": d.dim})
    return EXIT_OK


def cmd_minors(args):
    path = Path(args.matrix)
    M = load_matrix_obj(_read_json(path), str(path), path.parent, _field(args), bool(args.field))
    try:
        ms = minors(M, args.size)
    except ValueError as e:
        raise InputError(str(e)) from None
    _emit({"vars": list(M.ring.names), "field": str(M.ring.field), "size": args.size,
           "minors": [m.to_str(_order(args)) for m in ms]})
    return EXIT_OK


def cmd_member(args):
    I = load_ideal(args.ideal, args.field)
    try:
        p = I.ring.parse(args.poly)
    except ParseError as e:
        raise InputError(f"polynomial: {e}") from None
    order = _order(args)
    G = buchberger(I, order, **_budget(args))
    r = G.normal_form(p)
    _emit({"member": r.is_zero(), "normal_form": r.to_str(order)})
    return EXIT_OK if r.is_zero() else EXIT_FAIL


def cmd_intersect(args):
    I = load_ideal(args.first, args.field)
    J = load_ideal(args.second, args.field)
    if I.ring != J.ring:
        raise InputError("the two ideal files must declare the same variables and field")
    order = _order(args)
    K = ideal_intersection(I, J, order, **_budget(args))
    _emit(buchberger(K, order, **_budget(args)).to_json())
    return EXIT_OK


def cmd_check_prime(args):
    mat = load_labeled(args.matrix)
    m, n = mat.shape
    field, order = _field(args), _order(args)
    out = {"matrix": mat.to_rows(), "t": args.t}
    if args.sequence:
        seq = load_sequence(args.sequence)
        if (seq.m, seq.n, seq.t) != (m, n, args.t):
            raise InputError(f"sequence is for ({seq.m},{seq.n},{seq.t}), matrix and --t give ({m},{n},{args.t})")
    else:
        if m < n:
            raise InputError("matrix must have at least as many rows as columns; transpose it")
        try:
            survey = survey_presentations(mat, args.t, args.budget, first_only=True)
        except InfeasiblePresentation as e:
            out.update(verdict="infeasible", reason=str(e))
            _emit(out)
            return EXIT_FAIL
        out["search"] = survey.to_json()
        if not survey.examples:
            out["verdict"] = "every presentation is bad"
            _emit(out)
            return EXIT_FAIL
        seq = survey.examples[0]
    try:
        rep = check_theorem(seq, order, field, mat, args.cache)
    except ValueError as e:
        raise InputError(str(e)) from None
    out["report"] = rep.to_json()
    out["verdict"] = "all three conditions hold, which suffices for primality" if rep.all_hold else "conditions not all satisfied"
    _emit(out)
    return EXIT_OK if rep.all_hold else EXIT_FAIL


def cmd_verify_paper(args):
    groups = [g.strip() for g in args.claims.split(",") if g.strip()] if args.claims else None
    session = Session(_field(args), _order(args), args.cache, rational_max_steps=args.max_steps or 5_000_000)
    try:
        rep = run_claims(groups, session, workers=args.workers)
    except KeyError as e:
        raise InputError(str(e.args[0])) from None
    text = rep.to_json(timing=not args.no_timing)
    if args.report:
        Path(args.report).write_text(text)
    else:
        sys.stdout.write(text)
    for line in rep.summary_lines():
        print(line, file=sys.stderr)
    return rep.exit_code()


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="minorideals", description="Groebner bases and ideals of minors.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", default="grevlex", help="lex or grevlex (default grevlex)")
    common.add_argument("--field", default=None, help="q or gf:<prime>; overrides the input file")
    common.add_argument("--cache-dir", default=None, help="directory for cached Groebner bases")
    common.add_argument("--max-pairs", type=int, default=None)
    common.add_argument("--max-steps", type=int, default=None)
    common.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gb", parents=[common], help="reduced Groebner basis")
    p.add_argument("ideal")
    p.set_defaults(fn=cmd_gb)
    p = sub.add_parser("dim", parents=[common], help="Krull dimension of R/I")
    p.add_argument("ideal")
    p.set_defaults(fn=cmd_dim)
    p = sub.add_parser("height", parents=[common], help="height of I")
    p.add_argument("ideal")
    p.set_defaults(fn=cmd_height)
    p = sub.add_parser("minors", parents=[common], help="t x t minors of a matrix")
    p.add_argument("matrix")
    p.add_argument("--size", type=int, required=True)
    p.set_defaults(fn=cmd_minors)
    p = sub.add_parser("member", parents=[common], help="ideal membership by normal form")
    p.add_argument("poly")
    p.add_argument("ideal")
    p.set_defaults(fn=cmd_member)
    p = sub.add_parser("intersect", parents=[common], help="intersection of two ideals")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(fn=cmd_intersect)
    p = sub.add_parser("check-prime", parents=[common], help="test the identification criterion for primality")
    p.add_argument("matrix")
    p.add_argument("--t", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--sequence", default=None)
    g.add_argument("--search", action="store_true", help="search presentations (the default)")
    p.add_argument("--budget", type=int, default=100_000)
    p.set_defaults(fn=cmd_check_prime)
    p = sub.add_parser("verify-paper", parents=[common], help="run the Hankel example checks")
    p.add_argument("--claims", default=None, help="comma list from " + ",".join(CLAIM_GROUPS))
    p.add_argument("--report", default=None)
    p.add_argument("--no-timing", action="store_true", help="omit timings so reports are byte-stable")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=cmd_verify_paper)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        args.cache = GBCache(args.cache_dir) if args.cache_dir else None
        return args.fn(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ResourceExhausted, BudgetExhausted) as e:
        print(f"budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
