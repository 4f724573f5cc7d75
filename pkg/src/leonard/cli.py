"""Command line: validate, build, verify, orbit, twins, classify, enumerate.

Exit codes: 0 success, 1 domain failure, 2 parse error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from datetime import datetime, timezone

from .actions import hat_text, orbit, triple_orbit, twin_case, twins
from .matrices import NotMultiplicityFree
from .params import (
    InadmissibleTuple,
    QRacahTuple,
    check_pair_admissible,
    check_triple_admissible,
)
from .realize import build_triple
from .report import Check, Report
from .sampling import NoAdmissibleFound, random_admissible
from .scalars import FieldConfig, ParseError
from .serialize import EPOCH, CatalogRecord, append_lines, bundle_from_json, bundle_to_json
from .verify import full_verification, realization_from_matrices, verify_realization

OK, FAIL, PARSE, IOERR = 0, 1, 2, 3


class _Exit(Exception):
    def __init__(self, code, msg=""):
        super().__init__(msg)
        self.code = code


def _field_default():
    return os.environ.get("LEONARD_FIELD", "Q")


def _timestamp(arg):
    if arg == "now":
        return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    if arg:
        return arg
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch:
        try:
            return datetime.fromtimestamp(int(epoch), timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        except ValueError:
            raise _Exit(PARSE, f"bad SOURCE_DATE_EPOCH {epoch!r}") from None
    return EPOCH


def _read_text(path):
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Exit(IOERR, f"cannot read {path}: {exc.strerror or exc}") from None


def _write_text(path, text):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise _Exit(IOERR, f"cannot write {path}: {exc.strerror or exc}") from None


def _load_tuple(args) -> QRacahTuple:
    fld = FieldConfig.from_string(args.field or _field_default())
    if getattr(args, "tuple_file", None):
        return QRacahTuple.from_json(_read_text(args.tuple_file).strip(), fld)
    missing = [k for k in ("a", "b", "c", "q", "d") if getattr(args, k) is None]
    if missing:
        raise ParseError("missing --" + ", --".join(missing))
    try:
        d = int(args.d)
    except ValueError:
        raise ParseError(f"d must be an integer, got {args.d!r}") from None
    vals = [fld.parse(getattr(args, k)) for k in "abcq"]
    try:
        return QRacahTuple(*vals, d, fld)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _emit(args, text_lines, structured):
    if args.format == "structured":
        print(json.dumps(structured, ensure_ascii=False, indent=None))
    else:
        for line in text_lines:
            print(line)


def _report_out(args, rep: Report):
    lines = [str(c) for c in rep.checks]
    lines.append("overall: " + ("PASS" if rep.overall else "FAIL"))
    bad = rep.first_failure()
    if bad is not None:
        lines.append(f"witness: {bad.name}: {bad.witness}" if bad.witness else f"witness: {bad.name}")
    _emit(args, lines, rep.to_json())
    return OK if rep.overall else FAIL


def _domain_guard(fn, *a):
    try:
        return fn(*a)
    except InadmissibleTuple as exc:
        raise _Exit(FAIL, str(exc)) from None


# commands


def cmd_validate(args):
    t = _load_tuple(args)
    rep = check_pair_admissible(t) if args.pair_only else check_triple_admissible(t)
    return _report_out(args, rep)


def cmd_build(args):
    t = _load_tuple(args)
    try:
        r = build_triple(t)
    except (InadmissibleTuple, NotMultiplicityFree) as exc:
        raise _Exit(FAIL, str(exc)) from None
    text = json.dumps(bundle_to_json(r, idempotents=args.emit == "idempotents"), ensure_ascii=False, indent=1)
    if args.out:
        _write_text(args.out, text + "\n")
        if args.format == "structured":
            print(json.dumps({"written": args.out}))
        else:
            print(f"wrote {args.out}")
    else:
        print(text)
    return OK


def cmd_verify(args):
    if not args.source:
        return _report_out(args, full_verification(_load_tuple(args)))
    raw = _read_text(args.source)
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bundle is not valid JSON: {exc}") from None
    t, p, A, As, Ae, M = bundle_from_json(obj)
    rep = Report()
    rep.extend(check_pair_admissible(t)).extend(check_triple_admissible(t))
    if not rep.overall:
        return _report_out(args, rep)
    ref = build_triple(t)
    for name, got, want in (("A", A, ref.A), ("A*", As, ref.A_star), ("A^eps", Ae, ref.A_eps), ("M", M, ref.M)):
        hit = got.first_difference(want)
        rep.add(Check(f"bundle {name} matches construction", hit is None, None if hit is None else f"entry {hit}"))
    rep.add(Check("bundle parameter array matches construction", p == ref.params))
    rep.extend(verify_realization(realization_from_matrices(t, p, A, As, Ae, M)))
    return _report_out(args, rep)


def cmd_orbit(args):
    t = _load_tuple(args)
    members = _domain_guard(orbit, t, args.group)
    _emit(args, [u.text() for u in members], [u.to_json() for u in members])
    return OK


def cmd_twins(args):
    t = _load_tuple(args)
    members = _domain_guard(twins, t)
    case = twin_case(t)
    _emit(args, [f"{u.text()}  case ({case})" for u in members],
          {"case": case, "twins": [u.to_json() for u in members]})
    return OK


def _read_records(path, fld, strict):
    tuples = []
    for k, line in enumerate(_read_text(path).splitlines(), 1):
        if not line.strip():
            continue
        try:
            tuples.append(QRacahTuple.from_json(line, fld))
        except ParseError as exc:
            if strict:
                raise ParseError(f"line {k}: {exc}") from None
            print(f"warning: line {k} skipped: {exc}", file=sys.stderr)
    return tuples


def cmd_classify(args):
    fld = FieldConfig.from_string(args.field or _field_default())
    tuples = _read_records(args.input, fld, args.strict)
    groups = {}
    for t in tuples:
        if not check_triple_admissible(t).overall:
            if args.strict:
                raise _Exit(FAIL, f"{t.text()} is not triple-admissible")
            print(f"warning: {t.text()} skipped: not triple-admissible", file=sys.stderr)
            continue
        groups.setdefault((str(t.field), t.d, hat_text(t)), []).append(t)
    stamp = _timestamp(args.timestamp)
    records = []
    consistent = True
    for key in sorted(groups):
        members = groups[key]
        orb = {u.key() for u in triple_orbit(members[0])}
        if any(u.key() not in orb for u in members):
            consistent = False
        rep_t = min(members, key=lambda u: u.text())
        ok = full_verification(rep_t).overall
        records.append(CatalogRecord.for_tuple(rep_t, ok, stamp, count=len(members)))
    _flush_catalog(args, [r.line() for r in records])
    if not consistent:
        print("error: a hat-invariant class is not a single orbit", file=sys.stderr)
        return FAIL
    return OK


def cmd_enumerate(args):
    fld = FieldConfig.from_string(args.field or _field_default())
    if args.d < 3:
        raise ParseError("--d must be at least 3")
    rng = random.Random(args.seed)
    stamp = _timestamp(args.timestamp)
    lines = []
    budget = args.max_attempts
    for _ in range(args.count):
        try:
            t, used = random_admissible(rng, fld, args.d, budget)
        except NoAdmissibleFound as exc:
            _flush_catalog(args, lines)
            raise _Exit(FAIL, str(exc)) from None
        budget -= used
        ok = full_verification(t).overall
        lines.append(CatalogRecord.for_tuple(t, ok, stamp).line())
    _flush_catalog(args, lines)
    return OK


def _flush_catalog(args, lines):
    if args.out:
        try:
            append_lines(args.out, lines)
        except OSError as exc:
            raise _Exit(IOERR, f"cannot append to {args.out}: {exc}") from None
    else:
        for line in lines:
            print(line)


# parser


def _tuple_args(p):
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--c")
    p.add_argument("--q")
    p.add_argument("--d")
    p.add_argument("--field", help="Q or GF:p (default: $LEONARD_FIELD or Q)")
    p.add_argument("--tuple-file", help="JSON tuple record instead of the inline flags")


def build_parser():
    ap = argparse.ArgumentParser(prog="leonard", description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("text", "structured"), default="text")
    # lets --format also follow the subcommand without overriding the top-level default
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="admissibility report")
    _tuple_args(p)
    p.add_argument("--pair-only", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("build", parents=[common], help="write the realization bundle")
    _tuple_args(p)
    p.add_argument("--out")
    p.add_argument("--emit", choices=("idempotents",))
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", parents=[common], help="run every check")
    _tuple_args(p)
    p.add_argument("--from", dest="source", help="bundle written by build")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("orbit", parents=[common], help="list a group orbit")
    _tuple_args(p)
    p.add_argument("--group", choices=("d4", "full", "z2cubed"), default="z2cubed")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("twins", parents=[common], help="list the twins")
    _tuple_args(p)
    p.set_defaults(func=cmd_twins)

    p = sub.add_parser("classify", parents=[common], help="group tuple records into isomorphism classes")
    p.add_argument("--input", required=True, help="newline-delimited tuple records, or - for stdin")
    p.add_argument("--field")
    p.add_argument("--out", help="append catalog records here instead of printing")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--timestamp")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("enumerate", parents=[common], help="seeded random search for admissible tuples")
    p.add_argument("--field")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-attempts", type=int, default=10000)
    p.add_argument("--out")
    p.add_argument("--timestamp", help="record timestamp; 'now' for wall clock")
    p.set_defaults(func=cmd_enumerate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        if str(exc):
            print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return PARSE
    except (InadmissibleTuple, NotMultiplicityFree) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
