"""Command-line entry point.  Run ``barkfib --help`` for the subcommands.

Exit codes: 0 success, 1 verification mismatch or search failure,
2 usage/parse error, 3 no classification.
"""

import argparse
import json
import sys
from importlib import resources
from math import gcd
from pathlib import Path

from .crust import (
    STELLAR_MODELS,
    crust_from_json,
    crust_to_json,
    enumerate_simple_crusts,
    stellar_from_json,
)
from .kodaira import classify, euler, parse_fiber
from .localmodel import LocalCurveSpec, singular_points, singular_s_values
from .sl2z import Mat2, eval_word, format_word, parse_word, word
from .splitting import (
    FactorizationWitness,
    SearchBudgetExceeded,
    decomposition_verdict,
    all_witnesses,
    search_factorization,
    verify_witness,
)
from .subord import HypothesisError, full_report, predict_counts

SCHEMA = "barkfib/1"


def _emit(args, record, text_lines):
    if getattr(args, "json", False):
        record["schema"] = SCHEMA
        print(json.dumps(record, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _parse_mat(text):
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError("--mat wants four comma-separated integers")
    a, b, c, d = (int(p) for p in parts)
    return Mat2(a, b, c, d)


def _parse_complex(text):
    return complex(text.strip().replace(" ", "").replace("i", "j"))


def _c(z):
    z = complex(z)
    return [z.real, z.imag]


def _fail(message):
    print("error: %s" % message, file=sys.stderr)


def cmd_classify(args):
    if args.mat is not None:
        m = _parse_mat(args.mat)
    else:
        m = eval_word(parse_word(args.word))
    found = classify(m)
    name = None if found is None else str(found)
    _emit(args, {"class": name}, [name if name is not None else "none"])
    return 0 if found is not None else 3


def cmd_euler(args):
    fibers = [parse_fiber(text) for text in args.fibers]
    record = {"eulers": {str(f): euler(f) for f in fibers}}
    lines = ["%s\t%d" % (f, euler(f)) for f in fibers]
    _emit(args, record, lines)
    return 0


def _factor_text(base, conjugator):
    w = format_word(conjugator)
    return str(base) if not w else "%s^(%s)" % (base, w)


def cmd_factorize(args):
    target = parse_fiber(args.target)
    parts = [parse_fiber(p) for p in args.parts]
    try:
        witness = search_factorization(
            target,
            parts,
            args.max_conj_len,
            exp_cap=args.exp_cap,
            node_budget=args.budget,
        )
    except SearchBudgetExceeded as exc:
        _fail(str(exc))
        return 1
    if witness is None:
        _emit(args, {"found": False, "target": str(target)}, ["no factorization found"])
        return 1
    record = {
        "found": True,
        "target": str(target),
        "factors": [
            {"class": str(base), "conjugator": format_word(w)}
            for base, w in witness.factors
        ],
    }
    lines = [
        "%s = %s"
        % (target, " . ".join(_factor_text(base, w) for base, w in witness.factors))
    ]
    _emit(args, record, lines)
    return 0


def cmd_obstruct(args):
    target = parse_fiber(args.target)
    parts = [parse_fiber(p) for p in args.parts]
    verdict, reasons = decomposition_verdict(target, parts)
    record = {
        "target": str(target),
        "parts": [str(p) for p in parts],
        "verdict": verdict,
        "reasons": list(reasons),
    }
    _emit(args, record, [verdict] + ["  " + r for r in reasons])
    return 0


def cmd_crusts(args):
    fiber = parse_fiber(args.fiber)
    model = STELLAR_MODELS.get(str(fiber.reduced()))
    if model is None:
        _fail("no stellar model for %s" % fiber)
        return 2
    found = enumerate_simple_crusts(model, args.l)
    record = {
        "fiber": str(fiber),
        "l": args.l,
        "count": len(found),
        "crusts": [crust_to_json(c) for c in found],
    }
    lines = ["%d crust(s) with l=%d" % (len(found), args.l)]
    lines += [json.dumps(crust_to_json(c), sort_keys=True) for c in found]
    _emit(args, record, lines)
    return 0


def cmd_predict(args):
    fiber = parse_fiber(args.fiber)
    model = STELLAR_MODELS.get(str(fiber.reduced()))
    if model is None:
        _fail("no stellar model for %s" % fiber)
        return 2
    crust = crust_from_json(model, json.loads(args.crust))
    try:
        profile = predict_counts(model, crust)
    except HypothesisError as exc:
        _emit(
            args,
            {"predicted": False, "condition": exc.condition},
            ["no exact count: %s" % exc],
        )
        return 1
    record = {
        "predicted": True,
        "num_fibers": profile.num_fibers,
        "sings_per_fiber": profile.sings_per_fiber,
        "location": profile.location,
        "basis": profile.basis,
    }
    lines = [
        "%d subordinate fiber(s), %d singularit%s each (%s, %s)"
        % (
            profile.num_fibers,
            profile.sings_per_fiber,
            "y" if profile.sings_per_fiber == 1 else "ies",
            profile.location,
            profile.basis,
        )
    ]
    _emit(args, record, lines)
    return 0


def cmd_localcheck(args):
    spec = LocalCurveSpec(
        args.m, args.n, args.l, _parse_complex(args.t), _parse_complex(args.c)
    )
    values = singular_s_values(spec)
    _, nbar = spec.reduced_pair
    per_value = gcd(args.m, args.n)
    ok = len(values) == nbar
    rows, lines = [], []
    for s in values:
        points = singular_points(spec, s)
        ok = ok and len(points) == per_value
        rows.append(
            {"s": _c(s), "points": [[_c(z), _c(zeta)] for z, zeta in points]}
        )
        lines.append(
            "s = %.9g%+.9gi: %d singular point(s)" % (s.real, s.imag, len(points))
        )
    lines.append(
        "%s: %d singular value(s), expected %d; %d point(s) each, expected %d"
        % ("ok" if ok else "FAIL", len(values), nbar, per_value, per_value)
    )
    record = {
        "m": args.m,
        "n": args.n,
        "l": args.l,
        "singular_values": rows,
        "ok": ok,
    }
    _emit(args, record, lines)
    return 0 if ok else 1


def _load_fixture(path):
    if path is None:
        text = resources.files("barkfib").joinpath("fixtures/catalog.json").read_text()
    else:
        text = Path(path).read_text()
    return json.loads(text)


def _canon_multiset(strings):
    return tuple(sorted(strings))


def cmd_report(args):
    data = _load_fixture(args.fixture)
    models = {
        name: stellar_from_json(raw)
        for name, raw in data.get("stellar_models", {}).items()
        if not raw.get("constellar")
    }
    cases = data["cases"]
    if args.case is not None:
        cases = [c for c in cases if c["id"] == args.case]
        if not cases:
            _fail("no case %r in fixture" % args.case)
            return 2
    out, lines, all_ok = [], [], True
    for case in cases:
        original = parse_fiber(case["original"])
        main_fiber = parse_fiber(case["main"])
        crust = model = None
        if case.get("crust") is not None:
            model = models.get(str(original.reduced()))
            if model is None:
                _fail("case %s names no stellar model" % case["id"])
                return 2
            crust = crust_from_json(model, case["crust"])
        report = full_report(original, main_fiber, crust=crust, model=model)
        got = {
            _canon_multiset(str(f) for f in ms) for ms in report.determined
        }
        want = {_canon_multiset(ms) for ms in case["expected"]}
        ok = got == want
        all_ok = all_ok and ok
        rec = report.to_json(case_id=case["id"])
        rec["ok"] = ok
        rec["expected"] = [sorted(ms) for ms in case["expected"]]
        out.append(rec)
        shown = " or ".join(
            "+".join(ms) or "(none)" for ms in sorted(got)
        )
        if ok:
            lines.append("case %s  %s -> %s: %s" % (case["id"], original, main_fiber, shown))
        else:
            wanted = " or ".join("+".join(ms) for ms in sorted(want))
            lines.append(
                "case %s  %s -> %s: MISMATCH expected %s, got %s"
                % (case["id"], original, main_fiber, wanted, shown)
            )
    matched = sum(1 for rec in out if rec["ok"])
    lines.append("%d/%d case(s) match" % (matched, len(out)))
    if args.json:
        print(
            json.dumps(
                {"schema": SCHEMA, "all_ok": all_ok, "cases": out}, indent=2
            )
        )
    else:
        for line in lines:
            print(line)
    return 0 if all_ok else 1


def cmd_verify_words(args):
    rows = all_witnesses()
    if args.corrupt is not None:
        if not 0 <= args.corrupt < len(rows):
            _fail("--corrupt index out of range (0..%d)" % (len(rows) - 1))
            return 2
        label, w = rows[args.corrupt]
        base, conjugator = w.factors[0]
        bad = FactorizationWitness(
            w.target, ((base, conjugator * word(("s0", 1))),) + w.factors[1:]
        )
        rows[args.corrupt] = (label + " [corrupted]", bad)
    results, lines, failures = [], [], 0
    for label, w in rows:
        ok = verify_witness(w)
        if not ok:
            failures += 1
        results.append({"identity": label, "ok": ok})
        lines.append("%s  %s" % ("ok  " if ok else "FAIL", label))
    lines.append("%d/%d identities verified" % (len(rows) - failures, len(rows)))
    _emit(args, {"identities": results, "all_ok": failures == 0}, lines)
    return 0 if failures == 0 else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="barkfib",
        description="Exact bookkeeping of barking deformations of elliptic fibers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    output = argparse.ArgumentParser(add_help=False)
    group = output.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true", help="emit JSON")
    group.add_argument(
        "--text", dest="json", action="store_false", help="emit plain text (default)"
    )
    output.set_defaults(json=False)

    p = sub.add_parser(
        "classify", parents=[output], help="name the fiber with a given monodromy"
    )
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--mat", help="matrix entries a,b,c,d")
    g.add_argument("--word", help="word in s0/s2, e.g. 's0^3 s2'")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("euler", parents=[output], help="Euler numbers of fiber types")
    p.add_argument("fibers", nargs="+", metavar="FIBER")
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser(
        "factorize",
        parents=[output],
        help="search for an exact monodromy factorization",
    )
    p.add_argument("target", metavar="TARGET")
    p.add_argument("parts", nargs="+", metavar="PART")
    p.add_argument("--max-conj-len", type=int, default=2)
    p.add_argument("--exp-cap", type=int, default=8)
    p.add_argument("--budget", type=int, default=10**7)
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser(
        "obstruct", parents=[output], help="trace obstructions for a decomposition"
    )
    p.add_argument("target", metavar="TARGET")
    p.add_argument("parts", nargs="+", metavar="PART")
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser(
        "crusts", parents=[output], help="enumerate simple crusts of a stellar fiber"
    )
    p.add_argument("fiber", metavar="FIBER")
    p.add_argument("-l", type=int, default=1, help="barking multiplicity")
    p.set_defaults(func=cmd_crusts)

    p = sub.add_parser(
        "predict", parents=[output], help="exact subordinate counts for a crust"
    )
    p.add_argument("fiber", metavar="FIBER")
    p.add_argument("--crust", required=True, help='JSON, e.g. \'{"n0":1,"subbranches":[[1],[],[]],"l":1}\'')
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser(
        "localcheck",
        parents=[output],
        help="verify the singular values/points of a local model",
    )
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--t", default="1", help="complex, e.g. '1+0i'")
    p.add_argument("--c", default="1", help="complex, e.g. '1+0i'")
    p.set_defaults(func=cmd_localcheck)

    p = sub.add_parser(
        "report",
        parents=[output],
        help="run every cataloged splitting and diff against expectations",
    )
    p.add_argument("--fixture", help="path to a catalog JSON (default: packaged)")
    p.add_argument("--case", help="restrict to one case id, e.g. 2.3")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser(
        "verify-words",
        parents=[output],
        help="check every built-in factorization identity",
    )
    p.add_argument("--corrupt", type=int, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify_words)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except HypothesisError as exc:
        _fail(str(exc))
        return 1
    except (ValueError, KeyError, OSError) as exc:
        _fail(str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
