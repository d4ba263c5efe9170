"""Command-line entry point: dcfl-lab <verb> ..."""

import argparse
import json
import os
import shlex
import sys
import time

from .automaton import load_machine, run
from .bounded import FAMILIES as MACHINE_FAMILIES, mu_bounded_member
from .errors import DcflLabError, InvalidMachine, NoTurningPoint, PreconditionError
from .history import find_features, height_profile, record_history, turn_partition
from .languages import PredicateLeaf
from .lda import load_lda, run_lda, validate_lda, visit_discipline_check
from .normal_forms import check_ideal_shape, epsilon_enhance, induce
from .pairs import Factorization5, pump_test
from .pumping import (lemma1_witness_search, Lemma1Instance, lemma2_check, npal_split,
                      pal_block_splits, union_witness_splits, refute_pinned)
from .zoo import FAMILIES as ZOO, build_entry, cross_validate, witness_family, witness_strings

EXIT_ACCEPT, EXIT_REJECT, EXIT_ERROR = 0, 1, 2

ALIASES = {"L2-union-1": ("L_(d)", {"d": 2})}


class UsageError(DcflLabError):
    pass


def parse_params(items):
    params = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"parameter {item!r} is not key=value")
        try:
            params[key] = int(value)
        except ValueError:
            params[key] = value
    return params


def resolve_entry(name, params):
    if name in ALIASES:
        name, extra = ALIASES[name]
        params = {**extra, **params}
    return build_entry(name, params), name, params


def load_language(target, params):
    """A machine file path or a zoo entry name."""
    if os.path.exists(target):
        return load_machine(target), target
    entry, name, _ = resolve_entry(target, params)
    lang = entry.spec or PredicateLeaf(entry.predicate, entry.alphabet, entry.name)
    return lang, name


# ---- verbs ----

def cmd_run(args):
    m = load_machine(args.machine)
    out = run(m, args.input)
    rep = {"verdict": out.verdict, "steps": out.steps, "final_state": out.final_state}
    if args.trace:
        rep["trace"] = [f"{mv.state},{mv.read},{mv.top} -> {mv.to},{mv.push or 'ε'}"
                        for mv in out.trace]
    return rep, EXIT_ACCEPT if out.accepted else EXIT_REJECT


def cmd_analyze(args):
    m = load_machine(args.machine)
    shape = check_ideal_shape(m)
    if not shape.ok:
        return {"verdict": "refused", "reason": "machine is not in ideal shape",
                "ideal_shape": [str(v) for v in shape.violations]}, EXIT_ERROR
    enhanced = epsilon_enhance(m)
    x_hat = induce(m, args.input)
    hist = record_history(enhanced, x_hat)
    fs = find_features(hist)
    rep = {"verdict": "accept" if hist.accepted else "reject",
           "enhanced_input": str(x_hat),
           "heights": hist.heights,
           "profile": height_profile(hist).splitlines(),
           "peaks": fs.peaks, "pits": fs.pits,
           "hills": [[h.t1, h.t2] for h in fs.hills]}
    try:
        part = turn_partition(hist)
        rep["turns"] = [[t.t1, t.t2, t.gain] for t in part.turns]
        rep["true_gain"] = part.true_gain
    except NoTurningPoint:
        rep["turns"] = []
    return rep, EXIT_ACCEPT


def cmd_pump(args):
    lang, name = load_language(args.language, parse_params(args.param))
    try:
        f = Factorization5.parse(args.factorization)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    res = pump_test(lang, f, args.imax)
    rep = {"language": name, "factorization": str(f), "i_max": args.imax,
           "verdict": "passes" if res.passes else "fails",
           "first_failure": res.first_failure, "checked": res.checked}
    return rep, EXIT_ACCEPT if res.passes else EXIT_REJECT


def cmd_refute(args):
    entry, name, params = resolve_entry(args.name, parse_params(args.param))
    d, n = params.get("d", 2), args.n
    rep = {"language": name, "c": args.c, "i_max": args.imax, "n": n}
    if name in ("L_(d)", "Pal"):
        if name == "L_(d)":
            splits = union_witness_splits(d, n)
        else:
            splits = pal_block_splits(params.get("d", 1), n)
        res = refute_pinned(entry, splits, args.c, args.imax)
        examined = res.condition1.examined + res.condition2.examined
        found = res.valid_factorizations
        rep["witnesses"] = [w.to_dict() for w in res.condition1.witnesses + res.condition2.witnesses]
        rep["examined"] = examined
    elif name in ("NPal#_d", "NPal#_d_prime"):
        xp, y, z = npal_split(d, n, 1, 2)
        res = lemma2_check(entry, xp, y, z, args.imax)
        rep["conditions"] = res.verdicts
        rep["pair_counts"] = {k: list(v) for k, v in res.pair_counts.items()}
        found = sum(v != "fails-exhaustively" for v in res.verdicts.values())
        examined = None
    else:
        fam = witness_family(name, {**params, "n": n})
        hits = lemma1_witness_search(Lemma1Instance(entry, args.c, fam.x, fam.ys, args.imax),
                                     find_all=True)
        rep["witnesses"] = [{"j1": j1, "j2": j2, **w.to_dict()} for j1, j2, w in hits]
        found, examined = len(hits), None
    if found:
        rep["verdict"] = f"{found} witness(es) found"
    else:
        tail = f"; search exhausted {examined} factorizations" if examined is not None else ""
        rep["verdict"] = "no witness found" + tail
    return rep, EXIT_ACCEPT if not found else EXIT_REJECT


def cmd_zoo(args):
    if args.zoo_cmd == "list":
        rows = []
        for name, (_, keys) in ZOO.items():
            e = build_entry(name, {})
            rows.append({"name": name, "alphabet": e.alphabet, "params": list(keys),
                         "has_spec": e.spec is not None, "provenance": e.provenance})
        return {"entries": rows}, EXIT_ACCEPT
    entry, name, params = resolve_entry(args.name, parse_params(args.param))
    if args.zoo_cmd == "validate":
        res = cross_validate(entry, args.max_len)
        rep = {"language": name, "params": params, "max_len": res.max_len,
               "strings": res.checked,
               "disagreements": [list(x) for x in res.disagreements],
               "verdict": "agree" if res.ok else "disagree"}
        return rep, EXIT_ACCEPT if res.ok else EXIT_REJECT
    strings = witness_strings(name, params)
    return {"language": name, "params": params, "strings": strings,
            "members": [bool(entry.predicate(s)) for s in strings]}, EXIT_ACCEPT


def cmd_lda(args):
    if args.lda_cmd == "validate":
        m = load_lda(args.machine, check=False)
        rep = validate_lda(m)
        return {"machine": m.name, "d": m.d, "violations": [str(v) for v in rep.violations],
                "verdict": "valid" if rep.ok else "invalid"}, EXIT_ACCEPT if rep.ok else EXIT_REJECT
    m = load_lda(args.machine)
    out = run_lda(m, args.input)
    rep = {"verdict": out.verdict, "steps": out.steps, "final_state": out.final_state,
           "visit_discipline": visit_discipline_check(out.trace, m.d, len(args.input))}
    return rep, EXIT_ACCEPT if out.accepted else EXIT_REJECT


def cmd_family(args):
    if args.name not in MACHINE_FAMILIES:
        raise UsageError(f"unknown family {args.name!r}")
    fam = MACHINE_FAMILIES[args.name]()
    if args.family_cmd == "member":
        ok = mu_bounded_member(fam, args.input)
        return {"family": fam.name, "input": args.input, "mu": fam.mu(len(args.input)),
                "verdict": "accept" if ok else "reject"}, EXIT_ACCEPT if ok else EXIT_REJECT
    table = [{"n": n, "states": len(fam.machine(n).states), "des": size, "bound": bound}
             for n, size, bound in fam.size_table(args.n_max)]
    ok = all(r["des"] <= r["bound"] for r in table)
    return {"family": fam.name, "bound_coefficients": list(fam.size_bound), "table": table,
            "verdict": "within bound" if ok else "exceeds bound"}, EXIT_ACCEPT if ok else EXIT_REJECT


# ---- plumbing ----

def build_parser():
    p = argparse.ArgumentParser(prog="dcfl-lab", description="Experiments with deterministic "
                                "context-free languages and their finite unions and intersections.")
    p.add_argument("--json", action="store_true", help="print the structured report")
    sub = p.add_subparsers(dest="verb", required=True)

    r = sub.add_parser("run", help="run a machine file on an input")
    r.add_argument("machine")
    r.add_argument("input")
    r.add_argument("--trace", action="store_true")
    r.set_defaults(fn=cmd_run)

    a = sub.add_parser("analyze", help="stack history, features and turns of a run")
    a.add_argument("machine")
    a.add_argument("input")
    a.set_defaults(fn=cmd_analyze)

    pm = sub.add_parser("pump", help="pump a factorization u,x,v,y,z")
    pm.add_argument("language", help="machine file or zoo entry name")
    pm.add_argument("factorization", help="five comma-separated parts, ε for empty")
    pm.add_argument("--imax", type=int, default=5)
    pm.add_argument("--param", action="append", help="zoo parameter key=value")
    pm.set_defaults(fn=cmd_pump)

    rf = sub.add_parser("refute", help="exhaustive pumping-condition searches on witness strings")
    rf.add_argument("name")
    rf.add_argument("--c", type=int, default=4)
    rf.add_argument("--imax", type=int, default=3)
    rf.add_argument("--n", type=int, default=5)
    rf.add_argument("--param", action="append")
    rf.set_defaults(fn=cmd_refute)

    z = sub.add_parser("zoo", help="language zoo")
    zs = z.add_subparsers(dest="zoo_cmd", required=True)
    zs.add_parser("list")
    for verb in ("validate", "witness"):
        zp = zs.add_parser(verb)
        zp.add_argument("name")
        zp.add_argument("--param", action="append")
        if verb == "validate":
            zp.add_argument("--max-len", type=int)
    z.set_defaults(fn=cmd_zoo)

    ld = sub.add_parser("lda", help="d-limited automata")
    ls = ld.add_subparsers(dest="lda_cmd", required=True)
    lr = ls.add_parser("run")
    lr.add_argument("machine")
    lr.add_argument("input")
    lv = ls.add_parser("validate")
    lv.add_argument("machine")
    ld.set_defaults(fn=cmd_lda)

    fm = sub.add_parser("family", help="bounded intersections of machine families")
    fs = fm.add_subparsers(dest="family_cmd", required=True)
    fmem = fs.add_parser("member")
    fmem.add_argument("--name", required=True)
    fmem.add_argument("--input", required=True)
    fsz = fs.add_parser("size")
    fsz.add_argument("--name", required=True)
    fsz.add_argument("--n-max", type=int, default=32)
    fm.set_defaults(fn=cmd_family)
    return p


def render(rep):
    lines = []
    for key, value in rep.items():
        if isinstance(value, list) and value and isinstance(value[0], (dict, list, str)):
            lines.append(f"{key}:")
            lines.extend(f"  {json.dumps(v, ensure_ascii=False) if not isinstance(v, str) else v}"
                         for v in value)
        else:
            lines.append(f"{key}: {json.dumps(value, ensure_ascii=False) if not isinstance(value, str) else value}")
    return "\n".join(lines)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        rep, code = args.fn(args)
    except InvalidMachine as exc:
        rep, code = {"verdict": "error", "error": "invalid machine",
                     "violations": [str(v) for v in exc.violations]}, EXIT_ERROR
    except (DcflLabError, PreconditionError, OSError, ValueError) as exc:
        rep, code = {"verdict": "error", "error": str(exc)}, EXIT_ERROR
    argv = list(argv if argv is not None else sys.argv[1:])
    report = {"command": shlex.join(["dcfl-lab"] + argv), **rep,
              "wall_time": round(time.perf_counter() - start, 3)}
    if args.json:
        print(json.dumps(report, ensure_ascii=False, indent=1))
    else:
        print(render(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
