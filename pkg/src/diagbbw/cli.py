"""Command-line front end: ``diagbbw <command> SCENARIO [options]``.

Exit codes: 0 success, 1 validation failure, 2 Undetermined verdict,
3 internal error (including an oracle mismatch).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Optional

from . import __version__
from .bbw import Verdict, analyze, level_cohomology
from .diagsys import restrict_weight
from .oracle import MAX_RANK, brute_force_straighten
from .rootdata import (
    FAMILIES, LinearOrder, PreconditionError, RootSystemLevel, Singular, ValidationError, simple_roots,
    normalize_weight, straighten, to_fundamental, weights_equal,
)
from .scenario import ScenarioError, load
from .weights import dominant_prefix_search, successor_tree, labels_stabilize, descent_certificate
from .weyl_limit import act_dot, length_B

EXIT_OK, EXIT_INVALID, EXIT_UNDETERMINED, EXIT_INTERNAL = 0, 1, 2, 3
REPORT_SCHEMA_VERSION = 1


# --------------------------------------------------------------------------
# Formatting


def fmt_q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_vec(v) -> str:
    return "(" + ", ".join(fmt_q(x) for x in v) + ")"


def _q_list(v) -> list:
    return [fmt_q(x) for x in v]


def level_record(r) -> dict:
    if r.acyclic:
        return {"level": r.level, "outcome": "acyclic"}
    o = r.outcome
    return {"level": r.level, "outcome": "regular", "degree": o.degree,
            "w": list(o.w.images), "dominant": _q_list(o.dominant)}


def element_record(elt) -> Optional[dict]:
    if elt is None:
        return None
    return {"base_level": elt.base_level,
            "parts": [{"branch": list(b.copy_choices), "perm": list(w.images)} for b, w in elt.support]}


def verdict_record(v: Verdict) -> dict:
    return {
        "kind": v.kind,
        "annotation": v.annotation,
        "degree": v.degree,
        "reason": v.reason,
        "horizon": v.horizon,
        "window": v.window,
        "stabilized_at": v.stabilized_at,
        "separation_level": v.separation_level,
        "limit_element": element_record(v.limit_element),
        "highest_weight": None if v.highest_weight is None else [_q_list(w) for w in v.highest_weight.weights],
        "certificate": v.certificate,
    }


def report(scenario, v: Verdict, options: dict) -> dict:
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "version": __version__,
        "scenario": {"name": scenario.name, "sha256": scenario.sha256},
        "options": options,
        "levels": [level_record(r) for r in v.levels],
        "verdict": verdict_record(v),
    }


def level_line(r) -> str:
    if r.acyclic:
        return f"{r.level:>5}  acyclic"
    o = r.outcome
    return f"{r.level:>5}  j={o.degree:<3} w={o.w.one_line()}  mu={fmt_vec(o.dominant)}"


# --------------------------------------------------------------------------
# Commands


def _weight(sc):
    if sc.weight is None:
        raise ScenarioError("weight", "this command needs a weight section")
    return sc.weight


def cmd_check(args, out) -> int:
    sc = load(args.scenario)
    print(f"scenario: {sc.name}", file=out)
    print(f"sha256: {sc.sha256}", file=out)
    print(f"family {sc.system.family}, levels {sc.system.num_levels}, ranks "
          + " ".join(str(sc.system.rank(n)) for n in range(1, sc.system.num_levels + 1)), file=out)
    print("borel: compatible", file=out)
    if sc.weight is not None:
        print(f"weight: inverse system on {sc.weight.num_levels} levels, "
              f"dominant={sc.weight.is_dominant(sc.borel)}", file=out)
    if sc.weyl_element is not None:
        print(f"weyl_element: {len(sc.weyl_element.support)} part(s), valid", file=out)
    print("ok", file=out)
    return EXIT_OK


def cmd_restrict(args, out) -> int:
    sc = load(args.scenario)
    ws = _weight(sc)
    n = args.from_level or ws.num_levels
    if not 1 <= n <= ws.num_levels:
        raise ScenarioError("--from-level", f"outside 1..{ws.num_levels}")
    lam = ws[n]
    for k in range(n, 0, -1):
        a = to_fundamental(lam, sc.system.level(k), sc.borel.order(k))
        shown = normalize_weight(sc.system.family, lam)
        print(f"level {k}: eps={fmt_vec(shown)}  a={fmt_vec(a)}", file=out)
        if k > 1:
            lam = restrict_weight(sc.system, k - 1, lam)
    return EXIT_OK


def cmd_bbw(args, out) -> int:
    sc = load(args.scenario)
    ws = _weight(sc)
    n = args.level or sc.options.get("level", ws.num_levels)
    if not 1 <= n <= ws.num_levels:
        raise ScenarioError("--level", f"outside 1..{ws.num_levels}")
    print(level_line(level_cohomology(sc.system, sc.borel, ws, n)), file=out)
    return EXIT_OK


def cmd_analyze(args, out) -> int:
    sc = load(args.scenario)
    ws = _weight(sc)
    horizon = args.horizon or sc.options.get("horizon") or ws.num_levels
    window = args.window or sc.options.get("window", 2)
    v = analyze(sc.system, sc.borel, ws, horizon, window)
    print(f"scenario: {sc.name}", file=out)
    print("level  result", file=out)
    for r in v.levels:
        print(level_line(r), file=out)
    line = f"verdict: {v.kind} on {v.annotation}"
    if v.degree is not None and v.kind == "Nonvanishing":
        line += f", j = {v.degree}"
    print(line + f" (horizon {v.horizon}, window {v.window})", file=out)
    print(f"reason: {v.reason}", file=out)
    if v.limit_element is not None:
        parts = "; ".join(f"branch {list(b.copy_choices)} perm {w.one_line()}" for b, w in v.limit_element.support)
        print(f"limit element: base level {v.limit_element.base_level}: {parts or 'identity'}", file=out)
    if args.report:
        data = report(sc, v, {"horizon": horizon, "window": window})
        text = json.dumps(data, indent=2, sort_keys=True) + "\n"
        if args.report == "-":
            out.write(text)
        else:
            with open(args.report, "w") as fh:
                fh.write(text)
    return EXIT_UNDETERMINED if v.kind == "Undetermined" else EXIT_OK


def cmd_search_dominant(args, out) -> int:
    sc = load(args.scenario)
    level = args.level or sc.options.get("level", sc.system.num_levels)
    bound = args.bound if args.bound is not None else sc.options.get("bound", 2)
    prune = sc.options.get("prune", False) if args.prune is None else args.prune
    if not 1 <= level <= sc.system.num_levels:
        raise ScenarioError("--level", f"outside 1..{sc.system.num_levels}")
    found = dominant_prefix_search(sc.system, sc.borel, level, bound, prune=prune)
    nonzero = [ws for ws in found if any(x != 0 for w in ws.weights for x in w)]
    print(f"dominant prefixes to level {level}, bound {bound}, prune={prune}: "
          f"{len(found)} total, {len(nonzero)} nonzero", file=out)
    if prune:
        cert = descent_certificate(sc.system, sc.borel)
        print(f"descent certificate: {'valid' if cert.valid else 'not applicable'} ({cert.reason})", file=out)
    for ws in nonzero:
        print("  " + " | ".join(fmt_vec(a) for a in ws.fundamental(sc.borel)), file=out)
    return EXIT_OK


def _parse_root(text: str, sc, m: int) -> tuple:
    lvl, order = sc.system.level(m), sc.borel.order(m)
    if text.startswith("simple:"):
        i = int(text.split(":", 1)[1])
        roots = simple_roots(lvl, order)
        if not 1 <= i <= len(roots):
            raise ScenarioError("--root", f"simple root index outside 1..{len(roots)}")
        return roots[i - 1]
    vals = [Fraction(x) for x in text.split(",")]
    if len(vals) != lvl.dim:
        raise ScenarioError("--root", f"expected {lvl.dim} comma-separated coordinates")
    return tuple(vals)


def cmd_tree(args, out) -> int:
    sc = load(args.scenario)
    ws = _weight(sc)
    m = args.from_level
    N = args.to_level or ws.num_levels
    alpha = _parse_root(args.root, sc, m)
    tree = successor_tree(sc.system, ws, alpha, m, N)
    for n in range(m, N + 1):
        print(f"level {n}: sum of labels {fmt_q(tree.level_sum(n))}", file=out)
        for nd in tree.nodes(n):
            path = "".join(str(c) for c in nd.path) or "root"
            print(f"  {path:<{N - m + 4}} label {fmt_q(nd.label)}  root {fmt_vec(nd.root)}", file=out)
    if N > m:
        first = (1,) * (N - m)
        s = labels_stabilize(tree, first)
        print(f"labels along {''.join(map(str, first))}: "
              + (f"stable from level {s}" if s is not None else "not stable within the tree"), file=out)
    return EXIT_OK


def _random_order(rng, lvl):
    ents = list(range(1, lvl.dim + 1))
    rng.shuffle(ents)
    if lvl.family != "A":
        ents = [x * rng.choice((1, -1)) for x in ents]
    return LinearOrder(lvl.family, tuple(ents))


def _agree(a, b, family) -> bool:
    if isinstance(a, Singular) or isinstance(b, Singular):
        return isinstance(a, Singular) and isinstance(b, Singular)
    return a.w == b.w and a.degree == b.degree and weights_equal(family, a.dominant, b.dominant)


def cmd_oracle_verify(args, out) -> int:
    cases = []
    if args.scenario:
        sc = load(args.scenario)
        ws = _weight(sc)
        for n in range(1, ws.num_levels + 1):
            if sc.system.rank(n) <= MAX_RANK:
                cases.append((f"level {n}", ws[n], sc.system.level(n), sc.borel.order(n)))
            else:
                print(f"level {n}: rank {sc.system.rank(n)} above the oracle cap, skipped", file=out)
    else:
        rng = random.Random(args.seed)
        for fam in FAMILIES:
            for _ in range(args.count):
                lvl = RootSystemLevel(fam, rng.randint(2, 4))
                half = Fraction(1, 2) if fam in ("B", "D") and rng.random() < 0.5 else 0
                lam = tuple(Fraction(rng.randint(-6, 6)) + half for _ in range(lvl.dim))
                cases.append((str(lvl), lam, lvl, _random_order(rng, lvl)))
    failures = 0
    for label, lam, lvl, order in cases:
        if not _agree(straighten(lam, lvl, order), brute_force_straighten(lam, lvl, order), lvl.family):
            failures += 1
            print(f"MISMATCH {label}: lambda={fmt_vec(lam)} order={order.entries}", file=out)
    print(f"oracle audit: {len(cases) - failures}/{len(cases)} agree", file=out)
    return EXIT_OK if failures == 0 else EXIT_INTERNAL


def cmd_act(args, out) -> int:
    sc = load(args.scenario)
    ws = _weight(sc)
    if sc.weyl_element is None:
        raise ScenarioError("weyl_element", "this command needs a weyl_element section")
    lv = length_B(sc.system, sc.weyl_element, sc.borel, ws.num_levels, sc.options.get("window", 2))
    print("lengths: " + ", ".join(f"{n}:{v}" for n, v in lv.lengths), file=out)
    if not lv.stabilized:
        print("length: unbounded within the horizon; the dot action is not defined", file=out)
        return EXIT_UNDETERMINED
    print(f"length: {lv.value} (stable from level {lv.stabilized_at})", file=out)
    res = act_dot(sc.system, sc.weyl_element, ws, sc.borel, sc.options.get("window", 2))
    if not res:
        fam = sc.system.family
        print(f"not an inverse system: level {res.level + 1} restricts to "
              f"{fmt_vec(normalize_weight(fam, res.restricted))}, level {res.level} is "
              f"{fmt_vec(normalize_weight(fam, res.expected))}, difference {fmt_vec(res.difference)}", file=out)
        return EXIT_OK
    for n, w in enumerate(res.weights.weights, start=1):
        print(f"level {n}: {fmt_vec(normalize_weight(sc.system.family, w))}", file=out)
    return EXIT_OK


# --------------------------------------------------------------------------
# Entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="diagbbw", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"diagbbw {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, func, help_, scenario=True):
        sp = sub.add_parser(name, help=help_)
        if scenario:
            sp.add_argument("scenario", help="scenario file, or the name of a shipped scenario")
        sp.set_defaults(func=func)
        return sp

    cmd("check", cmd_check, "validate a scenario")
    cmd("restrict", cmd_restrict, "print the restriction chain of the weight").add_argument(
        "--from-level", type=int)
    cmd("bbw", cmd_bbw, "straighten the weight at one level").add_argument("--level", type=int)
    sp = cmd("analyze", cmd_analyze, "stabilization analysis across levels")
    sp.add_argument("--horizon", type=int)
    sp.add_argument("--window", type=int)
    sp.add_argument("--report", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")
    sp = cmd("search-dominant", cmd_search_dominant, "enumerate dominant prefixes")
    sp.add_argument("--level", type=int)
    sp.add_argument("--bound", type=int)
    sp.add_argument("--prune", dest="prune", action="store_true", default=None)
    sp.add_argument("--no-prune", dest="prune", action="store_false")
    sp = cmd("tree", cmd_tree, "successor tree of a root with weight labels")
    sp.add_argument("--root", required=True, help="'simple:i' or comma-separated eps coordinates")
    sp.add_argument("--from-level", type=int, default=1)
    sp.add_argument("--to-level", type=int)
    cmd("act", cmd_act, "apply the scenario's Weyl element by the dot action")
    sp = cmd("oracle-verify", cmd_oracle_verify, "compare straightening with brute force", scenario=False)
    sp.add_argument("scenario", nargs="?")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=50, help="random weights per family")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (ValidationError, PreconditionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as e:  # noqa: BLE001
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
