"""Command-line front end: scans, verdicts and named-claim verification.

Exit codes: 0 claim confirmed, 2 claim refuted (witness emitted),
3 scope infeasible, 1 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional

from . import cases, ci, digraph as dg
from .closure import two_closure
from .groups import (
    FiniteGroup,
    alt4,
    dihedral,
    parse_connection_set,
    quasidihedral18,
)
from .perm import InfeasibleError, PermGroup, parse_cycles

EXIT_CONFIRMED = 0
EXIT_USAGE = 1
EXIT_REFUTED = 2
EXIT_INFEASIBLE = 3


def _group_from_selector(text: str) -> FiniteGroup:
    if text == "alt4":
        return alt4()
    if text == "q18":
        return quasidihedral18()
    if text.startswith("dihedral:"):
        return dihedral(int(text.split(":", 1)[1]))
    raise ValueError(f"unknown group selector {text!r}; use dihedral:n, alt4 or q18")


def _emit(payload: dict, out: Optional[str]) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)


def _cmd_scan(args) -> int:
    G = _group_from_selector(args.group)
    report = ci.scan_group(
        G,
        args.mode,
        max_set_size=args.max_set_size,
        connected_only=args.connected_only,
        exclude_identity=args.exclude_identity,
        seed=args.seed,
        workers=args.workers,
        claim=f"{G.name} {args.mode} scan",
    )
    _emit(report.to_dict(), args.out)
    return EXIT_CONFIRMED if not report.witnesses else EXIT_REFUTED


def _cmd_verify_theorem(args) -> int:
    p = args.p
    t0 = time.perf_counter()
    if p == 2:
        G = dihedral(6)
        report = ci.scan_group(
            G, "ci", seed=args.seed, workers=args.workers,
            claim="order-12 dihedral group is not CI",
        )
        pair_ok = _witness_orbit_contains(
            G, report, ("a^0*b", "a^3"), ("a^0*b", "a^3*b")
        )
        cert_ok = _pair_matches_three_squares(G, ("a^0*b", "a^3"), ("a^0*b", "a^3*b"))
        confirmed = report.verdict == "not CI" and pair_ok and cert_ok
        payload = {
            "claim": "order-12 dihedral group is not CI",
            "confirmed": confirmed,
            "witness_pair_in_flagged_bucket": pair_ok,
            "certificates_match_three_squares": cert_ok,
            "scan": report.to_dict(),
        }
    elif p == 3:
        G = dihedral(9)
        ci_report = ci.scan_group(
            G, "ci", seed=args.seed, workers=args.workers,
            claim="order-18 dihedral group is CI",
        )
        dci_report = ci.scan_group(
            G, "dci", seed=args.seed, workers=args.workers,
            claim="order-18 dihedral group is not DCI",
        )
        pair_ok = _witness_orbit_contains(
            G,
            dci_report,
            ("a^1", "a^4", "a^6", "a^7"),
            ("a^2", "a^5", "a^6", "a^8"),
        )
        confirmed = (
            ci_report.verdict == "CI" and dci_report.verdict == "not DCI" and pair_ok
        )
        payload = {
            "claim": "order-18 dihedral group is CI but not DCI",
            "confirmed": confirmed,
            "witness_pair_in_flagged_bucket": pair_ok,
            "ci_scan": ci_report.to_dict(),
            "dci_scan": dci_report.to_dict(),
        }
    elif p == 5:
        G = dihedral(15)
        k = args.max_set_size if args.max_set_size is not None else 4
        report = ci.scan_group(
            G, "dci", max_set_size=k, seed=args.seed, workers=args.workers,
            claim=f"order-30 dihedral group: no DCI violation with |S| <= {k}",
        )
        confirmed = report.verdict == "no violation in scope"
        payload = {
            "claim": f"order-30 dihedral group: no DCI violation with |S| <= {k}",
            "confirmed": confirmed,
            "scan": report.to_dict(),
        }
    else:
        raise ValueError("p must be 2, 3 or 5")
    payload["elapsed_s"] = time.perf_counter() - t0
    _emit(payload, args.out)
    return EXIT_CONFIRMED if payload["confirmed"] else EXIT_REFUTED


def _witness_orbit_contains(G: FiniteGroup, report, s_labels, t_labels) -> bool:
    """True when some flagged bucket pairs the orbits of the two given sets."""
    from .groups import automorphisms

    S = frozenset(G.label_index(x) for x in s_labels)
    T = frozenset(G.label_index(x) for x in t_labels)
    autos = automorphisms(G)
    for w in report.witnesses:
        bucket = [frozenset(G.label_index(x) for x in labels) for labels in w["bucket"]]
        s_hit = any(phi.apply(S) in bucket for phi in autos)
        t_hit = any(phi.apply(T) in bucket for phi in autos)
        if s_hit and t_hit:
            return True
    return False


def _pair_matches_three_squares(G: FiniteGroup, s_labels, t_labels) -> bool:
    """Both digraphs' certificates equal that of three disjoint 4-cycles."""
    from .digraph import Digraph, canonical_form, cayley_digraph

    S = frozenset(G.label_index(x) for x in s_labels)
    T = frozenset(G.label_index(x) for x in t_labels)
    arcs = []
    for k in (0, 4, 8):
        for i in range(4):
            arcs.append((k + i, k + (i + 1) % 4))
            arcs.append((k + (i + 1) % 4, k + i))
    three_squares = Digraph(12, arcs)
    want = canonical_form(three_squares).certificate
    return (
        canonical_form(cayley_digraph(G, S)).certificate == want
        and canonical_form(cayley_digraph(G, T)).certificate == want
    )


def _cmd_two_closure(args) -> int:
    gens = [parse_cycles(text, args.degree) for text in args.gens]
    G = PermGroup(args.degree, gens)
    H = two_closure(G)
    payload = {
        "degree": args.degree,
        "input_generators": [g.cycle_string() for g in gens],
        "input_order": G.order(),
        "closure_order": H.order(),
        "closure_generators": sorted(g.cycle_string() for g in H.generators),
        "two_closed": H.order() == G.order(),
    }
    _emit(payload, args.out)
    return EXIT_CONFIRMED


def _cmd_dci_graph(args) -> int:
    G = _group_from_selector(args.group)
    S = parse_connection_set(G, args.set)
    payload: dict = {"group": G.name, "S": G.labels_of(S), "method": args.method}
    verdicts = []
    if args.method in ("direct", "both"):
        ok, wit = ci.is_dci_graph_direct(G, S)
        payload["direct"] = {
            "is_dci_graph": ok,
            "witness": G.labels_of(wit) if wit is not None else None,
        }
        verdicts.append(ok)
    if args.method in ("babai", "both"):
        ok, wits = ci.is_dci_graph_babai(G, S)
        payload["babai"] = {
            "is_dci_graph": ok,
            "regular_subgroup_classes": [
                {
                    "generators": list(w.generators),
                    "conjugate_to_base": w.conjugate_to_base,
                    "conjugator": w.conjugator,
                }
                for w in wits
            ],
        }
        verdicts.append(ok)
    if len(verdicts) == 2 and verdicts[0] != verdicts[1]:
        payload["oracle_disagreement"] = True
        _emit(payload, args.out)
        return EXIT_REFUTED
    payload["is_dci_graph"] = verdicts[0]
    _emit(payload, args.out)
    return EXIT_CONFIRMED if verdicts[0] else EXIT_REFUTED


def _cmd_dichotomy(args) -> int:
    result = ci.sym3_dichotomy_check()
    _emit(result, args.out)
    ok = (
        result["conjugate_branch_pairs"] + result["direct_product_branch_pairs"]
        == result["ordered_pairs"]
        and result["reduction_pair_in_product_branch"]
    )
    return EXIT_CONFIRMED if ok else EXIT_REFUTED


def _cmd_case(args) -> int:
    report = cases.reproduce_case_analysis(args.p, args.classes)
    _emit(report, args.out)
    return EXIT_CONFIRMED if report["passed"] else EXIT_REFUTED


def _cmd_digraph(args) -> int:
    with open(args.infile) as fh:
        D = dg.from_text(fh.read())
    payload = {
        "n": D.n,
        "arcs": int(D.matrix.sum()),
        "connected": dg.is_connected(D),
        "certificate": dg.canonical_form(D).hex_digest(),
        "aut_order": dg.automorphism_group(D).order(),
        "aut_generators": sorted(
            g.cycle_string() for g in dg.automorphism_group(D).generators
        ),
    }
    if args.complement_out:
        with open(args.complement_out, "w") as fh:
            fh.write(dg.to_text(dg.complement(D)))
        payload["complement_written"] = args.complement_out
    _emit(payload, args.out)
    return EXIT_CONFIRMED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cayleyci",
        description="Cayley digraph isomorphism-property verification toolkit",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, seeded=True):
        sp.add_argument("--out", help="write the JSON report to this path")
        if seeded:
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument(
                "--workers", type=int, default=os.cpu_count() or 1,
                help="parallel certificate workers (default: available parallelism)",
            )

    sp = sub.add_parser("scan", help="exhaustive or bounded connection-set scan")
    sp.add_argument("--group", required=True, help="dihedral:n, alt4 or q18")
    sp.add_argument("--mode", required=True, choices=("dci", "ci"))
    sp.add_argument("--max-set-size", type=int, default=None)
    sp.add_argument("--connected-only", action="store_true")
    sp.add_argument("--exclude-identity", action="store_true")
    common(sp)
    sp.set_defaults(func=_cmd_scan)

    sp = sub.add_parser("verify-theorem", help="check one named order-6p claim")
    sp.add_argument("--p", type=int, required=True, choices=(2, 3, 5))
    sp.add_argument("--max-set-size", type=int, default=None)
    common(sp)
    sp.set_defaults(func=_cmd_verify_theorem)

    sp = sub.add_parser("two-closure", help="2-closure of a permutation group")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--gens", action="append", required=True,
                    help="generator in 1-based cycle notation; repeatable")
    common(sp, seeded=False)
    sp.set_defaults(func=_cmd_two_closure)

    sp = sub.add_parser("dci-graph", help="single connection-set verdict")
    sp.add_argument("--group", required=True)
    sp.add_argument("--set", required=True, help="comma-separated element labels")
    sp.add_argument("--method", choices=("babai", "direct", "both"), default="both")
    common(sp, seeded=False)
    sp.set_defaults(func=_cmd_dci_graph)

    sp = sub.add_parser("dichotomy", help="regular order-6 subgroup pair dichotomy")
    common(sp, seeded=False)
    sp.set_defaults(func=_cmd_dichotomy)

    sp = sub.add_parser("case", help="block case analysis at p in {5,7}")
    sp.add_argument("--p", type=int, required=True, choices=(5, 7))
    sp.add_argument("--classes", type=int, required=True, choices=(1, 2, 3, 6))
    common(sp, seeded=False)
    sp.set_defaults(func=_cmd_case)

    sp = sub.add_parser("digraph", help="inspect a digraph file (\"n m\" + arc lines)")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--complement-out", default=None)
    common(sp, seeded=False)
    sp.set_defaults(func=_cmd_digraph)

    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except InfeasibleError as exc:
        sys.stderr.write(f"infeasible: {exc}\n")
        return EXIT_INFEASIBLE
    except (ValueError, KeyError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
