"""Acceptance gate: every criterion at its stated tolerance, one per test.

Each test prints a single PASS line with its elapsed time (visible with
pytest -s or on failure); budgets are asserted where a criterion states
one.
"""

import itertools
import time

import pytest

from cayleyci import ci
from cayleyci.cases import reproduce_case_analysis
from cayleyci.cli import main as cli_main
from cayleyci.closure import orbital_partition, two_closure
from cayleyci.digraph import (
    automorphism_group,
    brute_force_isomorphism,
    are_isomorphic,
    canonical_form,
    cayley_digraph,
)
from cayleyci.groups import alt4, automorphisms, dihedral, quasidihedral18
from cayleyci.perm import PermGroup, Permutation, closure_elements, parse_cycles
from cayleyci.wreath import c_power_vector

from conftest import cayley_corpus, closure_corpus, make_rng


def report(num: int, started: float, detail: str) -> None:
    print(f"ACCEPTANCE {num}: PASS ({time.perf_counter() - started:.1f}s) {detail}")


def test_criterion_1_order12_not_ci(capsys):
    t0 = time.perf_counter()
    code = cli_main(["verify-theorem", "--p", "2", "--workers", "1"])
    out = capsys.readouterr().out
    import json

    payload = json.loads(out)
    assert code == 0
    assert payload["confirmed"]
    assert payload["witness_pair_in_flagged_bucket"]
    assert payload["certificates_match_three_squares"]
    elapsed = time.perf_counter() - t0
    assert elapsed <= 60.0
    with capsys.disabled():
        report(1, t0, "order-12 dihedral group refuted as CI; witness pair and "
                      "three-square certificates verified")


def test_criterion_2_order18_dihedral(capsys):
    t0 = time.perf_counter()
    G = dihedral(9)
    dci = ci.scan_group(G, "dci", claim="order-18 dihedral not DCI")
    assert dci.verdict == "not DCI"
    assert dci.counts["sets_considered"] == 2**18
    S = ("a^1", "a^4", "a^6", "a^7")
    T = ("a^2", "a^5", "a^6", "a^8")
    from cayleyci.cli import _witness_orbit_contains

    assert _witness_orbit_contains(G, dci, S, T)
    ci_rep = ci.scan_group(G, "ci", claim="order-18 dihedral CI")
    assert ci_rep.verdict == "CI"
    elapsed = time.perf_counter() - t0
    assert elapsed <= 30 * 60
    with capsys.disabled():
        report(2, t0, "order-18 dihedral group: DCI refuted with the expected "
                      "witness orbit, CI confirmed over all inverse-closed sets")


def test_criterion_3_frobenius_companions(capsys):
    t0 = time.perf_counter()
    a4 = ci.scan_group(alt4(), "dci", claim="alt4 DCI")
    assert a4.verdict == "DCI"
    assert a4.counts["sets_considered"] == 2**12
    q = quasidihedral18()
    q_dci = ci.scan_group(q, "dci", claim="order-18 permutation group not DCI")
    q_ci = ci.scan_group(q, "ci", claim="order-18 permutation group CI")
    assert q_dci.verdict == "not DCI"
    assert q_ci.verdict == "CI"
    elapsed = time.perf_counter() - t0
    assert elapsed <= 10 * 60
    with capsys.disabled():
        report(3, t0, "alt4 confirmed DCI over 4096 sets; order-18 group "
                      "confirmed not DCI and CI")


def test_criterion_4_order30_bounded_scan(capsys):
    t0 = time.perf_counter()
    rep = ci.scan_group(dihedral(15), "dci", max_set_size=4,
                        claim="order-30 dihedral, sets of size at most 4")
    assert rep.verdict == "no violation in scope"
    assert rep.counts["sets_considered"] == sum(
        len(list(itertools.combinations(range(30), k))) > 0 and
        __import__("math").comb(30, k) for k in range(5)
    )
    assert rep.counts["flagged_buckets"] == 0
    elapsed = time.perf_counter() - t0
    assert elapsed <= 2 * 3600
    with capsys.disabled():
        report(4, t0, f"order-30 dihedral group: zero violations among "
                      f"{rep.counts['sets_considered']} sets of size <= 4")


def test_criterion_5_oracle_agreement(capsys, cert_cache):
    t0 = time.perf_counter()
    G = alt4()
    cache = cert_cache.setdefault("alt4", {})
    disagreements = 0
    for mask in range(2**12):
        S = ci.mask_to_set(mask)
        direct, _ = ci.is_dci_graph_direct(G, S, cert_cache=cache)
        babai, _ = ci.is_dci_graph_babai(G, S)
        if direct != babai:
            disagreements += 1
    assert disagreements == 0

    D15 = dihedral(15)
    cache15 = cert_cache.setdefault("dihedral(15)", {})
    rng = make_rng(500)
    checked = 0
    for _ in range(500):
        k = rng.randint(0, 4)
        S = frozenset(rng.sample(range(30), k))
        direct, _ = ci.is_dci_graph_direct(D15, S, cert_cache=cache15)
        babai, _ = ci.is_dci_graph_babai(D15, S)
        if direct != babai:
            disagreements += 1
        checked += 1
    assert checked == 500 and disagreements == 0
    with capsys.disabled():
        report(5, t0, "subgroup criterion agrees with direct enumeration on "
                      "all 4096 alt4 sets and 500 seeded order-30 sets")


def test_criterion_6_strong_check_sweep(capsys):
    t0 = time.perf_counter()
    G = dihedral(15)
    rng = make_rng(1000)
    failures = []
    for i in range(1000):
        pi = Permutation(rng.sample(range(30), 30))
        ok, _ = ci.babai_strong_check(G, pi)
        if not ok:
            failures.append(i)
    assert failures == [], f"conjugacy failed for seeded trials {failures}"
    elapsed = time.perf_counter() - t0
    assert elapsed <= 2 * 3600
    with capsys.disabled():
        report(6, t0, "1000 seeded conjugating permutations at degree 30 all "
                      "conjugate inside the pair-coloring closure")


def test_criterion_7_two_closure_properties(capsys):
    t0 = time.perf_counter()
    corpus = closure_corpus()
    assert len(corpus) == 20
    for name, G in corpus:
        H = two_closure(G)
        assert all(g in H for g in G.generators), name
        assert two_closure(H).order() == H.order(), name

    # brute force over all 120 degree-5 permutations
    C5 = PermGroup(5, [parse_cycles("(1,2,3,4,5)", 5)])
    oc = orbital_partition(C5)
    brute = sum(
        1
        for p in itertools.permutations(range(5))
        if oc.preserves(Permutation(p, check=False))
    )
    assert brute == 5 == two_closure(C5).order()

    # six independent cycles: closure is exactly the coordinate group
    T = PermGroup(
        30, [c_power_vector(5, [1 if i == k else 0 for i in range(6)]) for k in range(6)]
    )
    assert two_closure(T).order() == 5**6 == 15625

    # a proper six-class subgroup closes up to the full coordinate group too
    P2 = PermGroup(
        30,
        [c_power_vector(5, [1, 0, 1, 1, 1, 1]), c_power_vector(5, [0, 1, 1, 2, 3, 4])],
    )
    from cayleyci.closure import stabilizer_equivalence

    assert len(stabilizer_equivalence(P2)) == 6
    assert two_closure(P2).order() == 15625
    with capsys.disabled():
        report(7, t0, "closure containment/idempotence on the 20-group corpus; "
                      "cyclic-5 closure matches brute force; coordinate-group "
                      "closures have order 15625 exactly")


def test_criterion_8_block_dichotomy(capsys):
    t0 = time.perf_counter()
    d = ci.sym3_dichotomy_check()
    assert d["conjugate_branch_pairs"] + d["direct_product_branch_pairs"] == d["ordered_pairs"]
    assert d["reduction_pair_order"] == 36
    assert d["reduction_pair_in_product_branch"]
    with capsys.disabled():
        report(8, t0, f"{d['regular_subgroups']} regular subgroups, every "
                      f"ordered pair in exactly one branch "
                      f"({d['conjugate_branch_pairs']} conjugate / "
                      f"{d['direct_product_branch_pairs']} product)")


@pytest.mark.parametrize("p", [5, 7])
def test_criterion_9_case_analysis(capsys, p):
    t0 = time.perf_counter()
    for classes in (1, 6, 2, 3):
        rep = reproduce_case_analysis(p, classes)
        failures = [c["name"] for c in rep["checks"] if not c["ok"]]
        assert rep["passed"], (p, classes, failures)
    with capsys.disabled():
        report(9, t0, f"all membership and factorization claims verified at p={p}")


def test_criterion_10_property_suite(capsys):
    t0 = time.perf_counter()
    rng = make_rng(42)

    # canonical certificate invariance: 200 relabelings per corpus digraph
    for G, S in cayley_corpus():
        D = cayley_digraph(G, S)
        want = canonical_form(D).certificate
        for _ in range(200):
            sigma = Permutation(rng.sample(range(D.n), D.n))
            assert canonical_form(D.relabel(sigma)).certificate == want

    # brute-force isomorphism agreement at n <= 7
    from cayleyci.digraph import Digraph

    for _ in range(30):
        n = rng.randint(2, 7)
        arcs1 = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < 0.4]
        D1 = Digraph(n, arcs1)
        if rng.random() < 0.5:
            D2 = D1.relabel(Permutation(rng.sample(range(n), n)))
        else:
            arcs2 = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < 0.4]
            D2 = Digraph(n, arcs2)
        assert (are_isomorphic(D1, D2) is None) == (brute_force_isomorphism(D1, D2) is None)

    # chain order equals brute-force closure order for every corpus group
    # of order at most 10^4
    for name, G in closure_corpus():
        if not G.generators:
            continue
        try:
            elems = closure_elements(G.degree, list(G.generators), cap=10**4)
        except Exception:
            continue
        assert G.order() == len(elems), name

    # automorphism groups of corpus Cayley digraphs are 2-closed
    for G, S in cayley_corpus():
        A = automorphism_group(cayley_digraph(G, S))
        assert two_closure(A).order() == A.order()
    with capsys.disabled():
        report(10, t0, "certificate invariance, brute-force isomorphism "
                       "agreement, chain-vs-closure orders and 2-closed "
                       "automorphism groups all verified")
