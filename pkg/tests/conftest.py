import random

import pytest

from cayleyci.groups import alt4, dihedral, quasidihedral18, right_regular
from cayleyci.perm import PermGroup, Permutation, parse_cycles
from cayleyci.wreath import c_power_vector, standard_generators


def make_rng(salt: int = 0) -> random.Random:
    return random.Random(20260810 + salt)


@pytest.fixture(scope="session")
def cert_cache():
    """Shared Cayley-certificate cache keyed per group name and mask."""
    return {}


def closure_corpus():
    """Twenty assorted permutation groups for 2-closure properties."""
    r1_5, r2_5, r3_5 = standard_generators(5)
    r1_7, r2_7, r3_7 = standard_generators(7)
    sym = lambda n: PermGroup(
        n, [parse_cycles("(1,2)", n), parse_cycles("(" + ",".join(str(i) for i in range(1, n + 1)) + ")", n)]
    )
    from cayleyci.perm import compose, conjugate
    from cayleyci.wreath import alpha_perm, base_element, top_element

    beta = alpha_perm(5)
    ident5 = Permutation.identity(5)
    pi3 = base_element(5, [ident5] * 3 + [beta] * 3)
    case_iii = PermGroup(
        30,
        [r1_5, r2_5, r3_5, conjugate(r1_5, pi3), conjugate(r2_5, pi3), conjugate(r3_5, pi3)],
    )
    swap = top_element(5, parse_cycles("(5,6)", 6))
    case_i = PermGroup(
        30,
        [r1_5, r2_5, r3_5, conjugate(r2_5, swap), conjugate(r3_5, swap)],
    )
    groups = [
        ("trivial6", PermGroup(6, [])),
        ("C5", PermGroup(5, [parse_cycles("(1,2,3,4,5)", 5)])),
        ("C6", PermGroup(6, [parse_cycles("(1,2,3,4,5,6)", 6)])),
        ("S3", sym(3)),
        ("S4", sym(4)),
        ("S5", sym(5)),
        ("A4", PermGroup(4, [parse_cycles("(1,2)(3,4)", 4), parse_cycles("(1,2,3)", 4)])),
        ("D4reg", right_regular(dihedral(4))),
        ("V4reg", right_regular(dihedral(2))),
        ("S3blocks", PermGroup(6, [parse_cycles("(1,2,3)(4,5,6)", 6), parse_cycles("(1,4)(2,6)(3,5)", 6)])),
        ("shift5", PermGroup(30, [r1_5])),
        ("R5", PermGroup(30, [r1_5, r2_5, r3_5])),
        ("R7", PermGroup(42, [r1_7, r2_7, r3_7])),
        ("T5", PermGroup(30, [c_power_vector(5, [1 if i == k else 0 for i in range(6)]) for k in range(6)])),
        ("caseIII", case_iii),
        ("pairs125", PermGroup(30, [c_power_vector(5, e) for e in ([1, 0, 0, 1, 0, 0], [0, 1, 0, 0, 1, 0], [0, 0, 1, 0, 0, 1])])),
        ("caseI56", case_i),
        ("S2wrS3", PermGroup(6, [parse_cycles("(1,2)", 6), parse_cycles("(1,3)(2,4)", 6), parse_cycles("(1,3,5)(2,4,6)", 6)])),
        ("q18reg", right_regular(quasidihedral18())),
        ("D15reg", right_regular(dihedral(15))),
    ]
    assert len(groups) == 20
    return groups


def cayley_corpus():
    """Assorted (group, connection set) pairs used across digraph tests."""
    D6, D9, A4, Q18 = dihedral(6), dihedral(9), alt4(), quasidihedral18()
    return [
        (D6, frozenset({D6.label_index("b"), D6.label_index("a^3")})),
        (D6, frozenset({D6.label_index("b"), D6.label_index("a^3*b")})),
        (D6, frozenset({D6.label_index("a^1")})),
        (D9, frozenset(D9.label_index(x) for x in ("a^1", "a^4", "a^6", "a^7"))),
        (D9, frozenset(D9.label_index(x) for x in ("a^2", "a^5", "a^6", "a^8"))),
        (A4, frozenset({1, 4, 7})),
        (A4, frozenset({0, 2})),
        (Q18, frozenset({1, 3, 8, 11})),
        (Q18, frozenset({2})),
    ]
