import itertools
from math import factorial

import numpy as np
import pytest

from cayleyci.digraph import (
    Digraph,
    are_isomorphic,
    automorphism_group,
    brute_force_automorphisms,
    brute_force_isomorphism,
    canonical_form,
    cayley_digraph,
    complement,
    from_text,
    is_connected,
    to_text,
)
from cayleyci.groups import alt4, dihedral, right_regular
from cayleyci.perm import Permutation

from conftest import cayley_corpus, make_rng


def three_squares():
    arcs = []
    for k in (0, 4, 8):
        for i in range(4):
            arcs.append((k + i, k + (i + 1) % 4))
            arcs.append((k + (i + 1) % 4, k + i))
    return Digraph(12, arcs)


def directed_cycle(n):
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def random_digraph(rng, n, density=0.3):
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < density]
    return Digraph(n, arcs)


class TestCayleyConstruction:
    def test_empty_set(self):
        D = cayley_digraph(dihedral(3), frozenset())
        assert D.matrix.sum() == 0

    def test_complete_for_all_nonidentity(self):
        G = dihedral(3)
        S = frozenset(range(G.order)) - {G.identity}
        D = cayley_digraph(G, S)
        assert np.array_equal(D.matrix, 1 - np.eye(6, dtype=np.int64))

    def test_arc_rule_and_outdegree(self):
        G = dihedral(6)
        S = frozenset({1, 3, 7})
        D = cayley_digraph(G, S)
        assert all(d == len(S) for d in D.out_degrees())
        for x in range(G.order):
            for y in range(G.order):
                assert D.has_arc(x, y) == (G.product(x, G.inverse(y)) in S)

    def test_loops_from_identity(self):
        G = dihedral(3)
        D = cayley_digraph(G, frozenset({G.identity}))
        assert np.array_equal(D.matrix, np.eye(6, dtype=np.int64))

    def test_regular_action_is_symmetry(self):
        for G, S in cayley_corpus():
            D = cayley_digraph(G, S)
            A = automorphism_group(D)
            for g in right_regular(G).generators:
                assert g in A

    def test_inverse_closed_gives_symmetric_digraph(self):
        G = dihedral(9)
        S = frozenset({G.label_index("a^1"), G.label_index("a^8"), G.label_index("b")})
        assert {G.inverse(s) for s in S} == set(S)
        D = cayley_digraph(G, S)
        assert np.array_equal(D.matrix, D.matrix.T)


class TestThreeSquares:
    def test_disjoint_union_shape(self):
        G = dihedral(6)
        S = frozenset({G.label_index("b"), G.label_index("a^3")})
        D = cayley_digraph(G, S)
        assert are_isomorphic(D, three_squares()) is not None
        assert not is_connected(D)
        assert is_connected(complement(D))

    def test_second_witness_set_same_shape(self):
        G = dihedral(6)
        T = frozenset({G.label_index("b"), G.label_index("a^3*b")})
        assert are_isomorphic(cayley_digraph(G, T), three_squares()) is not None


class TestComplementConnectivity:
    def test_complement_involution(self):
        rng = make_rng(13)
        for _ in range(10):
            D = random_digraph(rng, rng.randint(2, 12))
            assert complement(complement(D)) == D

    def test_complete_connected(self):
        D = Digraph(5, [(u, v) for u in range(5) for v in range(5) if u != v])
        assert is_connected(D)

    def test_single_vertex(self):
        assert is_connected(Digraph(1))


class TestAutomorphismGroups:
    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_complete_digraph(self, n):
        D = Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v])
        assert automorphism_group(D).order() == factorial(n)

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
    def test_directed_cycle(self, n):
        A = automorphism_group(directed_cycle(n))
        assert A.order() == n
        assert len(brute_force_automorphisms(directed_cycle(n))) == n

    def test_three_squares_order(self):
        assert automorphism_group(three_squares()).order() == 8**3 * 6 == 3072

    def test_brute_force_agreement_random(self):
        rng = make_rng(14)
        for _ in range(25):
            n = rng.randint(2, 7)
            D = random_digraph(rng, n, density=rng.uniform(0.15, 0.7))
            assert automorphism_group(D).order() == len(brute_force_automorphisms(D))

    def test_vertex_colors_respected(self):
        D_plain = Digraph(4, [])
        D_col = Digraph(4, [], vertex_colors=[0, 0, 1, 1])
        assert automorphism_group(D_plain).order() == 24
        assert automorphism_group(D_col).order() == 4


class TestCanonicalForm:
    def test_relabeling_invariance_at_18(self):
        G = dihedral(9)
        S = frozenset(G.label_index(x) for x in ("a^1", "a^4", "a^6", "a^7"))
        D = cayley_digraph(G, S)
        want = canonical_form(D).certificate
        rng = make_rng(15)
        for _ in range(200):
            sigma = Permutation(rng.sample(range(18), 18))
            assert canonical_form(D.relabel(sigma)).certificate == want

    def test_relabeling_invariance_corpus(self):
        rng = make_rng(16)
        for G, S in cayley_corpus():
            D = cayley_digraph(G, S)
            want = canonical_form(D).certificate
            for _ in range(20):
                sigma = Permutation(rng.sample(range(D.n), D.n))
                assert canonical_form(D.relabel(sigma)).certificate == want

    def test_order18_pair_certificates_equal(self):
        G = dihedral(9)
        S = frozenset(G.label_index(x) for x in ("a^1", "a^4", "a^6", "a^7"))
        T = frozenset(G.label_index(x) for x in ("a^2", "a^5", "a^6", "a^8"))
        assert (
            canonical_form(cayley_digraph(G, S)).certificate
            == canonical_form(cayley_digraph(G, T)).certificate
        )

    def test_arcless_vs_complete(self):
        empty = Digraph(5)
        full = Digraph(5, [(u, v) for u in range(5) for v in range(5) if u != v])
        assert canonical_form(empty).certificate != canonical_form(full).certificate

    def test_relabeling_map_realizes_certificate(self):
        rng = make_rng(17)
        for _ in range(10):
            D = random_digraph(rng, rng.randint(3, 10))
            cf = canonical_form(D)
            canon_mat = D.relabel(cf.relabeling).matrix
            D2 = D.relabel(Permutation(rng.sample(range(D.n), D.n)))
            cf2 = canonical_form(D2)
            assert np.array_equal(canon_mat, D2.relabel(cf2.relabeling).matrix)


class TestIsomorphism:
    def test_self(self):
        D = directed_cycle(6)
        w = are_isomorphic(D, D)
        assert w is not None

    def test_cycle_vs_path(self):
        c4 = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        p4 = Digraph(4, [(0, 1), (1, 2), (2, 3)])
        assert are_isomorphic(c4, p4) is None

    def test_brute_force_agreement(self):
        rng = make_rng(18)
        for _ in range(40):
            n = rng.randint(2, 7)
            D1 = random_digraph(rng, n, density=rng.uniform(0.2, 0.6))
            if rng.random() < 0.5:
                D2 = D1.relabel(Permutation(rng.sample(range(n), n)))
            else:
                D2 = random_digraph(rng, n, density=rng.uniform(0.2, 0.6))
            ours = are_isomorphic(D1, D2)
            brute = brute_force_isomorphism(D1, D2)
            assert (ours is None) == (brute is None)

    def test_witness_maps_arcs_exactly(self):
        rng = make_rng(19)
        D1 = random_digraph(rng, 10, 0.3)
        sigma = Permutation(rng.sample(range(10), 10))
        D2 = D1.relabel(sigma)
        w = are_isomorphic(D1, D2)
        assert w is not None
        for u in range(10):
            for v in range(10):
                assert D1.has_arc(u, v) == D2.has_arc(w(u), w(v))


class TestTextFormat:
    def test_roundtrip(self):
        rng = make_rng(20)
        D = random_digraph(rng, 9, 0.25)
        assert from_text(to_text(D)) == D

    def test_format_shape(self):
        D = Digraph(3, [(0, 1), (2, 0)])
        text = to_text(D)
        lines = text.strip().splitlines()
        assert lines[0] == "3 2"
        assert set(lines[1:]) == {"1 2", "3 1"}

    def test_bad_input(self):
        with pytest.raises(ValueError):
            from_text("3 2\n1 2\n")
