import pytest

from cayleyci.groups import (
    FiniteGroup,
    alt4,
    apply_automorphism,
    automorphisms,
    dihedral,
    isomorphisms,
    parse_connection_set,
    quasidihedral18,
    right_regular,
)
from cayleyci.perm import parse_cycles

from conftest import make_rng


def euler_phi(n):
    return sum(1 for k in range(1, n + 1) if __import__("math").gcd(k, n) == 1)


class TestDihedral:
    @pytest.mark.parametrize("n", [1, 2, 3, 6, 9, 15])
    def test_table_valid(self, n):
        G = dihedral(n)
        assert G.order == 2 * n
        G.check_table()

    def test_relations(self):
        G = dihedral(6)
        a, b = 1, 6
        assert G.power(a, 6) == G.identity
        assert G.power(b, 2) == G.identity
        ab = G.product(a, b)
        assert G.product(ab, ab) == G.identity

    def test_smallest_nonabelian(self):
        G = dihedral(3)
        S3 = FiniteGroup.from_permutations(
            3, [parse_cycles("(1,2)", 3), parse_cycles("(1,2,3)", 3)], "S3"
        )
        assert not G.is_abelian()
        assert isomorphisms(G, S3, first_only=True)

    def test_paper_instances(self):
        assert dihedral(6).order == 12
        assert dihedral(15).order == 30

    def test_invalid(self):
        with pytest.raises(ValueError):
            dihedral(0)


class TestZoo:
    def test_alt4(self):
        G = alt4()
        assert G.order == 12
        G.check_table()
        assert not any(len(H) == 6 for H in G.subgroups())

    def test_quasidihedral18(self):
        G = quasidihedral18()
        assert G.order == 18
        G.check_table()
        assert not G.is_abelian()
        nine = [H for H in G.subgroups(order=9)]
        assert len(nine) == 1
        H = nine[0]
        # normal: closed under conjugation by every element
        for g in range(G.order):
            for h in H:
                assert G.product(G.product(G.inverse(g), h), g) in H

    def test_q18_matches_generating_permutations(self):
        G = quasidihedral18()
        from cayleyci.perm import closure_elements

        gens = [parse_cycles(s, 6) for s in ("(1,2,3)", "(4,5,6)", "(2,3)(5,6)")]
        assert len(closure_elements(6, gens)) == 18
        assert all(g.cycle_string() in G.labels for g in gens)


class TestAutomorphisms:
    def test_s3_count(self):
        assert len(automorphisms(dihedral(3))) == 6

    @pytest.mark.parametrize("n", [3, 6, 9, 15])
    def test_dihedral_count(self, n):
        assert len(automorphisms(dihedral(n))) == n * euler_phi(n)

    def test_alt4_count(self):
        assert len(automorphisms(alt4())) == 24

    @pytest.mark.parametrize("make", [lambda: dihedral(6), alt4, quasidihedral18])
    def test_group_structure(self, make):
        G = make()
        autos = automorphisms(G)
        assert any(phi.is_identity() for phi in autos)
        if len(autos) <= 200:
            mappings = {phi.mapping for phi in autos}
            for a in autos:
                for b in autos:
                    assert a.compose(b).mapping in mappings

    def test_automorphisms_are_homomorphisms(self):
        G = quasidihedral18()
        for phi in automorphisms(G)[:40]:
            for a in range(G.order):
                for b in range(G.order):
                    assert phi(G.product(a, b)) == G.product(phi(a), phi(b))


class TestRightRegular:
    def test_regularity(self):
        for G in (dihedral(3), dihedral(15), alt4(), quasidihedral18()):
            R = right_regular(G)
            assert R.is_regular()
            assert R.order() == G.order
            assert len(R.orbits()) == 1

    def test_difference_invariance(self):
        G = dihedral(15)
        rng = make_rng(11)
        for _ in range(500):
            x, y, g = (rng.randrange(G.order) for _ in range(3))
            xg = G.product(x, g)
            yg = G.product(y, g)
            assert G.product(xg, G.inverse(yg)) == G.product(x, G.inverse(y))


class TestApplyAutomorphism:
    def test_identity(self):
        G = dihedral(9)
        phi = next(p for p in automorphisms(G) if p.is_identity())
        S = frozenset({1, 4, 6, 7})
        assert apply_automorphism(phi, S) == S

    def test_central_involution_obstruction(self):
        G = dihedral(6)
        S = frozenset({G.label_index("b"), G.label_index("a^3")})
        T = frozenset({G.label_index("b"), G.label_index("a^3*b")})
        assert not any(apply_automorphism(phi, S) == T for phi in automorphisms(G))
        center = G.center()
        involutions = {x for x in center if G.element_order(x) == 2}
        assert involutions == {G.label_index("a^3")}

    def test_order18_obstruction(self):
        G = dihedral(9)
        S = frozenset(G.label_index(x) for x in ("a^1", "a^4", "a^6", "a^7"))
        T = frozenset(G.label_index(x) for x in ("a^2", "a^5", "a^6", "a^8"))
        assert not any(apply_automorphism(phi, S) == T for phi in automorphisms(G))

    def test_size_preserved(self):
        G = alt4()
        rng = make_rng(12)
        for phi in automorphisms(G):
            S = frozenset(rng.sample(range(12), 5))
            assert len(apply_automorphism(phi, S)) == 5


class TestLabels:
    def test_dihedral_aliases(self):
        G = dihedral(6)
        assert G.label_index("b") == G.label_index("a^0*b")
        assert G.label_index("a") == G.label_index("a^1")
        assert G.label_index("a^3b") == G.label_index("a^3*b")
        assert G.label_index("1") == G.identity

    def test_connection_set_parsing(self):
        G = dihedral(6)
        S = parse_connection_set(G, "b, a^3")
        assert S == frozenset({G.label_index("b"), G.label_index("a^3")})
        Q = quasidihedral18()
        T = parse_connection_set(Q, "(1,2,3) (4,5,6)")
        assert len(T) == 2

    def test_unknown_label(self):
        with pytest.raises(KeyError):
            dihedral(6).label_index("z^3")

    def test_fingerprints_distinguish_zoo(self):
        groups = [dihedral(6), alt4(), dihedral(9), quasidihedral18(), dihedral(15)]
        prints = [G.shape_fingerprint() for G in groups]
        assert len(set(prints)) == len(prints)
