"""Abstract finite groups as multiplication tables, plus the named zoo.

Element indices are 0-based; ``mul[i][j]`` is the index of the product
"element i then element j", matching the right-action convention of the
permutation layer.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .perm import Permutation, parse_cycles


class FiniteGroup:
    """A finite group stored as labelled elements and a multiplication table."""

    def __init__(
        self,
        labels: Sequence[str],
        mul: Sequence[Sequence[int]],
        name: str = "group",
        generator_indices: Sequence[int] = (),
        relators: Sequence[Sequence[int]] = (),
        perms: Optional[Sequence[Permutation]] = None,
    ):
        self.labels = tuple(labels)
        self.order = len(self.labels)
        self.mul = tuple(tuple(row) for row in mul)
        self.name = name
        self.perms = list(perms) if perms is not None else None

        ident = None
        for e in range(self.order):
            if all(self.mul[e][x] == x == self.mul[x][e] for x in range(self.order)):
                ident = e
                break
        if ident is None:
            raise ValueError("no identity element in table")
        self.identity = ident

        inv = [None] * self.order
        for x in range(self.order):
            for y in range(self.order):
                if self.mul[x][y] == ident:
                    inv[x] = y
                    break
            if inv[x] is None:
                raise ValueError(f"element {x} has no inverse")
        self.inv = tuple(inv)

        self.generator_indices = tuple(generator_indices)
        self.relators = tuple(tuple(w) for w in relators)
        self._label_to_index = {lab: i for i, lab in enumerate(self.labels)}
        self._gen_seq: Optional[tuple[int, ...]] = None
        self._automorphisms: Optional[list["GroupAutomorphism"]] = None
        self._subgroups: Optional[list[frozenset[int]]] = None

    # -- basic structure -----------------------------------------------------

    def product(self, i: int, j: int) -> int:
        return self.mul[i][j]

    def inverse(self, i: int) -> int:
        return self.inv[i]

    def power(self, i: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv[i], -k)
        out = self.identity
        base = i
        while k:
            if k & 1:
                out = self.mul[out][base]
            base = self.mul[base][base]
            k >>= 1
        return out

    def element_order(self, i: int) -> int:
        n = 1
        x = i
        while x != self.identity:
            x = self.mul[x][i]
            n += 1
        return n

    def check_table(self) -> None:
        """Full associativity and inverse check; O(order^3)."""
        n = self.order
        for a in range(n):
            for b in range(n):
                ab = self.mul[a][b]
                for c in range(n):
                    if self.mul[ab][c] != self.mul[a][self.mul[b][c]]:
                        raise ValueError(f"associativity fails at ({a},{b},{c})")
        for x in range(n):
            if self.mul[x][self.inv[x]] != self.identity:
                raise ValueError(f"inverse fails at {x}")

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.mul[a][b] == self.mul[b][a] for a in range(n) for b in range(n))

    def order_histogram(self) -> tuple[tuple[int, int], ...]:
        counts: dict[int, int] = {}
        for x in range(self.order):
            o = self.element_order(x)
            counts[o] = counts.get(o, 0) + 1
        return tuple(sorted(counts.items()))

    def closure(self, seed: Iterable[int]) -> frozenset[int]:
        seen = {self.identity}
        queue = list(dict.fromkeys(seed))
        seen.update(queue)
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            for g in list(seen):
                for y in (self.mul[x][g], self.mul[g][x]):
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
        return frozenset(seen)

    def derived_subgroup(self) -> frozenset[int]:
        comms = set()
        for a in range(self.order):
            for b in range(self.order):
                ab = self.mul[a][b]
                ba = self.mul[b][a]
                comms.add(self.mul[self.inv[ba]][ab])
        return self.closure(comms)

    def center(self) -> frozenset[int]:
        return frozenset(
            x
            for x in range(self.order)
            if all(self.mul[x][y] == self.mul[y][x] for y in range(self.order))
        )

    def shape_fingerprint(self) -> tuple:
        """Cheap isomorphism invariant: order histogram + derived/center sizes."""
        return (self.order, self.order_histogram(), len(self.derived_subgroup()), len(self.center()))

    def subgroups(self, order: Optional[int] = None) -> list[frozenset[int]]:
        """All subgroups (as index sets), optionally filtered by order."""
        if self._subgroups is None:
            found: set[frozenset[int]] = {frozenset({self.identity})}
            frontier = {frozenset({self.identity})}
            while frontier:
                nxt: set[frozenset[int]] = set()
                for H in frontier:
                    for x in range(self.order):
                        if x in H:
                            continue
                        K = self.closure(H | {x})
                        if K not in found:
                            found.add(K)
                            nxt.add(K)
                frontier = nxt
            self._subgroups = sorted(found, key=lambda s: (len(s), sorted(s)))
        if order is None:
            return list(self._subgroups)
        return [H for H in self._subgroups if len(H) == order]

    def generating_sequence(self) -> tuple[int, ...]:
        """A smallest generating tuple, found greedily in index order."""
        if self._gen_seq is not None:
            return self._gen_seq
        if self.generator_indices and len(self.closure(self.generator_indices)) == self.order:
            for size in range(1, len(self.generator_indices)):
                for combo in itertools.combinations(self.generator_indices, size):
                    if len(self.closure(combo)) == self.order:
                        self._gen_seq = tuple(combo)
                        return self._gen_seq
            self._gen_seq = tuple(self.generator_indices)
            return self._gen_seq
        candidates = [x for x in range(self.order) if x != self.identity]
        for size in range(1, 5):
            for combo in itertools.combinations(candidates, size):
                if len(self.closure(combo)) == self.order:
                    self._gen_seq = combo
                    return combo
        raise ValueError("no generating sequence of size <= 4 found")

    def element_words(self, gens: Sequence[int]) -> dict[int, tuple[int, ...]]:
        """Each element as a word (tuple of positions into `gens`), via BFS."""
        words = {self.identity: ()}
        queue = [self.identity]
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            for k, g in enumerate(gens):
                y = self.mul[x][g]
                if y not in words:
                    words[y] = words[x] + (k,)
                    queue.append(y)
        if len(words) != self.order:
            raise ValueError("given elements do not generate the group")
        return words

    # -- labels --------------------------------------------------------------

    def label_index(self, label: str) -> int:
        lab = label.strip()
        if lab in self._label_to_index:
            return self._label_to_index[lab]
        norm = self._normalize_label(lab)
        if norm in self._label_to_index:
            return self._label_to_index[norm]
        raise KeyError(f"unknown element label {label!r} for {self.name}")

    def _normalize_label(self, lab: str) -> str:
        if self.perms is not None:
            p = parse_cycles(lab, self.perms[0].degree)
            return p.cycle_string()
        m = re.fullmatch(r"(?:1|e)", lab)
        if m:
            return "a^0"
        m = re.fullmatch(r"a(?:\^(\d+))?\s*\*?\s*(b)?", lab)
        if m:
            exp = int(m.group(1)) if m.group(1) is not None else 1
            n = self.order // 2
            exp %= n
            return f"a^{exp}*b" if m.group(2) else f"a^{exp}"
        if lab == "b":
            return "a^0*b"
        return lab

    def labels_of(self, indices: Iterable[int]) -> list[str]:
        return sorted(self.labels[i] for i in indices)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    # -- constructors ----------------------------------------------------------

    @classmethod
    def from_permutations(
        cls, degree: int, gens: Sequence[Permutation], name: str, cap: int = 4096
    ) -> "FiniteGroup":
        """Group generated by permutations, with cycle-notation labels."""
        from .perm import closure_elements

        elems = closure_elements(degree, list(gens), cap=cap)
        elems.sort(key=lambda p: p.images)
        index = {p.images: i for i, p in enumerate(elems)}
        mul = [[index[(a * b).images] for b in elems] for a in elems]
        labels = [p.cycle_string() for p in elems]
        gen_idx = [index[g.images] for g in gens]
        return cls(labels, mul, name=name, generator_indices=gen_idx, perms=elems)

    @classmethod
    def from_regular_perm_group(cls, P) -> "FiniteGroup":
        """Abstract group of a regular permutation group, indexed by 0^x."""
        if not P.is_regular():
            raise ValueError("permutation group is not regular")
        elems = P.elements()
        by_point = {}
        for x in elems:
            by_point[x.images[0]] = x
        n = P.degree
        ordered = [by_point[i] for i in range(n)]
        # (0)^(x_i x_j) = x_j.images[i]
        mul = [[ordered[j].images[i] for j in range(n)] for i in range(n)]
        labels = [x.cycle_string() for x in ordered]
        return cls(labels, mul, name="regular", perms=ordered)


@dataclass(frozen=True)
class GroupAutomorphism:
    """An automorphism as an element-index mapping."""

    mapping: tuple[int, ...]

    def __call__(self, index: int) -> int:
        return self.mapping[index]

    def apply(self, subset: Iterable[int]) -> frozenset[int]:
        return frozenset(self.mapping[i] for i in subset)

    def compose(self, other: "GroupAutomorphism") -> "GroupAutomorphism":
        return GroupAutomorphism(tuple(other.mapping[i] for i in self.mapping))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.mapping))


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n: rotations a^i and reflections a^i*b."""
    if n < 1:
        raise ValueError("n must be >= 1")
    labels = [f"a^{i}" for i in range(n)] + [f"a^{i}*b" for i in range(n)]

    def mul(i: int, j: int) -> int:
        ri, fi = i % n, i >= n
        rj, fj = j % n, j >= n
        if not fi:
            r = (ri + rj) % n
            return r + (n if fj else 0)
        r = (ri - rj) % n
        return r + (0 if fj else n)

    table = [[mul(i, j) for j in range(2 * n)] for i in range(2 * n)]
    gens = (1, n) if n > 1 else (n,)
    if n > 1:
        relators = ((0,) * n, (1, 1), (0, 1, 0, 1))
    else:
        relators = ((0, 0),)
    return FiniteGroup(labels, table, name=f"dihedral({n})", generator_indices=gens, relators=relators)


def alt4() -> FiniteGroup:
    """Alternating group on four symbols, as even permutations of 4 points."""
    x = parse_cycles("(1,2)(3,4)", 4)
    y = parse_cycles("(1,2,3)", 4)
    G = FiniteGroup.from_permutations(4, [x, y], name="alt4")
    G = FiniteGroup(
        G.labels,
        G.mul,
        name="alt4",
        generator_indices=G.generator_indices,
        relators=((0, 0), (1, 1, 1), (0, 1, 0, 1, 0, 1)),
        perms=G.perms,
    )
    assert G.order == 12
    return G


def quasidihedral18() -> FiniteGroup:
    """The order-18 group generated by (1,2,3), (4,5,6) and (2,3)(5,6).

    The name follows common usage for this specific permutation group;
    the permutation definition is authoritative.
    """
    g1 = parse_cycles("(1,2,3)", 6)
    g2 = parse_cycles("(4,5,6)", 6)
    g3 = parse_cycles("(2,3)(5,6)", 6)
    G = FiniteGroup.from_permutations(6, [g1, g2, g3], name="quasidihedral18")
    # relators: g1^3, g2^3, [g1,g2], g3^2, (g3 g1)^2, (g3 g2)^2
    relators = (
        (0, 0, 0),
        (1, 1, 1),
        (0, 1, 0, 0, 1, 1),
        (2, 2),
        (2, 0, 2, 0),
        (2, 1, 2, 1),
    )
    G = FiniteGroup(
        G.labels,
        G.mul,
        name="quasidihedral18",
        generator_indices=G.generator_indices,
        relators=relators,
        perms=G.perms,
    )
    assert G.order == 18
    return G


def isomorphisms(G: FiniteGroup, H: FiniteGroup, first_only: bool = False) -> list[tuple[int, ...]]:
    """All isomorphisms G -> H as element-index mappings.

    Brute force over images of a fixed generating sequence with order
    matching, followed by a full homomorphism check; intended for
    orders <= 64.
    """
    if G.order != H.order:
        return []
    if G.order > 64:
        raise ValueError("isomorphism search capped at order 64")
    gens = G.generating_sequence()
    words = G.element_words(gens)
    gen_orders = [G.element_order(g) for g in gens]
    by_order: dict[int, list[int]] = {}
    for x in range(H.order):
        by_order.setdefault(H.element_order(x), []).append(x)
    candidates = [by_order.get(o, []) for o in gen_orders]
    out: list[tuple[int, ...]] = []
    n = G.order
    for images in itertools.product(*candidates):
        mapping = [0] * n
        for e in range(n):
            v = H.identity
            for k in words[e]:
                v = H.mul[v][images[k]]
            mapping[e] = v
        if len(set(mapping)) != n:
            continue
        ok = True
        for a in range(n):
            ma = mapping[a]
            row = G.mul[a]
            for b in range(n):
                if H.mul[ma][mapping[b]] != mapping[row[b]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(tuple(mapping))
            if first_only:
                return out
    return out


def automorphisms(G: FiniteGroup) -> list[GroupAutomorphism]:
    """The full automorphism group of G (complete list), |G| <= 64."""
    if G.order > 64:
        raise ValueError("automorphism enumeration capped at order 64")
    if G._automorphisms is None:
        G._automorphisms = [GroupAutomorphism(m) for m in isomorphisms(G, G)]
    return list(G._automorphisms)


def apply_automorphism(phi: GroupAutomorphism, subset: Iterable[int]) -> frozenset[int]:
    """The image set S^phi."""
    return phi.apply(subset)


def right_regular(G: FiniteGroup):
    """Right regular representation: element g acts by x -> x*g."""
    from .perm import PermGroup

    gens = G.generator_indices or tuple(range(G.order))
    perms = [Permutation([G.mul[x][g] for x in range(G.order)]) for g in gens]
    return PermGroup(G.order, perms)


def element_permutation(G: FiniteGroup, g: int) -> Permutation:
    """The right-multiplication permutation of a single element."""
    return Permutation([G.mul[x][g] for x in range(G.order)])


def parse_connection_set(G: FiniteGroup, text: str) -> frozenset[int]:
    """Parse a connection set from comma- or whitespace-separated labels.

    Cycle-notation labels (used by alt4 and the order-18 group) may be
    separated by whitespace or semicolons since they contain commas.
    """
    text = text.strip()
    if not text:
        return frozenset()
    if "(" in text:
        tokens = re.findall(r"(?:\(\s*(?:\d+(?:\s*,\s*\d+)*)?\s*\))+", text)
    else:
        tokens = [t for t in re.split(r"[,;\s]+", text) if t]
    return frozenset(G.label_index(t) for t in tokens)
