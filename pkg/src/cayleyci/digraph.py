"""Digraphs, Cayley digraph construction, isomorphism and automorphisms.

Digraphs have set-semantics arcs (no parallels), loops allowed, and an
optional vertex coloring that both the automorphism group and the
canonical certificate respect.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import canon
from .groups import FiniteGroup
from .perm import InfeasibleError, Permutation, PermGroup

SIZE_CAP = 64


class Digraph:
    """A digraph on vertices 0..n-1 with an adjacency matrix."""

    def __init__(
        self,
        n: int,
        arcs: Iterable[tuple[int, int]] = (),
        vertex_colors: Optional[Sequence[int]] = None,
    ):
        self.n = n
        self.matrix = np.zeros((n, n), dtype=np.int64)
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u},{v}) out of range")
            self.matrix[u, v] = 1
        self.vertex_colors = tuple(vertex_colors) if vertex_colors is not None else None
        if self.vertex_colors is not None and len(self.vertex_colors) != n:
            raise ValueError("vertex color list has wrong length")
        self._analysis: dict[bool, canon.CanonResult] = {}

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, vertex_colors=None) -> "Digraph":
        d = cls(int(matrix.shape[0]), (), vertex_colors)
        d.matrix = matrix.astype(np.int64)
        return d

    def arcs(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in zip(*np.nonzero(self.matrix))]

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.matrix[u, v])

    def out_degrees(self) -> list[int]:
        return [int(x) for x in self.matrix.sum(axis=1)]

    def in_degrees(self) -> list[int]:
        return [int(x) for x in self.matrix.sum(axis=0)]

    def relabel(self, sigma: Permutation) -> "Digraph":
        """Image digraph: arc (u,v) becomes (u^sigma, v^sigma)."""
        if sigma.degree != self.n:
            raise ValueError("relabeling degree mismatch")
        img = np.array(sigma.images)
        pos = np.argsort(img)
        mat = self.matrix[pos][:, pos]
        vc = None
        if self.vertex_colors is not None:
            vc = [0] * self.n
            for v in range(self.n):
                vc[sigma.images[v]] = self.vertex_colors[v]
        return Digraph.from_matrix(mat, vc)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Digraph)
            and self.n == other.n
            and np.array_equal(self.matrix, other.matrix)
            and self.vertex_colors == other.vertex_colors
        )

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={int(self.matrix.sum())})"

    def _analyzed(self, want_canonical: bool) -> canon.CanonResult:
        if self.n > SIZE_CAP:
            raise InfeasibleError(f"digraph on {self.n} > {SIZE_CAP} vertices")
        if want_canonical in self._analysis:
            return self._analysis[want_canonical]
        if True in self._analysis and not want_canonical:
            return self._analysis[True]
        res = canon.analyze(self.matrix, self.vertex_colors, want_canonical=want_canonical)
        self._analysis[want_canonical] = res
        return res


@dataclass(frozen=True)
class CanonicalCertificate:
    """Bytes invariant under relabeling, plus a relabeling realizing them."""

    certificate: bytes
    relabeling: Permutation  # vertex -> canonical position

    def hex_digest(self) -> str:
        import hashlib

        return hashlib.sha256(self.certificate).hexdigest()[:16]


def cayley_digraph(G: FiniteGroup, connection_set: Iterable[int]) -> Digraph:
    """Cayley digraph: arc (x, y) iff x * y^-1 lies in the connection set."""
    S = frozenset(connection_set)
    for s in S:
        if not 0 <= s < G.order:
            raise ValueError(f"element index {s} out of range")
    n = G.order
    mat = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        row = G.mul[x]
        for y in range(n):
            if row[G.inv[y]] in S:
                mat[x, y] = 1
    return Digraph.from_matrix(mat)


def automorphism_group(D: Digraph) -> PermGroup:
    """The full arc- and color-preserving symmetry group."""
    res = D._analyzed(want_canonical=False)
    return PermGroup(D.n, res.aut_generators)


def canonical_form(D: Digraph) -> CanonicalCertificate:
    """Canonical certificate; equal certificates iff isomorphic digraphs."""
    res = D._analyzed(want_canonical=True)
    assert res.canonical_order is not None and res.certificate is not None
    return CanonicalCertificate(res.certificate, res.canonical_order)


def are_isomorphic(D1: Digraph, D2: Digraph) -> Optional[Permutation]:
    """A vertex bijection mapping arcs onto arcs exactly, or None."""
    if D1.n != D2.n or int(D1.matrix.sum()) != int(D2.matrix.sum()):
        return None
    if sorted(D1.out_degrees()) != sorted(D2.out_degrees()):
        return None
    if sorted(D1.in_degrees()) != sorted(D2.in_degrees()):
        return None
    c1 = canonical_form(D1)
    c2 = canonical_form(D2)
    if c1.certificate != c2.certificate:
        return None
    # v -> canonical slot -> vertex of D2 in the same slot
    mapping = c1.relabeling * c2.relabeling.inverse()
    assert _is_isomorphism(D1, D2, mapping)
    return mapping


def _is_isomorphism(D1: Digraph, D2: Digraph, sigma: Permutation) -> bool:
    img = np.array(sigma.images)
    ok = np.array_equal(D2.matrix[img][:, img], D1.matrix)
    if ok and D1.vertex_colors is not None:
        ok = all(
            D2.vertex_colors[sigma.images[v]] == D1.vertex_colors[v] for v in range(D1.n)
        )
    return bool(ok)


def brute_force_isomorphism(D1: Digraph, D2: Digraph) -> Optional[Permutation]:
    """Reference oracle: try all n! bijections; n <= 8 only."""
    if D1.n != D2.n:
        return None
    if D1.n > 8:
        raise InfeasibleError("brute-force isomorphism limited to n <= 8")
    for images in itertools.permutations(range(D1.n)):
        sigma = Permutation(images, check=False)
        if _is_isomorphism(D1, D2, sigma):
            return sigma
    return None


def brute_force_automorphisms(D: Digraph) -> list[Permutation]:
    """Reference oracle: all automorphisms by exhaustion; n <= 8 only."""
    if D.n > 8:
        raise InfeasibleError("brute-force automorphisms limited to n <= 8")
    return [
        Permutation(images, check=False)
        for images in itertools.permutations(range(D.n))
        if _is_isomorphism(D, D, Permutation(images, check=False))
    ]


def complement(D: Digraph) -> Digraph:
    """Arc (x, y), x != y, iff D has no such arc; loops are dropped."""
    mat = 1 - D.matrix
    np.fill_diagonal(mat, 0)
    return Digraph.from_matrix(mat, D.vertex_colors)


def is_connected(D: Digraph) -> bool:
    """Weak connectivity: reachability in the underlying undirected graph."""
    if D.n == 0:
        return True
    und = (D.matrix + D.matrix.T) > 0
    seen = np.zeros(D.n, dtype=bool)
    seen[0] = True
    frontier = np.zeros(D.n, dtype=bool)
    frontier[0] = True
    while frontier.any():
        nxt = und[frontier].any(axis=0) & ~seen
        seen |= nxt
        frontier = nxt
    return bool(seen.all())


def to_text(D: Digraph) -> str:
    """Serialize as "n m" then one 1-based "u v" line per arc."""
    arcs = D.arcs()
    lines = [f"{D.n} {len(arcs)}"]
    lines += [f"{u + 1} {v + 1}" for u, v in arcs]
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Digraph:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty digraph text")
    head = lines[0].split()
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} arc lines, found {len(lines) - 1}")
    arcs = []
    for ln in lines[1:]:
        u, v = (int(t) for t in ln.split())
        arcs.append((u - 1, v - 1))
    return Digraph(n, arcs)
