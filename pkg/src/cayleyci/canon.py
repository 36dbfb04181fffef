"""Canonical labeling and automorphisms of arc-colored digraphs.

The engine is an individualization-refinement backtracker over vertex
colorings, in the style of practical graph-canonization tools:

* ``_refine`` iterates a one-dimensional Weisfeiler-Leman step until the
  coloring is equitable; new color ids are assigned by lexicographic
  signature order, which is label-invariant, so equal digraphs refine
  identically no matter how their vertices are numbered.
* the automorphism pass walks the search tree once, records the first
  leaf, and turns every other leaf with an identical relabelled matrix
  into a generator; subtrees are cut by node-invariant mismatch against
  the first path, by orbits of the already-found group, and by bailing
  out of a non-first subtree as soon as it produces one automorphism.
* the canonical pass re-walks the tree with the full automorphism group
  known, descending only into one representative per stabilizer orbit,
  and takes the lexicographically least relabelled matrix as the
  certificate.

Everything is deterministic: ties are broken by smallest vertex index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .perm import Permutation


@dataclass
class CanonResult:
    aut_generators: list[Permutation]
    canonical_order: Optional[Permutation]  # vertex -> canonical position
    certificate: Optional[bytes]


def _encode(arc_colors: np.ndarray, vertex_colors: Optional[np.ndarray]) -> np.ndarray:
    """Fold vertex colors into the diagonal and pair (v,w) with (w,v)."""
    n = arc_colors.shape[0]
    M = arc_colors.astype(np.int64).copy()
    L = int(M.max()) + 1 if M.size else 1
    if vertex_colors is not None:
        M[np.arange(n), np.arange(n)] = L + np.asarray(vertex_colors, dtype=np.int64)
        L = int(M.max()) + 1
    return M * L + M.T


def _refine(enc: np.ndarray, colors: np.ndarray) -> np.ndarray:
    """Equitable refinement with canonical color numbering.

    New ids follow the byte order of the (old color, sorted row codes)
    signatures, which is label-invariant, so isomorphic inputs refine to
    corresponding colorings.
    """
    n = enc.shape[0]
    ncol = int(colors.max()) + 1 if n else 0
    sig = np.empty((n, n + 1), dtype=np.int64)
    row_size = (n + 1) * 8
    while True:
        code = enc * ncol + colors[None, :]
        sig[:, 0] = colors
        sig[:, 1:] = np.sort(code, axis=1)
        blob = sig.tobytes()
        keys = [blob[i * row_size : (i + 1) * row_size] for i in range(n)]
        uniq = sorted(set(keys))
        if len(uniq) == ncol:
            return colors
        lookup = {k: i for i, k in enumerate(uniq)}
        colors = np.fromiter((lookup[k] for k in keys), dtype=np.int64, count=n)
        ncol = len(uniq)


def _individualize(colors: np.ndarray, v: int) -> np.ndarray:
    c = colors[v]
    out = colors + (colors > c)
    out[colors == c] = c + 1
    out[v] = c
    return out


def _node_invariant(enc: np.ndarray, colors: np.ndarray) -> tuple:
    k = int(colors.max()) + 1
    sizes = np.bincount(colors, minlength=k)
    idx = colors[:, None] * k + colors[None, :]
    sums = np.bincount(idx.ravel(), weights=enc.ravel().astype(np.float64), minlength=k * k)
    return (k, sizes.tobytes(), sums.astype(np.int64).tobytes())


def _cert_header(enc: np.ndarray) -> bytes:
    """Isomorphism-invariant prefix: size and encoding range."""
    n = enc.shape[0]
    top = int(enc.max()) if enc.size else 0
    return np.array([n, top], dtype=np.int64).tobytes()


def _target_cell(colors: np.ndarray) -> np.ndarray:
    """Members of the first (smallest color id) non-singleton cell."""
    k = int(colors.max()) + 1
    sizes = np.bincount(colors, minlength=k)
    for c in range(k):
        if sizes[c] > 1:
            return np.flatnonzero(colors == c)
    return np.empty(0, dtype=np.int64)


def _orbit_of(points: Sequence[int], gens: list[np.ndarray], n: int) -> set[int]:
    orb = set(int(p) for p in points)
    queue = list(orb)
    while queue:
        p = queue.pop()
        for g in gens:
            q = int(g[p])
            if q not in orb:
                orb.add(q)
                queue.append(q)
    return orb


def _stabilizer_gens(
    gens: list[np.ndarray], v: int, n: int, cap: int = 256
) -> list[np.ndarray]:
    """Schreier generators for the stabilizer of v inside <gens>.

    The list is deduplicated and truncated at `cap`; a short list only
    weakens orbit pruning, never correctness.
    """
    transversal: dict[int, np.ndarray] = {v: np.arange(n)}
    queue = [v]
    while queue:
        p = queue.pop(0)
        u = transversal[p]
        for g in gens:
            q = int(g[p])
            if q not in transversal:
                transversal[q] = g[u]
                queue.append(q)
    ident = np.arange(n)
    out: dict[bytes, np.ndarray] = {}
    for p in sorted(transversal):
        u = transversal[p]
        for g in gens:
            w = g[u]  # apply u, then g
            s = np.argsort(transversal[int(g[p])])[w]  # then t_q^{-1}
            key = s.tobytes()
            if key not in out and not np.array_equal(s, ident):
                out[key] = s
                if len(out) >= cap:
                    return list(out.values())
    return list(out.values())


class _Engine:
    def __init__(self, enc: np.ndarray):
        self.enc = enc
        self.n = enc.shape[0]
        self.gens: list[np.ndarray] = []
        self.first_leaf: Optional[np.ndarray] = None
        self.first_inv: dict[int, tuple] = {}

    # -- automorphism pass ---------------------------------------------------

    def run_aut(self, colors0: np.ndarray) -> None:
        self._aut_rec(_refine(self.enc, colors0), 0, [], True)

    def _aut_rec(self, colors: np.ndarray, depth: int, prefix: list[int], on_first: bool) -> bool:
        inv = _node_invariant(self.enc, colors)
        if on_first:
            self.first_inv[depth] = inv
        elif inv != self.first_inv.get(depth):
            return False
        cell = _target_cell(colors)
        if cell.size == 0:
            order = np.argsort(colors, kind="stable")
            if self.first_leaf is None:
                self.first_leaf = order
                return False
            g = np.empty(self.n, dtype=np.int64)
            g[self.first_leaf] = order
            if np.array_equal(self.enc[g][:, g], self.enc):
                if not np.array_equal(g, np.arange(self.n)):
                    self.gens.append(g)
                return True
            return False
        found = False
        explored: list[int] = []
        for v in map(int, cell):
            if explored:
                fixing = [g for g in self.gens if all(int(g[p]) == p for p in prefix)]
                if v in _orbit_of(explored, fixing, self.n):
                    continue
            child_first = on_first and not explored
            explored.append(v)
            res = self._aut_rec(
                _refine(self.enc, _individualize(colors, v)), depth + 1, prefix + [v], child_first
            )
            if res:
                found = True
                if not on_first:
                    return True
        return found

    # -- canonical pass --------------------------------------------------------

    def run_canonical(self, colors0: np.ndarray) -> tuple[np.ndarray, bytes]:
        self.best_bytes: Optional[bytes] = None
        self.best_order: Optional[np.ndarray] = None
        self._canon_rec(_refine(self.enc, colors0), self.gens)
        assert self.best_order is not None and self.best_bytes is not None
        return self.best_order, self.best_bytes

    def _leaf_bytes(self, order: np.ndarray) -> bytes:
        mat = self.enc[order][:, order]
        return _cert_header(self.enc) + mat.tobytes()

    def _canon_rec(self, colors: np.ndarray, stab: list[np.ndarray]) -> None:
        cell = _target_cell(colors)
        if cell.size == 0:
            order = np.argsort(colors, kind="stable")
            b = self._leaf_bytes(order)
            if self.best_bytes is None or b < self.best_bytes:
                self.best_bytes = b
                self.best_order = order
            return
        done: set[int] = set()
        for v in map(int, cell):
            if v in done:
                continue
            done |= _orbit_of([v], stab, self.n)
            self._canon_rec(
                _refine(self.enc, _individualize(colors, v)),
                _stabilizer_gens(stab, v, self.n) if stab else [],
            )


def analyze(
    arc_colors: np.ndarray,
    vertex_colors: Optional[Sequence[int]] = None,
    want_canonical: bool = True,
) -> CanonResult:
    """Automorphism generators and (optionally) a canonical certificate.

    `arc_colors` is an (n, n) integer matrix of arc color values (0 for
    a non-arc in plain digraphs); the diagonal may carry loop/vertex
    information.  Vertex colors, when given, constrain automorphisms and
    enter the certificate.
    """
    n = int(arc_colors.shape[0])
    if n == 0:
        return CanonResult([], Permutation.identity(0), b"")
    vc = None if vertex_colors is None else np.asarray(list(vertex_colors), dtype=np.int64)
    enc = _encode(np.asarray(arc_colors), vc)

    # Fast path: a single off-diagonal color and a single diagonal color
    # means the full symmetric group acts.
    off = ~np.eye(n, dtype=bool)
    diag_vals = enc[np.arange(n), np.arange(n)]
    if n >= 2 and np.all(diag_vals == diag_vals[0]) and np.unique(enc[off]).size <= 1:
        gens = [Permutation([1, 0] + list(range(2, n)))]
        if n > 2:
            gens.append(Permutation(list(range(1, n)) + [0]))
        order = Permutation.identity(n)
        cert = _cert_header(enc) + enc.tobytes() if want_canonical else None
        return CanonResult(gens, order if want_canonical else None, cert)

    eng = _Engine(enc)
    colors0 = np.zeros(n, dtype=np.int64)
    eng.run_aut(colors0)
    gens = [Permutation([int(x) for x in g], check=False) for g in eng.gens]
    if not want_canonical:
        return CanonResult(gens, None, None)
    order_arr, cert = eng.run_canonical(colors0)
    # order_arr[r] = vertex at canonical position r; the relabeling map
    # sends vertex v to its position.
    position = np.argsort(order_arr)
    order = Permutation([int(x) for x in position], check=False)
    return CanonResult(gens, order, cert)
