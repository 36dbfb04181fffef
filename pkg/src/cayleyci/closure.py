"""Orbital colorings, 2-closures, block restrictions and stabilizer classes."""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from . import canon, wreath
from .perm import InfeasibleError, Partition, PermGroup, Permutation

DEGREE_CAP = 64


class VerificationFault(RuntimeError):
    """A membership that is guaranteed by theory failed to verify."""


class OrbitalColoring:
    """Coloring of ordered pairs by orbits of a permutation group."""

    def __init__(self, degree: int, matrix: np.ndarray, n_colors: int):
        self.degree = degree
        self.matrix = matrix
        self.n_colors = n_colors

    def color(self, i: int, j: int) -> int:
        return int(self.matrix[i, j])

    def preserves(self, g: Permutation) -> bool:
        """True iff g maps every color class onto itself."""
        if g.degree != self.degree:
            return False
        img = np.array(g.images)
        return bool(np.array_equal(self.matrix[img][:, img], self.matrix))

    def __repr__(self) -> str:
        return f"OrbitalColoring(degree={self.degree}, colors={self.n_colors})"


def orbital_partition(G: PermGroup) -> OrbitalColoring:
    """Orbits of G on ordered pairs, as a pair coloring.

    Color ids are assigned in order of the least unvisited pair, so the
    diagonal orbitals come first and the numbering is deterministic.
    """
    n = G.degree
    if n > DEGREE_CAP:
        raise InfeasibleError(f"degree {n} exceeds cap {DEGREE_CAP}")
    mat = np.full((n, n), -1, dtype=np.int64)
    color = 0
    gens = [g.images for g in G.generators]
    for i in range(n):
        for j in range(n):
            if mat[i, j] != -1:
                continue
            queue = [(i, j)]
            mat[i, j] = color
            while queue:
                a, b = queue.pop()
                for g in gens:
                    x, y = g[a], g[b]
                    if mat[x, y] == -1:
                        mat[x, y] = color
                        queue.append((x, y))
            color += 1
    return OrbitalColoring(n, mat, color)


def two_closure(G: PermGroup) -> PermGroup:
    """The largest group with the same orbits on ordered pairs as G.

    Computed as the automorphism group of the orbital pair coloring,
    i.e. of the arc-colored complete digraph whose arc colors are the
    orbital indices.
    """
    coloring = orbital_partition(G)
    res = canon.analyze(coloring.matrix, want_canonical=False)
    H = PermGroup(G.degree, res.aut_generators)
    for g in G.generators:
        if not coloring.preserves(g):  # pragma: no cover
            raise VerificationFault("group does not preserve its own orbitals")
    return H


def in_two_closure(G_or_coloring, g: Permutation) -> bool:
    """Membership in the 2-closure by direct color preservation, O(n^2)."""
    coloring = (
        G_or_coloring
        if isinstance(G_or_coloring, OrbitalColoring)
        else orbital_partition(G_or_coloring)
    )
    return coloring.preserves(g)


def block_restriction(rho: Permutation, E: Iterable[int]) -> Permutation:
    """The permutation acting as rho on E and fixing everything else.

    E must be rho-invariant.
    """
    pts = set(E)
    for x in pts:
        if rho.images[x] not in pts:
            raise ValueError("point set is not invariant under the permutation")
    images = list(range(rho.degree))
    for x in pts:
        images[x] = rho.images[x]
    return Permutation(images, check=False)


def stabilizer_equivalence(P: PermGroup, element_cap: int = 2**20) -> Partition:
    """Classes of points with identical stabilizers inside an abelian P.

    For groups of uniform cycle-power base elements the classes come
    from comparing kernel functionals per block (no enumeration); in
    general the elements are enumerated and points are grouped by their
    fixing sets.
    """
    gens = P.generators
    for i, a in enumerate(gens):
        for b in gens[i:]:
            if a * b != b * a:
                raise ValueError("group is not abelian")
    n = P.degree
    if n % wreath.N_BLOCKS == 0:
        p = n // wreath.N_BLOCKS
        if p >= 2:
            basis = wreath.exponent_basis(P, p)
            if basis is not None:
                return _classes_from_exponent_basis(basis, p)

    elems = P.elements(limit=element_cap)
    fixed = np.stack([np.array(e.images) == np.arange(n) for e in elems])
    _, class_ids = np.unique(fixed, axis=1, return_inverse=True)
    blocks: dict[int, list[int]] = {}
    for pt, c in enumerate(class_ids):
        blocks.setdefault(int(c), []).append(pt)
    return Partition(n, blocks.values())


def _classes_from_exponent_basis(basis: list[list[int]], p: int) -> Partition:
    """Group blocks by proportional stabilizer functionals."""
    n = wreath.N_BLOCKS * p
    keys = []
    for lam in range(wreath.N_BLOCKS):
        col = [row[lam] % p for row in basis]
        nz = next((i for i, x in enumerate(col) if x), None)
        if nz is None:
            keys.append(("zero",))
        else:
            inv = pow(col[nz], -1, p)
            keys.append(tuple(x * inv % p for x in col))
    groups: dict[tuple, list[int]] = {}
    for lam, key in enumerate(keys):
        groups.setdefault(key, []).extend(range(lam * p, (lam + 1) * p))
    return Partition(n, groups.values())


def class_block_pattern(classes: Partition, p: int) -> frozenset[frozenset[int]]:
    """The classes as sets of 0-based block indices."""
    out = set()
    for blk in classes.blocks:
        lams = frozenset(pt // p for pt in blk)
        if len(lams) * p != len(blk):
            raise ValueError("class is not a union of whole blocks")
        out.add(lams)
    return frozenset(out)


def restriction_in_two_closure(
    G: PermGroup,
    rho: Permutation,
    E: Iterable[int],
    P: Optional[PermGroup] = None,
    coloring: Optional[OrbitalColoring] = None,
) -> bool:
    """Verify that rho restricted to one stabilizer class lies in G^(2).

    Preconditions are enforced: rho must belong to G and fix every block
    of the size-p block system setwise, and E must be one of the
    stabilizer classes of the normal p-part of G.  The membership is
    confirmed against the orbital coloring; a failure would contradict
    the supporting theory and is raised as a VerificationFault.
    """
    n = G.degree
    p = n // wreath.N_BLOCKS
    if rho not in G:
        raise ValueError("rho is not an element of G")
    sigma, _ = wreath.decompose(p, rho)
    if not sigma.is_identity():
        raise ValueError("rho does not fix every block setwise")
    if P is None:
        P = wreath.normal_p_subgroup(G, p)
    classes = stabilizer_equivalence(P)
    E_set = tuple(sorted(set(E)))
    if E_set not in classes.blocks:
        raise ValueError("E is not a stabilizer class of the normal p-part")
    rho_E = block_restriction(rho, E_set)
    if coloring is None:
        coloring = orbital_partition(G)
    if not coloring.preserves(rho_E):
        raise VerificationFault(
            "block restriction unexpectedly fails to preserve the orbital coloring"
        )
    return True
