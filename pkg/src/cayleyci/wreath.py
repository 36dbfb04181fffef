"""Block-structured permutations on six blocks of size p.

Points are indexed as (delta, lam) -> lam * p + delta with delta in
0..p-1 and lam in 0..5, so the six blocks are contiguous runs of p
points.  An element written sigma * (y_1, ..., y_6) first permutes the
block coordinate by sigma and then acts inside each block by the
component attached to the target block:

    (delta, lam) -> (y_{lam^sigma}(delta), lam^sigma)

which matches composing the pure block permutation with the pure base
element on the right.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .perm import Permutation, PermGroup, compose, conjugate

N_BLOCKS = 6


def point(p: int, delta: int, lam: int) -> int:
    return lam * p + delta


def coords(p: int, pt: int) -> tuple[int, int]:
    return pt % p, pt // p


def block_partition(p: int):
    from .perm import Partition

    return Partition(N_BLOCKS * p, [range(l * p, (l + 1) * p) for l in range(N_BLOCKS)])


def standard_cycle(p: int) -> Permutation:
    """The p-cycle (1,2,...,p) on one block's worth of points."""
    return Permutation([(d + 1) % p for d in range(p)], check=False)


def smallest_primitive_root(p: int) -> int:
    for g in range(2, p):
        seen = set()
        x = 1
        for _ in range(p - 1):
            x = x * g % p
            seen.add(x)
        if len(seen) == p - 1:
            return g
    raise ValueError(f"{p} is not prime")


def alpha_perm(p: int) -> Permutation:
    """Fixes 0 and conjugates the standard p-cycle to its g-th power,
    where g is the smallest primitive root of p; has order p-1."""
    g = smallest_primitive_root(p)
    return Permutation([d * g % p for d in range(p)], check=False)


def base_element(p: int, comps: Sequence[Permutation]) -> Permutation:
    """The pure base element (y_1, ..., y_6)."""
    if len(comps) != N_BLOCKS:
        raise ValueError("need exactly six components")
    images = [0] * (N_BLOCKS * p)
    for lam, y in enumerate(comps):
        if y.degree != p:
            raise ValueError("component degree mismatch")
        for d in range(p):
            images[lam * p + d] = lam * p + y.images[d]
    return Permutation(images, check=False)


def top_element(p: int, sigma: Permutation) -> Permutation:
    """The pure block permutation induced by sigma on block indices."""
    if sigma.degree != N_BLOCKS:
        raise ValueError("block permutation must have degree 6")
    images = [0] * (N_BLOCKS * p)
    for lam in range(N_BLOCKS):
        tgt = sigma.images[lam]
        for d in range(p):
            images[lam * p + d] = tgt * p + d
    return Permutation(images, check=False)


def wreath_element(p: int, sigma: Permutation, comps: Sequence[Permutation]) -> Permutation:
    return compose(top_element(p, sigma), base_element(p, comps))


def c_power_vector(p: int, exps: Sequence[int]) -> Permutation:
    """Base element whose components are powers of the standard p-cycle."""
    c = standard_cycle(p)
    return base_element(p, [c ** (e % p) for e in exps])


def decompose(p: int, w: Permutation) -> tuple[Permutation, list[Permutation]]:
    """Split a block-preserving permutation into (sigma, components).

    Raises ValueError when w does not map blocks onto blocks.
    """
    if w.degree != N_BLOCKS * p:
        raise ValueError("degree mismatch")
    sigma_images = []
    for lam in range(N_BLOCKS):
        tgt = w.images[lam * p] // p
        for d in range(p):
            if w.images[lam * p + d] // p != tgt:
                raise ValueError("permutation does not preserve the block system")
        sigma_images.append(tgt)
    sigma = Permutation(sigma_images)
    comps: list[Optional[Permutation]] = [None] * N_BLOCKS
    for lam in range(N_BLOCKS):
        tgt = sigma_images[lam]
        comps[tgt] = Permutation(
            [w.images[lam * p + d] - tgt * p for d in range(p)]
        )
    return sigma, [c for c in comps if c is not None]


def exponent_of_cycle_power(p: int, comp: Permutation) -> Optional[int]:
    """e with comp == c^e for the standard p-cycle, or None."""
    e = comp.images[0]
    if all(comp.images[d] == (d + e) % p for d in range(p)):
        return e
    return None


def standard_generators(p: int) -> tuple[Permutation, Permutation, Permutation]:
    """The uniform shift, the block rotation and the block involution.

    In 1-based cycle notation on blocks these are the base element
    (c,c,c,c,c,c), the pure (1,2,3)(4,5,6) and the pure (1,4)(2,6)(3,5).
    """
    shift = c_power_vector(p, [1] * N_BLOCKS)
    rotation = top_element(p, Permutation([1, 2, 0, 4, 5, 3]))
    involution = top_element(p, Permutation([3, 5, 4, 0, 2, 1]))
    return shift, rotation, involution


def block_group(p: int) -> PermGroup:
    """The transitive order-6p group generated by the standard triple."""
    return PermGroup(N_BLOCKS * p, list(standard_generators(p)))


def component_normalizes_cycle(p: int, comp: Permutation) -> bool:
    c = standard_cycle(p)
    return exponent_of_cycle_power(p, conjugate(c, comp)) not in (None, 0)


def _solve_mod_p(rows: list[list[int]], p: int) -> list[list[int]]:
    """Row-reduce vectors over GF(p); returns a reduced basis."""
    basis: list[list[int]] = []
    for row in rows:
        r = list(row)
        for b in basis:
            lead = next(i for i, x in enumerate(b) if x)
            if r[lead]:
                f = r[lead] * pow(b[lead], -1, p) % p
                r = [(x - f * y) % p for x, y in zip(r, b)]
        if any(r):
            basis.append(r)
    # normalize leading entries to 1 and back-substitute
    basis.sort(key=lambda b: next(i for i, x in enumerate(b) if x))
    for i, b in enumerate(basis):
        lead = next(j for j, x in enumerate(b) if x)
        inv = pow(b[lead], -1, p)
        basis[i] = [x * inv % p for x in b]
    return basis


def in_span_mod_p(basis: list[list[int]], vec: Sequence[int], p: int) -> bool:
    r = [x % p for x in vec]
    for b in basis:
        lead = next(i for i, x in enumerate(b) if x)
        if r[lead]:
            f = r[lead] * pow(b[lead], -1, p) % p
            r = [(x - f * y) % p for x, y in zip(r, b)]
    return not any(r)


def normal_p_subgroup(G: PermGroup, p: int) -> PermGroup:
    """The normal Sylow p-subgroup of a block-respecting group.

    Every generator must preserve the six blocks as a system and have
    components normalizing the standard p-cycle; the p-part then sits
    inside the elementary abelian group of cycle-power base elements and
    is found by sifting one representative per projective direction.
    The result is checked to be normal and to exhaust the p-part of |G|.
    """
    if p < 5:
        raise ValueError("p must be at least 5")
    n = N_BLOCKS * p
    if G.degree != n:
        raise ValueError(f"degree must be {n}")
    for g in G.generators:
        sigma, comps = decompose(p, g)  # raises if blocks are mixed
        for y in comps:
            if exponent_of_cycle_power(p, conjugate(standard_cycle(p), y)) is None:
                raise ValueError(
                    "generator component does not normalize the standard p-cycle"
                )

    basis: list[list[int]] = []
    vec = [0] * N_BLOCKS
    # one representative per projective direction, skipping known members
    for first in range(N_BLOCKS):
        for tail in range(p ** (N_BLOCKS - first - 1)):
            vec = [0] * first + [1]
            t = tail
            for _ in range(N_BLOCKS - first - 1):
                vec.append(t % p)
                t //= p
            if in_span_mod_p(basis, vec, p):
                continue
            if c_power_vector(p, vec) in G:
                basis = _solve_mod_p(basis + [vec], p)

    gens = [c_power_vector(p, b) for b in basis]
    P = PermGroup(n, gens)
    order = G.order()
    p_part = 1
    while order % p == 0:
        order //= p
        p_part *= p
    if P.order() != p_part:
        raise ValueError(
            f"found p-subgroup of order {P.order()} but |G| has p-part {p_part}"
        )
    for b in basis:
        x = c_power_vector(p, b)
        for g in G.generators:
            y = conjugate(x, g)
            _, comps = decompose(p, y)
            exps = [exponent_of_cycle_power(p, c) for c in comps]
            if any(e is None for e in exps) or not in_span_mod_p(basis, exps, p):
                raise ValueError("computed p-subgroup is not normal")
    return P


def exponent_basis(P: PermGroup, p: int) -> Optional[list[list[int]]]:
    """Exponent vectors of the generators when P consists of cycle powers."""
    rows = []
    for g in P.generators:
        try:
            sigma, comps = decompose(p, g)
        except ValueError:
            return None
        if not sigma.is_identity():
            return None
        exps = [exponent_of_cycle_power(p, y) for y in comps]
        if any(e is None for e in exps):
            return None
        rows.append([e % p for e in exps])
    return _solve_mod_p(rows, p)


def dihedral_regular_in_blocks(p: int):
    """The right regular dihedral group of order 6p in block coordinates.

    Returns (R, D, phi): the relabelled regular group R, the abstract
    dihedral group D of order 6p, and the point relabeling phi sending
    the element-index points of the plain right regular representation
    to block coordinates.  Blocks are the orbits of the Sylow
    p-subgroup, and the shift along each block is right multiplication
    by the order-p rotation, i.e. the uniform shift generator.
    """
    from .groups import dihedral, right_regular

    D = dihedral(3 * p)
    n = 6 * p
    images = [0] * n
    for i in range(3 * p):  # rotation a^i = t_{i mod 3} * (a^3)^delta
        lam = i % 3
        delta = ((i - lam) // 3) % p
        images[i] = point(p, delta, lam)
    for i in range(3 * p):  # reflection a^i*b = t_{3 + (i mod 3)} * (a^3)^delta
        lam = i % 3
        delta = ((lam - i) // 3) % p
        images[3 * p + i] = point(p, delta, 3 + lam)
    phi = Permutation(images)
    R0 = right_regular(D)
    R = R0.conjugated(phi)
    return R, D, phi
