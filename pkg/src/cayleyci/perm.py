"""Permutations on {0..n-1} and permutation groups with a stabilizer chain.

Multiplication is on the right throughout: ``compose(s, t)`` applies ``s``
first and then ``t``, and ``x ** g`` for points means ``g.images[x]``.
Points are 0-based internally; all text I/O (cycle notation) is 1-based.
"""

from __future__ import annotations

import re
from math import gcd
from typing import Iterable, Iterator, Optional, Sequence


class DegreeMismatch(ValueError):
    """Operands act on point sets of different sizes."""


class CycleFormatError(ValueError):
    """Malformed cycle-notation text."""


class InfeasibleError(RuntimeError):
    """A computation exceeds its configured feasibility cap."""


class Permutation:
    """An immutable bijection of {0..n-1}, stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int], check: bool = True):
        imgs = tuple(images)
        if check and sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation of 0..{len(imgs) - 1}: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree), check=False)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()!r}, degree={self.degree})"

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv, check=False)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def moved_points(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i != j]

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycle decomposition, each cycle led by its least point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            p = self.images[start]
            while p != start:
                seen[p] = True
                cyc.append(p)
                p = self.images[p]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Multiset of cycle lengths (fixed points included), sorted."""
        return tuple(sorted(len(c) for c in self.cycles(include_fixed=True)))

    def order(self) -> int:
        n = 1
        for c in self.cycles():
            n = n * len(c) // gcd(n, len(c))
        return n

    def cycle_string(self) -> str:
        """1-based cycle notation; "()" for the identity."""
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cycs)


def compose(sigma: Permutation, tau: Permutation) -> Permutation:
    """Product sigma*tau: apply sigma first, then tau."""
    if sigma.degree != tau.degree:
        raise DegreeMismatch(f"degrees {sigma.degree} and {tau.degree}")
    t = tau.images
    return Permutation([t[i] for i in sigma.images], check=False)


def conjugate(x: Permutation, pi: Permutation) -> Permutation:
    """x conjugated by pi: pi^-1 * x * pi."""
    if x.degree != pi.degree:
        raise DegreeMismatch(f"degrees {x.degree} and {pi.degree}")
    p = pi.images
    out = [0] * x.degree
    for i, j in enumerate(x.images):
        out[p[i]] = p[j]
    return Permutation(out, check=False)


_CYCLE_RE = re.compile(r"\(\s*((?:\d+\s*(?:,\s*\d+\s*)*)?)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation such as "(1,4)(2,6)(3,5)".

    "()" or an empty/whitespace string denotes the identity.  Raises
    CycleFormatError for malformed text, a repeated point, or a point
    outside 1..degree.
    """
    stripped = text.strip()
    if not stripped:
        return Permutation.identity(degree)
    pos = 0
    images = list(range(degree))
    used: set[int] = set()
    while pos < len(stripped):
        m = _CYCLE_RE.match(stripped, pos)
        if m is None:
            raise CycleFormatError(f"bad cycle notation at {stripped[pos:]!r}")
        body = m.group(1).strip()
        pos = m.end()
        while pos < len(stripped) and stripped[pos].isspace():
            pos += 1
        if not body:
            continue
        pts = [int(tok) for tok in body.split(",")]
        for p in pts:
            if not 1 <= p <= degree:
                raise CycleFormatError(f"point {p} outside 1..{degree}")
            if p - 1 in used:
                raise CycleFormatError(f"point {p} repeated")
            used.add(p - 1)
        for a, b in zip(pts, pts[1:]):
            images[a - 1] = b - 1
        images[pts[-1] - 1] = pts[0] - 1
    return Permutation(images)


class Partition:
    """A partition of {0..n-1} into disjoint blocks covering every point."""

    def __init__(self, degree: int, blocks: Iterable[Iterable[int]]):
        blks = [tuple(sorted(set(b))) for b in blocks]
        blks.sort(key=lambda b: b[0])
        seen: set[int] = set()
        for b in blks:
            if seen & set(b):
                raise ValueError("blocks overlap")
            seen |= set(b)
        if seen != set(range(degree)):
            raise ValueError("blocks do not cover the point set")
        self.degree = degree
        self.blocks = tuple(blks)

    def block_of(self, point: int) -> tuple[int, ...]:
        for b in self.blocks:
            if point in b:
                return b
        raise KeyError(point)

    def __len__(self) -> int:
        return len(self.blocks)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Partition)
            and self.degree == other.degree
            and self.blocks == other.blocks
        )

    def __repr__(self) -> str:
        return f"Partition({self.degree}, {[list(b) for b in self.blocks]})"


class _Level:
    __slots__ = ("beta", "gens", "orbit")

    def __init__(self, beta: int):
        self.beta = beta
        self.gens: list[Permutation] = []
        self.orbit: dict[int, Permutation] = {}


class PermGroup:
    """Permutation group given by generators, with a lazily built BSGS.

    The stabilizer chain is computed by a deterministic Schreier-Sims:
    base points are chosen as the least moved point when a level is
    created, orbits are closed breadth-first in generator order, and
    Schreier generators are sifted bottom-up until every level is
    closed.  Rebuilding from the same generators always yields the same
    chain, so orders, membership answers and element enumeration order
    are reproducible.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation]):
        gens = tuple(generators)
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(f"generator degree {g.degree} != {degree}")
        self.degree = degree
        self.generators = tuple(g for g in gens if not g.is_identity())
        self._levels: Optional[list[_Level]] = None
        self._order: Optional[int] = None

    # -- chain construction -------------------------------------------------

    def build_chain(self) -> None:
        """Build the stabilizer chain in place (idempotent)."""
        if self._levels is not None:
            return
        levels: list[_Level] = []
        ident = Permutation.identity(self.degree)

        def gens_at(i: int) -> list[Permutation]:
            out: list[Permutation] = []
            for j in range(i, len(levels)):
                out.extend(levels[j].gens)
            return out

        def rebuild_orbit(i: int) -> None:
            lv = levels[i]
            gens_i = gens_at(i)
            orbit = {lv.beta: ident}
            queue = [lv.beta]
            qi = 0
            while qi < len(queue):
                pt = queue[qi]
                qi += 1
                u = orbit[pt]
                for g in gens_i:
                    q = g.images[pt]
                    if q not in orbit:
                        orbit[q] = u * g
                        queue.append(q)
            lv.orbit = orbit

        def sift_from(g: Permutation, start: int) -> tuple[Permutation, int]:
            for i in range(start, len(levels)):
                lv = levels[i]
                u = lv.orbit.get(g.images[lv.beta])
                if u is None:
                    return g, i
                g = g * u.inverse()
            return g, len(levels)

        def insert(g: Permutation, floor: int) -> Optional[int]:
            """Place a sifted residue; returns its level, or None if redundant."""
            h, j = sift_from(g, floor)
            if h.is_identity():
                return None
            if j == len(levels):
                beta = min(h.moved_points())
                levels.append(_Level(beta))
            levels[j].gens.append(h)
            for t in range(j + 1):
                rebuild_orbit(t)
            return j

        for g in self.generators:
            insert(g, 0)

        # Close every level against its Schreier generators, bottom-up.
        k = len(levels) - 1
        while k >= 0:
            lv = levels[k]
            closed = True
            for pt in sorted(lv.orbit):
                u = lv.orbit[pt]
                for g in gens_at(k):
                    s = u * g * lv.orbit[g.images[pt]].inverse()
                    if s.is_identity():
                        continue
                    j = insert(s, k + 1)
                    if j is not None:
                        closed = False
                        k = j
                        break
                if not closed:
                    break
            if closed:
                k -= 1

        self._levels = levels
        order = 1
        for lv in levels:
            order *= len(lv.orbit)
        self._order = order

    def order(self) -> int:
        self.build_chain()
        assert self._order is not None
        return self._order

    def base(self) -> list[int]:
        self.build_chain()
        assert self._levels is not None
        return [lv.beta for lv in self._levels]

    def sift(self, g: Permutation) -> Permutation:
        """Residue of g after sifting through the chain; identity iff g in G."""
        if g.degree != self.degree:
            raise DegreeMismatch(f"degrees {g.degree} and {self.degree}")
        self.build_chain()
        assert self._levels is not None
        for lv in self._levels:
            u = lv.orbit.get(g.images[lv.beta])
            if u is None:
                return g
            g = g * u.inverse()
        return g

    def __contains__(self, g: Permutation) -> bool:
        return self.sift(g).is_identity()

    def is_member(self, g: Permutation) -> bool:
        return g in self

    # -- orbits and action structure ----------------------------------------

    def orbit(self, point: int) -> list[int]:
        seen = {point}
        queue = [point]
        qi = 0
        while qi < len(queue):
            pt = queue[qi]
            qi += 1
            for g in self.generators:
                q = g.images[pt]
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return sorted(seen)

    def orbits(self) -> Partition:
        """The partition of the point set into G-orbits."""
        remaining = set(range(self.degree))
        blocks = []
        while remaining:
            pt = min(remaining)
            orb = self.orbit(pt)
            blocks.append(orb)
            remaining -= set(orb)
        return Partition(self.degree, blocks)

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree if self.degree else True

    def is_semiregular(self) -> bool:
        """True iff only the identity fixes a point."""
        n = self.order()
        return all(len(b) == n for b in self.orbits().blocks)

    def is_regular(self) -> bool:
        return self.is_transitive() and self.order() == self.degree

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i:])

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(g in other for g in self.generators)

    def conjugated(self, pi: Permutation) -> "PermGroup":
        return PermGroup(self.degree, [conjugate(g, pi) for g in self.generators])

    def elements(self, limit: int = 10**6) -> list[Permutation]:
        """All elements in deterministic chain order; guarded by `limit`."""
        if self.order() > limit:
            raise InfeasibleError(f"group order {self.order()} exceeds cap {limit}")
        assert self._levels is not None
        # every element factors uniquely as u_deepest * ... * u_0 with
        # u_i running over the level-i transversal
        out = [Permutation.identity(self.degree)]
        for lv in reversed(self._levels):
            transversal = [lv.orbit[pt] for pt in sorted(lv.orbit)]
            out = [g * u for g in out for u in transversal]
        return out

    def __repr__(self) -> str:
        gens = ", ".join(g.cycle_string() for g in self.generators) or "()"
        return f"PermGroup(degree={self.degree}, <{gens}>)"


def closure_elements(degree: int, gens: Sequence[Permutation], cap: int = 10**6) -> list[Permutation]:
    """Brute-force closure of a generator list; independent of the chain."""
    ident = Permutation.identity(degree)
    seen = {ident.images: ident}
    queue = [ident]
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        for g in gens:
            y = x * g
            if y.images not in seen:
                if len(seen) >= cap:
                    raise InfeasibleError(f"closure exceeds cap {cap}")
                seen[y.images] = y
                queue.append(y)
    return list(seen.values())


def _find_isomorphisms_regular(A: PermGroup, B: PermGroup, first_only: bool):
    """Abstract isomorphisms between two regular permutation groups.

    Returns a list of dicts mapping elements of A to elements of B.
    Works via the groups' multiplication structure on their elements.
    """
    from . import groups as _groups

    GA = _groups.FiniteGroup.from_regular_perm_group(A)
    GB = _groups.FiniteGroup.from_regular_perm_group(B)
    isos = _groups.isomorphisms(GA, GB, first_only=first_only)
    out = []
    for phi in isos:
        out.append({GA.perms[i]: GB.perms[phi[i]] for i in range(GA.order)})
    return out


def are_conjugate_subgroups(
    ambient: PermGroup,
    A: PermGroup,
    B: PermGroup,
    *,
    element_cap: int = 2 * 10**6,
) -> Optional[Permutation]:
    """A witness g in `ambient` with A^g = B, or None if there is none.

    Containment of A and B in the ambient group is checked.  For regular
    A and B the search runs over (abstract isomorphism, base-point image)
    pairs, each of which pins down the unique candidate conjugator; in
    general the ambient group is enumerated, which requires its order to
    stay below `element_cap`.
    """
    if not (A.is_subgroup_of(ambient) and B.is_subgroup_of(ambient)):
        raise ValueError("A and B must be subgroups of the ambient group")
    degree = ambient.degree
    if A.order() != B.order():
        return None
    if A.order() == B.order() and all(g in B for g in A.generators):
        return Permutation.identity(degree)

    elems_a = sorted(g.cycle_type() for g in A.elements())
    elems_b = sorted(g.cycle_type() for g in B.elements())
    if elems_a != elems_b:
        return None

    if A.is_regular() and B.is_regular():
        for phi in _find_isomorphisms_regular(A, B, first_only=False):
            cand = _conjugator_from_isomorphism(A, phi, degree)
            for g in cand:
                if g in ambient and _conjugates_onto(A, B, g):
                    return g
        return None

    if ambient.order() > element_cap:
        raise InfeasibleError(
            f"ambient order {ambient.order()} exceeds enumeration cap; "
            "general-subgroup conjugacy needs an enumerable ambient group"
        )
    b_elements = {g.images for g in B.elements()}
    a_gens = A.generators
    for g in ambient.elements(limit=element_cap):
        if all(conjugate(x, g).images in b_elements for x in a_gens):
            return g
    return None


def _conjugator_from_isomorphism(A: PermGroup, phi, degree: int):
    """Candidate conjugators: one per image of the base point 0.

    For regular A each bijection g with x^g = phi(x) for all x in A is
    determined by the image of a single point.
    """
    elems = A.elements()
    point_to_elem = {}
    for x in elems:
        point_to_elem[x.images[0]] = x
    if len(point_to_elem) != degree:
        return
    for q in range(degree):
        images = [0] * degree
        ok = True
        for pt in range(degree):
            x = point_to_elem.get(pt)
            if x is None:
                ok = False
                break
            images[pt] = phi[x].images[q]
        if not ok:
            continue
        if sorted(images) == list(range(degree)):
            yield Permutation(images, check=False)


def _conjugates_onto(A: PermGroup, B: PermGroup, g: Permutation) -> bool:
    return all(conjugate(x, g) in B for x in A.generators)
