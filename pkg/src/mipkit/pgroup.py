"""Subgroup machinery for finite p-groups."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .groups import (
    Group,
    NotPGroup,
    SubgroupSet,
    bits,
    closure_mask,
    extend_homomorphism,
    mho_mask,
    quotient_group,
)


def _sub(G: Group, mask: int) -> SubgroupSet:
    return SubgroupSet(G, mask)


def _cached(G: Group, key, fn):
    if key not in G._cache:
        G._cache[key] = fn()
    return G._cache[key]


def center(G: Group) -> SubgroupSet:
    commute = G.commute_masks()
    full = G.full_mask
    return _cached(G, "center", lambda: _sub(G, sum(1 << g for g in range(G.order) if commute[g] == full)))


def centralizer(G: Group, H: SubgroupSet) -> SubgroupSet:
    commute = G.commute_masks()
    mask = G.full_mask
    for h in H.generators():
        mask &= commute[h]
    return _sub(G, mask)


def commutator_of(G: Group, H: SubgroupSet, K: SubgroupSet) -> SubgroupSet:
    """[H, K] as the normal closure of commutators of generators; valid for normal H, K."""
    seeds = {G.comm(h, k) for h in H.elements for k in K.generators()}
    return normal_closure(G, seeds)


def normal_closure(G: Group, seeds: Iterable[int]) -> SubgroupSet:
    mask = closure_mask(G, list(seeds))
    while True:
        conj = {G.conj(g, x) for g in G.generators() for x in bits(mask)}
        new = closure_mask(G, conj, mask)
        if new == mask:
            return _sub(G, mask)
        mask = new


def commutator_subgroup(G: Group) -> SubgroupSet:
    def build():
        gens = G.generators()
        seeds = {G.comm(g, h) for g in range(G.order) for h in gens}
        return normal_closure(G, seeds)
    return _cached(G, "gamma", build)


def lower_central_series(G: Group) -> list[SubgroupSet]:
    series = [G.everything()]
    full = series[0]
    while True:
        nxt = commutator_of(G, series[-1], full)
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt.is_trivial():
            return series


def nilpotency_class(G: Group) -> int:
    series = lower_central_series(G)
    if not series[-1].is_trivial():
        raise NotPGroup("group is not nilpotent")
    return len(series) - 1


def omega_n(G: Group, n: int, H: SubgroupSet | None = None) -> SubgroupSet:
    """Subgroup generated by the elements g (of H, default G) with g^(p^n) = 1."""
    mask = G.full_mask if H is None else H.members
    q = G.prime ** n
    seeds = [g for g in bits(mask) if q % G._orders[g] == 0]
    return _sub(G, closure_mask(G, seeds))


def mho_n(G: Group, n: int, H: SubgroupSet | None = None) -> SubgroupSet:
    """Subgroup generated by the p^n-th powers of elements of H (default G)."""
    mask = G.full_mask if H is None else H.members
    return _sub(G, mho_mask(G, mask, n))


def mho_star_n(G: Group, n: int) -> SubgroupSet:
    """The product of the p^n-th power subgroup with the commutator subgroup."""
    def build():
        gamma = commutator_subgroup(G)
        return _sub(G, closure_mask(G, gamma.elements, mho_n(G, n).members))
    return _cached(G, ("mho*", n), build)


def omega_star_n(G: Group, n: int) -> SubgroupSet:
    return _cached(G, ("omega*", n), lambda: omega_n(G, n, center(G)))


def frattini(G: Group) -> SubgroupSet:
    return mho_star_n(G, 1)


def socle(G: Group) -> SubgroupSet:
    return omega_star_n(G, 1)


def dg(G: Group) -> int:
    """Minimal number of generators, log_p |G : Frat(G)|."""
    return G.log_p(frattini(G).index())


def maximal_subgroups_intersection(G: Group) -> SubgroupSet:
    """Intersection of all kernels of homomorphisms G -> C_p, found by brute force.

    For a p-group this is the intersection of the maximal subgroups.
    """
    from .groups import cyclic_group

    p = G.prime
    Cp = cyclic_group(p)
    gens = G.generators()
    mask = G.full_mask
    for images in itertools.product(range(p), repeat=len(gens)):
        if not any(images):
            continue
        phi = extend_homomorphism(G, gens, list(images), Cp)
        if phi is None:
            continue
        kernel = sum(1 << g for g in range(G.order) if phi[g] == 0)
        mask &= kernel
    return _sub(G, mask)


@dataclass(frozen=True)
class ConjugacyClasses:
    class_of: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def __len__(self) -> int:
        return len(self.classes)


def conjugacy_classes(G: Group) -> ConjugacyClasses:
    """Classes ordered by smallest member; the identity class is first."""
    def build():
        class_of = [-1] * G.order
        classes = []
        gens = G.generators()
        for x in range(G.order):
            if class_of[x] >= 0:
                continue
            k = len(classes)
            orbit = [x]
            class_of[x] = k
            i = 0
            while i < len(orbit):
                y = orbit[i]
                i += 1
                for g in gens:
                    z = G.conj(g, y)
                    if class_of[z] < 0:
                        class_of[z] = k
                        orbit.append(z)
            classes.append(tuple(sorted(orbit)))
        return ConjugacyClasses(tuple(class_of), tuple(classes))
    return _cached(G, "classes", build)


def k_n(G: Group, n: int) -> int:
    """Number of conjugacy classes containing a p^n-th power."""
    cc = conjugacy_classes(G)
    q = G.prime ** n
    return len({cc.class_of[G.power(g, q)] for g in range(G.order)})


@dataclass(frozen=True)
class ElementaryAbelian:
    subgroup: SubgroupSet
    rank: int
    orbit: int


def elementary_abelian_subgroups(G: Group) -> list[int]:
    """Bitsets of all elementary abelian subgroups, by extension with commuting order-p elements."""
    def build():
        p = G.prime
        commute = G.commute_masks()
        order_p = [g for g in range(1, G.order) if G._orders[g] == p]
        found = {1}
        layer = [1]
        while layer:
            nxt = []
            for E in layer:
                cent = G.full_mask
                for e in bits(E):
                    cent &= commute[e]
                for x in order_p:
                    if E >> x & 1 or not cent >> x & 1:
                        continue
                    F = closure_mask(G, [x], E)
                    if F not in found:
                        found.add(F)
                        nxt.append(F)
            layer = nxt
        return sorted(found, key=lambda m: (m.bit_count(), m))
    return _cached(G, "elem_ab", build)


def maximal_elementary_abelian(G: Group) -> list[ElementaryAbelian]:
    """Maximal elementary abelian subgroups with rank and conjugacy-orbit id."""
    def build():
        allE = elementary_abelian_subgroups(G)
        maximal = [E for E in allE if not any(F != E and E & ~F == 0 for F in allE)]
        maxset = set(maximal)
        orbit_of: dict[int, int] = {}
        gens = G.generators()
        norbits = 0
        for E in maximal:
            if E in orbit_of:
                continue
            orbit_of[E] = norbits
            stack = [E]
            while stack:
                X = stack.pop()
                els = bits(X)
                for g in gens:
                    Y = sum(1 << G.conj(g, x) for x in els)
                    if Y not in orbit_of:
                        assert Y in maxset
                        orbit_of[Y] = norbits
                        stack.append(Y)
            norbits += 1
        out = []
        for E in maximal:
            r = G.log_p(E.bit_count())
            out.append(ElementaryAbelian(_sub(G, E), r, orbit_of[E]))
        return out
    return _cached(G, "max_elem_ab", build)


def a_n(G: Group, n: int) -> int:
    """Number of conjugacy classes of maximal elementary abelian subgroups of rank n."""
    return len({E.orbit for E in maximal_elementary_abelian(G) if E.rank == n})


def normal_subgroups(G: Group) -> list[SubgroupSet]:
    """All normal subgroups, built as joins of normal closures of classes."""
    def build():
        cc = conjugacy_classes(G)
        class_closures = {normal_closure(G, c).members for c in cc.classes}
        found = {1}
        layer = [1]
        while layer:
            nxt = []
            for N in layer:
                for C in class_closures:
                    if C & ~N == 0:
                        continue
                    M = closure_mask(G, bits(C), N)
                    if M not in found:
                        found.add(M)
                        nxt.append(M)
            layer = nxt
        return [_sub(G, m) for m in sorted(found, key=lambda m: (m.bit_count(), m))]
    return _cached(G, "normal", build)


def subgroups_containing(G: Group, N: SubgroupSet) -> list[SubgroupSet]:
    """All subgroups of G containing N (by closure of single-element extensions)."""
    found = {N.members}
    layer = [N.members]
    while layer:
        nxt = []
        for H in layer:
            for g in range(G.order):
                if H >> g & 1:
                    continue
                M = closure_mask(G, [g], H)
                if M not in found:
                    found.add(M)
                    nxt.append(M)
        layer = nxt
    return [_sub(G, m) for m in sorted(found, key=lambda m: (m.bit_count(), m))]


def direct_decompositions(G: Group) -> list[tuple[SubgroupSet, SubgroupSet]]:
    """Pairs (K, L) of nontrivial normal subgroups with G = K x L internally."""
    normals = normal_subgroups(G)
    out = []
    for K in normals:
        for L in normals:
            if K.is_trivial() or L.is_trivial() or K.members & L.members != 1:
                continue
            if K.order * L.order != G.order:
                continue
            # K and L normal with trivial intersection commute elementwise
            out.append((K, L))
    return out


def is_dihedral(G: Group) -> bool:
    """A 2-group generated by two elements of order 2 (the Klein four group included)."""
    if G.prime != 2 or G.order < 4 or not G.is_p_group():
        return False
    inv = [g for g in range(1, G.order) if G._orders[g] == 2]
    full = G.full_mask
    for x, y in itertools.combinations(inv, 2):
        if closure_mask(G, [x, y]) == full:
            return True
    return False


def central_quotient(G: Group) -> Group:
    return quotient_group(G, center(G))[0]


def jennings_series_recursive(G: Group) -> list[SubgroupSet]:
    """D_1 = G, D_n = [D_(n-1), G] * mho_1(D_ceil(n/p)), until trivial."""
    p = G.prime
    full = G.everything()
    series = [full]
    while not series[-1].is_trivial():
        n = len(series) + 1
        comm = commutator_of(G, series[-1], full)
        powers = mho_n(G, 1, series[-(-n // p) - 1])
        series.append(SubgroupSet(G, closure_mask(G, comm.elements, powers.members)))
    return series
