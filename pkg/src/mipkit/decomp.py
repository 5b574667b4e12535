"""Elementary decompositions G = T x U and the ideal that splits off FT."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .catalog import Annotations
from .groups import Group, SubgroupSet, closure_mask
from .invariants import Verdict, compare, fingerprint
from .linalg import inverse
from .modalg import GroupAlgebra
from .pgroup import frattini, socle


@dataclass
class ElementaryDecomposition:
    group: Group
    T: SubgroupSet
    U: SubgroupSet
    witnesses: dict[str, bool] = field(default_factory=dict)

    @property
    def rank(self) -> int:
        """Rank of the elementary abelian factor T."""
        return self.group.log_p(self.T.order)

    @property
    def ok(self) -> bool:
        return all(self.witnesses.values())

    def factor(self, which: str = "U") -> Group:
        H = getattr(self, which)
        return H.as_group(name=f"{which}({self.group.name})" if self.group.name else which)


def _embedded(G: Group, H: Group, sub: SubgroupSet) -> SubgroupSet:
    """Image in G of a subgroup of H = X.as_group()."""
    emb = H.data["embedding"]
    return SubgroupSet(G, sum(1 << emb[x] for x in sub.elements))


def _greedy_complement(G: Group, base: int, pool: list[int]) -> tuple[list[int], int]:
    """Pick elements of ``pool`` outside the growing subgroup generated with ``base``."""
    picked, cur = [], base
    for g in pool:
        if not cur >> g & 1:
            picked.append(g)
            cur = closure_mask(G, [g], cur)
    return picked, cur


def elementary_decomposition(G: Group, seed: int | None = None) -> ElementaryDecomposition:
    """T complements Soc cap Frat in Soc; U/Frat complements Soc.Frat/Frat in G/Frat.

    Elements are tried in index order, or in a shuffled order when ``seed`` is given.
    """
    S, F = socle(G), frattini(G)
    SF = S & F
    order = list(range(1, G.order))
    if seed is not None:
        np.random.default_rng(seed).shuffle(order)
    t_gens, _ = _greedy_complement(G, SF.members, [g for g in order if g in S])
    T = SubgroupSet(G, closure_mask(G, t_gens))
    SFrat = closure_mask(G, S.elements, F.members)
    u_gens, _ = _greedy_complement(G, SFrat, order)
    U = SubgroupSet(G, closure_mask(G, u_gens, F.members))
    dec = ElementaryDecomposition(G, T, U)
    dec.witnesses = decomposition_witnesses(dec)
    if not dec.ok:
        bad = [k for k, v in dec.witnesses.items() if not v]
        raise AssertionError(f"elementary decomposition failed: {bad}")
    return dec


def decomposition_witnesses(dec: ElementaryDecomposition) -> dict[str, bool]:
    G, T, U = dec.group, dec.T, dec.U
    S, F = socle(G), frattini(G)
    idx = S.order // (S & F).order
    commute = G.commute_masks()
    Ug = U.as_group()
    out = {
        "T elementary abelian": all(G._orders[t] in (1, G.prime) for t in T.elements),
        "T central": all(commute[t] == G.full_mask for t in T.elements),
        "U normal": U.is_normal(),
        "T cap U = 1": (T & U).is_trivial(),
        "TU = G": (T * U).order == G.order,
        "T cap Frat = 1": (T & F).is_trivial(),
        "|T| = |Soc : Soc cap Frat|": T.order == idx,
        "Soc U = G": (S * U).order == G.order,
        "|U| = |G| / |Soc : Soc cap Frat|": U.order * idx == G.order,
        "Frat(G) = Frat(U)": _embedded(G, Ug, frattini(Ug)) == F,
    }
    socU = _embedded(G, Ug, socle(Ug))
    out["Soc(G) = T x Soc(U)"] = (T & socU).is_trivial() and (T * socU) == S
    return out


def _projection(dec: ElementaryDecomposition) -> list[int]:
    """g = t u with t in T, u in U; returns u for each g."""
    G = dec.group
    out = [-1] * G.order
    for g in range(G.order):
        for t in dec.T.elements:
            u = G.m(G.invert(t), g)
            if u in dec.U:
                out[g] = u
                break
    return out


def power_structure_commutes(G: Group, dec: ElementaryDecomposition) -> bool:
    """The maps G/Soc(G) -> U/Soc(U) and Frat(G) -> Frat(U) intertwine the p-th power maps."""
    p = G.prime
    proj = _projection(dec)
    Ug = dec.U.as_group()
    socU = _embedded(G, Ug, socle(Ug))
    S = socle(G)
    F = frattini(G)
    # cosets of Soc(G) map to cosets of Soc(U), bijectively
    images: dict[int, int] = {}
    for g in range(G.order):
        key = min(G.m(g, s) for s in S.elements)
        img = min(G.m(proj[g], s) for s in socU.elements)
        if images.setdefault(key, img) != img:
            return False
    if len(set(images.values())) != len(images) or len(images) * socU.order != dec.U.order:
        return False
    # Frat(G) -> Frat(U) is the identity on elements, and g^p for g in G lands in Frat
    for g in range(G.order):
        gp, up = G.power(g, p), G.power(proj[g], p)
        if gp not in F or up not in F or proj[gp] != up:
            return False
    return all(proj[f] == f for f in F.elements)


@dataclass
class ElementaryIdeal:
    ideal: object
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def elementary_ideal(G: Group, dec: ElementaryDecomposition, A: GroupAlgebra | None = None) -> ElementaryIdeal:
    """I = Delta(FT)FG with its codimension, filtration and splitting FG = I + FU checked."""
    A = A or GroupAlgebra(G)
    S, F = socle(G), frattini(G)
    I = A.relative_augmentation(dec.T)
    checks: dict[str, bool] = {}
    checks["I is an ideal"] = A.is_ideal(I)
    checks["codim I = |G|/|Soc : Soc cap Frat|"] = I.codim * S.order == G.order * (S & F).order
    c = A.nilpotency_index()
    for n in range(1, c + 1):
        lhs = A.relative_product(dec.T, A.delta_power(n - 1)) + A.delta_power(n + 1)
        rhs = A.relative_product(S, A.delta_power(n - 1)) + A.delta_power(n + 1)
        checks[f"I Delta^{n - 1} + Delta^{n + 1} = Delta(F Soc) Delta^{n - 1} + Delta^{n + 1}"] = lhs == rhs
    for n in range(1, c + 1):
        IDn = A.relative_product(dec.T, A.delta_power(n - 1))
        checks[f"Delta^{n} = I Delta^{n - 1} + Delta(FU)^{n}"] = (
            A.delta_power(n) == IDn + A.subalgebra_delta_power(dec.U, n))
    FU = A.group_span(dec.U.elements)
    checks["FG = I + FU"] = (I + FU).is_full() and I.dim + FU.dim == A.dim
    checks["FG/I ~ FU by structure constants"] = checks["FG = I + FU"] and _split_is_homomorphism(A, I, dec)
    return ElementaryIdeal(I, checks)


def _split_is_homomorphism(A: GroupAlgebra, I, dec: ElementaryDecomposition) -> bool:
    """Projection FG -> FU along I respects the multiplication of FU on all pairs of elements."""
    G = dec.group
    uels = dec.U.elements
    basis = np.vstack([I.matrix, np.eye(A.dim, dtype=np.int64)[uels]])
    coords = inverse(basis, A.p)[:, I.dim:]  # row g: coordinates of g over U elements
    Ug = dec.U.as_group()
    B = GroupAlgebra(Ug, A.p)
    for g in range(G.order):
        for h in range(G.order):
            lhs = coords[G.m(g, h)]
            rhs = B.multiply(coords[g], coords[h])
            if not np.array_equal(lhs, rhs):
                return False
    return True


@dataclass
class ReductionVerdict:
    step: str
    verdict: Verdict

    def __str__(self) -> str:
        return f"{self.step}; {self.verdict}"

    def describe(self) -> str:
        return f"{self.step}; {self.verdict.describe()}"

    @property
    def distinguished(self) -> bool:
        return self.verdict.distinguished


def reduce_and_compare(G: Group, H: Group, annotations: Annotations | None = None) -> ReductionVerdict:
    """Split off elementary abelian direct factors, then compare the remaining factors."""
    dG, dH = elementary_decomposition(G), elementary_decomposition(H)
    step = f"reduced |G| = {G.order} to |U| = {dG.U.order} (rank T = {dG.rank}), " \
           f"|H| = {H.order} to |V| = {dH.U.order} (rank T = {dH.rank})"
    if dG.rank != dH.rank:
        return ReductionVerdict(step, Verdict(True, "rank of elementary abelian factor", dG.rank, dH.rank))
    U = G if dG.T.is_trivial() else dG.factor("U")
    V = H if dH.T.is_trivial() else dH.factor("U")
    fU = fingerprint(U, annotations)
    fV = fingerprint(V, annotations)
    return ReductionVerdict(step, compare(fU, fV))


__all__ = [
    "ElementaryDecomposition", "ElementaryIdeal", "ReductionVerdict", "decomposition_witnesses",
    "elementary_decomposition", "elementary_ideal", "power_structure_commutes", "reduce_and_compare",
]
