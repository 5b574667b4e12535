"""Exact verification of the structural identities of F_pG on a given group.

Every check returns a dict mapping a readable statement to a boolean.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .decomp import elementary_decomposition, elementary_ideal, power_structure_commutes
from .groups import Group, SubgroupSet, closure_mask
from .invariants import algebra_side_crosscheck
from .modalg import GroupAlgebra, SeedEnumerationTooLarge, jennings_bound
from .pgroup import (
    center,
    commutator_of,
    commutator_subgroup,
    conjugacy_classes,
    direct_decompositions,
    frattini,
    is_dihedral,
    jennings_series_recursive,
    maximal_subgroups_intersection,
    mho_n,
    mho_star_n,
    omega_n,
    omega_star_n,
    socle,
    subgroups_containing,
)


def _join(G: Group, *subs: SubgroupSet) -> SubgroupSet:
    mask = 1
    for H in subs:
        mask = closure_mask(G, H.elements, mask)
    return SubgroupSet(G, mask)


def check_power_sums(A: GroupAlgebra, rng: np.random.Generator, trials: int = 200,
                exponents=(1, 2)) -> dict[str, bool]:
    """(x + y)^(p^n) - x^(p^n) - y^(p^n) lies in gamma(FG) for random x, y."""
    gF = A.commutator_subspace()
    out = {}
    for n in exponents:
        q = A.p**n
        ok = True
        for _ in range(trials):
            x, y = A.random_element(rng), A.random_element(rng)
            d = (A.power((x + y) % A.p, q) - A.power(x, q) - A.power(y, q)) % A.p
            if not gF.contains(d):
                ok = False
                break
        out[f"(x+y)^(p^{n}) = x^(p^{n}) + y^(p^{n}) mod gamma(FG), {trials} trials"] = ok
    return out


def check_center_ideals(A: GroupAlgebra) -> dict[str, bool]:
    G = A.group
    cc = conjugacy_classes(G)
    Z = center(G)
    gF = A.commutator_subspace()
    ZF = A.center_basis()
    FZ = A.central_group_span()
    nc = A.noncentral_class_sums()
    meet = ZF & gF
    out = {
        "gamma(FG) from class differences = span of gh - hg": gF == A.commutator_subspace_pairs(),
        "(i) gamma(FG) <= Delta^2": gF <= A.delta_power(2),
        "(ii) class sums span Z(FG)": ZF == A.center_by_commutation() and ZF.dim == len(cc),
        "(ii) Z(FG) = FZ(G) + noncentral class sums, direct": (FZ + nc) == ZF and FZ.dim + nc.dim == ZF.dim,
        "(iii) Z(FG) cap gamma(FG) = noncentral class sums": meet == nc and meet.dim == len(cc) - Z.order,
    }
    ideal = all(meet.contains(A.multiply(x, c)) for x in meet.matrix for c in A.class_sums())
    out["(iv) Z(FG) cap gamma(FG) is an ideal of Z(FG)"] = ideal
    out["(v) Z(FG) = FZ(G) + (Z(FG) cap gamma(FG)), direct"] = (FZ + meet) == ZF and FZ.dim + meet.dim == ZF.dim
    return out


def check_product_filtration(A: GroupAlgebra, K: SubgroupSet, L: SubgroupSet) -> dict[str, bool]:
    """For G = K x L: Delta^n = Delta(FK) Delta^(n-1) + Delta(FL)^n, direct."""
    out = {}
    c = A.nilpotency_index()
    for n in range(1, c + 1):
        X = A.relative_product(K, A.delta_power(n - 1))
        Y = A.subalgebra_delta_power(L, n)
        D = A.delta_power(n)
        out[f"Delta^{n} = Delta(FK)Delta^{n - 1} + Delta(FL)^{n}, |K|={K.order}, |L|={L.order}"] = (
            (X + Y) == D and X.dim + Y.dim == D.dim)
    return out


def check_socle_ideal(A: GroupAlgebra, enumerate_limit: int = 2**16) -> dict[str, bool]:
    G = A.group
    D2 = A.delta_power(2)
    om = A.omega_n_center_subspace(1)
    out = {
        "(i) Delta(F Frat)FG <= Delta^2": A.relative_augmentation(frattini(G)) <= D2,
        "(ii) Delta(F Soc)FG + Delta^2 = Omega_1(Z(FG)) + Delta^2":
            (A.relative_augmentation(socle(G)) + D2) == (om + D2),
    }
    try:
        out["Omega_1(Z(FG)) by enumeration agrees"] = om == A.omega_n_subspace_enumerated(
            A.center_basis(), 1, limit=enumerate_limit)
    except SeedEnumerationTooLarge:
        pass
    return out


def check_omega_power_ideals(A: GroupAlgebra, max_m: int = 2, max_n: int = 2) -> dict[str, bool]:
    """Ideal generated by gamma(FG) and mho_m(Omega_n(Z(FG))) is Delta(F gamma mho_m(Omega*_n))FG."""
    G = A.group
    gamma = commutator_subgroup(G)
    gF = A.commutator_subspace()
    out = {}
    for n in range(max_n + 1):
        om = A.omega_n_center_subspace(n)
        for m in range(max_m + 1):
            I = A.smallest_ideal_containing(gF, A.power_image(om, m))
            K = _join(G, gamma, mho_n(G, m, omega_star_n(G, n)))
            out[f"Omega*-power ideal m={m} n={n}"] = I == A.relative_augmentation(K)
    return out


def check_mho_star_ideal(A: GroupAlgebra, max_n: int = 2, enumerate_limit: int = 2**15) -> dict[str, bool]:
    """Ideal generated by gamma(FG) and mho_n(Delta) is Delta(F mho*_n)FG.

    The power set mho_n(Delta) is replaced by the powers of a basis, which
    spans the same space modulo gamma(FG); when Delta is small the full
    enumeration is compared as well.
    """
    G = A.group
    gF = A.commutator_subspace()
    D = A.delta_power(1)
    out = {}
    for n in range(max_n + 1):
        target = A.relative_augmentation(mho_star_n(G, n))
        I = A.smallest_ideal_containing(gF, A.power_image(D, n, method="basis-mod-commutators"))
        out[f"mho* ideal n={n}"] = I == target
        if A.p ** D.dim <= enumerate_limit:
            J = A.smallest_ideal_containing(gF, A.power_image(D, n, method="enumerate", limit=enumerate_limit))
            out[f"mho* ideal n={n}, enumerated powers"] = J == target
    return out


def check_abelian_powers(A: GroupAlgebra, max_m: int = 2, max_n: int = 2, enumerate_limit: int = 2**16) -> dict[str, bool]:
    """Abelian G: Delta(F mho_m(Omega_n(G)))FG = span{x^(p^m) : x in Omega_n(FG)} FG."""
    G = A.group
    if not G.is_abelian():
        return {}
    out = {}
    for n in range(max_n + 1):
        om = A.omega_n_center_subspace(n)
        for m in range(max_m + 1):
            lhs = A.relative_augmentation(mho_n(G, m, omega_n(G, n)))
            rhs = A.smallest_ideal_containing(A.power_image(om, m, method="basis"))
            out[f"powers m={m} n={n}"] = lhs == rhs
            if A.p ** om.dim <= enumerate_limit:
                enum = A.smallest_ideal_containing(A.power_image(om, m, method="enumerate", limit=enumerate_limit))
                out[f"powers m={m} n={n}, enumerated"] = enum == lhs
    return out


def check_center_relative(A: GroupAlgebra) -> dict[str, bool]:
    """Z(FG) cap Delta(FN)FG = Delta(F[Z cap N])FZ(G) + (Z(FG) cap gamma(FG)) for all N >= gamma."""
    G = A.group
    Z = center(G)
    ZF = A.center_basis()
    meet = ZF & A.commutator_subspace()
    out = {}
    for N in subgroups_containing(G, commutator_subgroup(G)):
        ZN = (Z & N).elements
        first = A.span([A.multiply(A.g_minus_1(l), A.element(z)) for l in ZN if l for z in Z.elements])
        lhs = ZF & A.relative_augmentation(N)
        out[f"Z(FG) cap Delta(FN)FG, |N|={N.order} members={N.members:#x}"] = (
            lhs == first + meet and (first & meet).is_zero())
    return out


def check_elementary(A: GroupAlgebra, seed: int | None = None) -> dict[str, bool]:
    """Decomposition conditions, power structure and the splitting of FG along Delta(FT)FG."""
    G = A.group
    dec = elementary_decomposition(G, seed=seed)
    out = {f"decomposition: {k}": v for k, v in dec.witnesses.items()}
    out["power structure commutes"] = power_structure_commutes(G, dec)
    out.update({f"elementary ideal: {k}": v for k, v in elementary_ideal(G, dec, A).checks.items()})
    return out


def check_jennings(A: GroupAlgebra) -> dict[str, bool]:
    G = A.group
    D = A.jennings_series()
    R = jennings_series_recursive(G)
    out = {
        "membership series = recursive series": [x.members for x in D] == [x.members for x in R],
        "D_1 = G": D[0] == G.everything(),
        "D_2 = Frat": len(D) < 2 or D[1] == frattini(G),
        "nilpotency index = 1 + (p-1) sum n d_n": A.nilpotency_index() == jennings_bound(A.jennings_ranks(), A.p),
    }
    if A.p == 2 and len(D) > 2:
        F = frattini(G)
        out["D_3 = [Frat, G] mho_1(Frat)"] = D[2] == _join(G, commutator_of(G, F, G.everything()), mho_n(G, 1, F))
    # g_i - 1 independent modulo Delta^(n+1) for a basis g_i of D_n/D_(n+1)
    ok = True
    for n in range(1, len(D)):
        upper = D[n].members
        basis = []
        for g in D[n - 1].elements:
            if not upper >> g & 1:
                basis.append(g)
                upper = closure_mask(G, [g], upper)
        work = A.delta_power(n + 1).copy()
        if work.extend([A.g_minus_1(g) for g in basis]) != len(basis):
            ok = False
    out["g_i - 1 independent in Delta^n/Delta^(n+1)"] = ok
    return out


def check_pgroup(G: Group, brute_force_max: int = 64) -> dict[str, bool]:
    S, Z = socle(G), center(G)
    commute = G.commute_masks()
    out = {
        "Soc elementary abelian and central": all(
            G._orders[s] in (1, G.prime) and commute[s] == G.full_mask for s in S.elements),
        "Z cyclic iff |Soc| = p": (Z.order == 1 or any(G._orders[z] == Z.order for z in Z.elements))
                                  == (S.order == G.prime),
    }
    if G.order <= brute_force_max:
        out["Frat = intersection of maximal subgroups"] = frattini(G) == maximal_subgroups_intersection(G)
    if G.prime == 2 and 1 < G.order <= brute_force_max:
        from .groups import quotient_group

        Q, _ = quotient_group(G, Z)
        gZ = _join(G, commutator_subgroup(G), Z)
        out["G/Z dihedral iff |G : gamma Z| = 4"] = is_dihedral(Q) == (G.order // gZ.order == 4)
    return out


def check_crosscheck(A: GroupAlgebra, max_n: int = 2, max_m: int = 2) -> dict[str, bool]:
    return {f"algebra-side invariants n={n} m={m}": algebra_side_crosscheck(A.group, n, m, A)
            for n in range(max_n + 1) for m in range(max_m + 1)}


@dataclass
class SuiteReport:
    name: str
    results: dict[str, dict[str, bool]] = field(default_factory=dict)

    @property
    def failures(self) -> list[str]:
        return [f"{sec}: {k}" for sec, d in self.results.items() for k, v in d.items() if not v]

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def count(self) -> int:
        return sum(len(d) for d in self.results.values())

    def lines(self) -> list[str]:
        out = []
        for sec, d in self.results.items():
            good = sum(d.values())
            if not d:
                out.append(f"{sec:14s} not applicable")
                continue
            out.append(f"{sec:14s} {good}/{len(d)} {'ok' if good == len(d) else 'FAILED'}")
        for f in self.failures:
            out.append(f"  failed: {f}")
        return out


def run_all(G: Group, seed: int = 0, trials: int = 200, *, zn_max: int = 32,
            sections: tuple[str, ...] | None = None) -> SuiteReport:
    """Run every applicable check on G; the Z cap N identities only up to order ``zn_max``."""
    A = GroupAlgebra(G)
    rng = np.random.default_rng(seed)
    report = SuiteReport(G.name)
    todo = {
        "group": lambda: check_pgroup(G),
        "power sums": lambda: check_power_sums(A, rng, trials),
        "center": lambda: check_center_ideals(A),
        "filtration": lambda: _filtration_all(A),
        "socle": lambda: check_socle_ideal(A),
        "Omega* powers": lambda: check_omega_power_ideals(A),
        "mho*": lambda: check_mho_star_ideal(A),
        "abelian powers": lambda: check_abelian_powers(A),
        "Z cap N": lambda: check_center_relative(A) if G.order <= zn_max else {},
        "elementary": lambda: check_elementary(A),
        "Jennings": lambda: check_jennings(A),
        "crosscheck": lambda: check_crosscheck(A, max_n=1, max_m=1),
    }
    for key, fn in todo.items():
        if sections is None or key in sections:
            report.results[key] = fn()
    return report


def _filtration_all(A: GroupAlgebra) -> dict[str, bool]:
    out = {}
    for K, L in direct_decompositions(A.group):
        out.update(check_product_filtration(A, K, L))
    return out


__all__ = [
    "SuiteReport", "check_mho_star_ideal", "check_omega_power_ideals", "check_socle_ideal", "check_center_ideals", "check_crosscheck",
    "check_power_sums", "check_elementary", "check_product_filtration", "check_jennings", "check_pgroup", "check_abelian_powers",
    "check_center_relative", "run_all",
]
