"""Abelian invariants of F_pG and the assembled fingerprint of a group."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Any

from .catalog import Annotations
from .groups import AbelianType, Group, NotAbelian, SubgroupSet, closure_mask, mho_mask
from .linalg import Subspace
from .modalg import GroupAlgebra, Inconclusive
from .pgroup import (
    a_n,
    center,
    commutator_subgroup,
    dg,
    frattini,
    jennings_series_recursive,
    k_n,
    mho_n,
    mho_star_n,
    omega_star_n,
    socle,
)


def _join(G: Group, *subs: SubgroupSet) -> SubgroupSet:
    mask = 1
    for H in subs:
        mask = closure_mask(G, H.elements, mask)
    return SubgroupSet(G, mask)


def section_type(G: Group, H: SubgroupSet, N: SubgroupSet) -> AbelianType:
    """Abelian type of H/N for N <= H with H/N abelian.

    Uses mho_k(H/N) = mho_k(H)N/N, so no quotient table is built.
    """
    if N.members & ~H.members:
        raise ValueError("N is not contained in H")
    for x in H.generators():
        for y in H.generators():
            if not G.comm(x, y) in N:
                raise NotAbelian("section is not abelian")
    sizes = []
    k = 0
    while True:
        size = closure_mask(G, N.elements, mho_mask(G, H.members, k)).bit_count() // N.order
        sizes.append(size)
        if size == 1:
            break
        k += 1
    return AbelianType.from_mho_sizes(G.prime, sizes)


def section_invariants(G: Group, n: int) -> tuple[AbelianType, AbelianType, AbelianType, AbelianType]:
    """Types of G/gamma Omega*_n, gamma Omega*_n/gamma, Z cap mho*_n and Z/(Z cap mho*_n)."""
    gamma = commutator_subgroup(G)
    Z = center(G)
    K = _join(G, gamma, omega_star_n(G, n))
    ZM = Z & mho_star_n(G, n)
    return (
        section_type(G, G.everything(), K),
        section_type(G, K, gamma),
        section_type(G, ZM, G.trivial()),
        section_type(G, Z, ZM),
    )


ABELIAN_INVARIANT_NAMES = (
    "G/gamma", "G/gamma.Soc", "G/gamma.Z", "gamma.Soc/gamma", "gamma.Z/gamma", "G/Frat.Soc",
    "Z", "Z^Frat", "Z^gamma", "Z/Z^Frat", "Z/Z^gamma", "Soc^Frat",
)


def abelian_invariants(G: Group) -> dict[str, AbelianType | int]:
    """The twelve abelian sections that are invariants of F_pG, plus |G|/|Soc : Soc cap Frat|."""
    gamma = commutator_subgroup(G)
    Z, S, F = center(G), socle(G), frattini(G)
    one, top = G.trivial(), G.everything()
    gS, gZ = _join(G, gamma, S), _join(G, gamma, Z)
    out: dict[str, AbelianType | int] = dict(zip(ABELIAN_INVARIANT_NAMES, (
        section_type(G, top, gamma),
        section_type(G, top, gS),
        section_type(G, top, gZ),
        section_type(G, gS, gamma),
        section_type(G, gZ, gamma),
        section_type(G, top, _join(G, F, S)),
        section_type(G, Z, one),
        section_type(G, Z & F, one),
        section_type(G, Z & gamma, one),
        section_type(G, Z, Z & F),
        section_type(G, Z, Z & gamma),
        section_type(G, S & F, one),
    )))
    out["|G|/|Soc:Soc^Frat|"] = G.order * (S & F).order // S.order
    return out


# ---------------------------------------------------------------------------
# algebra-side recomputation


def _center_ideal(A: GroupAlgebra, X: Subspace) -> Subspace:
    """Ideal of Z(FG) generated by X (a subspace of Z(FG))."""
    out = A.span()
    C = A.class_sums()
    for x in X.matrix:
        out.extend([A.multiply(x, c) for c in C])
    return out


def _delta_over_center(A: GroupAlgebra, L: SubgroupSet) -> Subspace:
    """Delta(FL)FZ(G) for L <= Z(G)."""
    Z = center(A.group).elements
    rows = [A.multiply(A.g_minus_1(l), A.element(z)) for l in L.elements if l for z in Z]
    return A.span(rows)


def crosscheck_report(G: Group, n: int, m: int, A: GroupAlgebra | None = None) -> dict[str, bool]:
    """Recompute the degree-n invariants through canonical ideals of F_pG.

    Each entry compares an ideal built only from algebra data (commutator
    subspace, centre, p-power images) with the group-side subgroup it is
    supposed to encode.
    """
    A = A or GroupAlgebra(G)
    gamma = commutator_subgroup(G)
    Z = center(G)
    gF = A.commutator_subspace()
    out: dict[str, bool] = {}

    # gamma(G) Omega*_n(G) side
    om = A.omega_n_center_subspace(n)
    K0 = _join(G, gamma, omega_star_n(G, n))
    groupside = section_type(G, K0, gamma).mho_sizes
    gamma_codim = A.smallest_ideal_containing(gF).codim
    out["codim <gamma(FG)> = |G:gamma|"] = gamma_codim == G.order // gamma.order
    sizes = []
    for k in range(max(m, len(groupside) - 1) + 1):
        I = A.smallest_ideal_containing(gF, A.power_image(om, k))
        Kk = _join(G, gamma, mho_n(G, k, omega_star_n(G, n)))
        if k == m:
            out[f"ideal(gamma(FG), mho_{m}(Omega_{n}(Z(FG)))) = Delta(F[gamma mho_{m} Omega*_{n}])FG"] = (
                I == A.relative_augmentation(Kk))
        sizes.append(gamma_codim // I.codim)
    out["mho sizes of gamma.Omega*/gamma"] = tuple(sizes[: len(groupside)]) == groupside

    # quotient G/gamma Omega*_n, through powers of Delta modulo I_0
    I0 = A.smallest_ideal_containing(gF, A.power_image(om, 0))
    top = section_type(G, G.everything(), K0).mho_sizes
    qs = []
    for k in range(len(top)):
        J = A.smallest_ideal_containing(I0, A.power_image(A.delta_power(1), k, method="basis-mod-commutators"))
        qs.append(I0.codim // J.codim)
    out["mho sizes of G/gamma.Omega*"] = tuple(qs) == top

    # mho*_n side and the ideal Theta of Z(FG)
    M = mho_star_n(G, n)
    ideal = A.smallest_ideal_containing(gF, A.power_image(A.delta_power(1), n, method="basis-mod-commutators"))
    out[f"ideal(gamma(FG), mho_{n}(Delta)) = Delta(F mho*_{n})FG"] = ideal == A.relative_augmentation(M)
    ZFG = A.center_basis()
    Zg = ZFG & gF
    ZM = Z & M
    zsizes = section_type(G, ZM, G.trivial()).mho_sizes
    meet = ZFG & A.relative_augmentation(M)
    algebra_sizes = []
    for k in range(max(m, len(zsizes) - 1) + 1):
        theta = _center_ideal(A, A.power_image(meet, k, method="basis").span) + Zg
        claim = _delta_over_center(A, mho_n(G, k, ZM)) + Zg
        if k == m:
            out[f"Theta(FG) = Delta(F mho_{m}(Z cap mho*_{n}))FZ(G) + (Z(FG) cap gamma(FG))"] = theta == claim
        # dim Z(FG)/Theta = |Z : mho_k(Z cap mho*_n)|
        algebra_sizes.append(Z.order // (ZFG.dim - theta.dim))
    out["mho sizes of Z cap mho*"] = tuple(algebra_sizes[: len(zsizes)]) == zsizes
    out["|Z cap mho*| from codim of Theta"] = algebra_sizes[0] == ZM.order
    return out


def algebra_side_crosscheck(G: Group, n: int, m: int, A: GroupAlgebra | None = None) -> bool:
    """True iff every entry of :func:`crosscheck_report` holds."""
    return all(crosscheck_report(G, n, m, A).values())


# ---------------------------------------------------------------------------
# fingerprints


@dataclass
class Fingerprint:
    order: int
    prime: int
    abelian_series: list[tuple[AbelianType, ...]]
    abelian_invariants: dict[str, Any]
    k_seq: list[int]
    a_seq: list[int]
    dg: int
    jennings_ranks: list[int]
    omega1_in_delta2: bool | None
    isotropic_residues: int
    soc_order: int
    soc_cap_frat_order: int
    e_annotation: int | None = None
    e_source: str | None = None
    name: str = ""

    def to_dict(self) -> dict:
        def enc(v):
            if isinstance(v, AbelianType):
                return v.to_json()
            if isinstance(v, (list, tuple)):
                return [enc(x) for x in v]
            if isinstance(v, dict):
                return {k: enc(x) for k, x in v.items()}
            return v

        d = {k: enc(v) for k, v in asdict(self).items()
             if k not in ("abelian_series", "abelian_invariants")}
        d["abelian_series"] = [[t.to_json() for t in row] for row in self.abelian_series]
        d["abelian_invariants"] = {k: enc(v) for k, v in self.abelian_invariants.items()}
        d["omega1_in_delta2"] = {True: "true", False: "false", None: "inconclusive"}[self.omega1_in_delta2]
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "Fingerprint":
        p = d["prime"]

        def at(x):
            return AbelianType.from_cyclic_orders(p, x)

        cor = {k: (at(v) if isinstance(v, list) else v) for k, v in d["abelian_invariants"].items()}
        return cls(
            order=d["order"], prime=p,
            abelian_series=[tuple(at(t) for t in row) for row in d["abelian_series"]],
            abelian_invariants=cor, k_seq=list(d["k_seq"]), a_seq=list(d["a_seq"]), dg=d["dg"],
            jennings_ranks=list(d["jennings_ranks"]),
            omega1_in_delta2={"true": True, "false": False, "inconclusive": None}[d["omega1_in_delta2"]],
            isotropic_residues=d["isotropic_residues"], soc_order=d["soc_order"],
            soc_cap_frat_order=d["soc_cap_frat_order"], e_annotation=d.get("e_annotation"),
            e_source=d.get("e_source"), name=d.get("name", ""),
        )


def fingerprint(G: Group, annotations: Annotations | None = None, *, n_max: int | None = None,
                name: str | None = None) -> Fingerprint:
    """All invariants of the battery; ``n_max`` defaults to log_p |G|."""
    name = G.name if name is None else name
    top = max(G.log_p(), 1)
    n_max = top if n_max is None else n_max
    A = GroupAlgebra(G)
    try:
        om = A.omega1_in_delta2(named={}).holds
    except Inconclusive:
        om = None
    S, F = socle(G), frattini(G)
    e_val = annotations.get(name) if annotations is not None else None
    return Fingerprint(
        order=G.order,
        prime=G.prime,
        abelian_series=[section_invariants(G, n) for n in range(n_max + 1)],
        abelian_invariants=abelian_invariants(G),
        k_seq=[k_n(G, n) for n in range(n_max + 1)],
        a_seq=[a_n(G, n) for n in range(1, top + 1)],
        dg=dg(G),
        jennings_ranks=[G.log_p(a.order // b.order) for a, b in
                        zip(jennings_series_recursive(G), jennings_series_recursive(G)[1:])],
        omega1_in_delta2=om,
        isotropic_residues=len(A.residue_power_map().isotropic),
        soc_order=S.order,
        soc_cap_frat_order=(S & F).order,
        e_annotation=e_val,
        e_source=annotations.source if e_val is not None else None,
        name=name,
    )


@dataclass(frozen=True)
class Verdict:
    distinguished: bool
    field: str | None = None
    left: Any = None
    right: Any = None
    note: str = ""

    def __str__(self) -> str:
        if not self.distinguished:
            return "INDISTINGUISHABLE"
        return f"DISTINGUISHED({self.field})"

    def describe(self) -> str:
        if not self.distinguished:
            return "INDISTINGUISHABLE by this battery"
        text = f"DISTINGUISHED({self.field}): {_show(self.left)} vs {_show(self.right)}"
        return text + (f" [{self.note}]" if self.note else "")


def _show(v) -> str:
    if isinstance(v, (tuple, list)):
        return "(" + ", ".join(_show(x) for x in v) + ")"
    return str(v)


def _stages(f: Fingerprint):
    """(field name, value) pairs in comparison order."""
    yield "order", f.order
    yield "prime", f.prime
    for key, val in f.abelian_invariants.items():
        yield key, val
    yield "dg", f.dg
    yield "|Soc|", f.soc_order
    yield "|Soc^Frat|", f.soc_cap_frat_order
    for i, v in enumerate(f.k_seq):
        yield f"k_{i}", v
    for i, v in enumerate(f.a_seq, 1):
        yield f"a_{i}", v
    items = ("G/gamma.Omega*_{n}", "gamma.Omega*_{n}/gamma", "Z^mho*_{n}", "Z/Z^mho*_{n}")
    for n, row in enumerate(f.abelian_series):
        for label, t in zip(items, row):
            yield label.format(n=n), t
    for i, r in enumerate(f.jennings_ranks, 1):
        yield f"rank D_{i}/D_{i + 1}", r
    yield "isotropic residues", f.isotropic_residues
    yield "Omega_1 in Delta^2", f.omega1_in_delta2


def compare(f1: Fingerprint, f2: Fingerprint) -> Verdict:
    """First invariant (in a fixed order) on which the fingerprints differ."""
    s1, s2 = dict(_stages(f1)), dict(_stages(f2))
    keys = list(s1) + [k for k in s2 if k not in s1]
    for key in keys:
        a, b = s1.get(key), s2.get(key)
        if a is None or b is None:
            # e.g. one sequence is longer; only meaningful if the other has a nonzero value
            if (a or b) and key != "Omega_1 in Delta^2":
                return Verdict(True, key, a, b)
            continue
        if a != b:
            return Verdict(True, key, a, b)
    if f1.e_annotation is not None and f2.e_annotation is not None and f1.e_annotation != f2.e_annotation:
        src = f1.e_source if f1.e_source == f2.e_source else f"{f1.e_source}; {f2.e_source}"
        return Verdict(True, "e", f1.e_annotation, f2.e_annotation, note=f"imported: {src}")
    return Verdict(False)


__all__ = [
    "ABELIAN_INVARIANT_NAMES", "Fingerprint", "Verdict", "algebra_side_crosscheck", "compare", "abelian_invariants",
    "crosscheck_report", "fingerprint", "section_type", "section_invariants",
]
