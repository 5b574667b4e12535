"""Central extensions of dihedral 2-groups by cyclic groups: the D, Q and S families.

Each group is generated by a, b, c with c central of order 2^m and

    a^2 = c^alpha,  b^2 = c^beta,  (ab)^(2^(n-1)) = c^gamma.

Elements are kept in the normal form r^i a^j c^k with r = ab.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .groups import (
    ORDER_CAP,
    Group,
    OrderCapExceeded,
    ValidationFailed,
    closure_mask,
    extend_homomorphism,
    isomorphic,
)
from .modalg import GroupAlgebra, Omega1Result
from .pgroup import center, is_dihedral, socle

KINDS = ("D", "Q", "S")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    m: int
    n: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.m < 1 or self.n < 2:
            raise ValueError("need m >= 1 and n >= 2")

    @property
    def alpha(self) -> int:
        return 1 if self.kind == "Q" else 0

    @property
    def beta(self) -> int:
        return 0 if self.kind == "D" else 1

    @property
    def gamma(self) -> int:
        extra = {"D": 0, "Q": 2 ** (self.n - 1), "S": 2 ** (self.n - 2)}[self.kind]
        return (2 ** (self.m - 1) + extra) % 2**self.m

    @property
    def order(self) -> int:
        return 2 ** (self.m + self.n)

    @property
    def name(self) -> str:
        return f"{self.kind}_2^({self.m}|{self.n})"


def _normal_form_table(spec: FamilySpec) -> np.ndarray:
    """Multiplication on indices (2i + j) 2^m + k of r^i a^j c^k.

    Uses a r a^-1 = c^(alpha+beta) r^-1, so r^i a . r^i' a^j' c^k' equals
    r^(i-i') c^((alpha+beta) i') a^(1+j') c^k'; then r^N = c^gamma and
    a^2 = c^alpha bring the result back to normal form.
    """
    M, N = 2**spec.m, 2 ** (spec.n - 1)
    idx = np.arange(spec.order)
    k, rest = idx % M, idx // M
    j, i = rest % 2, rest // 2
    I1, J1, K1 = i[:, None], j[:, None], k[:, None]
    I2, J2, K2 = i[None, :], j[None, :], k[None, :]
    s = spec.alpha + spec.beta
    t = np.where(J1 == 1, I1 - I2, I1 + I2)
    kk = K1 + K2 + np.where(J1 == 1, s * I2, 0)
    jj = J1 + J2
    kk = kk + np.where(jj == 2, spec.alpha, 0)
    jj = jj % 2
    # r^t with t outside [0, N): shift by N, each shift worth c^(+-gamma)
    shift = np.floor_divide(t, N)
    t = t - shift * N
    kk = (kk + shift * spec.gamma) % M
    return (((t * 2 + jj) * M) + kk).astype(np.int64)


def build_family(spec: FamilySpec, *, order_cap: int = ORDER_CAP) -> Group:
    """The group of ``spec`` with a, b, c recorded in ``data['named']``; self-validated."""
    if spec.order > order_cap:
        raise OrderCapExceeded(f"order {spec.order} exceeds cap {order_cap}")
    G = Group(_normal_form_table(spec), check=True, name=spec.name)
    M = 2**spec.m
    a, r, c = M, 2 * M, 1
    b = G.m(G.invert(a), r)
    G.data["named"] = {"a": a, "b": b, "c": c}
    G.data["family"] = spec
    validate_family(G, spec)
    return G


def validate_family(G: Group, spec: FamilySpec) -> None:
    named = G.data["named"]
    a, b, c = named["a"], named["b"], named["c"]
    M, N = 2**spec.m, 2 ** (spec.n - 1)
    checks = {
        "order": G.order == spec.order,
        "a^2": G.power(a, 2) == G.power(c, spec.alpha),
        "b^2": G.power(b, 2) == G.power(c, spec.beta),
        "(ab)^N": G.power(G.m(a, b), N) == G.power(c, spec.gamma),
        "c order": G._orders[c] == M,
        "c central": G.comm(a, c) == 0 and G.comm(b, c) == 0,
        "generated": closure_mask(G, [a, b, c]) == G.full_mask,
    }
    Z = center(G)
    checks["Z = <c>"] = Z.members == closure_mask(G, [c])
    from .groups import quotient_group

    Q, _ = quotient_group(G, Z)
    checks["G/Z dihedral of order 2^n"] = Q.order == 2**spec.n and is_dihedral(Q)
    bad = [k for k, ok in checks.items() if not ok]
    if bad:
        raise ValidationFailed(f"{spec.name}: failed {', '.join(bad)}")


# ---------------------------------------------------------------------------


@dataclass
class TrichotomyResult:
    applicable: bool
    m: int | None = None
    n: int | None = None
    kinds: tuple[str, ...] = ()
    reason: str = ""

    def __str__(self) -> str:
        if not self.applicable:
            return f"not applicable: {self.reason}"
        return " / ".join(f"{k}_2^({self.m}|{self.n})" for k in self.kinds)


def trichotomy_check(G: Group) -> TrichotomyResult:
    """Match a 2-group with cyclic centre and dihedral central quotient against D, Q, S."""
    if G.prime != 2 or not G.is_p_group() or G.order < 2:
        return TrichotomyResult(False, reason="not a nontrivial 2-group")
    if socle(G).order != 2:
        return TrichotomyResult(False, reason="centre is not cyclic")
    from .groups import quotient_group

    Z = center(G)
    Q, _ = quotient_group(G, Z)
    if not is_dihedral(Q):
        return TrichotomyResult(False, reason="central quotient is not dihedral")
    m, n = G.log_p(Z.order), G.log_p(Q.order)
    kinds = tuple(k for k in KINDS if isomorphic(G, build_family(FamilySpec(k, m, n))).isomorphic)
    return TrichotomyResult(True, m, n, kinds)


@dataclass
class ExceptionalMap:
    source: Group
    target: Group
    images: dict[str, int]
    table: list[int] | None

    @property
    def is_isomorphism(self) -> bool:
        t = self.table
        return t is not None and -1 not in t and len(set(t)) == len(t) == self.target.order


def exceptional_isomorphism(m: int) -> ExceptionalMap:
    """S_2^(1|2) -> D_2^(1|2) by a -> a, b -> ab, or S_2^(m|2) -> Q_2^(m|2) by a -> a b c^(2^(m-2)-1), b -> b."""
    S = build_family(FamilySpec("S", m, 2))
    if m == 1:
        T = build_family(FamilySpec("D", 1, 2))
        a, b, c = (T.data["named"][x] for x in "abc")
        images = {"a": a, "b": T.m(a, b), "c": c}
    else:
        T = build_family(FamilySpec("Q", m, 2))
        a, b, c = (T.data["named"][x] for x in "abc")
        images = {"a": T.word([a, b, T.power(c, 2 ** (m - 2) - 1)]), "b": b, "c": c}
    gens = [S.data["named"][x] for x in "abc"]
    table = extend_homomorphism(S, gens, [images[x] for x in "abc"], T)
    return ExceptionalMap(S, T, images, table)


# ---------------------------------------------------------------------------


@dataclass
class QSReport:
    m: int
    n: int
    q_result: Omega1Result
    s_result: Omega1Result
    quotient_orders: dict[str, int] = field(default_factory=dict)
    layer_ranks: dict[str, tuple[int, int]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (self.q_result.holds and not self.s_result.holds
                and self.s_result.witness_label == "a-1"
                and all(v == 16 for v in self.quotient_orders.values())
                and all(v == (2, 2) for v in self.layer_ranks.values()))

    def lines(self) -> list[str]:
        out = [f"m = {self.m}, n = {self.n}"]
        out.append(f"Q_2^({self.m}|{self.n}): Omega_1(FG) in Delta^2 = {self.q_result.holds} ({self.q_result.method})")
        out.append(f"S_2^({self.m}|{self.n}): Omega_1(FG) in Delta^2 = {self.s_result.holds}"
                   f" (witness {self.s_result.witness_label}: {self.s_result.method})")
        for k in self.quotient_orders:
            r = self.layer_ranks[k]
            out.append(f"{k}: |G/D_3| = {self.quotient_orders[k]}, ranks of D_1/D_2, D_2/D_3 = {r[0]}, {r[1]}")
        out.append("verdict: " + ("Q and S separated" if self.ok else "FAILED"))
        return out


def qs_distinguisher(m: int, n: int) -> QSReport:
    """Omega_1(FG) in Delta^2 holds for Q_2^(m|n) and fails for S_2^(m|n), witness a - 1."""
    if m <= 1 or n <= 2:
        raise ValueError("the separation needs m > 1 and n > 2")
    results, orders, ranks = {}, {}, {}
    for kind in "QS":
        G = build_family(FamilySpec(kind, m, n))
        A = GroupAlgebra(G)
        results[kind] = A.omega1_in_delta2()
        D = A.jennings_series()
        label = f"{kind}_2^({m}|{n})"
        orders[label] = G.order // D[2].order
        ranks[label] = (G.log_p(D[0].order // D[1].order), G.log_p(D[1].order // D[2].order))
    report = QSReport(m, n, results["Q"], results["S"], orders, ranks)
    if not report.ok:
        raise AssertionError("\n".join(report.lines()))
    return report


__all__ = [
    "ExceptionalMap", "FamilySpec", "KINDS", "QSReport", "TrichotomyResult", "build_family",
    "exceptional_isomorphism", "qs_distinguisher", "trichotomy_check", "validate_family",
]
