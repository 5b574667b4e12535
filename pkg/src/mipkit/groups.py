"""Finite groups as dense Cayley tables.

Elements are the integers ``0..order-1`` with ``0`` the identity.  Subgroups
are bitsets over element indices (Python ints, bit ``i`` set when element
``i`` is a member).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

ORDER_CAP = 4096
ISO_BUDGET = 10**8


class GroupError(Exception):
    pass


class NotAPermutation(GroupError):
    pass


class OrderCapExceeded(GroupError):
    pass


class NotNormal(GroupError):
    pass


class NotAbelian(GroupError):
    pass


class NotPGroup(GroupError):
    pass


class SearchBudgetExceeded(GroupError):
    pass


class ValidationFailed(GroupError):
    pass


def _smallest_prime_factor(n: int) -> int:
    if n < 2:
        return 1
    for q in range(2, math.isqrt(n) + 1):
        if n % q == 0:
            return q
    return n


def _is_prime_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


class Group:
    """A finite group given by its multiplication table.

    ``mul[g, h]`` is the index of ``g*h``.  ``data`` carries optional
    construction metadata (named elements, embeddings); it never takes part
    in equality or invariants.
    """

    def __init__(self, mul, *, check: bool = True, name: str = "", data: dict | None = None):
        mul = np.asarray(mul, dtype=np.int64)
        n = mul.shape[0]
        if mul.shape != (n, n) or n == 0:
            raise ValidationFailed("multiplication table must be a non-empty square")
        self.mul = mul
        self.mul.setflags(write=False)
        self.order = n
        self.name = name
        self.data = dict(data or {})
        self._rows = mul.tolist()
        if check:
            self._validate()
        row0 = self._rows[0]
        if row0 != list(range(n)) or [r[0] for r in self._rows] != list(range(n)):
            raise ValidationFailed("element 0 is not the identity")
        self.inv = np.argmin(mul, axis=1)
        inv = self.inv.tolist()
        self._inv = inv
        orders = [0] * n
        for g in range(n):
            k, x = 1, g
            while x != 0:
                x = self._rows[x][g]
                k += 1
                if k > n:
                    raise ValidationFailed("element of infinite order")
            orders[g] = k
        self.elem_order = np.array(orders, dtype=np.int64)
        self._orders = orders
        self.prime = _smallest_prime_factor(n)
        self._cache: dict = {}

    def _validate(self) -> None:
        mul, n = self.mul, self.order
        if mul.min() < 0 or mul.max() >= n:
            raise ValidationFailed("table entries out of range")
        target = np.arange(n)
        if not (np.array_equal(np.sort(mul, axis=1), np.broadcast_to(target, (n, n)))
                and np.array_equal(np.sort(mul, axis=0), np.broadcast_to(target[:, None], (n, n)))):
            raise ValidationFailed("table is not a Latin square")
        if not is_associative(mul):
            raise ValidationFailed("table is not associative")

    # -- element arithmetic ---------------------------------------------
    def m(self, g: int, h: int) -> int:
        return self._rows[g][h]

    def invert(self, g: int) -> int:
        return self._inv[g]

    def power(self, g: int, k: int) -> int:
        k %= self._orders[g]
        out, base = 0, g
        rows = self._rows
        while k:
            if k & 1:
                out = rows[out][base]
            base = rows[base][base]
            k >>= 1
        return out

    def conj(self, g: int, x: int) -> int:
        """x^g = g^-1 x g."""
        return self._rows[self._rows[self._inv[g]][x]][g]

    def comm(self, g: int, h: int) -> int:
        """[g, h] = g^-1 h^-1 g h."""
        r = self._rows
        return r[r[r[self._inv[g]][self._inv[h]]][g]][h]

    def word(self, elements: Iterable[int]) -> int:
        out = 0
        for x in elements:
            out = self._rows[out][x]
        return out

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def is_p_group(self) -> bool:
        return self.order == 1 or _is_prime_power(self.order, self.prime)

    def log_p(self, n: int | None = None) -> int:
        n = self.order if n is None else n
        p = self.prime
        k = 0
        while n > 1:
            if n % p:
                raise NotPGroup(f"{n} is not a power of {p}")
            n //= p
            k += 1
        return k

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    def everything(self) -> "SubgroupSet":
        return SubgroupSet(self, self.full_mask)

    def trivial(self) -> "SubgroupSet":
        return SubgroupSet(self, 1)

    def generators(self) -> list[int]:
        """A small generating set, chosen greedily in index order."""
        if "gens" not in self._cache:
            self._cache["gens"] = generating_set(self, self.full_mask)
        return self._cache["gens"]

    def commute_masks(self) -> list[int]:
        """Per element, the bitset of elements commuting with it."""
        if "commute" not in self._cache:
            eq = self.mul == self.mul.T
            weights = [1 << j for j in range(self.order)]
            self._cache["commute"] = [
                sum(weights[j] for j in np.flatnonzero(eq[i]).tolist()) for i in range(self.order)
            ]
        return self._cache["commute"]

    def relabel(self, perm: Sequence[int]) -> "Group":
        """Isomorphic copy where element ``g`` becomes ``perm[g]`` (``perm[0]`` must be 0)."""
        perm = np.asarray(perm, dtype=np.int64)
        if perm[0] != 0:
            raise ValueError("relabelling must fix the identity")
        new = np.empty_like(self.mul)
        new[np.ix_(perm, perm)] = perm[self.mul]
        return Group(new, check=False, name=self.name)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<Group{label} of order {self.order}>"


def is_associative(mul: np.ndarray, sample: int | None = None, seed: int = 0) -> bool:
    """Check (xy)z == x(yz): all triples up to order 128, else ``sample`` random triples."""
    mul = np.asarray(mul)
    n = mul.shape[0]
    if n <= 128 and sample is None:
        for x in range(n):
            # (x*y)*z for all y,z versus x*(y*z)
            left = mul[mul[x]]           # rows indexed by y
            right = mul[x][mul]          # x*(y*z)
            if not np.array_equal(left, right):
                return False
        return True
    rng = np.random.default_rng(seed)
    count = sample or 10**6
    for _ in range(0, count, 100_000):
        x, y, z = rng.integers(0, n, size=(3, 100_000))
        if not np.array_equal(mul[mul[x, y], z], mul[x, mul[y, z]]):
            return False
    return True


# ---------------------------------------------------------------------------
# subgroups


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True, eq=False)
class SubgroupSet:
    parent: Group
    members: int

    def __post_init__(self):
        if not self.members & 1:
            raise ValueError("subgroup must contain the identity")

    @property
    def elements(self) -> list[int]:
        return bits(self.members)

    @property
    def order(self) -> int:
        return self.members.bit_count()

    def __len__(self) -> int:
        return self.order

    def __contains__(self, g: int) -> bool:
        return bool(self.members >> g & 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubgroupSet):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __le__(self, other: "SubgroupSet") -> bool:
        return self.members & ~other.members == 0

    def __lt__(self, other: "SubgroupSet") -> bool:
        return self <= other and self.members != other.members

    def __and__(self, other: "SubgroupSet") -> "SubgroupSet":
        return SubgroupSet(self.parent, self.members & other.members)

    def __mul__(self, other: "SubgroupSet") -> "SubgroupSet":
        """Subgroup generated by both (the product when one normalizes the other)."""
        return subgroup_closure(self.parent, self.elements + other.elements)

    def is_trivial(self) -> bool:
        return self.members == 1

    def is_normal(self) -> bool:
        G = self.parent
        els = self.elements
        for g in G.generators():
            for x in els:
                if not self.members >> G.conj(g, x) & 1:
                    return False
        return True

    def index(self) -> int:
        return self.parent.order // self.order

    def generators(self) -> list[int]:
        return generating_set(self.parent, self.members)

    def as_group(self, name: str = "") -> Group:
        """The subgroup as a standalone Group; ``data['embedding']`` maps back."""
        els = self.elements
        pos = {g: i for i, g in enumerate(els)}
        rows = self.parent._rows
        table = [[pos[rows[a][b]] for b in els] for a in els]
        return Group(table, check=False, name=name, data={"embedding": els})

    def __repr__(self) -> str:
        return f"<SubgroupSet of order {self.order} in {self.parent!r}>"


def closure_mask(G: Group, seeds: Iterable[int], start: int = 1) -> int:
    """Bitset of the subgroup generated by ``start`` (a subgroup bitset) and ``seeds``."""
    rows = G._rows
    mask = start
    gens = [s for s in dict.fromkeys(seeds) if not mask >> s & 1]
    if not gens:
        return mask
    mult = gens + [x for x in bits(start) if x]
    frontier = bits(start)
    i = 0
    while i < len(frontier):
        r = rows[frontier[i]]
        i += 1
        for s in mult:
            y = r[s]
            if not mask >> y & 1:
                mask |= 1 << y
                frontier.append(y)
    return mask


def subgroup_closure(G: Group, seeds: Iterable[int]) -> SubgroupSet:
    """Smallest subgroup of G containing ``seeds``."""
    return SubgroupSet(G, closure_mask(G, list(seeds)))


def generating_set(G: Group, mask: int) -> list[int]:
    """Greedy generating set of the subgroup ``mask``, preferring high element order."""
    target = mask
    members = bits(mask)
    members.sort(key=lambda g: (-G._orders[g], g))
    gens: list[int] = []
    cur = 1
    for g in members:
        if cur == target:
            break
        if not cur >> g & 1:
            gens.append(g)
            cur = closure_mask(G, gens)
    return gens


# ---------------------------------------------------------------------------
# construction


def _dimino(gens: list[tuple], compose, identity, cap: int) -> list[tuple]:
    elements = [identity]
    seen = {identity}
    for i, g in enumerate(gens):
        if g in seen:
            continue
        prev = list(elements)
        reps = [identity, g]
        for x in prev:
            y = compose(x, g)
            elements.append(y)
            seen.add(y)
        pos = 1
        while pos < len(reps):
            r = reps[pos]
            for s in gens[: i + 1]:
                e = compose(r, s)
                if e not in seen:
                    reps.append(e)
                    for x in prev:
                        y = compose(x, e)
                        elements.append(y)
                        seen.add(y)
                    if len(elements) > cap:
                        raise OrderCapExceeded(f"closure exceeds order cap {cap}")
            pos += 1
    return elements


def group_from_permutations(degree: int, generators: Sequence[Sequence[int]], *,
                            order_cap: int = ORDER_CAP, name: str = "") -> Group:
    """Closure of permutation generators given as 1-based image lists.

    Products compose left to right: ``(g*h)(i) = h(g(i))``.
    """
    perms = []
    for img in generators:
        img = tuple(int(x) - 1 for x in img)
        if len(img) != degree or sorted(img) != list(range(degree)):
            raise NotAPermutation(f"not a permutation of 1..{degree}: {[x + 1 for x in img]}")
        perms.append(img)
    identity = tuple(range(degree))

    def compose(g, h):
        return tuple(h[i] for i in g)

    elements = _dimino(perms, compose, identity, order_cap)
    index = {e: i for i, e in enumerate(elements)}
    if degree == 0:
        table = [[0]]
    else:
        arr = np.array(elements, dtype=np.int64)
        # (g*h)[i] = h[g[i]]
        table = []
        for g in elements:
            prod = arr[:, list(g)]
            table.append([index[tuple(row)] for row in prod.tolist()])
        table = np.array(table, dtype=np.int64)
    G = Group(table, check=len(elements) <= 128, name=name,
              data={"perm_generators": [elements.index(p) for p in perms]})
    if len(elements) > 128 and not is_associative(G.mul, sample=10**6):
        raise ValidationFailed("permutation closure produced a non-associative table")
    G.data["permutations"] = elements
    return G


def cyclic_group(n: int) -> Group:
    a = np.arange(n)
    return Group((a[:, None] + a[None, :]) % n, check=False, name=f"C{n}")


def direct_product(A: Group, B: Group, *, order_cap: int = ORDER_CAP) -> Group:
    """Componentwise product; element (a, b) has index ``a*|B| + b``."""
    n = A.order * B.order
    if n > order_cap:
        raise OrderCapExceeded(f"|A||B| = {n} exceeds cap {order_cap}")
    nb = B.order
    mul = (A.mul[:, None, :, None] * nb + B.mul[None, :, None, :]).reshape(n, n)
    emb_a = [a * nb for a in range(A.order)]
    emb_b = list(range(nb))
    name = f"{A.name or 'A'} x {B.name or 'B'}"
    return Group(mul, check=False, name=name, data={"embeddings": (emb_a, emb_b)})


def abelian_group(cyclic_orders: Sequence[int]) -> Group:
    G = cyclic_group(1)
    for k in cyclic_orders:
        G = direct_product(G, cyclic_group(k))
    G.name = " x ".join(f"C{k}" for k in cyclic_orders) or "1"
    return G


def quotient_group(G: Group, N: SubgroupSet) -> tuple[Group, list[int]]:
    """G/N on coset indices (numbered by first appearance), with the projection map."""
    if not N.is_normal():
        raise NotNormal("subgroup is not normal")
    proj = [-1] * G.order
    reps = []
    nels = N.elements
    rows = G._rows
    for g in range(G.order):
        if proj[g] >= 0:
            continue
        k = len(reps)
        reps.append(g)
        for x in nels:
            proj[rows[g][x]] = k
    table = [[proj[rows[a][b]] for b in reps] for a in reps]
    Q = Group(table, check=False, name=f"{G.name}/N" if G.name else "")
    return Q, proj


# ---------------------------------------------------------------------------
# homomorphisms and isomorphism


def extend_homomorphism(A: Group, gens: Sequence[int], images: Sequence[int], B: Group,
                        mask: int | None = None) -> list[int] | None:
    """Extend gens -> images to a homomorphism on <gens>; None if inconsistent.

    Returns a list indexed by elements of A (``-1`` outside <gens>).
    """
    phi = [-1] * A.order
    phi[0] = 0
    ra, rb = A._rows, B._rows
    frontier = [0]
    i = 0
    pairs = list(zip(gens, images))
    while i < len(frontier):
        x = frontier[i]
        i += 1
        fx = phi[x]
        for s, t in pairs:
            y = ra[x][s]
            fy = rb[fx][t]
            if phi[y] < 0:
                phi[y] = fy
                frontier.append(y)
            elif phi[y] != fy:
                return None
    return phi


def _element_labels(G: Group) -> list[tuple]:
    """Isomorphism-invariant element labels, refined through the p-power map."""
    if "labels" in G._cache:
        return G._cache["labels"]
    from .pgroup import conjugacy_classes

    cc = conjugacy_classes(G)
    commute = G.commute_masks()
    orders = G._orders
    p = G.prime
    roots = [0] * G.order
    pw = [G.m(g, g) if p == 2 else G.power(g, p) for g in range(G.order)]
    for g in range(G.order):
        roots[pw[g]] += 1
    # canonical names that do not depend on the table: rebuild as nested tuples
    canon = [
        (orders[g], cc.sizes[cc.class_of[g]], commute[g].bit_count(), roots[g])
        for g in range(G.order)
    ]
    for _ in range(4):
        canon = [(canon[g], canon[pw[g]]) for g in range(G.order)]
    G._cache["labels"] = canon
    return canon


@dataclass
class IsomorphismResult:
    isomorphic: bool
    witness: list[int] | None = None
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.isomorphic


def isomorphic(A: Group, B: Group, *, budget: int = ISO_BUDGET, max_order: int = 256) -> IsomorphismResult:
    """Exact isomorphism test by backtracking over generator images.

    Candidate images are restricted to elements with the same invariant label
    (element order, class size, centralizer order, number of p-th roots,
    refined through the p-power map).  A partial assignment is kept only if it
    extends to an injective homomorphism on the generated subgroup.
    """
    if A.order != B.order:
        return IsomorphismResult(False)
    if A.order > max_order:
        raise SearchBudgetExceeded(f"order {A.order} above oracle limit {max_order}")
    if A.order == 1:
        return IsomorphismResult(True, [0])
    if A.is_abelian() != B.is_abelian():
        return IsomorphismResult(False)
    la, lb = _element_labels(A), _element_labels(B)
    if sorted(la) != sorted(lb):
        return IsomorphismResult(False)
    by_label: dict = {}
    for y in range(B.order):
        by_label.setdefault(lb[y], []).append(y)
    # generators: prefer elements with rare labels
    freq: dict = {}
    for lab in la:
        freq[lab] = freq.get(lab, 0) + 1
    cand_order = sorted(range(1, A.order), key=lambda g: (freq[la[g]], -A._orders[g], g))
    gens: list[int] = []
    masks: list[int] = []
    cur = 1
    for g in cand_order:
        if cur == A.full_mask:
            break
        if not cur >> g & 1:
            gens.append(g)
            cur = closure_mask(A, gens)
            masks.append(cur)
    nodes = 0

    def search(k: int, images: list[int]) -> list[int] | None:
        nonlocal nodes
        if k == len(gens):
            phi = extend_homomorphism(A, gens, images, B)
            if phi is not None and -1 not in phi and len(set(phi)) == B.order:
                return phi
            return None
        target_size = masks[k].bit_count()
        for y in by_label[la[gens[k]]]:
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"isomorphism search exceeded {budget} nodes")
            trial = images + [y]
            phi = extend_homomorphism(A, gens[: k + 1], trial, B)
            if phi is None:
                continue
            img = {v for v in phi if v >= 0}
            if len(img) != target_size:
                continue
            res = search(k + 1, trial)
            if res is not None:
                return res
        return None

    witness = search(0, [])
    if witness is None:
        return IsomorphismResult(False, None, nodes)
    return IsomorphismResult(True, witness, nodes)


def is_isomorphism(A: Group, B: Group, phi: Sequence[int]) -> bool:
    if len(phi) != A.order or sorted(phi) != list(range(B.order)):
        return False
    phi = np.asarray(phi)
    return bool(np.array_equal(phi[A.mul], B.mul[np.ix_(phi, phi)]))


# ---------------------------------------------------------------------------
# abelian types


@dataclass(frozen=True)
class AbelianType:
    """Isomorphism type of a finite abelian p-group."""

    p: int
    cyclic_orders: tuple[int, ...] = ()
    mho_sizes: tuple[int, ...] = field(default=(1,))

    @classmethod
    def from_cyclic_orders(cls, p: int, orders: Iterable[int]) -> "AbelianType":
        orders = tuple(sorted((int(k) for k in orders if k != 1), reverse=True))
        sizes = []
        j = 0
        while True:
            size = 1
            for k in orders:
                size *= max(1, k // p**j)
            sizes.append(size)
            if size == 1:
                break
            j += 1
        return cls(p, orders, tuple(sizes))

    @classmethod
    def from_mho_sizes(cls, p: int, sizes: Sequence[int]) -> "AbelianType":
        """Cyclic factors of order >= p^(n+1) number log_p(|mho_n| / |mho_(n+1)|)."""
        sizes = list(sizes)
        if sizes[-1] != 1:
            sizes.append(1)
        at_least = []
        for n in range(len(sizes) - 1):
            ratio = sizes[n] // sizes[n + 1]
            c = 0
            while ratio > 1:
                ratio //= p
                c += 1
            at_least.append(c)
        at_least.append(0)
        orders = []
        for n in range(len(at_least) - 1):
            exactly = at_least[n] - at_least[n + 1]
            orders += [p ** (n + 1)] * exactly
        return cls.from_cyclic_orders(p, orders)

    @property
    def order(self) -> int:
        return self.mho_sizes[0]

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    def to_json(self) -> list[int]:
        return list(self.cyclic_orders)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.cyclic_orders)) + "]"


def mho_mask(G: Group, mask: int, n: int) -> int:
    """Subgroup generated by the p^n-th powers of the elements of ``mask``."""
    q = G.prime ** n
    return closure_mask(G, {G.power(g, q) for g in bits(mask)})


def abelian_type(A: Group | SubgroupSet) -> AbelianType:
    """Abelian type from the sizes of the power subgroups."""
    if isinstance(A, SubgroupSet):
        G, mask = A.parent, A.members
        els = bits(mask)
        commute = G.commute_masks()
        if any(commute[g] & mask != mask for g in els):
            raise NotAbelian("subgroup is not abelian")
    else:
        G, mask = A, A.full_mask
        if not A.is_abelian():
            raise NotAbelian("group is not abelian")
    size = mask.bit_count()
    p = G.prime
    if size > 1 and not _is_prime_power(size, p):
        raise NotPGroup("not a p-group")
    sizes = [size]
    cur = mask
    while cur != 1:
        cur = mho_mask(G, cur, 1)
        sizes.append(cur.bit_count())
    return AbelianType.from_mho_sizes(p, sizes)


def all_abelian_types(p: int, max_exponent: int) -> list[AbelianType]:
    """Every abelian p-group of order at most p^max_exponent (partitions)."""
    def partitions(n, largest):
        if n == 0:
            yield ()
            return
        for k in range(min(n, largest), 0, -1):
            for rest in partitions(n - k, k):
                yield (k,) + rest

    out = []
    for e in range(max_exponent + 1):
        for part in partitions(e, e):
            out.append(AbelianType.from_cyclic_orders(p, [p**k for k in part]))
    return out


def random_relabel(G: Group, rng: np.random.Generator) -> tuple[Group, np.ndarray]:
    perm = np.concatenate([[0], 1 + rng.permutation(G.order - 1)])
    return G.relabel(perm), perm


__all__ = [
    "AbelianType", "Group", "SubgroupSet", "GroupError", "NotAPermutation", "OrderCapExceeded",
    "NotNormal", "NotAbelian", "NotPGroup", "SearchBudgetExceeded", "ValidationFailed",
    "abelian_group", "abelian_type", "all_abelian_types", "bits", "closure_mask", "cyclic_group",
    "direct_product", "extend_homomorphism", "generating_set", "group_from_permutations",
    "is_associative", "is_isomorphism", "isomorphic", "mho_mask", "quotient_group",
    "random_relabel", "subgroup_closure",
]
