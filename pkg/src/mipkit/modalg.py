"""The modular group algebra F_pG as an exact linear-algebra object.

Elements of F_pG are coefficient vectors indexed by group elements.  Ideals
and other canonical subspaces are :class:`~mipkit.linalg.Subspace` objects.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .groups import Group, GroupError, SubgroupSet
from .linalg import Subspace, kernel
from .pgroup import center, conjugacy_classes, frattini


class SeedEnumerationTooLarge(GroupError):
    pass


class RankTooLarge(GroupError):
    pass


class Inconclusive(GroupError):
    pass


@dataclass
class PowerImage:
    """Span of p^m-th powers of a subspace, with the path used to compute it."""

    span: Subspace
    method: str


class GroupAlgebra:
    """F_pG for a finite group G (p defaults to the group's prime, or 2 for the trivial group)."""

    def __init__(self, G: Group, p: int | None = None):
        self.group = G
        self.p = p or (G.prime if G.prime > 1 else 2)
        self.dim = G.order
        self._mul = G.mul
        self._cols = np.arange(self.dim)
        self._deltas: list[Subspace] = []
        self._cache: dict = {}

    # -- elements -------------------------------------------------------
    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def one(self) -> np.ndarray:
        return self.element(0)

    def element(self, g: int) -> np.ndarray:
        v = self.zero()
        v[g] = 1
        return v

    def g_minus_1(self, g: int) -> np.ndarray:
        v = self.element(g)
        v[0] = (v[0] - 1) % self.p
        return v

    def from_dict(self, coeffs: dict[int, int]) -> np.ndarray:
        v = self.zero()
        for g, a in coeffs.items():
            v[g] = (v[g] + a) % self.p
        return v

    def augmentation(self, x) -> int:
        return int(np.sum(x) % self.p)

    def multiply(self, x, y) -> np.ndarray:
        w = np.outer(x, y).ravel()
        out = np.bincount(self._mul.ravel(), weights=w, minlength=self.dim)
        return np.rint(out).astype(np.int64) % self.p

    def power(self, x, k: int) -> np.ndarray:
        out = self.one()
        base = np.asarray(x, dtype=np.int64) % self.p
        while k:
            if k & 1:
                out = self.multiply(out, base)
            k >>= 1
            if k:
                base = self.multiply(base, base)
        return out

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        return rng.integers(0, self.p, size=self.dim)

    # -- matrix actions (rows are vectors) --------------------------------
    def left_group(self, g: int, M: np.ndarray) -> np.ndarray:
        """Rows of M multiplied on the left by g."""
        M = np.atleast_2d(M)
        out = np.empty_like(M)
        out[:, self._mul[g, :]] = M
        return out

    def right_group(self, M: np.ndarray, g: int) -> np.ndarray:
        M = np.atleast_2d(M)
        out = np.empty_like(M)
        out[:, self._mul[:, g]] = M
        return out

    def right_mult_matrix(self, x) -> np.ndarray:
        """Matrix R with R @ y == x * y (column h holds x*h)."""
        R = np.zeros((self.dim, self.dim), dtype=np.int64)
        R[self._mul, self._cols[None, :]] = np.asarray(x)[:, None]
        return R

    def left_mult_matrix(self, x) -> np.ndarray:
        """Matrix L with L @ y == y * x."""
        L = np.zeros((self.dim, self.dim), dtype=np.int64)
        L[self._mul, self._cols[:, None]] = np.asarray(x)[None, :]
        return L

    def _reducer(self, n: int) -> np.ndarray:
        """Matrix P with v @ P the normal form of v modulo Delta^n."""
        key = ("reducer", n)
        if key not in self._cache:
            D = self.delta_power(n)
            self._cache[key] = np.array([D.reduce(e) for e in np.eye(self.dim, dtype=np.int64)])
        return self._cache[key]

    def products(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """All pairwise products x*y for rows x of X and y of Y."""
        X, Y = np.atleast_2d(X), np.atleast_2d(Y)
        if X.shape[0] == 0 or Y.shape[0] == 0:
            return np.zeros((0, self.dim), dtype=np.int64)
        out = [(self.right_mult_matrix(x) @ Y.T).T % self.p for x in X]
        return np.vstack(out)

    # -- subspaces --------------------------------------------------------
    def span(self, vectors=None) -> Subspace:
        return Subspace(self.p, self.dim, vectors)

    def group_span(self, elements: Iterable[int]) -> Subspace:
        """F[X] for a set X of group elements."""
        return self.span(np.eye(self.dim, dtype=np.int64)[sorted(set(elements))])

    def product(self, X: Subspace, Y: Subspace) -> Subspace:
        """Span of all products of basis vectors."""
        out = self.span()
        if X.is_zero() or Y.is_zero():
            return out
        for x in X.matrix:
            out.extend((self.right_mult_matrix(x) @ Y.matrix.T).T % self.p)
            if out.is_full():
                break
        return out

    def relative_product(self, K: SubgroupSet | Iterable[int], X: Subspace) -> Subspace:
        """Delta(FK) * X, spanned by (k - 1)x."""
        els = K.elements if isinstance(K, SubgroupSet) else list(K)
        M = X.matrix
        out = self.span()
        if M.shape[0] == 0:
            return out
        for k in els:
            if k == 0:
                continue
            out.extend((self.left_group(k, M) - M) % self.p)
        return out

    def augmentation_ideal(self) -> Subspace:
        return self.delta_power(1)

    def delta_power(self, n: int) -> Subspace:
        """Delta^n; Delta^0 = FG."""
        if n == 0:
            return Subspace.full(self.p, self.dim)
        if not self._deltas:
            rows = [self.g_minus_1(g) for g in range(1, self.dim)]
            self._deltas.append(self.span(rows))
        gens = self.group.generators()
        while len(self._deltas) < n:
            prev = self._deltas[-1]
            if prev.is_zero():
                self._deltas.append(prev)
                continue
            # Delta^(k+1) = sum over generators s of Delta^k (s - 1)
            M = prev.matrix
            nxt = self.span()
            for s in gens:
                nxt.extend((self.right_group(M, s) - M) % self.p)
            self._deltas.append(nxt)
            if len(self._deltas) > self.dim + 1:
                raise RuntimeError("augmentation ideal failed to become nilpotent")
        return self._deltas[n - 1]

    def nilpotency_index(self) -> int:
        """Least c with Delta^c = 0."""
        c = 1
        while not self.delta_power(c).is_zero():
            c += 1
        return c

    def relative_augmentation(self, N: SubgroupSet) -> Subspace:
        """Delta(FN)FG, spanned by (n - 1)g; n runs over generators of N."""
        if N.is_trivial():
            return self.span()
        key = ("relaug", N.members)
        if key not in self._cache:
            out = self.span()
            I = np.eye(self.dim, dtype=np.int64)
            for s in N.generators():
                # (s - 1) g for all g
                out.extend((self.left_group(s, I) - I) % self.p)
            self._cache[key] = out
        return self._cache[key]

    def subalgebra_delta_power(self, L: SubgroupSet, n: int) -> Subspace:
        """Delta(FL)^n inside FG."""
        if n == 0:
            return self.group_span(L.elements)
        cur = self.span([self.g_minus_1(l) for l in L.elements if l])
        gens = L.generators()
        for _ in range(n - 1):
            M = cur.matrix
            nxt = self.span()
            if M.shape[0]:
                for s in gens:
                    nxt.extend((self.right_group(M, s) - M) % self.p)
            cur = nxt
        return cur

    def commutator_subspace(self) -> Subspace:
        """gamma(FG), spanned by differences of conjugate elements."""
        if "gamma" not in self._cache:
            rows = []
            for cls in conjugacy_classes(self.group).classes:
                for x in cls[1:]:
                    v = self.zero()
                    v[x] = 1
                    v[cls[0]] = self.p - 1
                    rows.append(v)
            self._cache["gamma"] = self.span(rows)
        return self._cache["gamma"]

    def commutator_subspace_pairs(self) -> Subspace:
        """gamma(FG) straight from the definition: span of gh - hg."""
        mul = self._mul
        out = self.span()
        for g in range(self.dim):
            for h in range(g + 1, self.dim):
                a, b = mul[g, h], mul[h, g]
                if a != b:
                    v = self.zero()
                    v[a] = 1
                    v[b] = self.p - 1
                    out.extend([v])
        return out

    def class_sums(self) -> np.ndarray:
        cc = conjugacy_classes(self.group)
        M = np.zeros((len(cc), self.dim), dtype=np.int64)
        for i, cls in enumerate(cc.classes):
            M[i, list(cls)] = 1
        return M

    def center_basis(self) -> Subspace:
        """Z(FG) as the span of class sums."""
        if "center" not in self._cache:
            self._cache["center"] = self.span(self.class_sums())
        return self._cache["center"]

    def center_by_commutation(self) -> Subspace:
        """Z(FG) as the kernel of x -> (xs - sx) over generators s, without classes."""
        I = np.eye(self.dim, dtype=np.int64)
        blocks = [(self.right_group(I, s) - self.left_group(s, I)) % self.p
                  for s in self.group.generators()]
        if not blocks:
            return Subspace.full(self.p, self.dim)
        K = kernel(np.hstack(blocks), self.p)
        return self.span(K)

    def central_group_span(self) -> Subspace:
        """F Z(G)."""
        return self.group_span(center(self.group).elements)

    def noncentral_class_sums(self) -> Subspace:
        cc = conjugacy_classes(self.group)
        M = self.class_sums()
        keep = [i for i, s in enumerate(cc.sizes) if s != 1]
        return self.span(M[keep])

    def is_left_ideal(self, X: Subspace) -> bool:
        M = X.matrix
        return all(X.contains(r) for s in self.group.generators() for r in self.left_group(s, M))

    def is_right_ideal(self, X: Subspace) -> bool:
        M = X.matrix
        return all(X.contains(r) for s in self.group.generators() for r in self.right_group(M, s))

    def is_ideal(self, X: Subspace) -> bool:
        return self.is_left_ideal(X) and self.is_right_ideal(X)

    def smallest_ideal_containing(self, *seeds) -> Subspace:
        """Two-sided ideal generated by the seeds (subspaces, power images or vector arrays)."""
        out = self.span()
        queue: list[np.ndarray] = []

        def push(vectors):
            for v in np.atleast_2d(vectors):
                if v.size and out.extend([v]):
                    queue.append(np.asarray(v, dtype=np.int64))

        for seed in seeds:
            if isinstance(seed, PowerImage):
                seed = seed.span
            if isinstance(seed, Subspace):
                push(seed.matrix)
            else:
                push(np.asarray(seed, dtype=np.int64).reshape(-1, self.dim))
        gens = self.group.generators()
        while queue and not out.is_full():
            v = queue.pop()
            for s in gens:
                push(self.left_group(s, v))
                push(self.right_group(v, s))
        return out

    def relative_ideal_generated(self, N: SubgroupSet) -> Subspace:
        """Two-sided ideal generated by Delta(FN); equals Delta(FN)FG for normal N."""
        return self.smallest_ideal_containing([self.g_minus_1(g) for g in N.generators()])

    # -- power maps -------------------------------------------------------
    def _enumerate(self, X: Subspace, limit: int):
        size = self.p ** X.dim
        if size > limit:
            raise SeedEnumerationTooLarge(f"|X| = {self.p}^{X.dim} exceeds {limit}")
        B = X.matrix
        for coeffs in itertools.product(range(self.p), repeat=X.dim):
            yield (np.asarray(coeffs, dtype=np.int64) @ B) % self.p if X.dim else self.zero()

    def power_image(self, X: Subspace, m: int, *, method: str = "auto",
                    limit: int | None = None) -> PowerImage:
        """Span of {x^(p^m) : x in X}.

        ``enumerate`` raises every vector of X (guarded by ``limit``, default
        p^20); ``basis`` raises basis vectors only, which spans the same space
        when X lies in a commutative subalgebra and otherwise agrees modulo
        gamma(FG).  ``auto`` uses ``basis`` inside Z(FG) and ``enumerate``
        elsewhere when small enough.
        """
        limit = self.p ** 20 if limit is None else limit
        q = self.p ** m
        if method == "auto":
            if X <= self.center_basis():
                method = "basis"
            elif self.p ** X.dim <= min(limit, 2**12):
                method = "enumerate"
            else:
                method = "basis-mod-commutators"
        if method == "enumerate":
            out = self.span()
            for x in self._enumerate(X, limit):
                out.extend([self.power(x, q)])
            return PowerImage(out, "enumerate")
        if method in ("basis", "basis-mod-commutators"):
            rows = [self.power(x, q) for x in X.matrix]
            return PowerImage(self.span(rows), method)
        raise ValueError(f"unknown method {method!r}")

    def omega_n_center_subspace(self, n: int) -> Subspace:
        """{x in Z(FG) : x^(p^n) = 0}; the p^n-power map is F_p-linear on Z(FG)."""
        C = self.class_sums()
        q = self.p ** n
        images = np.array([self.power(c, q) for c in C])
        K = kernel(images, self.p)
        if K.size == 0:
            return self.span()
        return self.span((K @ C) % self.p)

    def omega_n_subspace_enumerated(self, X: Subspace, n: int, limit: int = 2**16) -> Subspace:
        """Span of {x in X : x^(p^n) = 0} by brute force (test oracle)."""
        q = self.p ** n
        out = self.span()
        for x in self._enumerate(X, limit):
            if not self.power(x, q).any():
                out.extend([x])
        return out

    # -- Jennings series ----------------------------------------------------
    def jennings_series(self) -> list[SubgroupSet]:
        """D_n = G cap (1 + Delta^n) for n = 1, 2, ... until trivial."""
        if "jennings" not in self._cache:
            G = self.group
            series = []
            n = 1
            while True:
                D = self.delta_power(n)
                mask = 1 | sum(1 << g for g in range(1, G.order) if D.contains(self.g_minus_1(g)))
                series.append(SubgroupSet(G, mask))
                if mask == 1:
                    break
                n += 1
            self._cache["jennings"] = series
        return self._cache["jennings"]

    def jennings_ranks(self) -> list[int]:
        series = self.jennings_series()
        G = self.group
        return [G.log_p(series[i].order // series[i + 1].order) for i in range(len(series) - 1)]

    # -- residues of the p-power map -----------------------------------------
    def frattini_basis(self) -> list[int]:
        """Elements whose images form a basis of G/Frat(G), chosen in index order."""
        from .groups import closure_mask

        G = self.group
        cur = frattini(G).members
        out = []
        for g in range(G.order):
            if not cur >> g & 1:
                out.append(g)
                cur = closure_mask(G, [g], cur)
        return out

    def residue_power_map(self, max_rank: int = 20) -> "ResidueMap":
        """x -> x^p mod Delta^(p+1) on one representative of each coset of Delta^2 in Delta."""
        basis = self.frattini_basis()
        d = len(basis)
        if d > max_rank:
            raise RankTooLarge(f"rank {d} of Delta/Delta^2 exceeds {max_rank}")
        target = self.delta_power(self.p + 1)
        reps = np.array([self.g_minus_1(g) for g in basis]).reshape(d, self.dim)
        isotropic = []
        for coeffs in itertools.product(range(self.p), repeat=d):
            x = (np.asarray(coeffs, dtype=np.int64) @ reps) % self.p if d else self.zero()
            if target.contains(self.power(x, self.p)):
                isotropic.append(tuple(coeffs))
        return ResidueMap(basis, isotropic)

    def omega1_in_delta2(self, *, named: dict[str, int] | None = None,
                         search_budget: int = 200_000) -> "Omega1Result":
        """Decide whether every x with x^p = 0 lies in Delta^2."""
        G = self.group
        res = self.residue_power_map()
        nonzero = [c for c in res.isotropic if any(c)]
        if not nonzero:
            return Omega1Result(True, None, None, "residue map anisotropic", res)
        D2 = self.delta_power(2)
        named = named if named is not None else G.data.get("named", {})
        order = [(k, g) for k, g in named.items()] + [(f"g{g}", g) for g in range(1, G.order)]
        for label, g in order:
            if G._orders[g] == self.p and not D2.contains(self.g_minus_1(g)):
                return Omega1Result(False, self.g_minus_1(g), f"{label}-1",
                                    "element of order p outside Frat", res)
        reps = np.array([self.g_minus_1(g) for g in res.basis])
        if self.p != 2:
            raise Inconclusive("square-zero lifting is only implemented for p = 2")
        budget = [search_budget]
        for c in nonzero:
            x = (np.asarray(c) @ reps) % self.p
            y = self._lift_square_zero(x, budget)
            if y is not None:
                return Omega1Result(False, y, "lifted", "square-zero vector found by lifting", res)
        if budget[0] < 0:
            raise Inconclusive("lifting search budget exhausted")
        return Omega1Result(True, None, None, "no isotropic coset lifts to a square-zero vector", res)

    def _layer_complements(self) -> list[np.ndarray]:
        """Rows W_j spanning a complement of Delta^(j+1) in Delta^j, for j >= 1."""
        if "layers" not in self._cache:
            c = self.nilpotency_index()
            out = [np.zeros((0, self.dim), dtype=np.int64)]
            for j in range(1, c):
                upper = self.delta_power(j + 1).copy()
                rows = [r for r in self.delta_power(j).matrix if upper.extend([r])]
                out.append(np.array(rows, dtype=np.int64).reshape(-1, self.dim))
            self._cache["layers"] = out
        return self._cache["layers"]

    def _lift_square_zero(self, x: np.ndarray, budget: list[int]) -> np.ndarray | None:
        """Search x + d (d in Delta^2) with (x + d)^2 = 0, one Jennings-type layer at a time.

        With x^2 in Delta^(j+1) and w in Delta^j (j >= 2), (x + w)^2 is
        x^2 + xw + wx modulo Delta^(j+2), an affine condition on w.  Every
        solution of each affine system is explored, so exhausting the tree
        proves that no square-zero vector lies in the coset.  Once 2j >= c
        the tail is a single linear system.  Requires p = 2.
        """
        c = self.nilpotency_index()
        layers = self._layer_complements()

        def solve(x, j):
            budget[0] -= 1
            if budget[0] < 0:
                return None
            sq = self.multiply(x, x)
            if j + 1 >= c:
                return x if not sq.any() else None
            if 2 * j >= c:
                # w^2 = 0 for every w in Delta^j: one linear system settles the rest
                B = self.delta_power(j).matrix
                images = (self.right_mult_matrix(x) @ B.T + self.left_mult_matrix(x) @ B.T).T % 2
                K = kernel(np.vstack([images, sq]), 2)
                hits = [row for row in K if row[-1] == 1]
                return (x + hits[0][:-1] @ B) % 2 if hits else None
            P = self._reducer(j + 2)
            W = layers[j] if j < len(layers) else np.zeros((0, self.dim), dtype=np.int64)
            if W.shape[0] == 0:
                return solve(x, j + 1) if not (sq @ P % 2).any() else None
            Rx, Lx = self.right_mult_matrix(x), self.left_mult_matrix(x)
            images = (Rx @ W.T + Lx @ W.T).T @ P % 2
            target = sq @ P % 2
            K = kernel(np.vstack([images, target]), 2)
            base, free = _affine_solutions(K)
            if base is None:
                return None
            # conjugating by 1 + d, d in Delta^(j-1), moves the layer-j part by xd + dx
            # and keeps x^2 = 0, so choices differing by such terms are equivalent
            Pj = self._reducer(j + 1)
            V = layers[j - 1]
            moved = self.span((Rx @ V.T + Lx @ V.T).T @ Pj % 2) if V.shape[0] else self.span()
            kept = []
            for f in free:
                if moved.extend([(f @ W) @ Pj % 2]):
                    kept.append(f)
            free = kept
            for combo in itertools.product((0, 1), repeat=len(free)):
                coeffs = base.copy()
                for bit, row in zip(combo, free):
                    if bit:
                        coeffs = (coeffs + row) % 2
                found = solve((x + coeffs @ W) % 2, j + 1)
                if found is not None:
                    return found
                if budget[0] < 0:
                    return None
            return None

        if not self.delta_power(3).contains(self.multiply(x, x)):
            return None
        return solve(x, 2)


def _affine_solutions(K: np.ndarray) -> tuple[np.ndarray | None, list[np.ndarray]]:
    """Split kernel rows of [A; b] into a solution of cA = -b and a basis of cA = 0."""
    hits = [row for row in K if row[-1] == 1]
    if not hits:
        return None, []
    base = hits[0]
    free = [row[:-1] for row in K if row[-1] == 0]
    free += [((row - base) % 2)[:-1] for row in hits[1:]]
    return base[:-1], free


@dataclass
class ResidueMap:
    basis: list[int]
    isotropic: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def nonzero_isotropic(self) -> list[tuple[int, ...]]:
        return [c for c in self.isotropic if any(c)]


@dataclass
class Omega1Result:
    holds: bool
    witness: np.ndarray | None
    witness_label: str | None
    method: str
    residues: ResidueMap | None = None

    def __bool__(self) -> bool:
        return self.holds


def jennings_bound(ranks: Sequence[int], p: int) -> int:
    """Nilpotency index of Delta predicted from the Jennings ranks."""
    return 1 + (p - 1) * sum((i + 1) * d for i, d in enumerate(ranks))
