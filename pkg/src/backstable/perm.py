"""Permutations of Z with finite support, plus signed, affine, and triple data.

A Permutation is stored on its minimal window [lo, hi] (one-line values there,
identity outside).  Rank counts k_w(p,q) = #{a <= p : w(a) > q} drive Bruhat
order, diagrams, and essential sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


class NotGrassmannian(Exception):
    pass


class InvalidTriple(Exception):
    pass


class AmbiguousTriple(Exception):
    """Brute-force search found two minimal candidates (bug or invalid input)."""


class Permutation:
    __slots__ = ("lo", "values")

    def __init__(self, lo: int, values):
        values = tuple(values)
        if sorted(values) != list(range(lo, lo + len(values))):
            raise ValueError(f"{values} is not a bijection of [{lo}, {lo + len(values) - 1}]")
        # trim fixed endpoints to the minimal window
        start, end = 0, len(values)
        while start < end and values[start] == lo + start:
            start += 1
        while end > start and values[end - 1] == lo + end - 1:
            end -= 1
        self.lo = lo + start
        self.values = values[start:end]

    @staticmethod
    def identity() -> "Permutation":
        return Permutation(0, ())

    @staticmethod
    def s(i: int) -> "Permutation":
        """The simple reflection swapping i and i+1."""
        return Permutation(i, (i + 1, i))

    @staticmethod
    def from_map(mapping: dict[int, int]) -> "Permutation":
        if not mapping:
            return Permutation.identity()
        lo, hi = min(mapping), max(mapping)
        return Permutation(lo, tuple(mapping.get(i, i) for i in range(lo, hi + 1)))

    @property
    def hi(self) -> int:
        return self.lo + len(self.values) - 1

    def window(self) -> tuple[int, int]:
        """Minimal support window; (0, -1) for the identity."""
        return (self.lo, self.hi)

    def is_identity(self) -> bool:
        return not self.values

    def __call__(self, i: int) -> int:
        if self.lo <= i <= self.hi:
            return self.values[i - self.lo]
        return i

    def __eq__(self, other) -> bool:
        return (isinstance(other, Permutation) and self.lo == other.lo
                and self.values == other.values)

    def __hash__(self):
        return hash((self.lo, self.values))

    def __repr__(self) -> str:
        if not self.values:
            return "[]@0"
        return "[" + ",".join(str(v) for v in self.values) + f"]@{self.lo}"

    @staticmethod
    def parse(text: str) -> "Permutation":
        """Parse one-line text like "[2,-2,3,1,0,-3,4,-1]@-3" (default window start 1)."""
        text = text.strip()
        if "@" in text:
            body, lo = text.rsplit("@", 1)
            lo = int(lo)
        else:
            body, lo = text, 1
        body = body.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"cannot parse permutation {text!r}")
        inner = body[1:-1].strip()
        values = tuple(int(v) for v in inner.split(",")) if inner else ()
        return Permutation(lo, values)

    def to_obj(self) -> dict:
        return {"window": [self.lo, self.hi], "values": list(self.values)}

    # -- group structure -----------------------------------------------------

    def inverse(self) -> "Permutation":
        inv = {v: self.lo + i for i, v in enumerate(self.values)}
        return Permutation.from_map(inv)

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition (self*other)(i) = self(other(i))."""
        if other.is_identity():
            return self
        if self.is_identity():
            return other
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        return Permutation(lo, tuple(self(other(i)) for i in range(lo, hi + 1)))

    def length(self) -> int:
        vals = self.values
        n = len(vals)
        return sum(1 for i in range(n) for j in range(i + 1, n) if vals[i] > vals[j])

    def rank(self, p: int, q: int) -> int:
        """k_w(p,q) = #{a <= p : w(a) > q}."""
        if not self.values:
            return max(0, p - q)
        lo, hi = self.lo, self.hi
        count = max(0, min(p, lo - 1) - q)
        for a in range(lo, min(p, hi) + 1):
            if self.values[a - lo] > q:
                count += 1
        count += max(0, p - max(q, hi))
        return count

    def descents(self) -> list[int]:
        lo, hi = self.lo, self.hi
        return [i for i in range(lo - 1, hi + 1) if self(i) > self(i + 1)]

    def support_points(self) -> list[int]:
        return [i for i in range(self.lo, self.hi + 1) if self(i) != i]

    def in_s_neq0(self) -> bool:
        """Does w preserve the positive and the non-positive integers?"""
        return all((i > 0) == (v > 0) for i, v in enumerate(self.values, self.lo))

    def split_neq0(self) -> tuple["Permutation", "Permutation"]:
        """Factor w in S_{!=0} as w_- * w_+."""
        if not self.in_s_neq0():
            raise ValueError(f"{self} is not in S_!=0")
        neg = {i: v for i, v in enumerate(self.values, self.lo) if i <= 0}
        pos = {i: v for i, v in enumerate(self.values, self.lo) if i > 0}
        return Permutation.from_map(neg), Permutation.from_map(pos)

    # -- symmetries ------------------------------------------------------------

    def omega(self) -> "Permutation":
        """The involution w(i) -> 1 - w(1-i)."""
        return Permutation.from_map(
            {1 - i: 1 - v for i, v in enumerate(self.values, self.lo)})

    def gamma(self, m: int) -> "Permutation":
        """Translation: gamma^m(w)(i) = m + w(i-m)."""
        if not self.values or m == 0:
            return self
        return Permutation(self.lo + m, tuple(v + m for v in self.values))


def identity_rank(p: int, q: int) -> int:
    return max(0, p - q) if p > q else 0


def bruhat_leq(v: Permutation, w: Permutation) -> bool:
    """v <= w iff k_v(p,q) <= k_w(p,q) for all p,q (checked on a sufficient rectangle)."""
    if v == w:
        return True
    los = [u.lo for u in (v, w) if u.values]
    his = [u.hi for u in (v, w) if u.values]
    if not los:
        return True
    lo, hi = min(los) - 1, max(his)
    for p in range(lo, hi + 1):
        for q in range(lo, hi + 1):
            if v.rank(p, q) > w.rank(p, q):
                return False
    return True


def diagram(w: Permutation) -> list[tuple[int, int]]:
    """Rothe diagram boxes (p,q): w(p) > q and w^{-1}(q) > p."""
    if not w.values:
        return []
    lo, hi = w.lo, w.hi
    winv = w.inverse()
    return [(p, q) for p in range(lo, hi + 1) for q in range(lo, hi + 1)
            if w(p) > q and winv(q) > p]


def essential_set(w: Permutation) -> list[tuple[int, int, int]]:
    """Essential triples (k,p,q): (p,q) a southeast corner of the diagram, k = k_w(p,q)."""
    boxes = set(diagram(w))
    out = []
    for (p, q) in sorted(boxes):
        if (p + 1, q) not in boxes and (p, q + 1) not in boxes:
            out.append((w.rank(p, q), p, q))
    return out


# -- Grassmannian elements and partitions ------------------------------------

def is_grassmannian(w: Permutation) -> bool:
    return all(d == 0 for d in w.descents())


def grassmannian_to_partition(w: Permutation) -> tuple[int, ...]:
    """lambda_k = w(1-k) - 1 + k for the unique-descent-at-0 permutation."""
    if not is_grassmannian(w):
        raise NotGrassmannian(f"{w} has a descent away from 0")
    parts = []
    k = 1
    while True:
        lam = w(1 - k) - 1 + k
        if lam <= 0:
            break
        parts.append(lam)
        k += 1
    return tuple(parts)


def partition_to_grassmannian(lam: tuple[int, ...]) -> Permutation:
    """Inverse map: w(k) = lambda_{1-k} + k for k <= 0, positives filled increasingly."""
    lam = tuple(lam)
    if any(a < b for a, b in zip(lam, lam[1:])) or any(a <= 0 for a in lam):
        raise ValueError(f"{lam} is not a partition")
    if not lam:
        return Permutation.identity()
    s = len(lam)
    mapping = {}
    for k in range(0, -s, -1):
        mapping[k] = lam[-k] + k
    lo, hi = 1 - s, lam[0]
    used = set(mapping.values())
    free = iter(sorted(set(range(lo, hi + 1)) - used))
    for i in range(1, hi + 1):
        mapping[i] = next(free)
    return Permutation.from_map(mapping)


# -- enumeration ---------------------------------------------------------------

def all_perms_window(lo: int, hi: int):
    """All permutations supported in [lo, hi]."""
    base = list(range(lo, hi + 1))
    for vals in itertools.permutations(base):
        yield Permutation(lo, vals)


def perms_by_length(lo: int, hi: int, max_len: int) -> dict[int, list[Permutation]]:
    """Permutations of [lo, hi] of each length <= max_len, via BFS on the right."""
    levels = {0: [Permutation.identity()]}
    seen = {Permutation.identity()}
    frontier = [Permutation.identity()]
    for ell in range(1, max_len + 1):
        nxt = []
        for w in frontier:
            for i in range(lo, hi):
                u = w * Permutation.s(i)
                if u not in seen and u.length() == ell:
                    seen.add(u)
                    nxt.append(u)
        if not nxt:
            break
        levels[ell] = nxt
        frontier = nxt
    return levels


def length_additive_factorizations(w: Permutation, right_in_neq0: bool = False):
    """All (left, right) with left*right = w and additive lengths.

    Right factors range over the support window of w; optionally restricted
    to right in S_{!=0}.
    """
    lw = w.length()
    out = []
    if w.is_identity():
        return [(w, w)]
    for right in all_perms_window(w.lo, w.hi):
        lr = right.length()
        if lr > lw:
            continue
        if right_in_neq0 and not right.in_s_neq0():
            continue
        left = w * right.inverse()
        if left.length() + lr == lw:
            out.append((left, right))
    return out


# -- signed permutations --------------------------------------------------------

class SignedPermutation:
    """w on [1,n] with w(-i) = -w(i); identity beyond n."""

    __slots__ = ("values",)

    def __init__(self, values):
        values = tuple(values)
        if sorted(abs(v) for v in values) != list(range(1, len(values) + 1)):
            raise ValueError(f"{values} is not a signed permutation")
        self.values = values

    @property
    def n(self) -> int:
        return len(self.values)

    def __call__(self, i: int) -> int:
        if i == 0:
            raise ValueError("signed permutations do not act on 0")
        if abs(i) > self.n:
            return i
        return self.values[i - 1] if i > 0 else -self.values[-i - 1]

    def __eq__(self, other):
        return isinstance(other, SignedPermutation) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return "[" + ",".join(str(v) for v in self.values) + "]"

    def to_obj(self) -> dict:
        return {"n": self.n, "values": list(self.values)}

    @staticmethod
    def from_strict_partition(lam: tuple[int, ...]) -> "SignedPermutation":
        """w(i) = -lambda_i, remaining entries increasing."""
        lam = tuple(lam)
        if any(a <= b for a, b in zip(lam, lam[1:])) or any(a <= 0 for a in lam):
            raise ValueError(f"{lam} is not a strict partition")
        if not lam:
            return SignedPermutation(())
        n = lam[0]
        head = [-a for a in lam]
        used = set(lam)
        tail = [i for i in range(1, n + 1) if i not in used]
        return SignedPermutation(tuple(head + tail))


# -- affine permutations ---------------------------------------------------------

class AffinePermutation:
    """w(i+n) = w(i)+n, stored by the window values w(1..n), sum-normalized."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values):
        values = tuple(values)
        if len(values) != n or n < 1:
            raise ValueError("need exactly n window values")
        if sorted(v % n for v in values) != list(range(n)):
            raise ValueError(f"{values} has repeated residues mod {n}")
        if sum(values) != n * (n + 1) // 2:
            raise ValueError(f"window sum {sum(values)} != {n * (n + 1) // 2}")
        self.n = n
        self.values = values

    @staticmethod
    def identity(n: int) -> "AffinePermutation":
        return AffinePermutation(n, range(1, n + 1))

    @staticmethod
    def s(n: int, i: int) -> "AffinePermutation":
        """Affine simple reflection s_i for 0 <= i <= n-1."""
        return AffinePermutation.identity(n).right_mult(i)

    def __call__(self, i: int) -> int:
        r = (i - 1) % self.n + 1
        return self.values[r - 1] + (i - r)

    def __eq__(self, other):
        return (isinstance(other, AffinePermutation) and self.n == other.n
                and self.values == other.values)

    def __hash__(self):
        return hash((self.n, self.values))

    def __repr__(self):
        return "[" + ",".join(str(v) for v in self.values) + f"]~{self.n}"

    def to_obj(self) -> dict:
        return {"n": self.n, "values": list(self.values)}

    def window_values(self, a: int, b: int) -> list[int]:
        return [self(i) for i in range(a, b + 1)]

    def right_mult(self, i: int) -> "AffinePermutation":
        """w * s_i (positions i, i+1 swapped periodically)."""
        n, v = self.n, list(self.values)
        if not 0 <= i <= n - 1:
            raise ValueError(f"reflection index {i} out of range")
        if i == 0:
            if n == 1:
                raise ValueError("affine S_1 has no reflections")
            v[0], v[n - 1] = self.values[n - 1] - n, self.values[0] + n
        else:
            v[i - 1], v[i] = v[i], v[i - 1]
        return AffinePermutation(n, v)

    def length(self) -> int:
        """Inversions #{(i,j) : 1 <= i <= n, i < j, w(i) > w(j)} (finite count)."""
        n = self.n
        spread = max(self.values) - min(self.values)
        bound = n * (spread // n + 2)
        count = 0
        for i in range(1, n + 1):
            wi = self(i)
            for j in range(i + 1, i + bound + 1):
                if self(j) < wi:
                    count += 1
        return count

    def rank(self, p: int, q: int) -> int:
        """k_w(p,q), summed residue class by residue class with floor counts."""
        n = self.n
        total = 0
        for r in range(1, n + 1):
            vr = self.values[r - 1]
            # i = r + k n <= p  and  w(i) = vr + k n > q
            hi = (p - r) // n
            lo = (q - vr) // n + 1
            if hi >= lo:
                total += hi - lo + 1
        return total

    def sign_change_sets(self) -> tuple[list[int], list[int]]:
        """({i <= 0 : w(i) > 0}, {j > 0 : w(j) <= 0}); both finite."""
        n = self.n
        neg_up, pos_down = [], []
        for r in range(1, n + 1):
            vr = self.values[r - 1]
            # i = r - t n <= 0 (t >= 1): w(i) = vr - t n > 0
            t = 1
            while vr - t * n > 0:
                neg_up.append(r - t * n)
                t += 1
            # j = r + t n > 0 (t >= 0): w(j) = vr + t n <= 0
            t = 0
            while vr + t * n <= 0:
                pos_down.append(r + t * n)
                t += 1
        return sorted(neg_up), sorted(pos_down)


def affine_by_length(n: int, max_len: int) -> dict[int, list[AffinePermutation]]:
    """All affine permutations of each length <= max_len (BFS over reflections)."""
    start = AffinePermutation.identity(n)
    levels = {0: [start]}
    seen = {start}
    frontier = [start]
    for ell in range(1, max_len + 1):
        nxt = []
        for w in frontier:
            for i in range(n):
                u = w.right_mult(i)
                if u not in seen and u.length() == ell:
                    seen.add(u)
                    nxt.append(u)
        levels[ell] = nxt
        frontier = nxt
    return levels


# -- vexillary triples -------------------------------------------------------------

@dataclass(frozen=True)
class Triple:
    """(k, p, q) with k strictly increasing, p weakly increasing, q weakly decreasing."""

    k: tuple[int, ...]
    p: tuple[int, ...]
    q: tuple[int, ...]

    def __post_init__(self):
        k, p, q = self.k, self.p, self.q
        if not (len(k) == len(p) == len(q)):
            raise InvalidTriple("k, p, q must have equal lengths")
        if any(a >= b for a, b in zip(k, k[1:])) or (k and k[0] <= 0):
            raise InvalidTriple("k must be strictly increasing and positive")
        if any(a > b for a, b in zip(p, p[1:])):
            raise InvalidTriple("p must be weakly increasing")
        if any(a < b for a, b in zip(q, q[1:])):
            raise InvalidTriple("q must be weakly decreasing")
        ls = self.l()
        if any(a < b for a, b in zip(ls, ls[1:])) or (ls and ls[-1] < 0):
            raise InvalidTriple(f"l = {ls} must be weakly decreasing and nonnegative")

    def l(self) -> tuple[int, ...]:
        return tuple(q - p + k for k, p, q in zip(self.k, self.p, self.q))


def lambda_of_triple(tau: Triple) -> tuple[int, ...]:
    """lambda_j = l_i for k_{i-1} < j <= k_i, minimal subject to weak decrease."""
    lam = []
    prev_k = 0
    for k_i, l_i in zip(tau.k, tau.l()):
        lam.extend([l_i] * (k_i - prev_k))
        prev_k = k_i
    return tuple(a for a in lam if a > 0)


def triple_to_permutation(tau: Triple) -> Permutation:
    """Minimal-length w with k_w(p_i, q_i) >= k_i for all i, by bounded brute force."""
    if not tau.k:
        return Permutation.identity()
    max_l = max(tau.l()) if tau.l() else 0
    lo = min(tau.p) - max_l
    hi = max(tau.q) + max(tau.k)
    lo = min(lo, min(tau.q), 0)
    hi = max(hi, max(tau.p), 0)

    def satisfies(w: Permutation) -> bool:
        return all(w.rank(p, q) >= k for k, p, q in zip(tau.k, tau.p, tau.q))

    max_len = sum(lambda_of_triple(tau))
    levels = perms_by_length(lo, hi, max_len)
    for ell in sorted(levels):
        found = [w for w in levels[ell] if satisfies(w)]
        if len(found) > 1:
            raise AmbiguousTriple(f"two minimal candidates at length {ell}: {found[:2]}")
        if found:
            return found[0]
    raise InvalidTriple(f"no permutation satisfies {tau} in window [{lo},{hi}]")
