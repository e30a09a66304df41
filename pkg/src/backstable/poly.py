"""Exact sparse multivariate polynomials over Z, with Z-indexed variable families.

The variable families are

    c_k, c'_k  (k >= 1)   Chern-series coefficients, graded degree k
    x_i, y_i, y'_i (i in Z)  flag/torus variables, degree 1
    z                      the type C deformation parameter, degree 1
    xi_i (i >= 1)          symmetric-function alphabet, degree 1

A monomial is a sorted tuple of (family, index, exponent) triples; a
polynomial is a dict from monomials to nonzero Python ints.  Everything is
immutable after construction and all arithmetic is exact.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping


# Family codes, in the canonical sort order c < c' < x < y < y' < z < xi.
C, CPRIME, X, Y, YPRIME, Z, XI = range(7)

FAMILY_NAMES = ("c", "c'", "x", "y", "y'", "z", "xi")
FAMILY_BY_NAME = {name: fam for fam, name in enumerate(FAMILY_NAMES)}

Mono = tuple  # tuple of (family, index, exponent) triples, sorted by (family, index)
VarKey = tuple  # (family, index)


class NonUnitSeries(Exception):
    """Series inversion requested on a series whose degree-0 part is not 1."""


class CapExceeded(Exception):
    """A substitution needed a series component beyond its truncation cap."""


def check_var(fam: int, idx: int) -> VarKey:
    if fam in (C, CPRIME, XI):
        if idx < 1:
            raise ValueError(f"{FAMILY_NAMES[fam]} index must be >= 1, got {idx}")
    elif fam == Z:
        if idx != 0:
            raise ValueError("z carries no index")
    elif fam not in (X, Y, YPRIME):
        raise ValueError(f"unknown variable family {fam}")
    return (fam, idx)


def var_degree(fam: int, idx: int) -> int:
    """Graded degree: deg c_k = deg c'_k = k, every other variable has degree 1."""
    return idx if fam <= CPRIME else 1


_mono_degree_cache: dict[Mono, int] = {}


def mono_degree(mono: Mono) -> int:
    d = _mono_degree_cache.get(mono)
    if d is None:
        d = sum(e * (i if f <= CPRIME else 1) for f, i, e in mono)
        _mono_degree_cache[mono] = d
    return d


def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        fa, ia, ea = a[i]
        fb, ib, eb = b[j]
        if (fa, ia) < (fb, ib):
            out.append(a[i])
            i += 1
        elif (fb, ib) < (fa, ia):
            out.append(b[j])
            j += 1
        else:
            out.append((fa, ia, ea + eb))
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_sort_key(mono: Mono):
    """Canonical term order: graded degree, then lexicographic on (family, index)."""
    return (mono_degree(mono), mono)


class Polynomial:
    """Immutable sparse polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("t",)

    def __init__(self, terms: Mapping[Mono, int] | None = None):
        t = {}
        if terms:
            for m, c in terms.items():
                if c:
                    t[m] = c
        self.t = t

    @staticmethod
    def _raw(t: dict) -> "Polynomial":
        p = Polynomial.__new__(Polynomial)
        p.t = t
        return p

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial._raw({})

    @staticmethod
    def const(n: int) -> "Polynomial":
        return Polynomial._raw({(): n} if n else {})

    @staticmethod
    def var(fam: int, idx: int = 0, exp: int = 1) -> "Polynomial":
        check_var(fam, idx)
        if exp < 0:
            raise ValueError("negative exponent")
        if exp == 0:
            return Polynomial.const(1)
        return Polynomial._raw({((fam, idx, exp),): 1})

    # -- ring operations ---------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.t)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.const(other)
        return isinstance(other, Polynomial) and self.t == other.t

    def __hash__(self):
        return hash(frozenset(self.t.items()))

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self.t.items()})

    def __add__(self, other) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.const(other)
        out = dict(self.t)
        for m, c in other.t.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            elif m in out:
                del out[m]
        return Polynomial._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            if other == 0:
                return Polynomial.zero()
            return Polynomial._raw({m: c * other for m, c in self.t.items()})
        out: dict = {}
        if len(self.t) > len(other.t):
            a, b = other.t, self.t
        else:
            a, b = self.t, other.t
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = mono_mul(ma, mb)
                v = out.get(m, 0) + ca * cb
                if v:
                    out[m] = v
                elif m in out:
                    del out[m]
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative power")
        result = Polynomial.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def exact_div_int(self, n: int) -> "Polynomial":
        out = {}
        for m, c in self.t.items():
            q, r = divmod(c, n)
            if r:
                raise ValueError(f"coefficient {c} not divisible by {n}")
            out[m] = q
        return Polynomial._raw(out)

    # -- structure ---------------------------------------------------------

    def degree(self) -> int:
        """Graded degree; -1 for the zero polynomial."""
        if not self.t:
            return -1
        return max(mono_degree(m) for m in self.t)

    def is_homogeneous(self) -> bool:
        degs = {mono_degree(m) for m in self.t}
        return len(degs) <= 1

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw({m: c for m, c in self.t.items() if mono_degree(m) == d})

    def homogeneous_split(self) -> dict[int, "Polynomial"]:
        out: dict[int, dict] = {}
        for m, c in self.t.items():
            out.setdefault(mono_degree(m), {})[m] = c
        return {d: Polynomial._raw(t) for d, t in out.items()}

    def variables(self) -> set[VarKey]:
        vs = set()
        for m in self.t:
            for f, i, _ in m:
                vs.add((f, i))
        return vs

    def coefficient_split(self, selector) -> dict[Mono, "Polynomial"]:
        """Group terms by their sub-monomial in the variables chosen by `selector`.

        `selector(fam, idx)` says whether a variable belongs to the selected
        set; returns {selected-part monomial: polynomial in the other vars}.
        """
        out: dict[Mono, dict] = {}
        for m, c in self.t.items():
            sel = tuple(t for t in m if selector(t[0], t[1]))
            rest = tuple(t for t in m if not selector(t[0], t[1]))
            out.setdefault(sel, {})[rest] = c
        return {k: Polynomial._raw(t) for k, t in out.items()}

    def coefficient_of(self, mono: Mono, selector) -> "Polynomial":
        """Coefficient of the exact sub-monomial `mono` in the selected variables."""
        out = {}
        for m, c in self.t.items():
            sel = tuple(t for t in m if selector(t[0], t[1]))
            if sel == mono:
                out[tuple(t for t in m if not selector(t[0], t[1]))] = c
        return Polynomial._raw(out)

    def terms_sorted(self) -> list[tuple[Mono, int]]:
        """Terms in canonical order: descending graded degree, then ascending monomial."""
        return sorted(self.t.items(), key=lambda mc: (-mono_degree(mc[0]), mc[0]))

    # -- substitution ------------------------------------------------------

    def substitute(self, var_images: Mapping[VarKey, "Polynomial | int"] | None = None,
                   series: Mapping[int, "TruncatedSeries"] | None = None) -> "Polynomial":
        """Apply a ring homomorphism given by images of variables.

        `var_images` maps (family, index) to a polynomial (or int).  `series`
        maps a whole family (C or CPRIME) to a truncated Chern series S; a
        variable of graded degree k in that family maps to the homogeneous
        component S[k].  Raises CapExceeded if a component beyond the cap is
        needed.  Unmapped variables are left alone.
        """
        var_images = var_images or {}
        series = series or {}
        pow_cache: dict[tuple[VarKey, int], Polynomial] = {}

        def image_power(key: VarKey, e: int) -> Polynomial:
            got = pow_cache.get((key, e))
            if got is not None:
                return got
            img = var_images.get(key)
            if img is None and key[0] in series:
                s = series[key[0]]
                k = var_degree(*key)
                if k > s.cap:
                    raise CapExceeded(f"need degree {k} of a series capped at {s.cap}")
                img = s[k]
            if img is None:
                p = Polynomial.var(key[0], key[1], e)
            else:
                if isinstance(img, int):
                    img = Polynomial.const(img)
                p = img ** e
            pow_cache[(key, e)] = p
            return p

        total: dict = {}
        for m, c in self.t.items():
            prod = Polynomial.const(c)
            for f, i, e in m:
                prod = prod * image_power((f, i), e)
            for mm, cc in prod.t.items():
                v = total.get(mm, 0) + cc
                if v:
                    total[mm] = v
                elif mm in total:
                    del total[mm]
        return Polynomial._raw(total)

    def set_zero(self, keys: Iterable[VarKey]) -> "Polynomial":
        return self.substitute({k: 0 for k in keys})

    # -- exact division ----------------------------------------------------

    def coeffs_in_var(self, key: VarKey) -> dict[int, "Polynomial"]:
        """Coefficients of powers of one variable (views self as univariate)."""
        out: dict[int, dict] = {}
        for m, c in self.t.items():
            e = 0
            rest = []
            for t in m:
                if (t[0], t[1]) == key:
                    e = t[2]
                else:
                    rest.append(t)
            out.setdefault(e, {})[tuple(rest)] = c
        return {e: Polynomial._raw(t) for e, t in out.items()}

    def div_exact_linear(self, key: VarKey, shift: "Polynomial") -> "Polynomial":
        """Exact division by (v - shift) where v is the variable `key`.

        `shift` must not involve v.  Raises ValueError if the division is not
        exact.  Implemented by synthetic division on powers of v.
        """
        if not self.t:
            return self
        coeffs = self.coeffs_in_var(key)
        d = max(coeffs)
        if d == 0:
            raise ValueError("dividend does not involve the division variable")
        v = Polynomial.var(key[0], key[1])
        q: dict[int, Polynomial] = {}
        carry = coeffs.get(d, Polynomial.zero())
        for k in range(d - 1, -1, -1):
            q[k] = carry
            carry = coeffs.get(k, Polynomial.zero()) + shift * carry
        if carry:
            raise ValueError("division is not exact")
        out = Polynomial.zero()
        for k, pk in q.items():
            out = out + pk * v ** k
        return out

    # -- display -----------------------------------------------------------

    def __repr__(self) -> str:
        return poly_to_text(self)


def poly_vars(*keys: VarKey) -> list[Polynomial]:
    return [Polynomial.var(f, i) for f, i in keys]


def cvar(k: int) -> Polynomial:
    return Polynomial.var(C, k)


def cpvar(k: int) -> Polynomial:
    return Polynomial.var(CPRIME, k)


def xvar(i: int) -> Polynomial:
    return Polynomial.var(X, i)


def yvar(i: int) -> Polynomial:
    return Polynomial.var(Y, i)


def ypvar(i: int) -> Polynomial:
    return Polynomial.var(YPRIME, i)


def zvar() -> Polynomial:
    return Polynomial.var(Z, 0)


def xivar(i: int) -> Polynomial:
    return Polynomial.var(XI, i)


ZERO = Polynomial.zero()
ONE = Polynomial.const(1)


class TruncatedSeries:
    """Graded series truncated at `cap`: components[d] is homogeneous of degree d."""

    __slots__ = ("cap", "comps")

    def __init__(self, comps: Iterable[Polynomial | int], cap: int | None = None):
        comps = [Polynomial.const(c) if isinstance(c, int) else c for c in comps]
        if cap is None:
            cap = len(comps) - 1
        comps = comps[:cap + 1]
        comps += [Polynomial.zero()] * (cap + 1 - len(comps))
        for d, p in enumerate(comps):
            if p and not all(mono_degree(m) == d for m in p.t):
                raise ValueError(f"component {d} is not homogeneous of degree {d}")
        self.cap = cap
        self.comps = comps

    def __getitem__(self, d: int) -> Polynomial:
        if d < 0:
            return Polynomial.zero()
        if d > self.cap:
            raise CapExceeded(f"component {d} beyond cap {self.cap}")
        return self.comps[d]

    def __eq__(self, other) -> bool:
        return (isinstance(other, TruncatedSeries) and self.cap == other.cap
                and self.comps == other.comps)

    @staticmethod
    def one(cap: int) -> "TruncatedSeries":
        return TruncatedSeries([Polynomial.const(1)], cap)

    @staticmethod
    def from_polynomial(p: Polynomial, cap: int) -> "TruncatedSeries":
        split = p.homogeneous_split()
        return TruncatedSeries([split.get(d, Polynomial.zero()) for d in range(cap + 1)], cap)

    def as_polynomial(self) -> Polynomial:
        out = Polynomial.zero()
        for p in self.comps:
            out = out + p
        return out

    def mul(self, other: "TruncatedSeries") -> "TruncatedSeries":
        cap = min(self.cap, other.cap)
        comps = []
        for d in range(cap + 1):
            acc = Polynomial.zero()
            for j in range(d + 1):
                a, b = self.comps[j], other.comps[d - j]
                if a and b:
                    acc = acc + a * b
            comps.append(acc)
        return TruncatedSeries(comps, cap)

    def invert(self) -> "TruncatedSeries":
        """Multiplicative inverse mod degree cap+1; requires component 0 == 1."""
        if self.comps[0] != Polynomial.const(1):
            raise NonUnitSeries("series has constant term != 1")
        inv = [Polynomial.const(1)]
        for d in range(1, self.cap + 1):
            acc = Polynomial.zero()
            for j in range(1, d + 1):
                if self.comps[j]:
                    acc = acc + self.comps[j] * inv[d - j]
            inv.append(-acc)
        return TruncatedSeries(inv, self.cap)

    def times_plus(self, u: Polynomial) -> "TruncatedSeries":
        """Multiply by (1 + u) for homogeneous u of positive degree."""
        d0 = u.degree()
        comps = list(self.comps)
        for d in range(self.cap, d0 - 1, -1):
            comps[d] = comps[d] + u * comps[d - d0]
        return TruncatedSeries(comps, self.cap)

    def times_inv_minus(self, v: Polynomial) -> "TruncatedSeries":
        """Multiply by 1/(1 - v) = 1 + v + v^2 + ... for homogeneous v."""
        d0 = v.degree()
        comps = list(self.comps)
        for d in range(d0, self.cap + 1):
            comps[d] = comps[d] + v * comps[d - d0]
        return TruncatedSeries(comps, self.cap)


def range_product(plus: Iterable[Polynomial], minus_inv: Iterable[Polynomial],
                  cap: int) -> TruncatedSeries:
    """The series prod (1+u) for u in `plus` times prod 1/(1-v) for v in `minus_inv`."""
    s = TruncatedSeries.one(cap)
    for u in plus:
        s = s.times_plus(u)
    for v in minus_inv:
        s = s.times_inv_minus(v)
    return s


def c_series(cap: int, fam: int = C) -> TruncatedSeries:
    """The tautological series 1 + c_1 + c_2 + ... (or c' for fam=CPRIME)."""
    return TruncatedSeries([Polynomial.const(1)] +
                           [Polynomial.var(fam, k) for k in range(1, cap + 1)], cap)


# -- serialization ----------------------------------------------------------

def poly_to_obj(p: Polynomial) -> dict:
    terms = []
    for m, c in p.terms_sorted():
        terms.append({"coeff": str(c),
                      "vars": [[FAMILY_NAMES[f], i, e] for f, i, e in m]})
    return {"terms": terms}


def poly_from_obj(obj: dict) -> Polynomial:
    out = Polynomial.zero()
    for term in obj["terms"]:
        mono = []
        for name, idx, exp in term["vars"]:
            fam = FAMILY_BY_NAME[name]
            check_var(fam, idx)
            if exp <= 0:
                raise ValueError("exponents must be positive")
            mono.append((fam, idx, exp))
        mono.sort(key=lambda t: (t[0], t[1]))
        out = out + Polynomial({tuple(mono): int(term["coeff"])})
    return out


def _factor_text(f: int, i: int, e: int) -> str:
    name = FAMILY_NAMES[f]
    s = name if f == Z else f"{name}{i}"
    if e != 1:
        s += f"^{e}"
    return s


def poly_to_text(p: Polynomial) -> str:
    if not p.t:
        return "0"
    parts = []
    for m, c in p.terms_sorted():
        factors = [_factor_text(*t) for t in m]
        mag = abs(c)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)
