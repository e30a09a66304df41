"""The ring Lambda = Z[c_1, c_2, ...] viewed as symmetric functions.

The c variables are the complete homogeneous generators (c_k = h_k), so a
polynomial supported on c monomials is the h-expansion of a symmetric
function.  Schur, elementary, monomial, and double monomial bases are
expansions into this canonical basis, computed exactly; transition solves run
over Q with integrality asserted.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .poly import C, CPRIME, XI, Polynomial, cvar, xivar


class NonIntegralCoefficient(Exception):
    """A coefficient that the theory says is integral came out fractional."""


# -- partitions ---------------------------------------------------------------

def partitions_of(n: int, max_part: int | None = None):
    """Partitions of n with parts bounded by max_part, in reverse-lex order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


def partitions_upto(n: int):
    for d in range(n + 1):
        yield from partitions_of(d)


def conjugate(lam: tuple[int, ...]) -> tuple[int, ...]:
    if not lam:
        return ()
    return tuple(sum(1 for a in lam if a > j) for j in range(lam[0]))


def contains(lam: tuple[int, ...], mu: tuple[int, ...]) -> bool:
    """mu subseteq lam as Young diagrams."""
    if len(mu) > len(lam):
        return False
    return all(m <= l for l, m in zip(lam, mu))


def is_partition(lam) -> bool:
    lam = tuple(lam)
    return all(a >= b for a, b in zip(lam, lam[1:])) and all(a > 0 for a in lam)


# -- concrete alphabets -------------------------------------------------------

@lru_cache(maxsize=None)
def h_in_alphabet(k: int, r: int) -> Polynomial:
    """h_k(xi_1..xi_r): sum of all degree-k monomials."""
    if k < 0:
        return Polynomial.zero()
    if k == 0:
        return Polynomial.const(1)
    out = {}
    for combo in itertools.combinations_with_replacement(range(1, r + 1), k):
        mono = []
        for i in sorted(set(combo)):
            mono.append((XI, i, combo.count(i)))
        out[tuple(mono)] = 1
    return Polynomial(out)


@lru_cache(maxsize=None)
def m_in_alphabet(lam: tuple[int, ...], r: int) -> Polynomial:
    """m_lam(xi_1..xi_r): symmetrized monomial."""
    if not lam:
        return Polynomial.const(1)
    if len(lam) > r:
        return Polynomial.zero()
    out = {}
    for positions in itertools.permutations(range(1, r + 1), len(lam)):
        expo = {}
        for pos, e in zip(positions, lam):
            expo[pos] = e
        mono = tuple((XI, i, expo[i]) for i in sorted(expo))
        out[mono] = 1
    return Polynomial(out)


def c_to_alphabet(p: Polynomial, r: int) -> Polynomial:
    """Substitute c_k -> h_k(xi_1..xi_r); other variables pass through."""
    images = {}
    for (f, i) in p.variables():
        if f == C:
            images[(f, i)] = h_in_alphabet(i, r)
        elif f == CPRIME:
            raise ValueError("c' variables have no alphabet image here")
    return p.substitute(images)


def alphabet_to_m_coords(p: Polynomial, r: int) -> dict[tuple[int, ...], Polynomial]:
    """m-basis coordinates of a xi-symmetric polynomial (coefficients may involve params).

    Reads off the coefficient of each dominant monomial xi_1^k1 xi_2^k2 ...;
    valid when p is symmetric in the alphabet and every xi-degree is <= r.
    """
    groups = p.coefficient_split(lambda f, i: f == XI)
    coords: dict[tuple[int, ...], Polynomial] = {}
    for mono, coeff in groups.items():
        expo = {i: e for _, i, e in mono}
        parts = tuple(sorted(expo.values(), reverse=True))
        if list(expo) == list(range(1, len(expo) + 1)) and tuple(expo[i] for i in sorted(expo)) == parts:
            coords[parts] = coeff
    return coords


# -- basis transitions --------------------------------------------------------

@lru_cache(maxsize=None)
def _m_to_h_degree(d: int) -> dict[tuple[int, ...], dict[tuple[int, ...], int]]:
    """For each partition lam of d, the h-expansion of m_lam (coefficients on h_rho)."""
    plist = list(partitions_of(d))
    r = max(d, 1)
    keys = plist  # m-coordinates indexed by partitions of d
    cols = []
    for rho in plist:
        hp = Polynomial.const(1)
        for part in rho:
            hp = hp * h_in_alphabet(part, r)
        coords = alphabet_to_m_coords(hp, r)
        cols.append([int(coords.get(kappa, Polynomial.zero()).t.get((), 0)) for kappa in keys])
    rows = [[cols[j][i] for j in range(len(plist))] for i in range(len(plist))]
    out = {}
    for lam in plist:
        rhs = [1 if kappa == lam else 0 for kappa in keys]
        sol = linalg.solve_rational(rows, rhs)
        expansion = {}
        for rho, a in zip(plist, sol):
            if a:
                if a.denominator != 1:
                    raise NonIntegralCoefficient(f"m_{lam} has fractional h-coefficient {a}")
                expansion[rho] = int(a)
        out[lam] = expansion
    return out


def monomial_to_h(lam: tuple[int, ...]) -> Polynomial:
    """m_lam written in the c (= h) basis."""
    lam = tuple(lam)
    if not lam:
        return Polynomial.const(1)
    expansion = _m_to_h_degree(sum(lam))[lam]
    out = Polynomial.zero()
    for rho, a in expansion.items():
        mono = Polynomial.const(a)
        for part in rho:
            mono = mono * cvar(part)
        out = out + mono
    return out


def c_monomial_partition(mono) -> tuple[int, ...] | None:
    """The partition rho with c_rho = mono, or None if mono involves non-c variables."""
    parts = []
    for f, i, e in mono:
        if f != C:
            return None
        parts.extend([i] * e)
    return tuple(sorted(parts, reverse=True))


def schur(lam: tuple[int, ...]) -> Polynomial:
    """Jacobi-Trudi: S_lam(c) = det(c_{lam_i - i + j})."""
    lam = tuple(lam)
    if not lam:
        return Polynomial.const(1)
    s = len(lam)
    rows = [[_c_or_unit(lam[i] - i + j) for j in range(s)] for i in range(s)]
    return poly_det(rows)


def _c_or_unit(k: int) -> Polynomial:
    if k < 0:
        return Polynomial.zero()
    if k == 0:
        return Polynomial.const(1)
    return cvar(k)


def elementary(i: int) -> Polynomial:
    """e_i = S_{1^i}(c)."""
    if i < 0:
        return Polynomial.zero()
    return schur((1,) * i)


def poly_det(rows: list[list[Polynomial]]) -> Polynomial:
    """Determinant of a matrix of polynomials, by first-row Laplace with memo."""
    n = len(rows)

    def minor(i: int, cols: tuple[int, ...], memo: dict) -> Polynomial:
        if i == n:
            return Polynomial.const(1)
        got = memo.get(cols)
        if got is not None:
            return got
        acc = Polynomial.zero()
        for pos, j in enumerate(cols):
            entry = rows[i][j]
            if entry:
                sub = minor(i + 1, cols[:pos] + cols[pos + 1:], memo)
                term = entry * sub
                acc = acc + (term if pos % 2 == 0 else -term)
        memo[cols] = acc
        return acc

    return minor(0, tuple(range(n)), {})


@lru_cache(maxsize=None)
def kostka(mu: tuple[int, ...], rho: tuple[int, ...]) -> int:
    """K_{mu,rho}: SSYT of shape mu and content rho.  h_rho = sum_mu K_{mu,rho} s_mu."""
    if sum(mu) != sum(rho):
        return 0
    if not rho:
        return 1 if not mu else 0
    last = rho[-1]
    total = 0
    for nu in _horizontal_strips_below(mu, last):
        total += kostka(nu, rho[:-1])
    return total


def _horizontal_strips_below(mu: tuple[int, ...], size: int):
    """Partitions nu <= mu with mu/nu a horizontal strip of the given size."""
    rows = len(mu)

    def rec(i: int, remaining: int, prefix: tuple[int, ...]):
        if i == rows:
            if remaining == 0:
                yield tuple(a for a in prefix if a > 0)
            return
        upper = mu[i]
        lower = mu[i + 1] if i + 1 < rows else 0
        # nu_i between lower-bound (strip condition: nu_i >= mu_{i+1}) and mu_i
        for nu_i in range(max(lower, upper - remaining), upper + 1):
            if prefix and nu_i > prefix[-1]:
                continue
            yield from rec(i + 1, remaining - (upper - nu_i), prefix + (nu_i,))

    yield from rec(0, size, ())


def schur_coefficients(p: Polynomial) -> dict[tuple[int, ...], Polynomial]:
    """Write p = sum_mu S_mu(c) * R_mu with R_mu free of c variables.

    Terms are grouped by their c-monomial h_rho and converted with Kostka
    numbers; exact because {S_mu} and {h_rho} are both Z-bases.
    """
    groups = p.coefficient_split(lambda f, i: f == C)
    out: dict[tuple[int, ...], Polynomial] = {}
    for mono, coeff in groups.items():
        rho = c_monomial_partition(mono)
        d = sum(rho)
        for mu in partitions_of(d):
            k = kostka(mu, rho)
            if k:
                out[mu] = out.get(mu, Polynomial.zero()) + k * coeff
    return {mu: r for mu, r in out.items() if r}


# -- Littlewood-Richardson oracle ----------------------------------------------

def lr_coefficient(lam: tuple[int, ...], mu: tuple[int, ...], nu: tuple[int, ...]) -> int:
    """c^lam_{mu,nu} by brute-force enumeration of LR skew tableaux of shape lam/mu."""
    if sum(lam) != sum(mu) + sum(nu) or not contains(lam, mu):
        return 0
    cells = []
    for i in range(len(lam)):
        start = mu[i] if i < len(mu) else 0
        for j in range(start, lam[i]):
            cells.append((i, j))
    # reading order: rows top to bottom, right to left (reverse reading word)
    cells.sort(key=lambda ij: (ij[0], -ij[1]))
    nrows = len(nu)
    content = [0] * (nrows + 1)
    filling: dict[tuple[int, int], int] = {}
    count = 0

    def ok(i: int, j: int, v: int) -> bool:
        # filled right-to-left: the right neighbor is already placed
        right = filling.get((i, j + 1))
        if right is not None and v > right:
            return False  # rows weakly increase left to right
        if i > 0 and j >= (mu[i - 1] if i - 1 < len(mu) else 0):
            up = filling.get((i - 1, j))
            if up is None or up >= v:
                return False  # columns strictly increase
        return True

    def rec(idx: int):
        nonlocal count
        if idx == len(cells):
            count += 1
            return
        i, j = cells[idx]
        for v in range(1, nrows + 1):
            if content[v] >= nu[v - 1]:
                continue
            if v > 1 and content[v] >= content[v - 1]:
                continue  # lattice word condition on the reverse reading word
            if not ok(i, j, v):
                continue
            filling[(i, j)] = v
            content[v] += 1
            rec(idx + 1)
            content[v] -= 1
            del filling[(i, j)]

    rec(0)
    return count


# -- double monomial functions ---------------------------------------------------

def elementary_of(vals: list[Polynomial], k: int) -> Polynomial:
    """e_k of a finite list of polynomial values."""
    if k < 0 or k > len(vals):
        return Polynomial.zero()
    e = [Polynomial.const(1)] + [Polynomial.zero()] * k
    for v in vals:
        for j in range(min(k, len(vals)), 0, -1):
            e[j] = e[j] + v * e[j - 1]
    return e[k]


def n_multiplicity(seq: tuple[int, ...]) -> Fraction:
    """n_alpha = r! / prod(multiplicities!)."""
    r = len(seq)
    denom = 1
    for v in set(seq):
        denom *= _factorial(seq.count(v))
    return Fraction(_factorial(r), denom)


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def double_monomial(lam: tuple[int, ...], a) -> Polynomial:
    """m_lam(xi|a) in the c basis: sum over (1^r) <= alpha <= lam of
    (n_lam/n_alpha) e_{lam/alpha}(a) m_alpha(xi), with a_0 = 0.

    `a` maps i >= 1 to the parameter polynomial a_i.  Integrality of the
    grouped coefficients is asserted.
    """
    lam = tuple(lam)
    if not lam:
        return Polynomial.const(1)
    if not is_partition(lam):
        raise ValueError(f"{lam} is not a partition")
    r = len(lam)
    n_lam = n_multiplicity(lam)
    avals = {i: a(i) for i in range(1, lam[0])}

    grouped: dict[tuple[int, ...], Polynomial] = {}
    for alpha in itertools.product(*[range(1, li + 1) for li in lam]):
        e_prod = Polynomial.const(1)
        for li, ai in zip(lam, alpha):
            e_prod = e_prod * elementary_of([avals[i] for i in range(1, li)], li - ai)
            if not e_prod:
                break
        if not e_prod:
            continue
        beta = tuple(sorted(alpha, reverse=True))
        grouped[beta] = grouped.get(beta, Polynomial.zero()) + e_prod

    out = Polynomial.zero()
    for beta, total in grouped.items():
        ratio = n_lam / n_multiplicity(beta)
        scaled = total * ratio.numerator
        try:
            scaled = scaled.exact_div_int(ratio.denominator)
        except ValueError as exc:
            raise NonIntegralCoefficient(f"m_{lam}(xi|a): coefficient of m_{beta}") from exc
        out = out + scaled * monomial_to_h(beta)
    return out


def coproduct_c(k: int) -> Polynomial:
    """Delta(c_k) = sum_{i+j=k} c_i c'_j, in the C and CPRIME families."""
    if k < 1:
        raise ValueError("k must be >= 1")
    out = cvar(k) + Polynomial.var(CPRIME, k)
    for i in range(1, k):
        out = out + cvar(i) * Polynomial.var(CPRIME, k - i)
    return out
