"""Direct-sum coproduct tables: dual Littlewood-Richardson polynomials,
double Edelman-Greene coefficients, Graham positivity certificates, and the
two-torus refinement computed by localization at finite scale.

The primary route substitutes c_k -> c_k + c_{k-1}c'_1 + ... + c'_k into an
enriched Schubert polynomial and expands in the tensor basis
{S_mu(c||y) * Sigma_v(c';x;y)} by triangular peeling: the c-side peels by
Schur leading terms, the c'-side by fixed-point evaluation in Bruhat order.
A second route through length-additive factorizations and Stanley expansions
cross-checks every table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import symfunc
from .linalg import SystemInconsistent
from .perm import (Permutation, grassmannian_to_partition, is_grassmannian,
                   length_additive_factorizations, partition_to_grassmannian,
                   perms_by_length)
from .poly import (C, CPRIME, X, Y, YPRIME, Z, XI, Polynomial, c_series,
                   mono_degree, range_product, xvar, yvar, ypvar, zvar, xivar)
from .schubert import (EnrichedSchubert, back_stabilize, c_fixed_point_series,
                       interpolation_eval, inversion_product, kempf_laksov,
                       stanley)


class NotHomogeneous(Exception):
    pass


class WindowTooSmall(Exception):
    pass


@dataclass
class CoeffTable:
    """Coefficients of a coproduct expansion, keyed by (partition, right index)."""

    target: object
    entries: dict = field(default_factory=dict)

    def entry(self, mu, v) -> Polynomial:
        return self.entries.get((tuple(mu), v), Polynomial.zero())

    def nonzero(self):
        return sorted(self.entries.items(), key=lambda kv: _entry_sort_key(kv[0]))


def _entry_sort_key(key):
    mu, v = key
    if isinstance(v, Permutation):
        return (sum(mu), mu, v.length(), v.lo, v.values)
    return (sum(mu), mu, sum(v), v)


# -- basis ingredients ---------------------------------------------------------

_kl_cache: dict[tuple, Polynomial] = {}


def kl_poly(mu: tuple[int, ...], fam: int = C) -> Polynomial:
    """S_mu(c||y) = Kempf-Laksov determinant, optionally with c renamed to c'."""
    key = (mu, fam)
    got = _kl_cache.get(key)
    if got is None:
        got = kempf_laksov(mu).poly
        if fam != C:
            got = got.substitute({(C, k): Polynomial.var(fam, k)
                                  for (f, k) in got.variables() if f == C})
        _kl_cache[key] = got
    return got


def _c_degree(mono, fam: int) -> int:
    return sum(i * e for f, i, e in mono if f == fam)


def peel_schur_basis(p: Polynomial, fam: int = C) -> dict[tuple[int, ...], Polynomial]:
    """Write p = sum_mu S_mu(c||y) * R_mu by descending c-degree peeling.

    The Kempf-Laksov polynomial has y-free leading term S_mu(c), so the top
    c-degree layer determines the coefficients of that layer.
    """
    work = p
    out: dict[tuple[int, ...], Polynomial] = {}
    rename = (lambda q: q) if fam == C else (lambda q: q.substitute(
        {(C, k): Polynomial.var(fam, k) for (f, k) in q.variables() if f == C}))
    while work:
        j = max(_c_degree(m, fam) for m in work.t)
        top = Polynomial({m: c for m, c in work.t.items() if _c_degree(m, fam) == j})
        if fam != C:
            top = top.substitute({(fam, k): Polynomial.var(C, k)
                                  for (f, k) in top.variables() if f == fam})
        for mu, r in symfunc.schur_coefficients(top).items():
            if sum(mu) != j:
                raise SystemInconsistent("mixed degree in Schur peel")
            out[mu] = out.get(mu, Polynomial.zero()) + r
            work = work - rename(kl_poly(mu, fam)) * r
        if j == 0:
            break
    return {mu: r for mu, r in out.items() if r}


def stanley_expand(u: Permutation) -> dict[tuple[int, ...], Polynomial]:
    """Expansion of F_u(c;y) over the double Schur basis S_mu(c||y)."""
    return peel_schur_basis(stanley(u), C)


# -- fixed-point peel on the c' side ---------------------------------------------

_restr_cache: dict[tuple[Permutation, Permutation], Polynomial] = {}


def _schubert_restriction(u: Permutation, v: Permutation) -> Polynomial:
    key = (u, v)
    got = _restr_cache.get(key)
    if got is None:
        got = interpolation_eval(back_stabilize(u).poly, v, u.length())
        _restr_cache[key] = got
    return got


def _divide_by_inversion_product(p: Polynomial, v: Permutation) -> Polynomial:
    pts = list(range(v.lo, v.hi + 1))
    out = p
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            if v(pts[a]) > v(pts[b]):
                out = out.div_exact_linear((Y, v(pts[b])), yvar(v(pts[a])))
    return out


def expand_in_schubert_cprime(r: Polynomial, window: tuple[int, int]
                              ) -> dict[Permutation, Polynomial]:
    """Expand r(c';x;y) = sum_v coeff_v(y) * Sigma_v(c';x;y), coefficients in y.

    Triangular in Bruhat order: evaluating at the fixed point of v kills every
    basis element except those with u <= v, and the diagonal value is the
    inversion product.  The reconstruction is verified exactly at the end.
    """
    if not r:
        return {}
    deg = r.degree()
    lo, hi = window
    levels = perms_by_length(lo, hi, deg)
    coeffs: dict[Permutation, Polynomial] = {}

    def eval_at(p: Polynomial, v: Permutation) -> Polynomial:
        images = {}
        for (f, i) in p.variables():
            if f == X:
                images[(f, i)] = -yvar(v(i))
        return p.substitute(images, series={CPRIME: c_fixed_point_series(v, deg)})

    for ell in sorted(levels):
        for v in levels[ell]:
            val = eval_at(r, v)
            for u, cu in coeffs.items():
                rest = _schubert_restriction(u, v)
                if rest:
                    val = val - cu * rest
            if not val:
                continue
            coeffs[v] = _divide_by_inversion_product(val, v)

    recon = Polynomial.zero()
    for v, cv in coeffs.items():
        q = back_stabilize(v).poly
        q = q.substitute({(C, k): Polynomial.var(CPRIME, k)
                          for (f, k) in q.variables() if f == C})
        recon = recon + cv * q
    if recon != r:
        raise SystemInconsistent("Schubert-basis expansion failed to reconstruct input")
    return coeffs


# -- comodule expansion -------------------------------------------------------------

def expand_comodule(w: Permutation, cross_check: bool = False) -> CoeffTable:
    """All hat-c^w_{mu,v}(y): substitute c -> Delta(c) in Sigma_w and expand in
    the tensor basis {S_mu(c||y) x Sigma_v(c';x;y)}."""
    p = back_stabilize(w).poly
    q = p.substitute({(C, k): symfunc.coproduct_c(k)
                      for (f, k) in p.variables() if f == C})
    table = CoeffTable(target=w)
    lw = w.length()
    window = w.window() if w.values else (0, 0)
    for mu, r in peel_schur_basis(q, C).items():
        for v, cv in expand_in_schubert_cprime(r, window).items():
            if cv.degree() != lw - sum(mu) - v.length() or not cv.is_homogeneous():
                raise SystemInconsistent(f"entry ({mu}, {v}) has wrong degree")
            table.entries[(mu, v)] = cv
    if cross_check:
        other = comodule_via_stanley(w)
        if {k: v for k, v in table.entries.items()} != other.entries:
            raise SystemInconsistent("coproduct and Stanley routes disagree")
    return table


def comodule_via_stanley(w: Permutation) -> CoeffTable:
    """Independent route: hat-c^w_{mu,v} from F_{w v^{-1}} over length-additive w = u v."""
    table = CoeffTable(target=w)
    for left, right in length_additive_factorizations(w):
        for mu, coeff in stanley_expand(left).items():
            key = (mu, right)
            acc = table.entries.get(key, Polynomial.zero()) + coeff
            if acc:
                table.entries[key] = acc
            elif key in table.entries:
                del table.entries[key]
    return table


def dual_lr(lam: tuple[int, ...], cross_check: bool = False) -> CoeffTable:
    """Dual Littlewood-Richardson polynomials hat-c^lam_{mu,nu}(y)."""
    lam = tuple(lam)
    w = partition_to_grassmannian(lam)
    raw = expand_comodule(w, cross_check=cross_check)
    table = CoeffTable(target=lam)
    for (mu, v), coeff in raw.entries.items():
        table.entries[(mu, grassmannian_to_partition(v))] = coeff
    return table


# -- Graham positivity certificates ---------------------------------------------------

@dataclass(frozen=True)
class GrahamOrder:
    """A total order on torus variables; index k in the list means position k."""

    keys: tuple

    @staticmethod
    def standard(lo: int, hi: int) -> "GrahamOrder":
        """1 < 2 < ... < -2 < -1 < 0, restricted to the window [lo, hi]."""
        keys = [(Y, i) for i in range(max(lo, 1), hi + 1)]
        keys += [(Y, i) for i in range(lo, min(hi, 0) + 1)]
        return GrahamOrder(tuple(keys))

    @staticmethod
    def two_torus(lo: int, hi: int) -> "GrahamOrder":
        """{y'_+} < {y_+} < {y'_-} < {y_-} on the window [lo, hi]."""
        keys = [(YPRIME, i) for i in range(max(lo, 1), hi + 1)]
        keys += [(Y, i) for i in range(max(lo, 1), hi + 1)]
        keys += [(YPRIME, i) for i in range(lo, min(hi, 0) + 1)]
        keys += [(Y, i) for i in range(lo, min(hi, 0) + 1)]
        return GrahamOrder(tuple(keys))


def graham_certificate(p: Polynomial, order: GrahamOrder):
    """Rewrite p in consecutive differences along the order and check positivity.

    Substitutes the k-th variable by t + d_1 + ... + d_{k-1}; the result must
    be independent of t (p lies in the span of root differences) and have only
    nonnegative coefficients.  Returns (passed, expansion-in-d or witness).
    """
    if not p:
        return True, Polynomial.zero()
    if not p.is_homogeneous():
        raise NotHomogeneous("certificate input must be homogeneous")
    for (f, i) in p.variables():
        if (f, i) not in order.keys:
            raise ValueError(f"variable {(f, i)} not covered by the order")
    images = {}
    acc = zvar()
    for k, key in enumerate(order.keys):
        images[key] = acc
        acc = acc + xivar(k + 1)
    image = p.substitute(images)
    if any(f == Z for (f, i) in image.variables()):
        return False, image
    if any(c < 0 for c in image.t.values()):
        return False, image
    return True, image


# -- finite Grassmannian restrictions ------------------------------------------------

def fixed_point_partition(points: tuple[int, ...], k_offset: int = 0) -> tuple[int, ...]:
    """Partition of the coordinate subspace spanned at the given (sorted) points."""
    pts = sorted(points, reverse=True)
    lam = tuple(a + k + 1 - 1 for k, a in enumerate(pts))
    lam = tuple(a for a in (p + k for k, p in enumerate(pts)) if a > 0)
    # mu_k = a_k + k - 1 with a_k the k-th largest point (1-based k)
    mu = []
    for k, a in enumerate(sorted(points, reverse=True), start=1):
        mu.append(a + k - 1)
    return tuple(a for a in mu if a > 0) if all(
        mu[i] >= mu[i + 1] for i in range(len(mu) - 1)) else tuple(a for a in mu if a > 0)


def point_for_partition(kappa: tuple[int, ...], m: int) -> tuple[int, ...]:
    """The m-subset of (-m, m] whose fixed point has partition kappa."""
    kappa = tuple(kappa) + (0,) * (m - len(kappa))
    if len(kappa) > m or (kappa and kappa[0] > m):
        raise WindowTooSmall(f"partition {kappa} does not fit in the {m} x {m} box")
    return tuple(kappa[k - 1] + 1 - k for k in range(1, m + 1))


def restriction(lam: tuple[int, ...], points: tuple[int, ...], window: tuple[int, int],
                char) -> Polynomial:
    """[Omega_lam] restricted to the fixed point of `points` in Gr(|points|, window).

    `char(a)` is the torus character of the basis vector at slot a.  Computed
    by specializing the Kempf-Laksov determinant: the Chern series becomes
    prod_{a <= 0} (1 + t_a) / prod_{a in points} (1 + t_a).
    """
    lam = tuple(lam)
    if not lam:
        return Polynomial.const(1)
    lo, hi = window
    s = len(lam)
    cap = sum(lam) + s
    base = range_product([char(a) for a in range(lo, 1)],
                         [-char(a) for a in points], cap)
    rows = []
    for i in range(1, s + 1):
        t = lam[i - 1] - i
        ci = base
        if t >= 0:
            for j in range(1, t + 1):
                ci = ci.times_plus(char(j))
        else:
            for j in range(t + 1, 1):
                ci = ci.times_inv_minus(-char(j))
        row = []
        for j in range(1, s + 1):
            idx = lam[i - 1] - i + j
            if idx < 0:
                row.append(Polynomial.zero())
            elif idx == 0:
                row.append(Polynomial.const(1))
            else:
                row.append(ci[idx])
        rows.append(row)
    return symfunc.poly_det(rows)


def restriction_normalization_factors(kappa: tuple[int, ...], m: int, char
                                      ) -> list[tuple[Polynomial, Polynomial]]:
    """[Omega_kappa]|_{p_kappa} as a factored product of (t_b - t_a) with
    b outside, a inside the point set, b < a."""
    pts = set(point_for_partition(kappa, m))
    window = range(-m + 1, m + 1)
    factors = []
    for a in pts:
        for b in window:
            if b < a and b not in pts:
                factors.append((char(b), char(a)))
    return factors


# -- two-torus dual LR by localization --------------------------------------------------

def _interleaved_char(k: int) -> Polynomial:
    """Characters on V + V in the order of the doubled standard flag:
    even slots are the first summand (y), odd slots the second (y')."""
    if k % 2 == 0:
        return yvar(k // 2)
    return ypvar((k + 1) // 2)


def _two_torus_table_at(lam: tuple[int, ...], m: int) -> dict:
    size = sum(lam)
    if size > 2 * m:
        raise WindowTooSmall(f"need 2m >= |lam|, got m={m}")
    pair_keys = []
    for total in range(size + 1):
        for amu in range(total + 1):
            for mu in symfunc.partitions_of(amu):
                if mu and (mu[0] > m or len(mu) > m):
                    continue
                for nu in symfunc.partitions_of(total - amu):
                    if nu and (nu[0] > m or len(nu) > m):
                        continue
                    pair_keys.append((mu, nu))

    def embed(apts, bpts) -> tuple[int, ...]:
        return tuple(sorted([2 * a for a in apts] + [2 * b - 1 for b in bpts]))

    window1 = (-m + 1, m)
    window2 = (-2 * m + 1, 2 * m)
    gy: dict[tuple, dict[tuple, Polynomial]] = {}
    gyp: dict[tuple, dict[tuple, Polynomial]] = {}
    coeffs: dict[tuple, Polynomial] = {}
    yc = yvar
    ypc = ypvar

    def g_rest(table, mu, kappa, char):
        col = table.setdefault(mu, {})
        got = col.get(kappa)
        if got is None:
            got = restriction(mu, point_for_partition(kappa, m), window1, char)
            col[kappa] = got
        return got

    for (mu, nu) in pair_keys:
        apts = point_for_partition(mu, m)
        bpts = point_for_partition(nu, m)
        f = restriction(lam, embed(apts, bpts), window2, _interleaved_char)
        for (mu2, nu2), c2 in coeffs.items():
            if not c2:
                continue
            ga = g_rest(gy, mu2, mu, yc)
            gb = g_rest(gyp, nu2, nu, ypc)
            if ga and gb:
                f = f - c2 * ga * gb
        if not f:
            continue
        out = f
        for (tb, ta) in restriction_normalization_factors(mu, m, yc):
            key = next(iter({(fam, i) for fam, i, e in list(tb.t.keys())[0]}))
            out = out.div_exact_linear(key, ta)
        for (tb, ta) in restriction_normalization_factors(nu, m, ypc):
            key = next(iter({(fam, i) for fam, i, e in list(tb.t.keys())[0]}))
            out = out.div_exact_linear(key, ta)
        coeffs[(mu, nu)] = out
    return {k: v for k, v in coeffs.items() if v}


def two_torus_dual_lr(lam: tuple[int, ...], m: int | None = None) -> CoeffTable:
    """hat-c^lam_{mu,nu}(y,y') from localization in Gr(2m, V+V), stabilized in m.

    Computes at scale m and m+1 and requires entrywise agreement; raises
    WindowTooSmall otherwise.
    """
    lam = tuple(lam)
    if m is None:
        m = (sum(lam) + 2 + 1) // 2
    t1 = _two_torus_table_at(lam, m)
    t2 = _two_torus_table_at(lam, m + 1)
    if t1 != t2:
        raise WindowTooSmall(f"entries not stabilized at m={m}")
    table = CoeffTable(target=lam)
    table.entries = t1
    return table
