"""Enriched Schubert polynomials on the infinite flag variety.

The class of the codimension-l(w) Schubert locus is a polynomial in the Chern
series c, the flag variables x, and the torus variables y.  It is constructed
here by back-stabilization: specializing c to the window series
c^(m) = prod_{-m < i <= 0} (1+y_i)/(1-x_i) must reproduce the finite double
Schubert polynomial of the shifted permutation, and that requirement has a
unique homogeneous solution.

The finite double Schubert polynomials S_w(x;-y) are computed from reduced
pipe dreams (ladder-move closure of the bottom dream); a divided-difference
implementation from the top class is kept alongside as a small-window
cross-check.  An interpolation solver through torus fixed points provides an
independent oracle for the back-stabilized polynomials.

Sign convention: the value at the fixed point of w itself is the inversion
product prod_{i<j, w(i)>w(j)} (y_{w(j)} - y_{w(i)}).  This orientation is the
one consistent with the Kempf-Laksov determinant (checked in the tests).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg, symfunc
from .linalg import SystemInconsistent, SystemUnderdetermined
from .perm import (Permutation, Triple, bruhat_leq, is_grassmannian,
                   lambda_of_triple, length_additive_factorizations,
                   partition_to_grassmannian, perms_by_length,
                   triple_to_permutation)
from .poly import (C, CPRIME, X, Y, YPRIME, Polynomial, TruncatedSeries,
                   c_series, cvar, range_product, xvar, yvar, ypvar)
from .symfunc import partitions_of, poly_det


class WindowTooSmall(Exception):
    pass


# -- finite double Schubert polynomials: pipe dreams --------------------------

def _lehmer_code(vals: tuple[int, ...]) -> list[int]:
    n = len(vals)
    return [sum(1 for j in range(i + 1, n) if vals[j] < vals[i]) for i in range(n)]


def _ladder_moves(cells: frozenset, n: int):
    """Bergeron-Billey ladder moves on a pipe dream inside the S_n staircase."""
    for (i, j) in cells:
        if (i, j + 1) in cells:
            continue
        m = i - 1
        while m >= 1 and (m, j) in cells and (m, j + 1) in cells:
            m -= 1
        if m >= 1 and (m, j) not in cells and (m, j + 1) not in cells:
            if m + j + 1 <= n:
                yield cells - {(i, j)} | {(m, j + 1)}


def pipe_dreams(vals: tuple[int, ...]) -> set[frozenset]:
    """All reduced pipe dreams of the permutation [vals] of {1..n}."""
    code = _lehmer_code(vals)
    bottom = frozenset((i + 1, j + 1) for i, c in enumerate(code) for j in range(c))
    n = len(vals)
    seen = {bottom}
    frontier = [bottom]
    while frontier:
        nxt = []
        for d in frontier:
            for d2 in _ladder_moves(d, n):
                if d2 not in seen:
                    seen.add(d2)
                    nxt.append(d2)
        frontier = nxt
    return seen


def double_schubert_finite(w: Permutation, window: tuple[int, int]) -> Polynomial:
    """S_w(x;-y) on the window, as a sum over pipe dreams of prod (x_i + y_j)."""
    lo, hi = window
    if w.values and (w.lo < lo or w.hi > hi):
        raise WindowTooSmall(f"{w} not supported in [{lo},{hi}]")
    vals = tuple(w(i) - lo + 1 for i in range(lo, hi + 1))
    total = Polynomial.zero()
    for dream in pipe_dreams(vals):
        term = Polynomial.const(1)
        for (i, j) in dream:
            term = term * (xvar(lo - 1 + i) + yvar(lo - 1 + j))
        total = total + term
    return total


# -- finite double Schubert polynomials: divided differences -------------------

_dd_cache: dict = {}


def divided_difference(f: Polynomial, i: int) -> Polynomial:
    """d_i f = (f - s_i f)/(x_i - x_{i+1}), exact."""
    swapped = f.substitute({(X, i): xvar(i + 1), (X, i + 1): xvar(i)})
    g = f - swapped
    if not g:
        return Polynomial.zero()
    return g.div_exact_linear((X, i), xvar(i + 1))


def double_schubert_dd(w: Permutation, window: tuple[int, int]) -> Polynomial:
    """Divided-difference recursion from the top class prod_{i+j<=n} (x_i + y_j).

    Small windows only; serves as the independent cross-check of the
    pipe-dream route.
    """
    lo, hi = window
    if w.values and (w.lo < lo or w.hi > hi):
        raise WindowTooSmall(f"{w} not supported in [{lo},{hi}]")
    n = hi - lo + 1
    vals = tuple(w(i) for i in range(lo, hi + 1))
    key = (lo, hi, vals)
    got = _dd_cache.get(key)
    if got is not None:
        return got
    ascent = next((i for i in range(lo, hi) if w(i) < w(i + 1)), None)
    if ascent is None:  # longest element
        out = Polynomial.const(1)
        for a in range(1, n):
            for b in range(1, n + 1 - a):
                out = out * (xvar(lo - 1 + a) + yvar(lo - 1 + b))
    else:
        s = Permutation.s(ascent)
        out = divided_difference(double_schubert_dd(w * s, window), ascent)
    _dd_cache[key] = out
    return out


# -- Chern series specializations ----------------------------------------------

def c_window_series(m: int, cap: int) -> TruncatedSeries:
    """c^(m) = prod_{i=-m+1}^{0} (1+y_i)/(1-x_i)."""
    return range_product([yvar(i) for i in range(-m + 1, 1)],
                         [xvar(i) for i in range(-m + 1, 1)], cap)


def c_fixed_point_series(v: Permutation, cap: int) -> TruncatedSeries:
    """c^v = prod over sign changes of (1+y_{v(j)})/(1+y_{v(i)})."""
    ups = [i for i in range(min(v.lo, 1), 1) if v(i) > 0]
    downs = [j for j in range(1, max(v.hi, 0) + 1) if v(j) <= 0]
    return range_product([yvar(v(j)) for j in downs],
                         [-yvar(v(i)) for i in ups], cap)


def gamma_c_series(m: int, cap: int) -> TruncatedSeries:
    """The image of the series c under gamma^m."""
    if m >= 0:
        factor = range_product([yvar(i) for i in range(1, m + 1)],
                               [xvar(i) for i in range(1, m + 1)], cap)
    else:
        factor = range_product([-xvar(i) for i in range(m + 1, 1)],
                               [-yvar(i) for i in range(m + 1, 1)], cap)
    return c_series(cap).mul(factor)


def omega_c_series(cap: int) -> TruncatedSeries:
    """omega(c) = 1/(1 - c_1 + c_2 - ...)."""
    alt = TruncatedSeries([Polynomial.const(1)] +
                          [(-1) ** k * cvar(k) for k in range(1, cap + 1)], cap)
    return alt.invert()


# -- enriched Schubert polynomials ----------------------------------------------

@dataclass(frozen=True)
class EnrichedSchubert:
    w: Permutation
    poly: Polynomial

    @property
    def degree(self) -> int:
        return self.w.length()

    def window(self) -> tuple[int, int]:
        return self.w.window()


_bs_cache: dict[Permutation, EnrichedSchubert] = {}


def back_stabilize(w: Permutation) -> EnrichedSchubert:
    """The enriched Schubert polynomial of w, from its defining specialization.

    Translate w into positive support, match the finite double Schubert
    polynomial under c -> c^(m) with m = l(w), and solve for the coefficients;
    the c-monomial images have leading parts h_alpha in the fresh variables
    x_{<=0}, which makes the system triangular degree by degree.
    """
    got = _bs_cache.get(w)
    if got is not None:
        return got
    d = w.length()
    if d == 0:
        result = EnrichedSchubert(w, Polynomial.const(1))
        _bs_cache[w] = result
        return result
    shift = max(0, 1 - w.lo)
    v = w.gamma(shift)
    m = d
    window = (-m + 1, v.hi)
    target = double_schubert_finite(v, window)
    t0 = target.set_zero([(Y, i) for i in range(-m + 1, 1)])
    groups = t0.coefficient_split(lambda f, i: f == X and i <= 0)

    poly = Polynomial.zero()
    for j in range(d + 1):
        plist = list(partitions_of(j))
        rhs = []
        for mu in plist:
            mono = tuple(sorted(((X, 1 - k, mu[k - 1]) for k in range(1, len(mu) + 1)),
                                key=lambda t: t[1]))
            rhs.append(groups.get(mono, Polynomial.zero()))
        if not any(rhs) and j > 0:
            continue
        rows = [[_h_mono_coeff(alpha, mu) for alpha in plist] for mu in plist]
        sol = linalg.solve_poly_rhs(rows, rhs)
        for alpha, g in zip(plist, sol):
            if g:
                calpha = Polynomial.const(1)
                for part in alpha:
                    calpha = calpha * cvar(part)
                poly = poly + calpha * g
    bad = [k for k in poly.variables() if k[0] in (X, Y) and k[1] <= 0]
    if bad:
        raise SystemInconsistent(f"solution leaked stabilization variables {bad[:3]}")
    if shift:
        poly = gamma_translate(poly, -shift)
    result = EnrichedSchubert(w, poly)
    _bs_cache[w] = result
    return result


def _h_mono_coeff(alpha: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """Coefficient of the dominant monomial xi^mu in h_alpha."""
    if sum(alpha) != sum(mu):
        return 0
    r = max(len(mu), 1)
    prod = Polynomial.const(1)
    for part in alpha:
        prod = prod * symfunc.h_in_alphabet(part, r)
    coords = symfunc.alphabet_to_m_coords(prod, r)
    val = coords.get(mu)
    return int(val.t.get((), 0)) if val else 0


# -- ring symmetries ---------------------------------------------------------------

def gamma_translate(p: Polynomial, m: int) -> Polynomial:
    """The translation automorphism: x_i -> x_{i+m}, y_i -> y_{i+m}, c -> gamma^m(c)."""
    if m == 0 or not p:
        return p
    cap = p.degree()
    images = {}
    for (f, i) in p.variables():
        if f in (X, Y):
            images[(f, i)] = Polynomial.var(f, i + m)
    return p.substitute(images, series={C: gamma_c_series(m, cap)})


def omega_dual(p: Polynomial) -> Polynomial:
    """The duality involution: x_i -> -x_{1-i}, y_i -> -y_{1-i}, c -> omega(c)."""
    if not p:
        return p
    cap = p.degree()
    images = {}
    for (f, i) in p.variables():
        if f in (X, Y):
            images[(f, i)] = -Polynomial.var(f, 1 - i)
    return p.substitute(images, series={C: omega_c_series(cap)})


def specialize_c_to_one(p: Polynomial) -> Polynomial:
    """The projection c -> 1, i.e. every c_k -> 0."""
    return p.set_zero([k for k in p.variables() if k[0] == C])


def stanley(w: Permutation) -> Polynomial:
    """Double Stanley symmetric function F_w(c;y): set x_i = -y_i."""
    p = back_stabilize(w).poly
    return p.substitute({(X, i): -yvar(i) for (f, i) in p.variables() if f == X})


# -- fixed-point interpolation --------------------------------------------------

def inversion_product(w: Permutation) -> Polynomial:
    """Value of the Schubert class at its own fixed point (resolved orientation)."""
    out = Polynomial.const(1)
    pts = list(range(w.lo, w.hi + 1))
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            if w(pts[a]) > w(pts[b]):
                out = out * (yvar(w(pts[b])) - yvar(w(pts[a])))
    return out


def interpolation_eval(p: Polynomial, v: Permutation, cap: int | None = None) -> Polynomial:
    """Restriction to the fixed point of v: c -> c^v, x_i -> -y_{v(i)}."""
    if not p:
        return p
    if cap is None:
        cap = p.degree()
    images = {}
    for (f, i) in p.variables():
        if f == X:
            images[(f, i)] = -yvar(v(i))
    return p.substitute(images, series={C: c_fixed_point_series(v, cap)})


def interpolation_solve(w: Permutation, sample_set: list[Permutation] | None = None
                        ) -> EnrichedSchubert:
    """Independent oracle: solve for the polynomial from its fixed-point values.

    Conditions: homogeneous of degree l(w), supported on the window variables,
    zero at every fixed point v with l(v) <= l(w) and v != w, and equal to the
    inversion product at w.  For Grassmannian w the candidate space is x-free
    (the class is pulled back from the Grassmannian).
    """
    d = w.length()
    if d == 0:
        return EnrichedSchubert(w, Polynomial.const(1))
    lo, hi = w.window()
    linear_vars = [(Y, i) for i in range(lo, hi + 1)]
    if not is_grassmannian(w):
        linear_vars += [(X, i) for i in range(lo, hi + 1)]
    candidates = _graded_monomials(d, linear_vars)

    for widen in range(3):
        if sample_set is None:
            levels = perms_by_length(lo - widen, hi + widen, d)
            samples = [v for vs in levels.values() for v in vs]
        else:
            samples = sample_set
        try:
            sol = _interpolation_system(w, candidates, samples, d)
        except SystemUnderdetermined:
            if sample_set is not None or widen == 2:
                raise
            continue
        return EnrichedSchubert(w, sol)
    raise SystemUnderdetermined("interpolation samples never pinned the class")


def _graded_monomials(d: int, linear_vars: list) -> list[tuple[tuple[int, ...], tuple]]:
    """Candidate monomials c^alpha * m of graded degree d, as (alpha, m) pairs."""
    out = []
    for j in range(d + 1):
        for alpha in partitions_of(j):
            for mono in _monomials_of_degree(linear_vars, d - j):
                out.append((alpha, mono))
    return out


def _monomials_of_degree(keys: list, deg: int):
    if deg == 0:
        yield ()
        return
    if not keys:
        return
    f, i = keys[0]
    for e in range(deg, 0, -1):
        for tail in _monomials_of_degree(keys[1:], deg - e):
            yield tuple(sorted(((f, i, e),) + tail))
    yield from _monomials_of_degree(keys[1:], deg)


def _interpolation_system(w: Permutation, candidates: list,
                          samples: list[Permutation], d: int) -> Polynomial:
    from .poly import mono_mul

    ncols = len(candidates)
    rows = []
    norm = inversion_product(w)
    for v in samples:
        if v != w and bruhat_leq(w, v):
            continue  # only v = w or v not >= w occur at length <= d; guard anyway
        series = c_fixed_point_series(v, d)
        alpha_img: dict[tuple[int, ...], Polynomial] = {(): Polynomial.const(1)}

        def c_image(alpha: tuple[int, ...]) -> Polynomial:
            got = alpha_img.get(alpha)
            if got is None:
                got = c_image(alpha[:-1]) * series[alpha[-1]]
                alpha_img[alpha] = got
            return got

        row_groups: dict[tuple, dict[int, int]] = {}
        for idx, (alpha, mono) in enumerate(candidates):
            # image of the linear part: x_i -> -y_{v(i)}, y_i unchanged
            sign = 1
            lin = ()
            for f, i, e in mono:
                if f == X:
                    sign *= (-1) ** e
                    lin = mono_mul(lin, ((Y, v(i), e),))
                else:
                    lin = mono_mul(lin, ((f, i, e),))
            for m, c in c_image(alpha).t.items():
                key = mono_mul(m, lin)
                grp = row_groups.setdefault(key, {})
                grp[idx] = grp.get(idx, 0) + sign * c
        rhs = norm if v == w else Polynomial.zero()
        keys = set(row_groups) | set(rhs.t)
        for mono in keys:
            coeffs = {i: c for i, c in row_groups.get(mono, {}).items() if c}
            rows.append((coeffs, rhs.t.get(mono, 0)))
    sol = linalg.solve_int_rows(rows, ncols)
    out = Polynomial.zero()
    for a, (alpha, mono) in zip(sol, candidates):
        if a:
            if a.denominator != 1:
                raise SystemInconsistent(f"fractional interpolation coefficient {a}")
            term = Polynomial({mono: int(a)})
            for part in alpha:
                term = term * cvar(part)
            out = out + term
    return out


# -- determinantal formulas --------------------------------------------------------

def kempf_laksov(lam: tuple[int, ...]) -> EnrichedSchubert:
    """det(c(i)_{lam_i - i + j}) with c(i) = c * c^T(V_{<= lam_i - i} - V_{<= 0})."""
    lam = tuple(lam)
    w = partition_to_grassmannian(lam)
    if not lam:
        return EnrichedSchubert(w, Polynomial.const(1))
    s = len(lam)
    cap = lam[0] + s
    base = c_series(cap)
    series = []
    for i in range(1, s + 1):
        t = lam[i - 1] - i
        if t >= 0:
            ci = base
            for j in range(1, t + 1):
                ci = ci.times_plus(yvar(j))
        else:
            ci = base
            for j in range(t + 1, 1):
                ci = ci.times_inv_minus(-yvar(j))
        series.append(ci)
    rows = [[series[i][lam[i] - (i + 1) + (j + 1)]
             if 0 <= lam[i] - (i + 1) + (j + 1) <= cap else Polynomial.zero()
             for j in range(s)] for i in range(s)]
    for i in range(s):
        for j in range(s):
            if lam[i] - (i + 1) + (j + 1) == 0:
                rows[i][j] = Polynomial.const(1)
    return EnrichedSchubert(w, poly_det(rows))


def vexillary_det(tau: Triple) -> EnrichedSchubert:
    """S_lambda(c(1),...,c(k_s)) with c(k) = c * a(p_i, q_i), i minimal with k_i >= k."""
    lam = lambda_of_triple(tau)
    w = triple_to_permutation(tau)
    if not lam:
        return EnrichedSchubert(w, Polynomial.const(1))
    ks = tau.k[-1]
    cap = sum(lam) + ks + max(lam)
    columns = []
    for k in range(1, ks + 1):
        i = next(idx for idx, ki in enumerate(tau.k) if ki >= k)
        p, q = tau.p[i], tau.q[i]
        plus, minus_inv = [], []
        if p <= 0:
            plus += [-xvar(i2) for i2 in range(p + 1, 1)]
        else:
            minus_inv += [xvar(i2) for i2 in range(1, p + 1)]
        if q >= 0:
            plus += [yvar(j2) for j2 in range(1, q + 1)]
        else:
            minus_inv += [-yvar(j2) for j2 in range(q + 1, 1)]
        columns.append(c_series(cap).mul(range_product(plus, minus_inv, cap)))
    lam_padded = list(lam) + [0] * (ks - len(lam))
    rows = []
    for k in range(1, ks + 1):
        row = []
        for l in range(1, ks + 1):
            idx = lam_padded[k - 1] + l - k
            if idx < 0:
                row.append(Polynomial.zero())
            elif idx == 0:
                row.append(Polynomial.const(1))
            else:
                row.append(columns[k - 1][idx])
        rows.append(row)
    det = poly_det(rows)
    return EnrichedSchubert(w, det)


# -- identities -----------------------------------------------------------------------

def inverse_identity_check(w: Permutation) -> bool:
    """Sigma_w(c;x;y) == Sigma_{w^{-1}}(omega(c); y; x)."""
    lhs = back_stabilize(w).poly
    q = back_stabilize(w.inverse()).poly
    cap = max(q.degree(), 0)
    images = {}
    for (f, i) in q.variables():
        if f == X:
            images[(f, i)] = yvar(i)
        elif f == Y:
            images[(f, i)] = xvar(i)
    rhs = q.substitute(images, series={C: omega_c_series(cap)})
    return lhs == rhs


def cauchy_check(w: Permutation) -> bool:
    """Sigma_w(c c'; x; y) == sum over v u = w (additive) of
    Sigma_u(c;x;t) Sigma_v(c';-t;y), with t an auxiliary alphabet."""
    p = back_stabilize(w).poly
    lhs = p.substitute({(C, k): symfunc.coproduct_c(k)
                        for (f, k) in p.variables() if f == C})
    rhs = Polynomial.zero()
    for left, right in length_additive_factorizations(w):
        a = back_stabilize(right).poly
        a = a.substitute({(Y, i): ypvar(i) for (f, i) in a.variables() if f == Y})
        b = back_stabilize(left).poly
        images = {}
        for (f, i) in b.variables():
            if f == C:
                images[(f, i)] = Polynomial.var(CPRIME, i)
            elif f == X:
                images[(f, i)] = -ypvar(i)
        b = b.substitute(images)
        rhs = rhs + a * b
    return lhs == rhs


def finite_schubert_neq0(w: Permutation) -> Polynomial:
    """S_w(x;-y) for w in S_{!=0}: omega(S_{omega(w_-)}) * S_{w_+}."""
    wm, wp = w.split_neq0()
    if wp.is_identity():
        pos = Polynomial.const(1)
    else:
        pos = double_schubert_finite(wp, wp.window())
    if wm.is_identity():
        neg = Polynomial.const(1)
    else:
        om = wm.omega()
        q = double_schubert_finite(om, om.window())
        images = {}
        for (f, i) in q.variables():
            images[(f, i)] = -Polynomial.var(f, 1 - i)
        neg = q.substitute(images)
    return neg * pos


def projection_check(w: Permutation) -> bool:
    """c -> 1 kills Sigma_w unless w preserves signs, where it gives S_w(x;-y)."""
    proj = specialize_c_to_one(back_stabilize(w).poly)
    if not w.in_s_neq0():
        return not proj
    return proj == finite_schubert_neq0(w)


def gamma_check(w: Permutation, m: int) -> bool:
    return gamma_translate(back_stabilize(w).poly, m) == back_stabilize(w.gamma(m)).poly


def omega_check(w: Permutation) -> bool:
    return omega_dual(back_stabilize(w).poly) == back_stabilize(w.omega()).poly


def vanishing_check(w: Permutation, v: Permutation) -> bool:
    """Restriction at v vanishes iff v does not dominate w (at v = w: the product)."""
    val = interpolation_eval(back_stabilize(w).poly, v)
    if v == w:
        return val == inversion_product(w)
    if not bruhat_leq(w, v):
        return not val
    return True


def defining_specialization_check(w: Permutation, m: int | None = None) -> bool:
    """substitute(Sigma_w, c -> c^(m)) equals the finite S of the shifted window."""
    shift = max(0, 1 - w.lo)
    v = w.gamma(shift)
    d = w.length()
    if m is None:
        m = d
    bs = back_stabilize(v).poly
    lhs = bs.substitute(series={C: c_window_series(m, max(d, 0))})
    rhs = double_schubert_finite(v, (-m + 1, max(v.hi, 1)))
    return lhs == rhs
