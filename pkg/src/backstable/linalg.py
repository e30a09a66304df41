"""Exact linear algebra over Z and Q used by the triangular solves and quotients.

Nothing here is numerical: systems are solved with Fractions and results are
asserted integral, and quotient normal forms run on an integer echelon form of
the relation lattice.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Polynomial


class SystemInconsistent(Exception):
    """A linear system that the theory says is solvable failed to solve."""


class SystemUnderdetermined(Exception):
    """A linear system expected to have a unique solution has extra freedom."""


class BasisFailure(Exception):
    """A claimed quotient basis is dependent or fails to span over Z."""


def solve_rational(rows: list[list[int]], rhs: list, require_unique: bool = True):
    """Solve A x = b exactly over Q.  `rows` are the rows of A.

    Returns a list of Fractions.  Raises SystemInconsistent if no solution,
    SystemUnderdetermined if the solution is not unique (when required).
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    aug = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    pivots = []
    r = 0
    for col in range(n):
        pr = next((i for i in range(r, m) if aug[i][col] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][col]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            raise SystemInconsistent("inconsistent linear system")
    if require_unique and len(pivots) < n:
        raise SystemUnderdetermined(f"rank {len(pivots)} < {n} unknowns")
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = aug[i][n]
    return x


def _fp_add(a: dict, b: dict, scale: Fraction) -> dict:
    """a + scale*b for dicts monomial -> Fraction."""
    if not scale:
        return a
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + scale * c
        if v:
            out[m] = v
        elif m in out:
            del out[m]
    return out


def _fp_from_poly(p: Polynomial) -> dict:
    return {m: Fraction(c) for m, c in p.t.items()}


def _fp_to_poly(fp: dict) -> Polynomial:
    t = {}
    for m, c in fp.items():
        if c.denominator != 1:
            raise SystemInconsistent(f"non-integral coefficient {c} in solution")
        if c:
            t[m] = int(c)
    return Polynomial(t)


def solve_poly_rhs(rows: list[list[int]], rhs: list[Polynomial]) -> list[Polynomial]:
    """Solve A g = b where the unknowns g and the entries of b are polynomials.

    A is an integer matrix of full column rank.  The elimination runs over Q;
    the solution is asserted to have integer coefficients.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [[Fraction(v) for v in row] for row in rows]
    b = [_fp_from_poly(p) for p in rhs]
    perm_rows = list(range(m))
    r = 0
    pivots = []
    for col in range(n):
        pr = next((i for i in range(r, m) if a[i][col] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        b[r], b[pr] = b[pr], b[r]
        pv = a[r][col]
        a[r] = [v / pv for v in a[r]]
        b[r] = {k: v / pv for k, v in b[r].items()}
        for i in range(m):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [u - f * v for u, v in zip(a[i], a[r])]
                b[i] = _fp_add(b[i], b[r], -f)
        pivots.append(col)
        r += 1
    if len(pivots) < n:
        raise SystemUnderdetermined(f"rank {len(pivots)} < {n} unknowns")
    for i in range(r, m):
        if b[i]:
            raise SystemInconsistent("inconsistent polynomial-valued system")
    out = [Polynomial.zero()] * n
    for i, col in enumerate(pivots):
        out[col] = _fp_to_poly(b[i])
    return out


class QuotientSolver:
    """Normal forms in Z^keys / L for a relation lattice L, on a designated basis.

    `relations` generate L; `basis` is the claimed free Z-basis of the
    quotient.  Vectors are dicts key -> int.  Keys are eliminated in the given
    order; basis vectors carry tag coordinates (ordered after all main keys)
    so a pivot landing on a tag detects dependence of the basis mod L.
    """

    def __init__(self, relations: list[dict], basis: list[dict], key_order: list):
        self.key_pos = {k: i for i, k in enumerate(key_order)}
        self.nkeys = len(key_order)
        self.nbasis = len(basis)
        self.pivots: dict[int, dict[int, int]] = {}
        rows = [self._encode(v) for v in relations]
        rows += [self._encode(v, tag=i) for i, v in enumerate(basis)]
        for row in rows:
            self._insert(row)
        for pos in self.pivots:
            if pos >= self.nkeys:
                raise BasisFailure("basis vectors are dependent modulo the relations")

    def _encode(self, vec: dict, tag: int | None = None) -> dict[int, int]:
        row = {}
        for k, c in vec.items():
            if c:
                pos = self.key_pos.get(k)
                if pos is None:
                    raise KeyError(f"vector key {k!r} outside the ambient key set")
                row[pos] = c
        if tag is not None:
            row[self.nkeys + tag] = 1
        return row

    @staticmethod
    def _axpy(row: dict[int, int], other: dict[int, int], q: int) -> dict[int, int]:
        if not q:
            return row
        out = dict(row)
        for pos, c in other.items():
            v = out.get(pos, 0) - q * c
            if v:
                out[pos] = v
            elif pos in out:
                del out[pos]
        return out

    def _insert(self, row: dict[int, int]) -> None:
        while row:
            pos = min(row)
            piv = self.pivots.get(pos)
            if piv is None:
                if row[pos] < 0:
                    row = {p: -c for p, c in row.items()}
                self.pivots[pos] = row
                return
            # integer elimination at pos, Euclid on the leading entries
            while True:
                q = row[pos] // piv[pos]
                row = self._axpy(row, piv, q)
                if pos not in row:
                    break
                piv, row = row, piv
                if piv[pos] < 0:
                    piv = {p: -c for p, c in piv.items()}
                self.pivots[pos] = piv
                if pos not in row:
                    break

    def reduce(self, vec: dict) -> tuple[dict, list[int]]:
        """Reduce `vec` mod L and peel off the basis part.

        Returns (residue, coords); membership in L + Z-span(basis) holds iff
        residue is empty.  Raises BasisFailure if an integral reduction does
        not exist (divisibility failure).
        """
        row = self._encode(vec)
        for pos in sorted(self.pivots):
            c = row.get(pos)
            if not c:
                continue
            piv = self.pivots[pos]
            q, r = divmod(c, piv[pos])
            if r:
                raise BasisFailure(f"coefficient {c} not reducible by pivot {piv[pos]}")
            row = self._axpy(row, piv, q)
        coords = [0] * self.nbasis
        residue = {}
        for pos, c in row.items():
            if pos >= self.nkeys:
                coords[pos - self.nkeys] = -c
            else:
                residue[pos] = c
        res = {k: residue[p] for k, p in self.key_pos.items() if p in residue}
        return res, coords


def _gcd_normalize(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = _gcd(g, v)
        if g == 1:
            break
    if g > 1:
        row = {k: v // g for k, v in row.items()}
    lead = row[min(row)]
    if lead < 0:
        row = {k: -v for k, v in row.items()}
    return row


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


class IntEchelon:
    """Incremental fraction-free echelon form for integer rows (dicts col -> int)."""

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    def reduce(self, row: dict[int, int]) -> dict[int, int]:
        while row:
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                return row
            a, b = piv[c], row[c]
            # row <- a*row - b*piv  (kills column c, stays integral)
            new = {}
            for k, v in row.items():
                new[k] = a * v
            for k, v in piv.items():
                u = new.get(k, 0) - b * v
                if u:
                    new[k] = u
                elif k in new:
                    del new[k]
            row = _gcd_normalize(new) if new else new
        return row

    def insert(self, row: dict[int, int]) -> bool:
        row = self.reduce(dict(row))
        if not row:
            return False
        self.pivots[min(row)] = _gcd_normalize(row)
        return True


def solve_int_rows(rows, ncols: int) -> list[Fraction]:
    """Solve an integer system given as (coefficient dict, rhs int) pairs.

    The rhs is carried as an extra column with index `ncols`.  Requires a
    unique solution; raises SystemInconsistent / SystemUnderdetermined.
    """
    ech = IntEchelon()
    for coeffs, rhs in rows:
        row = dict(coeffs)
        if rhs:
            row[ncols] = -rhs  # constant column: the row reads sum(a_i x_i) - rhs = 0
        ech.insert(row)
    if ncols in ech.pivots:
        raise SystemInconsistent("inconsistent interpolation system")
    missing = [c for c in range(ncols) if c not in ech.pivots]
    if missing:
        raise SystemUnderdetermined(f"{len(missing)} free columns, e.g. {missing[:4]}")
    x = [Fraction(0)] * ncols
    for c in sorted(ech.pivots, reverse=True):
        row = ech.pivots[c]
        acc = Fraction(-row.get(ncols, 0))  # rhs sign: row encodes sum(a_i x_i) - rhs = 0
        for k, v in row.items():
            if k != c and k != ncols:
                acc -= v * x[k]
        x[c] = acc / row[c]
    return x


def det_int(rows: list[list[int]]) -> Fraction:
    """Exact determinant of an integer matrix (fraction-free enough for tests)."""
    n = len(rows)
    a = [[Fraction(v) for v in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pr = next((i for i in range(col, n) if a[i][col] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != col:
            a[col], a[pr] = a[pr], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for i in range(col + 1, n):
            if a[i][col]:
                f = a[i][col] * inv
                a[i] = [u - f * v for u, v in zip(a[i], a[col])]
    return det
