"""Exact dense matrix algebra over a field instance.

Covers commutators (Lie and group), row reduction and linear solving,
the commutator linear system ad_A, minimal and characteristic polynomials,
invariant factors via Smith normal form of tI - A over F_q[t] (with the
row transform tracked so similarity transports are constructive), Jordan
type over a splitting field, regularity, and regular commuting elements.

Matrix text format: rows separated by ';', entries by ',', entries in
element text form, e.g. "0,0;1,0".
"""

from __future__ import annotations

from dataclasses import dataclass

from . import polyring
from .errors import LimitExceeded
from .gf import Fe, FieldSpec, embed, field
from .polyring import (
    Poly,
    padd,
    pdivmod,
    pmul,
    pnormalize,
    pscale,
    psub,
    split_tokens,
)

MAX_SPLITTING_DEGREE = 32


class Mat:
    """Immutable dense matrix with entries in a fixed field."""

    __slots__ = ("spec", "rows")

    def __init__(self, spec: FieldSpec, rows):
        self.spec = spec
        self.rows = tuple(tuple(r) for r in rows)

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows) -> "Mat":
        return cls(spec, [[spec.el(x).idx for x in row] for row in rows])

    @classmethod
    def zeros(cls, spec: FieldSpec, n_rows: int, n_cols: int) -> "Mat":
        return cls(spec, [[0] * n_cols for _ in range(n_rows)])

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "Mat":
        one = spec.one_idx
        return cls(spec, [[one if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, spec: FieldSpec, n: int, c) -> "Mat":
        ci = spec.el(c).idx
        return cls(spec, [[ci if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_cols(cls, spec: FieldSpec, cols) -> "Mat":
        n = len(cols[0])
        return cls(spec, [[col[i] for col in cols] for i in range(n)])

    @classmethod
    def from_text(cls, spec: FieldSpec, text: str) -> "Mat":
        rows = []
        for row_text in text.strip().split(";"):
            rows.append([spec.parse(tok).idx for tok in split_tokens(row_text)])
        if len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix text")
        return cls(spec, rows)

    def to_text(self) -> str:
        return ";".join(
            ",".join(str(Fe(self.spec, x)) for x in row) for row in self.rows
        )

    # -- shape and access ----------------------------------------------------

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def at(self, i: int, j: int) -> Fe:
        return Fe(self.spec, self.rows[i][j])

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Mat"):
        if other.spec != self.spec:
            raise ValueError("mismatched fields")

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        if (self.n_rows, self.n_cols) != (other.n_rows, other.n_cols):
            raise ValueError("shape mismatch")
        add = self.spec.add
        return Mat(
            self.spec,
            [
                [add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        if (self.n_rows, self.n_cols) != (other.n_rows, other.n_cols):
            raise ValueError("shape mismatch")
        sub = self.spec.sub
        return Mat(
            self.spec,
            [
                [sub(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __neg__(self) -> "Mat":
        neg = self.spec.neg
        return Mat(self.spec, [[neg(a) for a in row] for row in self.rows])

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.n_cols != other.n_rows:
            raise ValueError("shape mismatch")
        mul, add = self.spec.mul, self.spec.add
        bcols = [other.col(j) for j in range(other.n_cols)]
        out = []
        for row in self.rows:
            out_row = []
            for bc in bcols:
                acc = 0
                for a, b in zip(row, bc):
                    if a and b:
                        acc = add(acc, mul(a, b))
                out_row.append(acc)
            out.append(out_row)
        return Mat(self.spec, out)

    def __mul__(self, other) -> "Mat":
        # scalar multiplication
        c = self.spec.el(other).idx
        mul = self.spec.mul
        return Mat(self.spec, [[mul(c, a) for a in row] for row in self.rows])

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Mat":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        if e < 0:
            return self.inverse() ** (-e)
        result = Mat.identity(self.spec, self.n_rows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def apply(self, v) -> tuple[int, ...]:
        """Matrix-vector product on a packed index vector."""
        mul, add = self.spec.mul, self.spec.add
        out = []
        for row in self.rows:
            acc = 0
            for a, b in zip(row, v):
                if a and b:
                    acc = add(acc, mul(a, b))
            out.append(acc)
        return tuple(out)

    def transpose(self) -> "Mat":
        return Mat(self.spec, zip(*self.rows))

    def trace(self) -> Fe:
        add = self.spec.add
        acc = 0
        for i in range(self.n_rows):
            acc = add(acc, self.rows[i][i])
        return Fe(self.spec, acc)

    @property
    def is_zero(self) -> bool:
        return all(all(a == 0 for a in row) for row in self.rows)

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.spec == other.spec
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.spec.p, self.spec.k, self.rows))

    def __repr__(self):
        return "Mat(%r, %s)" % (self.spec, self.to_text())

    def det(self) -> Fe:
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        spec = self.spec
        m = [list(r) for r in self.rows]
        n = len(m)
        det = spec.one_idx
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c]), None)
            if piv is None:
                return spec.zero
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = spec.neg(det)
            det = spec.mul(det, m[c][c])
            inv = spec.inv(m[c][c])
            for i in range(c + 1, n):
                if m[i][c]:
                    f = spec.mul(m[i][c], inv)
                    m[i] = [spec.sub(a, spec.mul(f, b)) for a, b in zip(m[i], m[c])]
        return Fe(spec, det)

    def inverse(self) -> "Mat":
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        n = self.n_rows
        one = self.spec.one_idx
        aug = [
            list(row) + [one if i == j else 0 for j in range(n)]
            for i, row in enumerate(self.rows)
        ]
        reduced, _, pivots = _rref_rows(self.spec, aug)
        if pivots[:n] != tuple(range(n)):
            raise ValueError("singular matrix")
        return Mat(self.spec, [row[n:] for row in reduced])

    def is_invertible(self) -> bool:
        return self.is_square and bool(self.det())


def block_diag(spec: FieldSpec, blocks) -> Mat:
    """Direct sum of square blocks."""
    n = sum(b.n_rows for b in blocks)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.n_rows):
            for j in range(b.n_cols):
                rows[off + i][off + j] = b.rows[i][j]
        off += b.n_rows
    return Mat(spec, rows)


def companion(f: Poly) -> Mat:
    """Companion matrix of a monic polynomial (subdiagonal 1s, last column)."""
    if not f.is_monic or f.degree < 1:
        raise ValueError("companion matrix requires a monic polynomial of degree >= 1")
    spec = f.spec
    m = f.degree
    one = spec.one_idx
    rows = [[0] * m for _ in range(m)]
    for i in range(1, m):
        rows[i][i - 1] = one
    for i in range(m):
        rows[i][m - 1] = spec.neg(f.coeffs[i])
    return Mat(spec, rows)


# -- commutators -------------------------------------------------------------

def lie_commutator(a: Mat, b: Mat) -> Mat:
    """AB - BA; its trace is always zero."""
    if not (a.is_square and b.is_square and a.n_rows == b.n_rows):
        raise ValueError("shape mismatch")
    return a @ b - b @ a


def group_commutator(x: Mat, y: Mat) -> Mat:
    """x^-1 y^-1 x y; the determinant of the result is 1."""
    return x.inverse() @ y.inverse() @ x @ y


# -- row reduction and linear solving ----------------------------------------

def _rref_rows(spec: FieldSpec, rows):
    """In-place RREF of a list of row lists; returns (rows, rank, pivots).

    Pivoting is deterministic: columns scanned left to right, first row
    with a nonzero entry wins.
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    sub, mul, inv = spec.sub, spec.mul, spec.inv
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        iv = inv(rows[r][c])
        if rows[r][c] != spec.one_idx:
            rows[r] = [mul(iv, a) for a in rows[r]]
        for i in range(n_rows):
            f = rows[i][c]
            if f and i != r:
                prow = rows[r]
                rows[i] = [sub(a, mul(f, b)) for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, r, tuple(pivots)


@dataclass(frozen=True)
class RrefResult:
    matrix: Mat
    rank: int
    pivots: tuple[int, ...]


def rref(m: Mat) -> RrefResult:
    rows, rank, pivots = _rref_rows(m.spec, [list(r) for r in m.rows])
    return RrefResult(Mat(m.spec, rows), rank, pivots)


def rank(m: Mat) -> int:
    return rref(m).rank


def kernel_basis(m: Mat) -> list[tuple[int, ...]]:
    """Basis of the right kernel as packed index vectors (deterministic)."""
    spec = m.spec
    rows, _, pivots = _rref_rows(spec, [list(r) for r in m.rows])
    n_cols = m.n_cols
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        vec = [0] * n_cols
        vec[free] = spec.one_idx
        for r, pc in enumerate(pivots):
            vec[pc] = spec.neg(rows[r][free])
        basis.append(tuple(vec))
    return basis


def solve_affine(m: Mat, b):
    """Full solution set of m x = b.

    Returns None when inconsistent, else (particular, kernel_basis) with
    packed index vectors.
    """
    spec = m.spec
    b = [spec.el(x).idx if not isinstance(x, int) else x for x in b]
    if len(b) != m.n_rows:
        raise ValueError("shape mismatch")
    aug = [list(row) + [bv] for row, bv in zip(m.rows, b)]
    rows, _, pivots = _rref_rows(spec, aug)
    n_cols = m.n_cols
    if pivots and pivots[-1] == n_cols:
        return None
    particular = [0] * n_cols
    for r, pc in enumerate(pivots):
        particular[pc] = rows[r][n_cols]
    return tuple(particular), kernel_basis(m)


# -- the commutator linear system --------------------------------------------

def ad_matrix(a: Mat) -> Mat:
    """Matrix of B -> AB - BA acting on row-major vectorized matrices."""
    if not a.is_square:
        raise ValueError("ad of a non-square matrix")
    spec = a.spec
    n = a.n_rows
    sub = spec.sub
    rows = []
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n)
            for k in range(n):
                row[k * n + j] = a.rows[i][k]
            for l in range(n):
                row[i * n + l] = sub(row[i * n + l], a.rows[l][j])
            rows.append(row)
    return Mat(spec, rows)


def _vec(m: Mat) -> tuple[int, ...]:
    return tuple(x for row in m.rows for x in row)


def _unvec(spec: FieldSpec, v, n: int) -> Mat:
    return Mat(spec, [v[i * n : (i + 1) * n] for i in range(n)])


@dataclass(frozen=True)
class AffineMatSpace:
    """An affine space of matrices: particular + span(basis)."""

    particular: Mat
    basis: tuple[Mat, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def member(self, coeffs) -> Mat:
        spec = self.particular.spec
        out = self.particular
        for c, b in zip(coeffs, self.basis):
            out = out + b * spec.el(c)
        return out

    def contains(self, m: Mat) -> bool:
        diff = m - self.particular
        if not self.basis:
            return diff.is_zero
        spec = m.spec
        cols = Mat.from_cols(spec, [_vec(b) for b in self.basis])
        return solve_affine(cols, _vec(diff)) is not None


def commutator_solutions(a: Mat, c: Mat):
    """The affine space of B with AB - BA = C, or None if inconsistent."""
    if not (a.is_square and c.is_square and a.n_rows == c.n_rows):
        raise ValueError("shape mismatch")
    n = a.n_rows
    sol = solve_affine(ad_matrix(a), _vec(c))
    if sol is None:
        return None
    particular, kernel = sol
    return AffineMatSpace(
        _unvec(a.spec, particular, n),
        tuple(_unvec(a.spec, v, n) for v in kernel),
    )


def centralizer_dimension(a: Mat) -> int:
    """dim of {Z : AZ = ZA} as a vector space."""
    return a.n_rows**2 - rref(ad_matrix(a)).rank


# -- minimal polynomial -------------------------------------------------------

def min_poly(a: Mat) -> Poly:
    """Monic minimal polynomial via per-vector annihilators (Krylov chains)."""
    if not a.is_square:
        raise ValueError("minimal polynomial of a non-square matrix")
    spec = a.spec
    n = a.n_rows
    m = Poly.one(spec)
    for start in range(n):
        if m.degree == n:
            break
        v = tuple(spec.one_idx if i == start else 0 for i in range(n))
        ann = _vector_annihilator(spec, a, v)
        g = polyring.gcd(m, ann)
        m = (m * ann) // g
    return m.monic()


def _vector_annihilator(spec: FieldSpec, a: Mat, v) -> Poly:
    """Smallest monic g with g(A) v = 0."""
    n = a.n_rows
    sub, mul, inv = spec.sub, spec.mul, spec.inv
    # echelon rows paired with their expression over the Krylov vectors
    ech: list[tuple[int, list[int], list[int]]] = []  # (pivot, vec, rep)
    cur = list(v)
    j = 0
    while True:
        rep = [0] * (j + 1)
        rep[j] = spec.one_idx
        w = list(cur)
        for pivot, evec, erep in ech:
            f = w[pivot]
            if f:
                w = [sub(x, mul(f, y)) for x, y in zip(w, evec)]
                for idx, rc in enumerate(erep):
                    if rc:
                        rep[idx] = sub(rep[idx], mul(f, rc))
        piv = next((i for i in range(n) if w[i]), None)
        if piv is None:
            # 0 = sum_i rep[i] A^i v with rep[j] = 1: rep is the annihilator
            return Poly(spec, pnormalize(rep))
        iv = inv(w[piv])
        w = [mul(iv, x) for x in w]
        rep = [mul(iv, x) for x in rep]
        ech.append((piv, w, rep))
        cur = list(a.apply(cur))
        j += 1


# -- Smith normal form over F_q[t], invariant factors, transports -------------

@dataclass(frozen=True)
class InvariantFactors:
    """Nontrivial invariant factors d_1 | d_2 | ... | d_s of tI - A."""

    factors: tuple[Poly, ...]

    @property
    def minimal(self) -> Poly:
        return self.factors[-1]

    def __iter__(self):
        return iter(self.factors)

    def __eq__(self, other):
        return isinstance(other, InvariantFactors) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)


def _char_matrix(a: Mat):
    """tI - A as a polynomial matrix (entries are coefficient tuples)."""
    spec = a.spec
    n = a.n_rows
    neg, one = spec.neg, spec.one_idx
    m = []
    for i in range(n):
        row = []
        for j in range(n):
            c0 = neg(a.rows[i][j])
            if i == j:
                row.append(pnormalize((c0, one)))
            else:
                row.append(pnormalize((c0,)))
        m.append(row)
    return m


def _snf_diag(spec: FieldSpec, m, track: bool):
    """Smith normal form of polynomial matrix m (mutated).

    Returns (diag, uinv) where diag are monic diagonal entries in
    divisibility order and uinv is the inverse of the accumulated row
    transform (or None), so that column i of uinv generates the i-th
    cyclic summand of the cokernel.
    """
    n = len(m)
    one = (spec.one_idx,)
    uinv = None
    if track:
        uinv = [[one if i == j else () for j in range(n)] for i in range(n)]

    def uinv_col_addmul(dst: int, src: int, q):
        # row_src -= q * row_dst on m  <=>  col_dst += q * col_src on uinv
        for r in range(n):
            x = uinv[r][src]
            if x and q:
                uinv[r][dst] = padd(spec, uinv[r][dst], pmul(spec, q, x))

    for d in range(n):
        while True:
            # min-degree nonzero entry in the trailing submatrix
            best = None
            for i in range(d, n):
                for j in range(d, n):
                    e = m[i][j]
                    if e and (best is None or len(e) < len(m[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return _snf_finish(spec, m, uinv, d)
            bi, bj = best
            if bi != d:
                m[bi], m[d] = m[d], m[bi]
                if track:
                    for r in range(n):
                        uinv[r][bi], uinv[r][d] = uinv[r][d], uinv[r][bi]
            if bj != d:
                for row in m:
                    row[bj], row[d] = row[d], row[bj]
            pivot = m[d][d]
            dirty = False
            for i in range(d + 1, n):
                if m[i][d]:
                    q, r = pdivmod(spec, m[i][d], pivot)
                    if q:
                        for jj in range(d, n):
                            if m[d][jj]:
                                m[i][jj] = psub(spec, m[i][jj], pmul(spec, q, m[d][jj]))
                        if track:
                            uinv_col_addmul(d, i, q)
                    if r:
                        dirty = True
            for j in range(d + 1, n):
                if m[d][j]:
                    q, r = pdivmod(spec, m[d][j], pivot)
                    if q:
                        for ii in range(d, n):
                            if m[ii][d]:
                                m[ii][j] = psub(spec, m[ii][j], pmul(spec, q, m[ii][d]))
                    if r:
                        dirty = True
            if dirty:
                continue
            # row d and column d are clear; enforce divisibility of the rest
            bad = None
            for i in range(d + 1, n):
                for j in range(d + 1, n):
                    if m[i][j] and pdivmod(spec, m[i][j], pivot)[1]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # fold the offending row into the pivot row and reduce again
            for jj in range(d, n):
                if m[bad][jj]:
                    m[d][jj] = padd(spec, m[d][jj], m[bad][jj])
            if track:
                # row_d += row_bad  <=>  col_bad -= col_d on uinv
                for r in range(n):
                    x = uinv[r][d]
                    if x:
                        uinv[r][bad] = psub(spec, uinv[r][bad], x)
    return _snf_finish(spec, m, uinv, n)


def _snf_finish(spec: FieldSpec, m, uinv, filled: int):
    n = len(m)
    diag = []
    for i in range(n):
        e = m[i][i] if i < filled else ()
        if e and e[-1] != spec.one_idx:
            lead_inv = spec.inv(e[-1])
            e = pscale(spec, e, lead_inv)
            if uinv is not None:
                # scaling row i by u  <=>  scaling col i of uinv by u^-1
                lead = spec.inv(lead_inv)
                for r in range(n):
                    if uinv[r][i]:
                        uinv[r][i] = pscale(spec, uinv[r][i], lead)
        diag.append(e)
    return diag, uinv


def invariant_factors(a: Mat) -> InvariantFactors:
    """Invariant factors of A from the SNF of tI - A; similarity invariant."""
    if not a.is_square:
        raise ValueError("invariant factors of a non-square matrix")
    diag, _ = _snf_diag(a.spec, _char_matrix(a), track=False)
    facs = [Poly(a.spec, e) for e in diag if len(e) > 1]
    if not facs:
        raise AssertionError("tI - A always has a nontrivial factor")
    return InvariantFactors(tuple(facs))


def char_poly(a: Mat) -> Poly:
    """Characteristic polynomial as the product of the invariant factors."""
    out = Poly.one(a.spec)
    for f in invariant_factors(a).factors:
        out = out * f
    return out


def is_similar(a: Mat, b: Mat) -> bool:
    return invariant_factors(a) == invariant_factors(b)


def _rcf_generators(a: Mat):
    """Cyclic generators and their annihilators d_1 | ... | d_s."""
    spec = a.spec
    n = a.n_rows
    diag, uinv = _snf_diag(spec, _char_matrix(a), track=True)
    gens = []
    factors = []
    for i, e in enumerate(diag):
        if len(e) <= 1:
            continue
        factors.append(Poly(spec, e))
        # evaluate column i of uinv at A (Horner on vector coefficients)
        col = [uinv[r][i] for r in range(n)]
        maxdeg = max((len(c) - 1 for c in col if c), default=0)
        v = tuple([0] * n)
        for deg in range(maxdeg, -1, -1):
            v = a.apply(v)
            v = tuple(
                spec.add(x, col[r][deg] if len(col[r]) > deg else 0)
                for r, x in enumerate(v)
            )
        gens.append(v)
    return gens, factors


def rcf_transform(a: Mat):
    """(P, factors) with P^-1 A P the direct sum of companion(d_i)."""
    spec = a.spec
    gens, factors = _rcf_generators(a)
    cols = []
    for g, f in zip(gens, factors):
        v = g
        for _ in range(f.degree):
            cols.append(v)
            v = a.apply(v)
    p = Mat.from_cols(spec, cols)
    return p, factors


def similarity_transform(a: Mat, b: Mat):
    """A matrix g with g^-1 A g = B, or None when A and B are not similar."""
    if invariant_factors(a) != invariant_factors(b):
        return None
    pa, _ = rcf_transform(a)
    pb, _ = rcf_transform(b)
    return pa @ pb.inverse()


def primary_data(a: Mat, seed: int = 0):
    """Primary decomposition data: sorted tuple of (irreducible, partition).

    The partition entries are the multiplicities of the irreducible in the
    invariant factors, descending.
    """
    inf = invariant_factors(a)
    spec = a.spec
    out = []
    for f, _ in polyring.factor(inf.minimal, seed):
        parts = []
        for d in inf.factors:
            mult = 0
            while True:
                q, r = divmod(d, f)
                if not r.is_zero:
                    break
                d = q
                mult += 1
            if mult:
                parts.append(mult)
        parts.sort(reverse=True)
        out.append((f, tuple(parts)))
    out.sort(key=lambda fp: (fp[0].degree, fp[0].coeffs))
    return tuple(out)


# -- Jordan type over a splitting field ----------------------------------------

@dataclass(frozen=True)
class JordanType:
    """Eigenvalues in a stated splitting field with descending block sizes."""

    spec: FieldSpec  # splitting field
    entries: tuple  # of (Fe eigenvalue, tuple block sizes descending)

    def all_sizes(self):
        return [s for _, sizes in self.entries for s in sizes]

    def total(self) -> int:
        return sum(self.all_sizes())


def embed_mat(a: Mat, target: FieldSpec) -> Mat:
    return Mat(target, [[embed(Fe(a.spec, x), target).idx for x in row] for row in a.rows])


def poly_at_matrix(f: Poly, a: Mat) -> Mat:
    """Evaluate a polynomial at a square matrix (Horner)."""
    if f.spec != a.spec:
        raise ValueError("mismatched fields")
    n = a.n_rows
    out = Mat.zeros(a.spec, n, n)
    for c in reversed(f.coeffs):
        out = out @ a + Mat.scalar(a.spec, n, Fe(a.spec, c))
    return out


def splitting_field(a: Mat, seed: int = 0, max_degree: int = MAX_SPLITTING_DEGREE):
    """The splitting field of char(A) and the irreducible factor data."""
    spec = a.spec
    inf = invariant_factors(a)
    data = primary_data(a, seed)
    m = 1
    for f, _ in data:
        m = _lcm(m, f.degree)
    if spec.k * m > max_degree:
        raise LimitExceeded(
            "splitting field degree %d exceeds limit %d" % (spec.k * m, max_degree)
        )
    ext = field(spec.p, spec.k * m)
    return ext, data, inf


def _lcm(a: int, b: int) -> int:
    import math

    return a * b // math.gcd(a, b)


def jordan_type(a: Mat, seed: int = 0) -> JordanType:
    """Jordan type over the splitting field of the characteristic polynomial.

    Per eigenvalue, the block-size partition counts blocks of size >= j as
    rank((A - xI)^(j-1)) - rank((A - xI)^j); it is read off here from the
    multiplicities of the eigenvalue's irreducible in the invariant factors,
    which give the same partition.
    """
    if not a.is_square:
        raise ValueError("jordan type of a non-square matrix")
    ext, data, _ = splitting_field(a, seed)
    entries = []
    for f, parts in data:
        lifted = Poly.from_coeffs(
            ext, [embed(Fe(a.spec, c), ext) for c in f.coeffs]
        )
        for root in polyring.roots(lifted, seed):
            entries.append((root, parts))
    entries.sort(key=lambda e: e[0].idx)
    return JordanType(ext, tuple(entries))


def jordan_transform(a: Mat, seed: int = 0):
    """(P, J, blocks, ext): P^-1 (A over ext) P = J in upper Jordan form.

    blocks is the list of (eigenvalue, size) in the order they appear in J.
    """
    ext, _, _ = splitting_field(a, seed)
    a_e = embed_mat(a, ext) if ext != a.spec else a
    gens, factors = _rcf_generators(a_e)
    cols = []
    blocks = []
    for g, d in zip(gens, factors):
        for lam, mult in _linear_factorization(d, seed):
            cof = d // (Poly.from_coeffs(ext, [-lam, ext.one]) ** mult)
            h = poly_at_matrix(cof, a_e).apply(g)
            shift = a_e - Mat.scalar(ext, a_e.n_rows, lam)
            chain = [h]
            for _ in range(mult - 1):
                chain.append(shift.apply(chain[-1]))
            cols.extend(reversed(chain))
            blocks.append((lam, mult))
    p = Mat.from_cols(ext, cols)
    j = _jordan_matrix(ext, blocks)
    return p, j, blocks, ext


def _linear_factorization(d: Poly, seed: int):
    """Factor a polynomial that splits into linear factors; sorted by root."""
    out = []
    for g, m in polyring.factor(d, seed):
        if g.degree != 1:
            raise AssertionError("polynomial does not split over its field")
        out.append((Fe(d.spec, d.spec.neg(g.coeffs[0])), m))
    out.sort(key=lambda lm: lm[0].idx)
    return out


def _jordan_matrix(spec: FieldSpec, blocks) -> Mat:
    n = sum(m for _, m in blocks)
    rows = [[0] * n for _ in range(n)]
    off = 0
    one = spec.one_idx
    for lam, m in blocks:
        for i in range(m):
            rows[off + i][off + i] = lam.idx
            if i + 1 < m:
                rows[off + i][off + i + 1] = one
        off += m
    return Mat(spec, rows)


# -- regularity ----------------------------------------------------------------

def is_regular(a: Mat) -> bool:
    """True iff the minimal polynomial has degree n.

    Equivalently the centralizer has dimension n; the equivalence is
    exercised by the verification suites.
    """
    if not a.is_square:
        raise ValueError("regularity of a non-square matrix")
    return min_poly(a).degree == a.n_rows


def regular_commuting(a: Mat, seed: int = 0) -> Mat:
    """A regular matrix commuting with A.

    Construction: bring A to Jordan form over the splitting field, replace
    each Jordan block J of eigenvalue lam by (mu - lam) I + J with pairwise
    distinct shifts mu, and conjugate back.  The field is extended further
    (transparently) when it has fewer elements than there are blocks.
    """
    p, j, blocks, ext = jordan_transform(a, seed)
    if ext.q < len(blocks):
        # need at least one distinct shift per block
        grow = 2
        while ext.q**grow < len(blocks):
            grow += 1
        bigger = field(ext.p, ext.k * grow)
        a2 = embed_mat(a, bigger)
        return regular_commuting(a2, seed)
    shifted = []
    for mu_idx, (lam, m) in enumerate(blocks):
        mu = Fe(ext, mu_idx)
        block = _jordan_matrix(ext, [(lam, m)]) + Mat.scalar(ext, m, mu - lam)
        shifted.append(block)
    r_j = block_diag(ext, shifted)
    return p @ r_j @ p.inverse()
