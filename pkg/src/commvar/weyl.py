"""Matrix pairs with Lie commutator equal to the identity in characteristic p.

Constructs the p x p generator pairs (subdiagonal/superdiagonal form), the
block matrices X(a_1..a_r) and Y of size n = p*r, the affine family of all
solutions Y' of [X, Y'] = I, the generic split pairs, and the closed-form
component-dimension arithmetic for the associated varieties.

Sign convention: the superdiagonal of B carries -1, -2, ..., -(p-1) so that
[A, B] = +I exactly for every p (with entries +1, ..., p-1 the commutator
is -I when p is odd; the two conventions differ by (A, B) -> (A, -B)).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .gf import Fe, FieldSpec
from .matgf import (
    AffineMatSpace,
    Mat,
    commutator_solutions,
    is_regular,
    lie_commutator,
    poly_at_matrix,
)
from .polyring import Poly


@dataclass(frozen=True)
class WeylPair:
    """A p x p pair with [A, B] = I, A^p and B^p scalar."""

    p: int
    alpha: Fe
    beta: Fe
    a: Mat
    b: Mat

    def algebra_dimension(self) -> int:
        """Dimension of the unital algebra generated by {A, B}.

        The span of the products A^i B^j for 0 <= i, j < p; the Weyl
        relation rewrites every word into this span.
        """
        from .matgf import _rref_rows, _vec

        spec = self.a.spec
        p = self.p
        rows = []
        apow = Mat.identity(spec, p)
        for _ in range(p):
            cur = apow
            for _ in range(p):
                rows.append(list(_vec(cur)))
                cur = cur @ self.b
            apow = apow @ self.a
        return _rref_rows(spec, rows)[1]

    def central_scalars(self) -> tuple[Fe, Fe]:
        """(alpha^p, beta^p): the scalars by which A^p and B^p act."""
        return self.alpha**self.p, self.beta**self.p


def weyl_pair(spec: FieldSpec, alpha, beta) -> WeylPair:
    """The standard p x p pair over a field of characteristic p.

    A has 1s on the subdiagonal and alpha^p in the top-right corner;
    B is beta I plus the superdiagonal -1, -2, ..., -(p-1).
    """
    p = spec.p
    alpha = spec.el(alpha)
    beta = spec.el(beta)
    one = spec.one_idx
    a_rows = [[0] * p for _ in range(p)]
    for i in range(1, p):
        a_rows[i][i - 1] = one
    a_rows[0][p - 1] = spec.add(a_rows[0][p - 1], (alpha**p).idx)
    b_rows = [[0] * p for _ in range(p)]
    for i in range(p):
        b_rows[i][i] = beta.idx
        if i + 1 < p:
            b_rows[i][i + 1] = spec.el(-(i + 1)).idx
    a, b = Mat(spec, a_rows), Mat(spec, b_rows)
    pair = WeylPair(p, alpha, beta, a, b)
    ident = Mat.identity(spec, p)
    if lie_commutator(a, b) != ident:
        raise AssertionError("construction violates [A,B] = I")
    if a**p != Mat.scalar(spec, p, alpha**p) or b**p != Mat.scalar(spec, p, beta**p):
        raise AssertionError("construction violates the scalar action of A^p, B^p")
    return pair


def nilpotent_generators(spec: FieldSpec) -> tuple[Mat, Mat]:
    """(A0, B0): the alpha = beta = 0 pair; both regular nilpotent."""
    pair = weyl_pair(spec, 0, 0)
    return pair.a, pair.b


@dataclass(frozen=True)
class BlockPair:
    """The n = p*r block pair: [X, Y] = I with X regular."""

    p: int
    r: int
    scalars: tuple[Fe, ...]
    x: Mat
    y: Mat


def build_block_pair(spec: FieldSpec, r: int, scalars=None) -> BlockPair:
    """X(a_1..a_r): diagonal blocks A0 + a_i I, superdiagonal blocks B0^(p-1);
    Y: diagonal blocks B0.  Scalars default to zero."""
    p = spec.p
    if r < 1:
        raise ValueError("r must be positive")
    if scalars is None:
        scalars = [spec.zero] * r
    scalars = tuple(spec.el(s) for s in scalars)
    if len(scalars) != r:
        raise ValueError("expected %d scalars, got %d" % (r, len(scalars)))
    a0, b0 = nilpotent_generators(spec)
    bp = b0 ** (p - 1)
    n = p * r
    x_rows = [[0] * n for _ in range(n)]
    y_rows = [[0] * n for _ in range(n)]
    for blk in range(r):
        off = blk * p
        s = scalars[blk].idx
        for i in range(p):
            for j in range(p):
                x_rows[off + i][off + j] = a0.rows[i][j]
                y_rows[off + i][off + j] = b0.rows[i][j]
            x_rows[off + i][off + i] = spec.add(x_rows[off + i][off + i], s)
            if blk + 1 < r:
                for j in range(p):
                    x_rows[off + i][off + p + j] = bp.rows[i][j]
    x, y = Mat(spec, x_rows), Mat(spec, y_rows)
    if lie_commutator(x, y) != Mat.identity(spec, n):
        raise AssertionError("construction violates [X,Y] = I")
    if r >= 2 and (x**p).is_zero:
        raise AssertionError("X^p vanished; it must not for r >= 2")
    return BlockPair(p, r, scalars, x, y)


@dataclass(frozen=True)
class KernelActionRecord:
    """Outcome of the nilpotent two-block kernel computation."""

    p: int
    l_matrix: Mat
    multiplier: Fe
    multiplier_ok: bool
    xp_matches_l: bool
    xp_nonzero: bool

    @property
    def ok(self) -> bool:
        return self.multiplier_ok and self.xp_matches_l and self.xp_nonzero


def kernel_action_check(pair: BlockPair) -> KernelActionRecord:
    """For the r = 2 nilpotent pair: L = sum A0^k B0^(p-1) A0^(p-1-k) maps
    e_p to a nonzero multiple of itself, and X^p = [[0, L], [0, 0]] != 0.

    The multiple is (-1)^(p-1) (p-1)!, which is -1 for every p by the
    Wilson congruence under this module's sign convention.
    """
    if pair.r != 2 or any(s != s.spec.zero for s in pair.scalars):
        raise ValueError("kernel action check requires r = 2 with zero scalars")
    spec = pair.x.spec
    p = pair.p
    a0, b0 = nilpotent_generators(spec)
    bp = b0 ** (p - 1)
    l = Mat.zeros(spec, p, p)
    for k in range(p):
        l = l + (a0**k) @ bp @ (a0 ** (p - 1 - k))
    e_last = tuple([0] * (p - 1) + [spec.one_idx])
    image = l.apply(e_last)
    mult = Fe(spec, image[p - 1])
    eigen_ok = bool(mult) and image[: p - 1] == tuple([0] * (p - 1))
    xp = pair.x**p
    match = True
    for i in range(p):
        for j in range(p):
            if xp.rows[i][p + j] != l.rows[i][j]:
                match = False
            if xp.rows[i][j] != 0 or xp.rows[p + i][j] != 0 or xp.rows[p + i][p + j] != 0:
                match = False
    return KernelActionRecord(
        p=p,
        l_matrix=l,
        multiplier=mult,
        multiplier_ok=eigen_ok and mult == spec.el(-1),
        xp_matches_l=match,
        xp_nonzero=not (xp.is_zero),
    )


@dataclass(frozen=True)
class SolutionFamily:
    """All solutions of [X, Y'] = I as {Y + f(X) : deg f <= n - 1}."""

    x: Mat
    y: Mat
    degree_bound: int
    space: AffineMatSpace

    @property
    def dim(self) -> int:
        return self.space.dim

    def member(self, f: Poly) -> Mat:
        if f.degree > self.degree_bound:
            raise ValueError("polynomial degree exceeds the family bound")
        return self.y + poly_at_matrix(f, self.x)

    def decompose(self, candidate: Mat):
        """Recover f with candidate = Y + f(X), or None if not in the family."""
        from .matgf import Mat as _M
        from .matgf import _vec, solve_affine

        spec = self.x.spec
        n = self.x.n_rows
        cols = []
        cur = Mat.identity(spec, n)
        for _ in range(n):
            cols.append(_vec(cur))
            cur = cur @ self.x
        system = _M.from_cols(spec, cols)
        sol = solve_affine(system, _vec(candidate - self.y))
        if sol is None:
            return None
        return Poly(spec, sol[0])

    def sample(self, count: int, seed: int = 0) -> list[Mat]:
        """Seeded members drawn from the affine solution space."""
        spec = self.x.spec
        rng = random.Random(seed)
        return [
            self.space.member([rng.randrange(spec.q) for _ in range(self.space.dim)])
            for _ in range(count)
        ]


def solution_family(x: Mat, y: Mat) -> SolutionFamily:
    """The family of all Y' with [X, Y'] = I, verified against the linear system.

    Checks that the affine space of solutions has dimension exactly n, that
    Y is a member, and that the kernel of ad_X is spanned by I, X, ..., X^(n-1).
    """
    spec = x.spec
    n = x.n_rows
    if lie_commutator(x, y) != Mat.identity(spec, n):
        raise ValueError("[X, Y] = I is required")
    if not is_regular(x):
        raise ValueError("X must be regular")
    space = commutator_solutions(x, Mat.identity(spec, n))
    if space is None or space.dim != n:
        raise AssertionError("solution space of a regular X must have dimension n")
    if not space.contains(y):
        raise AssertionError("Y must lie in the computed solution space")
    # kernel of ad_X equals the span of the powers of X
    powers_space = AffineMatSpace(
        Mat.zeros(spec, n, n),
        tuple(x**j for j in range(n)),
    )
    cur = Mat.identity(spec, n)
    for _ in range(n):
        probe = space.particular + cur  # particular + kernel member stays a solution
        if lie_commutator(x, probe) != Mat.identity(spec, n):
            raise AssertionError("powers of X must centralize X")
        if not space.contains(probe):
            raise AssertionError("X powers must lie in the kernel of ad_X")
        cur = cur @ x
    for b in space.basis:
        if not powers_space.contains(b):
            raise AssertionError("kernel of ad_X must consist of polynomials in X")
    return SolutionFamily(x, y, n - 1, space)


def generic_split_pair(spec: FieldSpec, a_scalars, b_scalars) -> tuple[Mat, Mat]:
    """Block-diagonal pair A = diag(A0 + a_i I), B = diag(B0 + b_i I)."""
    a_scalars = [spec.el(s) for s in a_scalars]
    b_scalars = [spec.el(s) for s in b_scalars]
    if len(a_scalars) != len(b_scalars) or not a_scalars:
        raise ValueError("scalar lists must be nonempty and of equal length")
    p = spec.p
    a0, b0 = nilpotent_generators(spec)
    r = len(a_scalars)
    n = p * r
    a_rows = [[0] * n for _ in range(n)]
    b_rows = [[0] * n for _ in range(n)]
    for blk in range(r):
        off = blk * p
        for i in range(p):
            for j in range(p):
                a_rows[off + i][off + j] = a0.rows[i][j]
                b_rows[off + i][off + j] = b0.rows[i][j]
            a_rows[off + i][off + i] = spec.add(a_rows[off + i][off + i], a_scalars[blk].idx)
            b_rows[off + i][off + i] = spec.add(b_rows[off + i][off + i], b_scalars[blk].idx)
    a, b = Mat(spec, a_rows), Mat(spec, b_rows)
    if lie_commutator(a, b) != Mat.identity(spec, n):
        raise AssertionError("construction violates [A,B] = I")
    return a, b


def joint_centralizer_dimension(a: Mat, b: Mat) -> int:
    """dim {Z : ZA = AZ and ZB = BZ} as a vector space."""
    from .matgf import _rref_rows, ad_matrix

    spec = a.spec
    rows = [list(r) for r in ad_matrix(a).rows]
    rows.extend(list(r) for r in ad_matrix(b).rows)
    rank = _rref_rows(spec, rows)[1]
    return a.n_rows**2 - rank


@dataclass(frozen=True)
class ComponentDims:
    """Closed-form dimensions of the commutator varieties at n = p*r."""

    p: int
    n: int
    r: int
    dim_scalar_commutator: int  # pairs with [A,B] = I
    dim_commuting: int  # commuting pairs of n x n matrices
    pgl_components: tuple[int, int]
    sl_dimension: int
    psl_times_k_components: tuple[int, int]
    psl_times_k_applicable: bool
    equal_dimension_exception: bool  # the (n, p) = (2, 2) coincidence

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "r": self.r,
            "dim_C": self.dim_scalar_commutator,
            "dim_U1": self.dim_commuting,
            "dims_pgl": list(self.pgl_components),
            "dim_sl": self.sl_dimension,
            "dims_psl_times_k": list(self.psl_times_k_components),
            "psl_times_k_applicable": self.psl_times_k_applicable,
            "equal_dimension_exception": self.equal_dimension_exception,
        }


def component_dimensions(p: int, n: int) -> ComponentDims:
    """Dimension arithmetic for the variety families at n = p*r."""
    if n % p != 0:
        raise ValueError("p must divide n")
    r = n // p
    return ComponentDims(
        p=p,
        n=n,
        r=r,
        dim_scalar_commutator=n * n + r,
        dim_commuting=n * n + n,
        pgl_components=(n * n + n - 2, n * n + r - 1),
        sl_dimension=n * n + n - 2,
        psl_times_k_components=(n * n + r - 1, n * n + n - 4),
        psl_times_k_applicable=(n % (p * p) == 0),
        equal_dimension_exception=((n, p) == (2, 2)),
    )


def sample_solution_pairs(spec: FieldSpec, r: int, count: int, seed: int = 0):
    """Seeded conjugates of family members: pairs (A, B) with [A, B] = I.

    Draws random scalars for X, a random polynomial member of the solution
    family, and conjugates by a random invertible matrix.
    """
    rng = random.Random(seed)
    p = spec.p
    n = p * r
    out = []
    for _ in range(count):
        scalars = [Fe(spec, rng.randrange(spec.q)) for _ in range(r)]
        pair = build_block_pair(spec, r, scalars)
        f = Poly(spec, tuple(rng.randrange(spec.q) for _ in range(n)))
        y2 = pair.y + poly_at_matrix(f, pair.x)
        while True:
            g = Mat(spec, [[rng.randrange(spec.q) for _ in range(n)] for _ in range(n)])
            if g.is_invertible():
                break
        gi = g.inverse()
        out.append((g @ pair.x @ gi, g @ y2 @ gi))
    return out
