import itertools
import random

import pytest

from commvar import gf, matgf as mg
from commvar import polyring as pr

F2 = gf.field(2)
F3 = gf.field(3)
F4 = gf.field(2, 2)
F5 = gf.field(5)


def random_mat(spec, n, rng):
    return mg.Mat(spec, [[rng.randrange(spec.q) for _ in range(n)] for _ in range(n)])


def all_mats(spec, n):
    q = spec.q
    for entries in itertools.product(range(q), repeat=n * n):
        yield mg.Mat(spec, [entries[i * n : (i + 1) * n] for i in range(n)])


def charpoly_leibniz(m):
    """Independent characteristic polynomial via permutation expansion."""
    spec = m.spec
    n = m.n_rows
    entries = [
        [
            pr.pnormalize(
                (spec.neg(m.rows[i][j]), spec.one_idx)
                if i == j
                else (spec.neg(m.rows[i][j]),)
            )
            for j in range(n)
        ]
        for i in range(n)
    ]
    total = ()
    for perm in itertools.permutations(range(n)):
        inversions = sum(
            1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]
        )
        term = (spec.one_idx,)
        for i in range(n):
            term = pr.pmul(spec, term, entries[i][perm[i]])
        if inversions % 2:
            term = tuple(spec.neg(c) for c in term)
        total = pr.padd(spec, total, term)
    return pr.Poly(spec, total)


def test_mat_arith_examples():
    rng = random.Random(0)
    a = random_mat(F3, 4, rng)
    ident = mg.Mat.identity(F3, 4)
    assert ident @ a == a and a @ ident == a
    while True:
        b = random_mat(F5, 3, rng)
        if b.is_invertible():
            break
    assert b.inverse().inverse() == b
    nil = mg.Mat.from_rows(F3, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert (nil**3).is_zero
    with pytest.raises(ValueError):
        mg.Mat.zeros(F3, 2, 2).inverse()
    with pytest.raises(ValueError):
        nil.inverse()


def test_shape_and_field_mismatch():
    with pytest.raises(ValueError):
        mg.Mat.identity(F3, 2) + mg.Mat.identity(F3, 3)
    with pytest.raises(ValueError):
        mg.Mat.identity(F3, 2) @ mg.Mat.identity(F2, 2)


def test_lie_commutator_examples():
    a = mg.Mat.from_rows(F2, [[0, 0], [1, 0]])
    b = mg.Mat.from_rows(F2, [[0, 1], [0, 0]])
    assert mg.lie_commutator(a, b) == mg.Mat.identity(F2, 2)
    assert mg.lie_commutator(a, a).is_zero
    rng = random.Random(4)
    for _ in range(100):
        x, y = random_mat(F4, 2, rng), random_mat(F4, 2, rng)
        assert mg.lie_commutator(x, y).trace() == F4.zero


def test_group_commutator_examples():
    rng = random.Random(5)
    x = mg.Mat.from_rows(F3, [[1, 0], [0, 2]])
    assert mg.group_commutator(x, x) == mg.Mat.identity(F3, 2)
    y = mg.Mat.from_rows(F3, [[2, 0], [0, 1]])
    assert mg.group_commutator(x, y) == mg.Mat.identity(F3, 2)
    for _ in range(25):
        g = random_mat(F5, 2, rng)
        h = random_mat(F5, 2, rng)
        if g.is_invertible() and h.is_invertible():
            assert mg.group_commutator(g, h).det() == F5.one
    with pytest.raises(ValueError):
        mg.group_commutator(mg.Mat.zeros(F3, 2, 2), x)


def test_rref_examples():
    assert mg.rref(mg.Mat.identity(F3, 5)).rank == 5
    nil = mg.Mat.from_rows(F2, [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
    assert mg.rref(nil).rank == 3
    assert len(mg.kernel_basis(nil)) == 1
    rng = random.Random(6)
    for _ in range(20):
        a = random_mat(F2, 6, rng)
        assert mg.rank(a) == mg.rank(a.transpose())


def test_solve_affine_examples():
    ident = mg.Mat.identity(F3, 3)
    sol = mg.solve_affine(ident, [1, 2, 0])
    assert sol is not None and sol[0] == (1, 2, 0) and sol[1] == []
    assert mg.solve_affine(mg.Mat.zeros(F3, 2, 2), [1, 0]) is None
    sol = mg.solve_affine(mg.Mat.zeros(F3, 2, 2), [0, 0])
    assert sol is not None and len(sol[1]) == 2


def test_solve_affine_random_consistency():
    rng = random.Random(7)
    for _ in range(40):
        spec = [F2, F3, F5][rng.randrange(3)]
        a = mg.Mat(spec, [[rng.randrange(spec.q) for _ in range(4)] for _ in range(3)])
        x = tuple(rng.randrange(spec.q) for _ in range(4))
        b = a.apply(x)
        sol = mg.solve_affine(a, list(b))
        assert sol is not None
        assert a.apply(sol[0]) == b
        for v in sol[1]:
            assert a.apply(v) == (0,) * 3


def test_commutator_solutions_examples():
    # scalar A: inconsistent for C = I
    assert mg.commutator_solutions(mg.Mat.scalar(F3, 2, 1), mg.Mat.identity(F3, 2)) is None
    # p does not divide n: trace obstruction
    j = mg.Mat.from_rows(F3, [[0, 1], [0, 0]])
    assert mg.commutator_solutions(j, mg.Mat.identity(F3, 2)) is None
    # kernel dimension equals the centralizer dimension at C = 0
    sol = mg.commutator_solutions(j, mg.Mat.zeros(F3, 2, 2))
    assert sol is not None and sol.dim == mg.centralizer_dimension(j) == 2


def test_min_poly_examples():
    assert mg.min_poly(mg.Mat.identity(F5, 3)) == pr.Poly.from_coeffs(F5, [-1 % 5, 1])
    nil = mg.Mat.from_rows(F5, [[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    assert mg.min_poly(nil).pretty() == "t^4"
    d = mg.Mat.from_rows(F5, [[1, 0, 0], [0, 1, 0], [0, 0, 2]])
    expect = pr.Poly.from_coeffs(F5, [4, 1]) * pr.Poly.from_coeffs(F5, [3, 1])
    assert mg.min_poly(d) == expect


def test_invariant_factors_examples():
    inf = mg.invariant_factors(mg.Mat.identity(F3, 2))
    assert [f.pretty() for f in inf] == ["t+2", "t+2"]
    f = pr.Poly.from_coeffs(F5, [2, 3, 0, 1])
    assert list(mg.invariant_factors(mg.companion(f))) == [f]


def test_invariant_factor_chain_and_charpoly():
    rng = random.Random(8)
    for trial in range(50):
        spec = [F2, F3, F4, F5][trial % 4]
        n = rng.randrange(1, 5)
        a = random_mat(spec, n, rng)
        inf = mg.invariant_factors(a)
        for f, g in zip(inf.factors, inf.factors[1:]):
            assert divmod(g, f)[1].is_zero  # divisibility chain
        assert mg.char_poly(a) == charpoly_leibniz(a)
        assert divmod(mg.char_poly(a), mg.min_poly(a))[1].is_zero
        assert mg.min_poly(a) == inf.minimal


def test_similarity_classifier_exhaustive_2x2():
    # invariant factors classify conjugacy: brute orbit oracle over GL
    for spec in [F2, F3]:
        mats = list(all_mats(spec, 2))
        gl = [g for g in mats if g.is_invertible()]
        orbit_of = {}
        for a in mats:
            orbit_of[a] = frozenset(g @ a @ g.inverse() for g in gl)
        for a in mats:
            fa = mg.invariant_factors(a)
            for b in mats:
                assert (mg.invariant_factors(b) == fa) == (b in orbit_of[a])


def test_similarity_transform():
    rng = random.Random(9)
    for trial in range(30):
        spec = [F2, F3, F5][trial % 3]
        n = rng.randrange(1, 4)
        a = random_mat(spec, n, rng)
        while True:
            g = random_mat(spec, n, rng)
            if g.is_invertible():
                break
        b = g.inverse() @ a @ g
        t = mg.similarity_transform(a, b)
        assert t is not None and t.inverse() @ a @ t == b
    assert mg.similarity_transform(mg.Mat.identity(F2, 2), mg.Mat.zeros(F2, 2, 2)) is None


def test_rcf_transform_postcondition():
    rng = random.Random(10)
    for trial in range(30):
        spec = [F2, F3, F4][trial % 3]
        n = rng.randrange(1, 5)
        a = random_mat(spec, n, rng)
        p, factors = mg.rcf_transform(a)
        assert p.is_invertible()
        assert p.inverse() @ a @ p == mg.block_diag(spec, [mg.companion(f) for f in factors])


def test_jordan_type_examples():
    nil = mg.Mat.from_rows(F3, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    jt = mg.jordan_type(nil)
    assert len(jt.entries) == 1
    lam, sizes = jt.entries[0]
    assert lam == jt.spec.zero and sizes == (3,)
    jt = mg.jordan_type(mg.Mat.from_rows(F3, [[1, 0], [0, 2]]))
    assert [(e.idx, s) for e, s in jt.entries] == [(1, (1,)), (2, (1,))]
    # eigenvalues in an extension
    jt = mg.jordan_type(mg.companion(pr.Poly.from_coeffs(F3, [1, 0, 1])))
    assert jt.spec.q == 9 and len(jt.entries) == 2
    assert all(sizes == (1,) for _, sizes in jt.entries)


def test_jordan_type_matches_rank_sequences():
    rng = random.Random(12)
    for trial in range(25):
        spec = [F2, F3, F4][trial % 3]
        n = rng.randrange(1, 5)
        a = random_mat(spec, n, rng)
        jt = mg.jordan_type(a)
        assert jt.total() == n
        ae = mg.embed_mat(a, jt.spec)
        for lam, sizes in jt.entries:
            shift = ae - mg.Mat.scalar(jt.spec, n, lam)
            for j in range(1, sizes[0] + 1):
                blocks_ge_j = mg.rank(shift ** (j - 1)) - mg.rank(shift**j)
                assert blocks_ge_j == sum(1 for s in sizes if s >= j)


def test_jordan_transform_postcondition():
    rng = random.Random(13)
    for trial in range(20):
        spec = [F2, F3, F5][trial % 3]
        n = rng.randrange(1, 5)
        a = random_mat(spec, n, rng)
        p, j, blocks, ext = mg.jordan_transform(a)
        assert p.inverse() @ mg.embed_mat(a, ext) @ p == j
        assert sum(size for _, size in blocks) == n


def test_is_regular_examples():
    assert mg.is_regular(mg.companion(pr.Poly.from_coeffs(F3, [1, 2, 0, 1])))
    assert not mg.is_regular(mg.Mat.identity(F3, 2))
    assert not mg.is_regular(mg.Mat.identity(F2, 3))


def test_regular_iff_centralizer_dimension_exhaustive():
    for spec, n in [(F2, 2), (F2, 3)]:
        for a in all_mats(spec, n):
            assert mg.is_regular(a) == (mg.centralizer_dimension(a) == n)


def test_regular_commuting():
    # any regular matrix commuting with A suffices; verify both postconditions
    r = mg.regular_commuting(mg.Mat.zeros(F3, 3, 3))
    assert mg.is_regular(r)
    j22 = mg.Mat.from_rows(F5, [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
    r = mg.regular_commuting(j22)
    ae = mg.embed_mat(j22, r.spec)
    assert mg.is_regular(r) and ae @ r == r @ ae
    # field too small for distinct shifts: transparent extension
    r = mg.regular_commuting(mg.Mat.zeros(F2, 3, 3))
    assert mg.is_regular(r) and r.spec.q >= 3
    rng = random.Random(14)
    for trial in range(10):
        spec = [F2, F3][trial % 2]
        a = random_mat(spec, 3, rng)
        r = mg.regular_commuting(a)
        ae = mg.embed_mat(a, r.spec)
        assert mg.is_regular(r) and ae @ r == r @ ae


def test_jordan_splitting_field_limit():
    # factor degrees 5 and 7 need a degree-35 splitting field, beyond the cap
    f5 = pr.irreducibles_of_degree(F2, 5)[0]
    f7 = pr.irreducibles_of_degree(F2, 7)[0]
    a = mg.block_diag(F2, [mg.companion(f5), mg.companion(f7)])
    with pytest.raises(mg.LimitExceeded):
        mg.jordan_type(a)


def test_matrix_text_round_trip():
    a = mg.Mat.from_rows(F2, [[0, 0], [1, 0]])
    assert a.to_text() == "0,0;1,0"
    assert mg.Mat.from_text(F2, "0,0;1,0") == a
    b = mg.Mat.from_rows(F4, [["[1,1]", "[0,1]"], ["1", "0"]])
    assert mg.Mat.from_text(F4, b.to_text()) == b
    for m in all_mats(F3, 2):
        assert mg.Mat.from_text(F3, m.to_text()) == m
