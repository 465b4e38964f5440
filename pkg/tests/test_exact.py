import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from nichols_weyl.exact import CycNumber, Matrix, commutant, solve_intertwiner
from nichols_weyl.exact.cyclotomic import cyclotomic_polynomial


def z(n, k=1):
    return CycNumber.zeta(n, k)


def test_small_identities():
    assert z(4) ** 2 == -1
    assert z(3) + z(3, 2) == -1
    assert (1 + z(8)) * (1 - z(8)) == 1 - z(8, 2)
    assert z(6) ** 6 == 1 and z(6) ** 3 == -1
    assert z(12, 3) == z(4)


def test_embedding_across_orders():
    a = z(3) + z(4)
    assert a.order == 12
    assert a - z(4) == z(3)
    assert z(3).embed(12) == z(3)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 8, 9, 12, 15])
def test_cyclotomic_polynomial_against_sympy(n):
    x = sympy.symbols("x")
    expect = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(n)) == [int(c) for c in expect]


def cyc_strategy(order):
    from nichols_weyl.exact.cyclotomic import field_data

    phi = field_data(order).phi
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.lists(coeff, min_size=phi, max_size=phi).map(lambda cs: CycNumber(order, cs))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([1, 3, 4, 5, 8, 12]).flatmap(lambda n: st.tuples(*[cyc_strategy(n)] * 3)))
def test_field_axioms(abc):
    a, b, c = abc
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0
    if a:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@settings(max_examples=40, deadline=None)
@given(cyc_strategy(12))
def test_numeric_shadow(a):
    """Exact arithmetic agrees with complex floating point."""
    b = a * a + z(12, 5)
    assert abs(b.to_complex() - (a.to_complex() ** 2 + z(12, 5).to_complex())) < 1e-9


def test_rank_examples():
    assert Matrix.identity(4).rank() == 4
    m = Matrix([[1, 1], [1, 1]])
    assert m.rank() == 1
    (v,) = m.kernel()
    assert tuple(v) in {(1, -1), (-1, 1)}
    tau = Matrix([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    assert (Matrix.identity(4) - tau).rank() == 1


def _numeric_rank(m):
    arr = np.array([[x.to_complex() for x in r] for r in m.rows], dtype=complex)
    return int(np.linalg.matrix_rank(arr, tol=1e-8))


@pytest.mark.parametrize("order", [1, 3, 4, 5, 12])
def test_rank_against_numeric_svd(order):
    rnd = random.Random(order)
    for trial in range(4):
        n, k, r = rnd.randint(2, 5), rnd.randint(2, 5), rnd.randint(1, 3)
        # product of random n x r and r x k matrices over Q(zeta) has rank <= r
        a = [[CycNumber(order, [rnd.randint(-2, 2) for _ in range(len(CycNumber.one(order).coeffs))]) for _ in range(r)] for _ in range(n)]
        b = [[CycNumber(order, [rnd.randint(-2, 2) for _ in range(len(CycNumber.one(order).coeffs))]) for _ in range(k)] for _ in range(r)]
        m = Matrix(a, order) @ Matrix(b, order)
        assert m.rank() == _numeric_rank(m)
        for v in m.kernel():
            assert all(x == 0 for x in m.apply(v))
        assert m.rank() + len(m.kernel()) == k


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_rank_permutation_invariant(seed):
    rnd = random.Random(seed)
    n = rnd.randint(1, 5)
    rows = [[z(3, rnd.randint(0, 2)) * rnd.randint(-1, 1) for _ in range(n)] for _ in range(n)]
    m = Matrix(rows, 3)
    p = list(range(n))
    q = list(range(n))
    rnd.shuffle(p)
    rnd.shuffle(q)
    m2 = Matrix([[rows[p[i]][q[j]] for j in range(n)] for i in range(n)], 3)
    assert m.rank() == m2.rank()


def test_det_inverse():
    m = Matrix([[1, z(3)], [z(3, 2), 3]], 3)
    assert m.det() == 2
    assert m @ m.inverse() == Matrix.identity(2, 3)
    s = sympy.Matrix([[1, 2], [3, 4]])
    assert Matrix([[1, 2], [3, 4]]).det() == int(s.det())


def test_intertwiner_identity_and_swap():
    a = [Matrix([[1, 0], [0, -1]])]
    t = solve_intertwiner(a, a)
    assert t is not None and t.det()
    b = [Matrix([[-1, 0], [0, 1]])]
    t = solve_intertwiner(a, b)
    assert t is not None
    assert t @ a[0] == b[0] @ t
    c = [Matrix([[1, 0], [0, 1]])]
    assert solve_intertwiner(a, c) is None


def test_projective_reps_with_equal_characters():
    """Two Pauli-type pairs related by a change of basis are recognised as isomorphic."""
    X = Matrix([[0, 1], [1, 0]])
    Zm = Matrix([[1, 0], [0, -1]])
    P = Matrix([[1, 1], [1, -1]])
    Pi = P.inverse()
    a = [X, Zm]
    b = [P @ X @ Pi, P @ Zm @ Pi]
    t = solve_intertwiner(a, b)
    assert t is not None and t.det()
    for x, y in zip(a, b):
        assert t @ x == y @ t
    assert len(commutant(a, a)) == 1
