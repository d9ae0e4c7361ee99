import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prodpolar import gf2


def int_matmul_mod2(a, b):
    """Oracle: plain integer matrix product reduced mod 2."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    return ((a @ b) % 2).astype(np.uint8)


T2 = [[1, 0], [1, 1]]


class TestMatmul:
    def test_identity(self):
        rng = np.random.default_rng(1)
        m = rng.integers(0, 2, size=(2, 2), dtype=np.uint8)
        assert np.array_equal(gf2.gf2_matmul(gf2.identity(2), m), m)

    def test_kernel_is_involutory(self):
        assert np.array_equal(
            gf2.gf2_matmul(T2, T2), gf2.identity(2)
        )

    def test_random_against_integer_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            a = rng.integers(0, 2, size=(4, 4), dtype=np.uint8)
            b = rng.integers(0, 2, size=(4, 4), dtype=np.uint8)
            assert np.array_equal(gf2.gf2_matmul(a, b), int_matmul_mod2(a, b))

    def test_rectangular_against_integer_oracle(self):
        rng = np.random.default_rng(8)
        a = rng.integers(0, 2, size=(3, 17), dtype=np.uint8)
        b = rng.integers(0, 2, size=(17, 5), dtype=np.uint8)
        assert np.array_equal(gf2.gf2_matmul(a, b), int_matmul_mod2(a, b))

    def test_vector_times_matrix(self):
        rng = np.random.default_rng(9)
        v = rng.integers(0, 2, size=11, dtype=np.uint8)
        m = rng.integers(0, 2, size=(11, 6), dtype=np.uint8)
        out = gf2.gf2_matmul(v, m)
        assert out.shape == (6,)
        assert np.array_equal(out, int_matmul_mod2(v[None, :], m)[0])

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            gf2.gf2_matmul(np.zeros((2, 3), np.uint8), np.zeros((2, 2), np.uint8))

    def test_rejects_non_binary(self):
        with pytest.raises(ValueError):
            gf2.gf2_matmul([[2, 0], [0, 1]], T2)


class TestKron:
    def test_kernel_squared(self):
        expected = [
            [1, 0, 0, 0],
            [1, 1, 0, 0],
            [1, 0, 1, 0],
            [1, 1, 1, 1],
        ]
        assert np.array_equal(gf2.kron(T2, T2), np.array(expected, np.uint8))

    def test_scalar_one_identity(self):
        rng = np.random.default_rng(2)
        m = rng.integers(0, 2, size=(3, 5), dtype=np.uint8)
        assert np.array_equal(gf2.kron(np.array([[1]], np.uint8), m), m)

    def test_info_indicator_vectors(self):
        # indicator of a (4,2) code's info set times a (4,3) one
        i_c = [0, 0, 1, 1]
        i_r = [0, 1, 1, 1]
        out = gf2.kron(i_c, i_r)
        expected = [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 1, 1, 1]
        assert np.array_equal(out, np.array(expected, np.uint8))
        assert sorted(np.flatnonzero(out == 0).tolist()) == [
            0, 1, 2, 3, 4, 5, 6, 7, 8, 12,
        ]


class TestRowVectorize:
    def test_definition(self):
        assert np.array_equal(
            gf2.row_vectorize([[1, 0], [0, 1]]), np.array([1, 0, 0, 1], np.uint8)
        )

    def test_single_row_is_noop(self):
        row = np.array([[1, 0, 1, 1, 0]], np.uint8)
        assert np.array_equal(gf2.row_vectorize(row), row[0])

    def test_matches_column_major_vec_of_transpose(self):
        rng = np.random.default_rng(3)
        m = rng.integers(0, 2, size=(3, 4), dtype=np.uint8)
        # vec(M^T) stacks the columns of M^T, i.e. the rows of M
        vec_of_transpose = m.T.flatten(order="F")
        assert np.array_equal(gf2.row_vectorize(m), vec_of_transpose)


class TestTransformMatrix:
    @pytest.mark.parametrize("n", range(1, 9))
    def test_involution(self, n):
        t = gf2.transform_matrix(n)
        assert np.array_equal(gf2.gf2_matmul(t, t), gf2.identity(2**n))

    def test_size_limit(self):
        with pytest.raises(ValueError):
            gf2.transform_matrix(gf2.DENSE_LIMIT_LOG2 + 1)


@st.composite
def matrix_triple(draw):
    p = draw(st.integers(1, 8))
    q = draw(st.integers(1, 8))
    r = draw(st.integers(1, 8))
    s = draw(st.integers(1, 8))
    bits = st.integers(0, 1)
    a = np.array(
        draw(st.lists(st.lists(bits, min_size=q, max_size=q), min_size=p, max_size=p)),
        dtype=np.uint8,
    )
    b = np.array(
        draw(st.lists(st.lists(bits, min_size=r, max_size=r), min_size=q, max_size=q)),
        dtype=np.uint8,
    )
    c = np.array(
        draw(st.lists(st.lists(bits, min_size=s, max_size=s), min_size=r, max_size=r)),
        dtype=np.uint8,
    )
    return a, b, c


@given(matrix_triple())
@settings(max_examples=60, deadline=None)
def test_row_vectorize_pulls_through_kron(triple):
    # row(A.B.C) == row(B) . (A^T x C)
    a, b, c = triple
    left = gf2.row_vectorize(gf2.gf2_matmul(gf2.gf2_matmul(a, b), c))
    right = gf2.gf2_matmul(gf2.row_vectorize(b), gf2.kron(a.T, c))
    assert np.array_equal(left, right)


@given(matrix_triple(), st.integers(1, 8))
@settings(max_examples=40, deadline=None)
def test_kron_mixed_product(triple, t):
    # (A x B).(C x D) == (A.C) x (B.D) when the shapes line up
    a, c, _ = triple
    rng = np.random.default_rng(t)
    b = rng.integers(0, 2, size=(t, a.shape[1]), dtype=np.uint8)
    d = rng.integers(0, 2, size=(a.shape[1], c.shape[1]), dtype=np.uint8)
    # shapes: A (p,q), C (q,r); B (t,q), D (q,r2)
    lhs = gf2.gf2_matmul(gf2.kron(a, b), gf2.kron(c, d))
    rhs = gf2.kron(gf2.gf2_matmul(a, c), gf2.gf2_matmul(b, d))
    assert np.array_equal(lhs, rhs)
