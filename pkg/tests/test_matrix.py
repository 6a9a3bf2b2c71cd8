"""Linear algebra over constructed fields: determinants against the
Leibniz-sum oracle, Bruhat decomposition exhaustively, enumerators
against their counting formulas."""

import random
from itertools import permutations, product

import pytest

from sumrank.field import base_field, field
from sumrank.matrix import (
    Matrix,
    MatrixError,
    bruhat_decompose,
    count_ut_nonsingular,
    det,
    enum_base_matrices,
    enum_full_rank_column_spaces,
    enum_ut_nonsingular,
    gaussian_binomial,
    inverse,
    is_permutation,
    is_upper_triangular,
    minor,
    rank,
)

F2 = base_field(2)
F3 = base_field(3)
F4 = field(2, 2)
F8 = field(2, 3)


def leibniz_det(m: Matrix) -> int:
    """Sign-free Leibniz sum; signs collapse correctly because we negate
    per inversion count via repeated field negation."""
    f = m.field
    total = 0
    for perm in permutations(range(m.rows)):
        term = 1
        for r, c in enumerate(perm):
            term = f.mul(term, m[r, c])
        invs = sum(
            1 for i in range(len(perm)) for j in range(i + 1, len(perm))
            if perm[i] > perm[j]
        )
        if invs % 2:
            term = f.neg(term)
        total = f.add(total, term)
    return total


def random_matrix(rows, cols, f, rng):
    return Matrix(rows, cols, f, [rng.randrange(f.order) for _ in range(rows * cols)])


def test_det_examples():
    assert det(Matrix.identity(3, F8)) == 1
    m = Matrix.from_rows([[2, 1], [1, 2]], F4)
    assert det(m) == 2  # alpha^2 - 1 = alpha in characteristic 2


def test_det_matches_leibniz():
    rng = random.Random(3)
    for _ in range(25):
        m = random_matrix(4, 4, F8, rng)
        assert det(m) == leibniz_det(m)
    for _ in range(25):
        m = random_matrix(3, 3, F3, rng)
        assert det(m) == leibniz_det(m)


def test_det_multiplicative():
    rng = random.Random(4)
    for _ in range(30):
        a = random_matrix(3, 3, F8, rng)
        b = random_matrix(3, 3, F8, rng)
        assert det(a @ b) == F8.mul(det(a), det(b))


def test_rank_examples():
    assert rank(Matrix(2, 3, F4)) == 0
    assert rank(Matrix.identity(4, F2)) == 4
    # row 2 = alpha * row 1
    assert rank(Matrix.from_rows([[1, 2], [2, 3]], F4)) == 1


def test_inverse():
    assert inverse(Matrix.identity(2, F2)) == Matrix.identity(2, F2)
    m = Matrix.from_rows([[1, 1], [0, 1]], F2)
    assert inverse(m) == m
    rng = random.Random(5)
    done = 0
    while done < 20:
        m = random_matrix(3, 3, F8, rng)
        if det(m) == 0:
            continue
        assert m @ inverse(m) == Matrix.identity(3, F8)
        done += 1
    with pytest.raises(MatrixError):
        inverse(Matrix(2, 2, F2))


def test_minor_oracle():
    rng = random.Random(6)
    for _ in range(20):
        m = random_matrix(3, 4, F8, rng)
        for ri in [(0, 1), (0, 2), (1, 2)]:
            for ci in [(0, 1), (1, 3), (2, 3)]:
                a, b = m[ri[0], ci[0]], m[ri[0], ci[1]]
                c, d = m[ri[1], ci[0]], m[ri[1], ci[1]]
                expect = F8.sub(F8.mul(a, d), F8.mul(b, c))
                assert minor(m, ri, ci) == expect
        assert minor(m, [1], [2]) == m[1, 2]
    sq = random_matrix(3, 3, F8, random.Random(7))
    assert minor(sq, range(3), range(3)) == det(sq)


def _check_bruhat(a: Matrix):
    v, qm, u = bruhat_decompose(a)
    assert is_upper_triangular(v) and det(v) != 0
    assert is_upper_triangular(u) and det(u) != 0
    assert is_permutation(qm)
    assert v @ qm @ u == a


def test_bruhat_identity_and_swap():
    i2 = Matrix.identity(2, F2)
    v, qm, u = bruhat_decompose(i2)
    assert (v, qm, u) == (i2, i2, i2)
    swap = Matrix.from_rows([[0, 1], [1, 0]], F2)
    v, qm, u = bruhat_decompose(swap)
    assert v == i2 and u == i2 and qm == swap


def test_bruhat_exhaustive_gl_f2():
    counts = {1: 1, 2: 6, 3: 168}
    for n, expect in counts.items():
        seen = 0
        for vals in product(range(2), repeat=n * n):
            m = Matrix(n, n, F2, list(vals))
            if det(m) == 0:
                continue
            seen += 1
            _check_bruhat(m)
        assert seen == expect


def test_bruhat_exhaustive_gl_f3():
    seen = 0
    for vals in product(range(3), repeat=4):
        m = Matrix(2, 2, F3, list(vals))
        if det(m) == 0:
            continue
        seen += 1
        _check_bruhat(m)
    assert seen == 48


def test_enum_ut_nonsingular_counts():
    for q in (2, 3):
        f = base_field(q)
        for s in range(5):
            mats = list(enum_ut_nonsingular(s, q))
            assert len(mats) == count_ut_nonsingular(s, q)
            assert len(mats) == (q - 1) ** s * q ** (s * (s - 1) // 2)
            assert len({tuple(m.data) for m in mats}) == len(mats)
            for m in mats:
                assert is_upper_triangular(m) and det(m) != 0
    assert [m.to_rows() for m in enum_ut_nonsingular(1, 2)] == [[[1]]]
    assert count_ut_nonsingular(2, 2) == 2
    assert count_ut_nonsingular(3, 2) == 8


def test_enum_base_matrices():
    assert sorted(m.data[0] for m in enum_base_matrices(1, 1, 2)) == [0, 1]
    assert len(list(enum_base_matrices(2, 1, 2))) == 4
    assert len(list(enum_base_matrices(2, 2, 3))) == 81
    assert len(list(enum_base_matrices(0, 3, 2))) == 1  # one empty matrix


def test_enum_full_rank_column_spaces():
    assert len(list(enum_full_rank_column_spaces(2, 0, 2))) == 1
    assert len(list(enum_full_rank_column_spaces(2, 1, 2))) == 3
    assert len(list(enum_full_rank_column_spaces(3, 2, 2))) == 7
    for n in range(1, 5):
        for rho in range(n + 1):
            reps = list(enum_full_rank_column_spaces(n, rho, 2))
            assert len(reps) == gaussian_binomial(n, rho, 2)
            spaces = set()
            for r in reps:
                assert rank(r) == rho
                spans = frozenset(
                    tuple(_combine(r, coeffs))
                    for coeffs in product(range(2), repeat=rho)
                )
                spaces.add(spans)
            assert len(spaces) == len(reps)


def _combine(m: Matrix, coeffs):
    f = m.field
    out = [0] * m.rows
    for c, w in enumerate(coeffs):
        if w:
            for r in range(m.rows):
                out[r] = f.add(out[r], f.mul(w, m[r, c]))
    return out


def test_gaussian_binomial_values():
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(3, 2, 2) == 7
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(3, 1, 3) == 13


def test_json_round_trip():
    rng = random.Random(8)
    m = random_matrix(2, 3, F8, rng)
    assert Matrix.from_json(m.to_json()) == m


def test_mixed_field_product_lifts_base_entries():
    p = Matrix.from_rows([[2, 3], [1, 2]], F4)
    b = Matrix.from_rows([[1, 1], [0, 1]], F2)
    out = b @ p
    assert out.field is F4
    assert out.to_rows() == [[F4.add(2, 1), F4.add(3, 2)], [1, 2]]
