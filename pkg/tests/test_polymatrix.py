import random
from itertools import permutations

import pytest

from minorideals.paperlab.fixtures import SIGMA, TAU
from minorideals.polymatrix import (
    PolyMatrix,
    apply_variable_permutation,
    determinant,
    generic_matrix,
    hankel_ring,
    matrix_from_json,
    minors,
    paper_matrices,
    yz_parameterization,
)
from minorideals.polyring import GF32003, QQ, Ring

R = hankel_ring(QQ)
M5, M4, M3 = paper_matrices(ring=R)


def _parity(p):
    p, sign = list(p), 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def leibniz(M):
    n = M.rows
    total = M.ring.zero()
    for p in permutations(range(n)):
        term = M.ring.constant(_parity(p))
        for i in range(n):
            term = term * M[i, p[i]]
        total = total + term
    return total


def random_matrix(rng, ring, n):
    names = ring.names

    def entry():
        f = ring.constant(rng.randint(-3, 3))
        for _ in range(rng.randint(0, 2)):
            f = f + ring.gen(rng.choice(names)) * rng.randint(-2, 2)
        return f

    return PolyMatrix(ring, [[entry() for _ in range(n)] for _ in range(n)])


def test_determinant_matches_permutation_sum():
    rng = random.Random(7)
    ring = Ring(("x", "y", "z"), QQ)
    for k in range(50):
        M = random_matrix(rng, ring, 1 + k % 4)
        assert determinant(M) == leibniz(M)


def test_determinant_is_alternating():
    rng = random.Random(11)
    ring = Ring(("x", "y"), GF32003)
    for _ in range(20):
        M = random_matrix(rng, ring, 4)
        rows = [list(r) for r in M.entries]
        swapped = PolyMatrix(ring, [rows[1], rows[0]] + rows[2:])
        assert determinant(swapped) == -determinant(M)
        equal = PolyMatrix(ring, [rows[0], rows[0]] + rows[2:])
        assert determinant(equal).is_zero()


def test_determinant_examples():
    X = generic_matrix(2, 2, QQ)
    assert determinant(X) == X.ring.parse("x11*x22 - x12*x21")
    collapsed = M4.subs({f"b{i}": R.gen(f"a{i}") for i in range(1, 6)})
    assert determinant(collapsed).is_zero()
    with pytest.raises(ValueError):
        determinant(M5)


def test_generic_matrix():
    X = generic_matrix(2, 2)
    assert X.to_strings() == [["x11", "x12"], ["x21", "x22"]]
    assert generic_matrix(1, 1).to_strings() == [["x11"]]
    assert generic_matrix(6, 3).ring.nvars == 18
    with pytest.raises(ValueError):
        generic_matrix(0, 3)


def test_paper_matrices_rows():
    assert M4.to_strings()[1] == ["a2", "a3", "a4", "a5"]
    assert M3.to_strings()[5] == ["b3", "b4", "b5"]
    assert M5.to_strings()[0] == ["a1", "a2", "a3", "a4", "a5"]
    assert M3.shape == (6, 3) and M4.shape == (4, 4) and M5.shape == (2, 5)


def test_minors_of_m5_are_the_deltas():
    want = [R.parse(f"a{i}*b{j} - a{j}*b{i}") for i in range(1, 6) for j in range(i + 1, 6)]
    assert minors(M5, 2) == want
    X = generic_matrix(2, 2, QQ)
    assert minors(X, 2) == [determinant(X)]
    assert len(minors(M3, 3)) == 20
    assert minors(M3, 3) == minors(M3, 3)
    with pytest.raises(ValueError):
        minors(M3, 4)


def test_yz_examples():
    A = yz_parameterization(2, 2, 2)
    assert A.to_strings() == [["y11", "y11*z11"], ["y21", "y21*z11"]]
    A = yz_parameterization(5, 4, 3)
    assert [list(r[:2]) for r in A.to_strings()] == [[f"y{i}1", f"y{i}2"] for i in range(1, 6)]
    with pytest.raises(ValueError):
        yz_parameterization(2, 3, 2)


@pytest.mark.parametrize("m", range(1, 6))
def test_yz_minors_vanish(m):
    for n in range(1, m + 1):
        for t in range(1, n + 1):
            A = yz_parameterization(m, n, t)
            assert all(f.is_zero() for f in minors(A, t)), (m, n, t)


def test_permutations_sigma_tau():
    d12 = R.parse("a1*b2 - a2*b1")
    assert apply_variable_permutation(d12, TAU) == -d12
    assert apply_variable_permutation(R.gen("a3"), SIGMA) == R.gen("a3")
    assert apply_variable_permutation(d12, SIGMA) == R.parse("a5*b4 - a4*b5")
    assert apply_variable_permutation(d12, SIGMA) == -R.parse("a4*b5 - a5*b4")
    with pytest.raises(ValueError):
        apply_variable_permutation(d12, {"a1": "a2"})


def test_sigma_tau_generate_klein_group():
    f = R.parse("a1^2*b3 + 2*a2*b5 - b1")
    s = lambda p: p.permute(SIGMA)
    t = lambda p: p.permute(TAU)
    assert s(s(f)) == f and t(t(f)) == f
    assert s(t(f)) == t(s(f))
    images = {f, s(f), t(f), s(t(f))}
    assert len(images) == 4


def test_matrix_json_round_trip():
    obj = M3.to_json()
    back = matrix_from_json(obj, R)
    assert back == M3
    guessed = matrix_from_json({"rows": 2, "cols": 2, "entries": [["u", "v"], ["v", "u^2 + 1"]]})
    assert guessed.ring.names == ("u", "v")
    with pytest.raises(ValueError):
        matrix_from_json({"rows": 3, "cols": 2, "entries": [["u", "v"]]})
