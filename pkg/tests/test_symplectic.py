import random

import numpy as np
import pytest

from weilrep.field import FpElement
from weilrep.symplectic import (FactorizationError, SpLieElement, SpMatrix,
                                SympSpace, SymplecticError, cayley,
                                embed_block_diag, enumerate_sp, factor_in_U,
                                in_U, product_point_index, random_sp,
                                random_sp_lie, sp_order, transvection)


def sl2_brute(p):
    out = []
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    if (a * d - b * c) % p == 1:
                        out.append([[a, b], [c, d]])
    return out


def test_omega_examples():
    sp = SympSpace(3, 1)
    assert sp.omega((1, 0), (0, 1)) == FpElement(1, 3)
    assert sp.omega((0, 1), (1, 0)) == FpElement(2, 3)   # -1
    assert sp.omega((1, 1), (2, 1)) == FpElement(2, 3)   # 1*1 - 1*2 = -1


def test_omega_bilinear_antisymmetric():
    sp = SympSpace(3, 2)
    vecs = [tuple(int(c) for c in r) for r in sp.vectors()]
    rng = random.Random(0)
    for _ in range(200):
        u, v, w = (rng.choice(vecs) for _ in range(3))
        assert sp.omega_int(u, u) == 0
        assert (sp.omega_int(u, v) + sp.omega_int(v, u)) % 3 == 0
        uv = tuple((a + b) % 3 for a, b in zip(u, v))
        assert sp.omega_int(uv, w) == (sp.omega_int(u, w) + sp.omega_int(v, w)) % 3


def test_omega_dimension_mismatch():
    with pytest.raises(SymplecticError):
        SympSpace(3, 1).omega((1, 0, 0), (0, 1, 0))


def test_in_U_examples():
    sp = SympSpace(3, 1)
    eye = SpMatrix.identity(sp)
    assert not in_U(eye)
    assert in_U(SpMatrix([[2, 0], [0, 2]], 3))           # -I
    w = SpMatrix([[0, 1], [2, 0]], 3)
    assert in_U(w)
    assert (w - eye).det() == 2


def test_cayley_examples():
    p = 3
    minus_i = SpMatrix([[2, 0], [0, 2]], p)
    assert np.array_equal(cayley(minus_i).mat, np.zeros((2, 2), dtype=np.int64))
    w = SpMatrix([[0, 1], [2, 0]], p)
    assert np.array_equal(cayley(w).mat, np.array([[0, 2], [1, 0]]))
    w_inv = SpMatrix([[0, 2], [1, 0]], p)
    assert cayley(w_inv) == -cayley(w)
    assert np.array_equal(cayley(w_inv).mat, np.array([[0, 1], [2, 0]]))


def test_cayley_domain_error():
    sp = SympSpace(3, 1)
    with pytest.raises(SymplecticError):
        cayley(SpMatrix.identity(sp))
    with pytest.raises(SymplecticError):
        cayley(SpMatrix([[1, 1], [0, 1]], 3))            # unipotent: det(g - I) = 0


@pytest.mark.parametrize("p", [3, 5])
def test_cayley_involution_and_antisymmetry(p):
    sp = SympSpace(p, 1)
    for g in enumerate_sp(sp):
        if not in_U(g):
            continue
        k = cayley(g)
        assert cayley(k) == g
        assert cayley(g.inverse()) == -k
        # kappa(g) + I = 2g (g - I)^{-1}
        eye = SpMatrix.identity(sp)
        lhs = (k.as_endomorphism() + eye).mat
        rhs = (g + g) @ (g - eye).inverse()
        assert np.array_equal(lhs, rhs.mat)


def test_cayley_lands_in_sp():
    sp = SympSpace(5, 1)
    for g in enumerate_sp(sp):
        if in_U(g):
            k = cayley(g)
            Jk = sp.J @ k.mat % 5
            assert np.array_equal(Jk, Jk.T % 5)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_enumerate_sp_count_and_membership(p):
    sp = SympSpace(p, 1)
    got = list(enumerate_sp(sp))
    assert len(got) == p * (p * p - 1) == sp_order(sp) == len(sl2_brute(p))
    for g in got:
        assert g.is_symplectic()


def test_enumerate_sp_unsupported_dim():
    with pytest.raises(SymplecticError):
        next(enumerate_sp(SympSpace(3, 2)))


def test_transvections_are_symplectic():
    sp = SympSpace(5, 2)
    rng = random.Random(3)
    for _ in range(50):
        u = tuple(rng.randrange(5) for _ in range(4))
        if not any(u):
            continue
        assert transvection(sp, u, rng.randrange(5)).is_symplectic()


def test_random_sp_symplectic_and_reproducible():
    sp = SympSpace(3, 2)
    for seed in range(5):
        g1 = random_sp(sp, random.Random(seed))
        g2 = random_sp(sp, random.Random(seed))
        assert g1 == g2
        assert g1.is_symplectic()


def test_random_sp_spreads_out():
    sp = SympSpace(3, 2)
    rng = random.Random(42)
    seen = {random_sp(sp, rng).key() for _ in range(1000)}
    assert len(seen) >= 100


@pytest.mark.parametrize("p", [3, 5])
def test_factor_in_U_exhaustive(p):
    sp = SympSpace(p, 1)
    rng = random.Random(11)
    for g in enumerate_sp(sp):
        g1, g2 = factor_in_U(g, rng)
        assert in_U(g1) and in_U(g2)
        assert g1 @ g2 == g


def test_factor_in_U_deterministic():
    sp = SympSpace(3, 1)
    g = SpMatrix.identity(sp)
    a = factor_in_U(g, random.Random(5))
    b = factor_in_U(g, random.Random(5))
    assert a == b


def test_factor_attempt_bound():
    g = SpMatrix.identity(SympSpace(3, 1))
    with pytest.raises(FactorizationError):
        factor_in_U(g, random.Random(0), attempts=0)


def test_matrix_string_round_trip():
    g = SpMatrix.from_string("0,1;2,0", 3)
    assert g.to_string() == "0,1;2,0"
    assert g.require_symplectic() is g
    with pytest.raises(SymplecticError):
        SpMatrix.from_string("0,1;x,0", 3)
    with pytest.raises(SymplecticError):
        SpMatrix.from_string("1,1;0,2", 3).require_symplectic()


def test_lie_element_validation():
    SpLieElement([[1, 0], [0, 2]], 3)                    # trace 0 mod 3: J a symmetric
    with pytest.raises(SymplecticError):
        SpLieElement([[1, 0], [0, 1]], 3)                # J not symmetric for identity


def test_random_sp_lie_members():
    sp = SympSpace(3, 2)
    rng = random.Random(8)
    for _ in range(30):
        a = random_sp_lie(sp, rng)
        Ja = sp.J @ a.mat % 3
        assert np.array_equal(Ja, Ja.T % 3)


def test_matrix_inverse_and_det():
    sp = SympSpace(7, 1)
    for g in list(enumerate_sp(sp))[:60]:
        assert g @ g.inverse() == SpMatrix.identity(sp)
        assert g.det() == 1


def test_block_embedding_is_symplectic():
    p = 3
    s1 = SympSpace(p, 1)
    rng = random.Random(2)
    for _ in range(20):
        g1 = random_sp(s1, rng)
        g2 = random_sp(s1, rng)
        big = embed_block_diag(g1, g2)
        assert big.N == 2
        assert big.is_symplectic()
    # embedding of identities is the identity
    eye = SpMatrix.identity(s1)
    assert embed_block_diag(eye, eye) == SpMatrix.identity(SympSpace(p, 2))


def test_product_point_index_is_a_bijection():
    s1 = SympSpace(3, 1)
    idx = product_point_index(s1, s1)
    flat = sorted(int(i) for i in idx.reshape(-1))
    assert flat == list(range(SympSpace(3, 2).n_points))


def test_vector_indexing_round_trip():
    sp = SympSpace(5, 1)
    for i in range(sp.n_points):
        assert sp.index_of(sp.vector_at(i)) == i
    # lexicographic, most significant coordinate first
    assert sp.vector_at(0) == (0, 0)
    assert sp.vector_at(1) == (0, 1)
    assert sp.vector_at(5) == (1, 0)
