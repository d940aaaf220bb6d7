import random

import numpy as np
import pytest

from weilrep.cyclotomic import CycNum, psi
from weilrep.heisenberg import (HeisElement, Kernel, Operator,
                                enumerate_heisenberg, h_mul, schrodinger_pi,
                                v_convolve, verify_stone_von_neumann,
                                weyl_inverse, weyl_transform)
from weilrep.symplectic import SympSpace


def random_kernel(space, rng, span=2):
    n, p = space.n_points, space.p
    vals = np.array([rng.randrange(-span, span + 1) for _ in range(n * p)],
                    dtype=np.int64).reshape(n, p)
    return Kernel(space, vals, 1)


def random_operator(space, rng, span=2):
    m, p = space.q_pow_n, space.p
    vals = np.array([rng.randrange(-span, span + 1) for _ in range(m * m * p)],
                    dtype=np.int64).reshape(m, m, p)
    return Operator(space, vals, 1)


def brute_convolve(f, g):
    """Direct CycNum-level twisted convolution, the independent oracle."""
    sp = f.space
    p = sp.p
    vecs = [tuple(int(c) for c in r) for r in sp.vectors()]
    out = [CycNum.zero(p) for _ in range(sp.n_points)]
    for v1 in vecs:
        for v2 in vecs:
            v = tuple((a + b) % p for a, b in zip(v1, v2))
            phase = psi(sp.half * sp.omega_int(v1, v2), p)
            out[sp.index_of(v)] = out[sp.index_of(v)] + phase * f[v1] * g[v2]
    return Kernel.from_values(sp, out)


def test_h_mul_examples():
    sp = SympSpace(3, 1)
    a = HeisElement(sp, (1, 2), 0)
    assert a * a == HeisElement(sp, (2, 4), 0)           # omega(v, v) = 0
    assert h_mul(a, a) == a * a
    x = HeisElement(sp, (1, 0), 0)
    y = HeisElement(sp, (0, 1), 0)
    assert x * y == HeisElement(sp, (1, 1), 2)           # 1/2 = 2 mod 3
    z = HeisElement(sp, (0, 0), 1)
    for h in enumerate_heisenberg(sp):
        assert z * h == h * z


def test_h_mul_group_axioms():
    sp = SympSpace(3, 1)
    els = list(enumerate_heisenberg(sp))
    assert len(els) == 27
    e = HeisElement.identity(sp)
    rng = random.Random(0)
    for _ in range(500):
        a, b, c = (rng.choice(els) for _ in range(3))
        assert (a * b) * c == a * (b * c)
    for a in els:
        assert a * e == a and e * a == a
        assert a * a.inverse() == e


def test_center_is_exactly_the_z_axis():
    sp = SympSpace(3, 1)
    els = list(enumerate_heisenberg(sp))
    for h in els:
        commutes = all(h * b == b * h for b in els)
        assert commutes == h.is_central()


def test_pi_central_elements_are_scalars():
    for (p, N) in [(3, 1), (5, 1)]:
        sp = SympSpace(p, N)
        ident = Operator.identity(sp)
        for z in range(p):
            op = schrodinger_pi(sp, HeisElement(sp, (0,) * sp.dim, z))
            assert op == ident.scale(psi(z, p))


def test_pi_pure_translation_is_a_permutation():
    sp = SympSpace(3, 1)
    op = schrodinger_pi(sp, HeisElement(sp, (0, 1), 0))
    # [T f](x) = f(x + 1): matrix has 1 at (x, x+1)
    expected = np.zeros((3, 3, 3), dtype=np.int64)
    for x in range(3):
        expected[x, (x + 1) % 3, 0] = 1
    assert op == Operator(sp, expected, 1)


def test_pi_traces():
    sp = SympSpace(3, 1)
    q = sp.q_pow_n
    for h in enumerate_heisenberg(sp):
        t = schrodinger_pi(sp, h).trace()
        if h.is_central():
            assert t == psi(h.z, 3) * q
        else:
            assert t == CycNum.zero(3)


@pytest.mark.parametrize("p,N", [(3, 1), (5, 1)])
def test_pi_homomorphism_exhaustive(p, N):
    sp = SympSpace(p, N)
    els = list(enumerate_heisenberg(sp))
    ops = {h: schrodinger_pi(sp, h) for h in els}
    for a in els:
        for b in els:
            assert ops[a] @ ops[b] == ops[a * b]


def test_pi_unitary():
    sp = SympSpace(3, 1)
    ident = Operator.identity(sp)
    for h in enumerate_heisenberg(sp):
        op = schrodinger_pi(sp, h)
        assert op @ op.conj_transpose() == ident


@pytest.mark.parametrize("p,N", [(3, 1), (5, 1), (3, 2)])
def test_stone_von_neumann(p, N):
    assert verify_stone_von_neumann(SympSpace(p, N))


@pytest.mark.parametrize("p,N,total", [(3, 1, 27), (5, 1, 125), (3, 2, 243)])
def test_irreducibility_sum(p, N, total):
    sp = SympSpace(p, N)
    acc = CycNum.zero(p)
    for h in enumerate_heisenberg(sp):
        t = schrodinger_pi(sp, h).trace()
        acc = acc + t * t.conj()
    assert acc == CycNum.from_int(total, p)              # (1/|H|) sum = 1


def test_weyl_transform_examples():
    sp = SympSpace(3, 1)
    assert weyl_transform(Operator.identity(sp)) == Kernel.delta(sp)
    assert weyl_transform(Operator.zero(sp)) == Kernel.zero(sp)
    for u in [(0, 0), (1, 0), (0, 2), (2, 1)]:
        op = schrodinger_pi(sp, HeisElement(sp, u, 0))
        assert weyl_transform(op) == Kernel.delta(sp, u)


def test_weyl_inverse_examples():
    sp = SympSpace(3, 1)
    assert weyl_inverse(Kernel.delta(sp)) == Operator.identity(sp)
    u = (2, 1)
    assert weyl_inverse(Kernel.delta(sp, u)) == schrodinger_pi(sp, HeisElement(sp, u, 0))
    ones = Kernel.from_values(sp, [CycNum.one(3)] * 9)
    assert weyl_inverse(ones).trace() == CycNum.from_int(3, 3)


@pytest.mark.parametrize("p,N", [(3, 1), (5, 1), (3, 2)])
def test_weyl_round_trips(p, N):
    sp = SympSpace(p, N)
    rng = random.Random(10 * p + N)
    for _ in range(10):
        a = random_operator(sp, rng)
        fa = weyl_transform(a)
        assert weyl_inverse(fa) == a
        assert weyl_transform(weyl_inverse(fa)) == fa


def test_v_convolve_matches_brute_force():
    sp = SympSpace(3, 1)
    rng = random.Random(4)
    for _ in range(5):
        f, g = random_kernel(sp, rng), random_kernel(sp, rng)
        assert v_convolve(f, g) == brute_convolve(f, g)


def test_v_convolve_fallback_path_matches(monkeypatch):
    import weilrep.heisenberg as H

    sp = SympSpace(3, 1)
    rng = random.Random(5)
    f, g = random_kernel(sp, rng), random_kernel(sp, rng)
    expected = v_convolve(f, g)
    monkeypatch.setattr(H, "_conv_index_table", lambda p, N: None)
    assert v_convolve(f, g) == expected


def test_delta_is_the_unit_of_the_algebra():
    sp = SympSpace(3, 1)
    rng = random.Random(6)
    f = random_kernel(sp, rng)
    assert v_convolve(Kernel.delta(sp), f) == f
    assert v_convolve(f, Kernel.delta(sp)) == f


def test_delta_convolution_against_operator_oracle():
    sp = SympSpace(3, 1)
    for u in [(1, 0), (0, 1), (2, 2)]:
        for w in [(1, 1), (0, 2), (2, 0)]:
            pu = schrodinger_pi(sp, HeisElement(sp, u, 0))
            pw = schrodinger_pi(sp, HeisElement(sp, w, 0))
            assert (v_convolve(Kernel.delta(sp, u), Kernel.delta(sp, w))
                    == weyl_transform(pu @ pw))


@pytest.mark.parametrize("p,N", [(3, 1), (5, 1), (3, 2)])
def test_weyl_transform_is_an_algebra_isomorphism(p, N):
    sp = SympSpace(p, N)
    rng = random.Random(20 * p + N)
    for _ in range(8):
        a, b = random_operator(sp, rng), random_operator(sp, rng)
        assert weyl_transform(a @ b) == v_convolve(weyl_transform(a), weyl_transform(b))


def test_convolution_is_associative_and_bilinear():
    sp = SympSpace(3, 1)
    rng = random.Random(9)
    f, g, h = (random_kernel(sp, rng) for _ in range(3))
    assert v_convolve(v_convolve(f, g), h) == v_convolve(f, v_convolve(g, h))
    assert v_convolve(f + g, h) == v_convolve(f, h) + v_convolve(g, h)


def test_operator_matmul_against_entrywise_oracle():
    sp = SympSpace(3, 1)
    rng = random.Random(12)
    a, b = random_operator(sp, rng), random_operator(sp, rng)
    prod = a @ b
    m = sp.q_pow_n
    for i in range(m):
        for j in range(m):
            acc = CycNum.zero(3)
            for k in range(m):
                acc = acc + a.entry(i, k) * b.entry(k, j)
            assert prod.entry(i, j) == acc


def test_conj_transpose_is_an_antihomomorphism():
    sp = SympSpace(3, 1)
    rng = random.Random(13)
    a, b = random_operator(sp, rng), random_operator(sp, rng)
    assert (a @ b).conj_transpose() == b.conj_transpose() @ a.conj_transpose()
    assert a.conj_transpose().conj_transpose() == a


def test_kernel_values_and_json_index_order():
    sp = SympSpace(3, 1)
    k = Kernel.delta(sp, (0, 1))
    vals = k.values()
    assert vals[1] == CycNum.one(3)
    assert all(v == CycNum.zero(3) for i, v in enumerate(vals) if i != 1)
    d = k.to_json_dict()
    assert d["p"] == 3 and d["N"] == 1 and len(d["values"]) == 9
    assert d["values"][1]["coeffs"][0] == ["1", "1"]


def test_kernel_from_values_round_trip():
    sp = SympSpace(3, 1)
    rng = random.Random(14)
    k = random_kernel(sp, rng)
    assert Kernel.from_values(sp, k.values()) == k


def test_operator_exactness_with_large_entries():
    # entries big enough that naive int64 accumulation would overflow
    sp = SympSpace(3, 1)
    big = 1 << 40
    vals = np.zeros((3, 3, 3), dtype=np.int64)
    vals[:, :, 0] = big
    a = Operator(sp, vals, 1)
    prod = a @ a
    expected = CycNum.from_int(3 * big * big, 3)         # row . column of constants
    assert prod.entry(0, 0) == expected
    assert 3 * big * big > (1 << 63)                     # would wrap in int64


def test_kernel_exactness_with_large_entries():
    sp = SympSpace(3, 1)
    big = 1 << 40
    vals = np.zeros((9, 3), dtype=np.int64)
    vals[:, 0] = big
    f = Kernel(sp, vals, 1)
    conv = v_convolve(f, f)
    # compare against the CycNum-level oracle, which uses Python ints throughout
    assert conv == brute_convolve(f, f)
