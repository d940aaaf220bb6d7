import random

import numpy as np
import pytest

from weilrep.deligne import (deligne_kernel_direct, deligne_kernel_fourier,
                             kernel_compose)
from weilrep.heisenberg import Operator
from weilrep.symplectic import (SpMatrix, SympSpace, SymplecticError,
                                enumerate_sp, random_sp)
from weilrep.weil import WeilKernelTable

P3 = SympSpace(3, 1)


@pytest.fixture(scope="module")
def table3():
    return WeilKernelTable(P3, seed=42)


def test_identity_kernel(table3):
    d = deligne_kernel_direct(table3, SpMatrix.identity(P3))
    assert d.matrix == Operator.identity(P3)
    f = deligne_kernel_fourier(table3, SpMatrix.identity(P3))
    assert f.matrix == Operator.identity(P3)


def test_minus_identity_kernel_structure(table3):
    # rho(-I) is -1 times the parity flip x -> -x
    d = deligne_kernel_direct(table3, SpMatrix([[2, 0], [0, 2]], 3))
    expected = np.zeros((3, 3, 3), dtype=np.int64)
    for x in range(3):
        expected[x, (-x) % 3, 0] = -1
    assert d.matrix == Operator(P3, expected, 1)


@pytest.mark.parametrize("p", [3, 5])
def test_both_routes_equal_the_matrix_of_rho(p):
    sp = SympSpace(p, 1)
    table = WeilKernelTable(sp, seed=42)
    for g in enumerate_sp(sp):
        d = deligne_kernel_direct(table, g)
        f = deligne_kernel_fourier(table, g)
        assert d == f
        assert d.matrix == table.rho(g)


def test_routes_agree_at_n2():
    sp = SympSpace(3, 2)
    table = WeilKernelTable(sp, seed=42)
    rng = random.Random(0)
    for _ in range(8):
        g = random_sp(sp, rng)
        d = deligne_kernel_direct(table, g)
        assert d == deligne_kernel_fourier(table, g)
        assert d.matrix == table.rho(g)


def test_kernel_compose(table3):
    w = SpMatrix([[0, 1], [2, 0]], 3)
    w_inv = SpMatrix([[0, 2], [1, 0]], 3)
    a = deligne_kernel_direct(table3, w)
    b = deligne_kernel_direct(table3, w_inv)
    composed = kernel_compose(a, b)
    assert composed.g == SpMatrix.identity(P3)
    assert composed.matrix == Operator.identity(P3)
    ident = deligne_kernel_direct(table3, SpMatrix.identity(P3))
    assert kernel_compose(ident, a) == a


def test_composition_law_spot_pairs(table3):
    rng = random.Random(1)
    els = list(enumerate_sp(P3))
    for _ in range(40):
        g, h = rng.choice(els), rng.choice(els)
        assert kernel_compose(deligne_kernel_direct(table3, g),
                              deligne_kernel_direct(table3, h)) \
            == deligne_kernel_direct(table3, g @ h)


def test_compose_rejects_mixed_spaces(table3):
    other = WeilKernelTable(SympSpace(3, 2), seed=42)
    g2 = SpMatrix.identity(SympSpace(3, 2))
    with pytest.raises(SymplecticError):
        kernel_compose(deligne_kernel_direct(table3, SpMatrix.identity(P3)),
                       deligne_kernel_direct(other, g2))


def test_json_shape(table3):
    d = deligne_kernel_direct(table3, SpMatrix([[2, 0], [0, 2]], 3))
    payload = d.to_json_dict()
    assert payload["g"] == "2,0;0,2"
    assert len(payload["matrix"]) == 3
    assert len(payload["matrix"][0]) == 3
    assert payload["matrix"][0][0]["coeffs"] == [["-1", "1"], ["0", "1"]]
