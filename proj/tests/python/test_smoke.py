import pytest

import mcmlab


@pytest.fixture
def node():
    return mcmlab.make_ring(["x", "y"], ["x*y"])


def node_sequence(r):
    x = mcmlab.Module.from_mf(r, [["x"]], [["y"]])
    y = mcmlab.Module.from_mf(r, [["y"]], [["x"]])
    return mcmlab.Sequence(y, mcmlab.Module.free(r, 1), x, [["x"]], [["1"]])


def test_ring(node):
    assert node.vars == ["x", "y"]
    assert node.dim == 1
    assert node.weights == [1, 1]


def test_hilbert_and_etor(node):
    F = mcmlab.m_adic(node)
    h = mcmlab.hilbert_coefficients(mcmlab.Module.free(node, 1), F)
    assert h["e"] == [2, 1]
    assert h["lengths"][:4] == [1, 3, 5, 7]
    x = mcmlab.Module.from_mf(node, [["x"]], [["y"]])
    y = mcmlab.Module.from_mf(node, [["y"]], [["x"]])
    e = mcmlab.etor(x, F)
    assert e["etor"] == 1 and e["method_agreement"]
    assert mcmlab.etor(x + y, F)["etor"] == 2
    assert mcmlab.tor_lengths(1, x, F, 6)[1:] == [1] * 6


def test_sequences(node):
    F = mcmlab.m_adic(node)
    s = node_sequence(node)
    assert mcmlab.is_exact(s)
    v = mcmlab.etor_of_sequence(s, F)
    assert v["etor_alpha"] == 2 and not v["tsplit"]
    assert mcmlab.is_tsplit(mcmlab.split_sequence(s.N, s.M), F)
    assert mcmlab.annihilation_index(s, "x + y", F) == 1
    assert mcmlab.etor_of_sequence(mcmlab.scalar_mult("5", s), F)["etor_alpha"] == 2


def test_ext_over_f3():
    r = mcmlab.make_ring(["x", "y"], ["x*y"], 3)
    F = mcmlab.m_adic(r)
    s = node_sequence(r)
    ext = mcmlab.ExtGroup(s.M, s.N)
    assert ext.dim == 1
    elements = ext.elements()
    assert len(elements) == 3
    for c in elements:
        assert mcmlab.is_tsplit(ext.extension(c), F) == (c == [0])
    assert ext.class_of(s) != [0]


def test_betti_complexity():
    r = mcmlab.make_ring(["x", "y", "z"], ["x^2", "y^2"])
    k = mcmlab.Module.from_presentation(r, [["x", "y", "z"]])
    b = mcmlab.betti_numbers(k, 8)
    assert b == [2 * n + 1 for n in range(9)]
    assert mcmlab.complexity(b) == 2


def test_catalog():
    names = mcmlab.catalog_list()
    assert "quadric-a1-basics" in names
    rep = mcmlab.catalog_run("quadric-a1-basics")
    assert rep["ok"]
    assert all(c["provenance"] for c in rep["checks"])
    with pytest.raises(mcmlab.InputError):
        mcmlab.catalog_run("nope")


def test_errors(node):
    with pytest.raises(mcmlab.InputError):
        mcmlab.Module.from_mf(node, [["x"]], [["x"]])
    with pytest.raises(mcmlab.Error):
        mcmlab.make_ring(["x"], ["1"])
