import pathlib

import numpy as np
import pytest

import ctxembed

FIXTURES = pathlib.Path(__file__).resolve().parents[2] / "data" / "fixtures"


def triangle_pendant():
    return ctxembed.Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)])


def test_structure():
    g = triangle_pendant()
    assert g.node_count == 4 and g.edge_count == 4
    assert ctxembed.transitivity(g) == pytest.approx(0.6)
    assert ctxembed.clustering_coefficient(g) == pytest.approx(7 / 12)
    assert ctxembed.diameter(g) == 2
    d = ctxembed.Graph.from_edges(3, [(0, 1), (1, 0), (1, 2)], directed=True)
    assert ctxembed.reciprocity(d) == pytest.approx(2 / 3)
    assert ctxembed.profile(g)["reciprocity"] is None


def test_load_fixture():
    g, names = ctxembed.load_edge_list(FIXTURES / "k3_pendant.edges")
    assert g.node_count == 4
    assert sorted(names) == ["a", "b", "c", "d"]
    with pytest.raises(ctxembed.Error):
        ctxembed.load_edge_list(FIXTURES / "missing.edges")


def test_embed_shapes():
    g = ctxembed.erdos_renyi(30, 0.2, seed=3)
    src, ctx = ctxembed.embed(g, "app", dim=8, samples=3000)
    assert src.shape == (30, 8) and ctx.shape == (30, 8)
    assert np.isfinite(src).all()
    src, ctx = ctxembed.embed(g, "deepwalk", dim=4, walks=2, walk_length=10)
    assert src.shape == (30, 4) and ctx is None
    with pytest.raises(ValueError):
        ctxembed.embed(g, "sdne")
    with pytest.raises(TypeError):
        ctxembed.embed(g, "app", dimension=3)


def test_embed_deterministic():
    g = ctxembed.erdos_renyi(20, 0.3, seed=1)
    a, _ = ctxembed.embed(g, "line1", dim=4, samples=2000, seed=5)
    b, _ = ctxembed.embed(g, "line1", dim=4, samples=2000, seed=5)
    assert np.array_equal(a, b)


def test_direction_matters():
    g = ctxembed.layered_dag(120, 3, 8, 3, seed=2)
    assert ctxembed.link_prediction(g, "verse", reversal=1.0, dim=4, samples=20000) == 0.5
    assert ctxembed.link_prediction(g, "hope", reversal=1.0, dim=4) > 0.7


def test_factorize_and_auc():
    c = np.array([[2.0, 2.0], [2.0, 2.0]])
    src, ctx, sv, residual = ctxembed.factorize(c, 1)
    assert sv[0] == pytest.approx(4.0)
    assert residual < 1e-10
    assert np.allclose(src @ ctx.T, c)
    assert ctxembed.roc_auc([0.8, 0.3], [0.5, 0.1]) == 0.75


def test_verify():
    g, _ = ctxembed.load_edge_list(FIXTURES / "er10.edges")
    ok, report = ctxembed.verify(g)
    assert ok
    assert report["eq3_linf_gap"] < 0.01
    assert report["status"] == "pass"
