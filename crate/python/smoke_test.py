"""Smoke test for the Python extension.

Build and install first:  pip install --no-build-isolation ./crates/py
Run with:  python python/smoke_test.py   (or pytest python/)
"""

import hollow_iep as h


def test_graph_roundtrip():
    k4 = h.Graph.from_graph6("C~")
    assert k4.order == 4
    assert len(k4.edges) == 6
    assert k4.graph6() == "C~"
    assert h.Graph.family("complete:4") == k4
    assert h.max_hollow_rank(k4) == 4


def test_path_realization():
    m = h.realize_path("-2,-1,1,2")
    eigs = m.eigenvalues()
    for a, b in zip(eigs, [-2, -1, 1, 2]):
        assert abs(a - b) < 1e-10
    rows = m.to_list()
    assert all(rows[i][i] == 0.0 for i in range(4))
    poly = m.charpoly()
    diff = max(abs(a - b) for a, b in zip(poly["generalized_cycles"], poly["determinant"]))
    assert diff < 1e-9


def test_certify_and_search():
    w5 = h.Graph.family("wheel:5")
    cert = h.certify(w5, oml=[1, 3, 1])
    assert cert is not None and cert["verdict"] == "refuted"
    assert h.certify(w5, oml=[2, 1, 2]) is None
    out = h.search(w5, oml=[2, 1, 2], seed=1)
    assert out["status"] == "realized"
    assert out["best"]["residual"] <= 1e-7
    assert h.q0_bounds(h.Graph.family("empty:5")) == (1, 1)


def test_catalog_and_errors():
    hits = h.catalog_lookup(h.Graph.family("wheel:5"))
    assert [x["id"] for x in hits] == ["W5"]
    assert hits[0]["values"]["M_plus"] == {"lo": 3, "hi": 3}
    try:
        h.realize_complete_bipartite(1, 3, [-1.0, 0.0, 0.5, 0.5])
    except h.HollowError:
        pass
    else:
        raise AssertionError("asymmetric spectrum accepted")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
    print("python smoke test: ok")
