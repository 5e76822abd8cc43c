from knopkit.analysis import tran_poset
from knopkit.groups import group
from knopkit.plotting import hasse_diagram, hom_dim_heatmap


def test_heatmap_is_deterministic(tmp_path):
    table = [[1, 1, 2], [1, 2, 5], [2, 5, 15]]
    labels = ["0", "1", "2"]
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    hom_dim_heatmap(table, labels, labels, str(a), "sets-op")
    hom_dim_heatmap(table, labels, labels, str(b), "sets-op")
    assert a.read_bytes() == b.read_bytes()
    assert a.stat().st_size > 1000


def test_hasse_diagram_formats(tmp_path):
    P = tran_poset(group("S3"))
    for ext in ("png", "svg", "pdf"):
        a, b = tmp_path / f"a.{ext}", tmp_path / f"b.{ext}"
        hasse_diagram(P, str(a))
        hasse_diagram(P, str(b))
        assert a.read_bytes() == b.read_bytes()
