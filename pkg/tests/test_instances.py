import numpy as np
import pytest

from tricolor.graph import objective
from tricolor.instances import (
    GenSpec,
    ParseError,
    SplitMix64,
    gen_random,
    gen_udg,
    read_coloring,
    read_graph,
    write_coloring,
    write_graph,
)


def test_splitmix_reference_values():
    # Canonical SplitMix64 outputs for seed 0; any conforming port must match.
    rng = SplitMix64(0)
    assert [rng.next_u64() for _ in range(3)] == [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
    ]
    assert 0.0 <= SplitMix64(9).next_double() < 1.0
    below = [SplitMix64(4).below(10) for _ in range(5)]
    assert all(0 <= x < 10 for x in below)


def test_gen_random_forced_triangle():
    g = gen_random(GenSpec("random", n=3, m=3, seed=11))
    assert g.m == 3
    assert sorted((int(u), int(v)) for u, v, _ in g.edges()) == [(0, 1), (0, 2), (1, 2)]


def test_gen_random_counts_and_mean():
    g = gen_random(GenSpec("random", n=100, m=1000, seed=21))
    assert g.m == 1000
    pairs = set(zip(g.edge_u.tolist(), g.edge_v.tolist()))
    assert len(pairs) == 1000
    assert 45.0 <= g.edge_w.mean() <= 55.0


def test_gen_random_deterministic():
    a = gen_random(GenSpec("random", n=40, m=100, seed=5))
    b = gen_random(GenSpec("random", n=40, m=100, seed=5))
    assert np.array_equal(a.edge_u, b.edge_u)
    assert np.array_equal(a.edge_v, b.edge_v)
    assert np.array_equal(a.edge_w, b.edge_w)
    c = gen_random(GenSpec("random", n=40, m=100, seed=6))
    assert not np.array_equal(a.edge_w, c.edge_w)


def test_gen_random_rejects_overfull():
    with pytest.raises(ValueError):
        GenSpec("random", n=4, m=7, seed=0)


def test_gen_udg_extremes():
    g, _ = gen_udg(GenSpec("udg", n=12, r=1.4143, seed=2))
    assert g.m == 12 * 11 // 2  # radius covers the whole unit square
    g2, _ = gen_udg(GenSpec("udg", n=12, r=1e-9, seed=2))
    assert g2.m == 0


def test_gen_udg_weights_are_distances():
    g, pts = gen_udg(GenSpec("udg", n=50, r=0.4, seed=3))
    for u, v, w in g.edges():
        assert w == pytest.approx(np.linalg.norm(pts[u] - pts[v]), abs=1e-12)
        assert w <= 0.4


def test_gen_udg_paper_density():
    g, _ = gen_udg(GenSpec("udg", n=1000, r=0.08, seed=17))
    assert 9326 * 0.9 <= g.m <= 9326 * 1.1


def test_graph_file_round_trip(tmp_path, rng):
    for t in range(50):
        spec = GenSpec("random", n=int(rng.integers(2, 30)), m=0, seed=t)
        n = spec.n
        m = int(rng.integers(0, n * (n - 1) // 2 + 1))
        g = gen_random(GenSpec("random", n=n, m=m, seed=t))
        p1 = tmp_path / f"g{t}.txt"
        p2 = tmp_path / f"g{t}b.txt"
        write_graph(g, p1)
        h = read_graph(p1)
        write_graph(h, p2)
        assert p1.read_text() == p2.read_text()
        assert np.array_equal(g.edge_u, h.edge_u)
        assert np.array_equal(g.edge_w, h.edge_w)


def test_read_graph_minimal_and_objective(tmp_path):
    p = tmp_path / "empty.txt"
    p.write_text("1 0\n")
    g = read_graph(p)
    assert g.n == 1 and g.m == 0

    tri = tmp_path / "tri.txt"
    tri.write_text("3 3\n0 1 1.25\n1 2 2.5\n0 2 4.0\n")
    g = read_graph(tri)
    assert objective(g, [0, 0, 0]) == pytest.approx(7.75)


@pytest.mark.parametrize(
    "content,lineno",
    [
        ("", 1),
        ("3\n", 1),
        ("3 2\n0 1 1.0\n", 3),  # file ends early
        ("3 1\n0 1\n", 2),  # missing weight
        ("3 1\n0 9 1.0\n", 2),  # index out of range
        ("3 1\n0 1 -4\n", 2),  # negative weight
        ("3 1\n1 1 2.0\n", 2),  # self-loop
        ("3 1\n0 1 abc\n", 2),  # malformed weight
        ("2 1\n0 1 1.0\nleftover\n", 3),  # trailing content
    ],
)
def test_read_graph_errors_carry_line_numbers(tmp_path, content, lineno):
    p = tmp_path / "bad.txt"
    p.write_text(content)
    with pytest.raises(ParseError, match=f":{lineno}:"):
        read_graph(p)


def test_coloring_round_trip(tmp_path):
    p = tmp_path / "c.txt"
    write_coloring([0, 2, 1, 1], p)
    assert np.array_equal(read_coloring(p), [0, 2, 1, 1])
    bad = tmp_path / "bad.txt"
    bad.write_text("0\n3\n")
    with pytest.raises(ParseError, match=":2:"):
        read_coloring(bad)
