"""Deterministic instance generators and plain-text graph/coloring files.

Two families are generated:

* ``random`` -- exactly ``m`` distinct edges sampled uniformly without
  replacement among all vertex pairs, weights i.i.d. uniform on
  [0, weight_max].
* ``udg`` -- unit disk graph: ``n`` points uniform in the unit square,
  an edge between points at Euclidean distance <= r (closed radius),
  weighted by that distance.

Generation uses SplitMix64 so any port can reproduce instances bit for bit.
The draw order is fixed and documented on each generator.

Text formats: a graph file starts with ``n m`` followed by ``m`` lines
``i j w`` (0-based indices, decimal weight); a coloring file has one color
digit (0/1/2) per line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import WeightedGraph

_MASK64 = (1 << 64) - 1


class ParseError(ValueError):
    """Malformed instance or coloring file; message carries the line number."""


class SplitMix64:
    """SplitMix64 PRNG (Steele, Lea, Flood 2014); portable across languages.

    ``next_double`` takes the top 53 bits of the next 64-bit output, i.e.
    ``(u64 >> 11) * 2**-53``; ``below(k)`` uses unbiased rejection on the raw
    64-bit stream.
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_double(self) -> float:
        return (self.next_u64() >> 11) * 2.0 ** -53

    def below(self, k: int) -> int:
        """Uniform integer in [0, k)."""
        if k <= 0:
            raise ValueError("below() needs k >= 1")
        limit = (1 << 64) - ((1 << 64) % k)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % k


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one generated instance; the seed fully determines it."""

    family: str  # "random" | "udg"
    n: int
    m: int | None = None
    r: float | None = None
    weight_max: float = 100.0
    seed: int = 0

    def __post_init__(self):
        if self.family not in ("random", "udg"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if self.family == "random":
            if self.m is None:
                raise ValueError("random family needs m")
            if self.m < 0 or self.m > self.n * (self.n - 1) // 2:
                raise ValueError(f"m={self.m} exceeds pair count for n={self.n}")
        else:
            if self.r is None or self.r <= 0:
                raise ValueError("udg family needs a radius r > 0")

    def name(self) -> str:
        if self.family == "random":
            return f"random_n{self.n}_m{self.m}_s{self.seed}"
        return f"udg_n{self.n}_r{self.r:g}_s{self.seed}"


def _pair_from_index(n: int, base: np.ndarray, p: int) -> tuple[int, int]:
    # Pairs (i, j), i < j, ranked lexicographically; base[i] = rank of (i, i+1).
    i = int(np.searchsorted(base, p, side="right")) - 1
    j = i + 1 + (p - int(base[i]))
    return i, j


def gen_random(spec: GenSpec) -> WeightedGraph:
    """Uniform random graph with exactly ``spec.m`` edges.

    Draw order: a partial Fisher-Yates shuffle over the lexicographic ranks of
    all vertex pairs picks the m edges (one ``below`` call per edge), then one
    ``next_double`` per edge, in pick order, scaled by weight_max.
    """
    if spec.family != "random":
        raise ValueError("gen_random needs a 'random' GenSpec")
    n, m = spec.n, int(spec.m)
    npairs = n * (n - 1) // 2
    rng = SplitMix64(spec.seed)
    base = np.array([i * (2 * n - i - 1) // 2 for i in range(max(n, 1))], dtype=np.int64)

    chosen: list[int] = []
    moved: dict[int, int] = {}
    for t in range(m):
        j = t + rng.below(npairs - t)
        chosen.append(moved.get(j, j))
        moved[j] = moved.get(t, t)
    pairs = [_pair_from_index(n, base, p) for p in chosen]
    edges = [(i, j, rng.next_double() * spec.weight_max) for i, j in pairs]
    return WeightedGraph(n, edges)


def gen_udg(spec: GenSpec) -> tuple[WeightedGraph, np.ndarray]:
    """Unit disk graph; returns the graph and the n x 2 point array.

    Draw order: for each vertex i in 0..n-1, x_i then y_i via ``next_double``.
    Edge rule: Euclidean distance <= r (closed), weight equal to the distance.
    """
    if spec.family != "udg":
        raise ValueError("gen_udg needs a 'udg' GenSpec")
    n, r = spec.n, float(spec.r)
    rng = SplitMix64(spec.seed)
    pts = np.empty((n, 2), dtype=np.float64)
    for i in range(n):
        pts[i, 0] = rng.next_double()
        pts[i, 1] = rng.next_double()
    edges = []
    if n > 1:
        diff = pts[:, None, :] - pts[None, :, :]
        dist = np.sqrt((diff * diff).sum(axis=2))
        iu, ju = np.triu_indices(n, k=1)
        keep = dist[iu, ju] <= r
        edges = list(zip(iu[keep].tolist(), ju[keep].tolist(), dist[iu, ju][keep].tolist()))
    return WeightedGraph(n, edges), pts


def generate(spec: GenSpec) -> WeightedGraph:
    """Generate the graph for ``spec`` (points are dropped for udg)."""
    if spec.family == "random":
        return gen_random(spec)
    return gen_udg(spec)[0]


def write_graph(g: WeightedGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"{g.n} {g.m}\n")
        for u, v, w in g.edges():
            f.write(f"{u} {v} {w!r}\n")


def read_graph(path) -> WeightedGraph:
    with open(path, "r", encoding="utf-8") as f:
        lines = f.read().splitlines()
    if not lines:
        raise ParseError(f"{path}:1: empty file, expected 'n m' header")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError(f"{path}:1: expected 'n m' header, got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError(f"{path}:1: non-integer header {lines[0]!r}") from None
    if n < 0 or m < 0:
        raise ParseError(f"{path}:1: negative n or m")
    edges = []
    for k in range(m):
        lineno = k + 2
        if lineno - 1 >= len(lines):
            raise ParseError(f"{path}:{lineno}: expected {m} edge lines, file ends early")
        parts = lines[lineno - 1].split()
        if len(parts) != 3:
            raise ParseError(f"{path}:{lineno}: expected 'i j w', got {lines[lineno - 1]!r}")
        try:
            i, j, w = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise ParseError(f"{path}:{lineno}: malformed edge line {lines[lineno - 1]!r}") from None
        if not (0 <= i < n and 0 <= j < n):
            raise ParseError(f"{path}:{lineno}: vertex index out of range 0..{n - 1}")
        if i == j:
            raise ParseError(f"{path}:{lineno}: self-loop at vertex {i}")
        if not math.isfinite(w) or w < 0:
            raise ParseError(f"{path}:{lineno}: invalid weight {parts[2]}")
        edges.append((i, j, w))
    for extra in lines[m + 1:]:
        if extra.strip():
            raise ParseError(f"{path}:{m + 2}: trailing content after {m} edges")
    return WeightedGraph(n, edges)


def write_coloring(colors, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for c in np.asarray(colors, dtype=np.int64):
            f.write(f"{int(c)}\n")


def read_coloring(path) -> np.ndarray:
    out = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            s = raw.strip()
            if not s:
                continue
            if s not in ("0", "1", "2"):
                raise ParseError(f"{path}:{lineno}: color must be 0, 1 or 2, got {s!r}")
            out.append(int(s))
    return np.array(out, dtype=np.int64)
