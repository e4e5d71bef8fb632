"""Directed graphs, paths, and the free category they generate.

Paths list their edges in the order they are traversed. The free category has
infinitely many morphisms as soon as the graph has a cycle, so it is exposed
through bounded hom-set enumeration rather than as a :class:`FiniteCategory`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterator, Mapping, NamedTuple

from .category import FiniteCategory, LocalizationError, NotComposable, compose

EdgeId = Hashable


class EndpointMismatch(LocalizationError):
    pass


@dataclass(frozen=True)
class DirectedGraph:
    vertices: frozenset
    edges: Mapping[EdgeId, tuple]

    def src(self, e: EdgeId):
        return self.edges[e][0]

    def tgt(self, e: EdgeId):
        return self.edges[e][1]

    @cached_property
    def _out(self) -> dict:
        out: dict = {v: [] for v in self.vertices}
        for e, (x, _) in self.edges.items():
            out[x].append(e)
        for v in out:
            out[v].sort(key=repr)
        return out

    def out_of(self, v) -> list:
        return self._out.get(v, [])

    def is_valid(self) -> bool:
        return all(x in self.vertices and y in self.vertices for x, y in self.edges.values())


class Path(NamedTuple):
    """A path in a graph: a start vertex and the edges walked in order."""

    at: Hashable
    edges: tuple = ()


def path_source(g: DirectedGraph, p: Path):
    return p.at


def path_target(g: DirectedGraph, p: Path):
    return g.tgt(p.edges[-1]) if p.edges else p.at


def is_path(g: DirectedGraph, p: Path) -> bool:
    if p.at not in g.vertices:
        return False
    here = p.at
    for e in p.edges:
        if e not in g.edges or g.src(e) != here:
            return False
        here = g.tgt(e)
    return True


def empty_path(v) -> Path:
    return Path(v, ())


def path_concat(g: DirectedGraph, p: Path, q: Path) -> Path:
    """``p`` followed by ``q``."""
    if path_target(g, p) != q.at:
        raise NotComposable(f"path ends at {path_target(g, p)!r}, next starts at {q.at!r}")
    return Path(p.at, p.edges + q.edges)


class FreeCategory:
    """Objects are the graph's vertices, morphisms its paths, composition concatenation."""

    def __init__(self, graph: DirectedGraph):
        self.graph = graph

    def identity(self, v) -> Path:
        return empty_path(v)

    def compose(self, q: Path, p: Path) -> Path:
        """``q∘p``: traverse ``p`` then ``q``."""
        return path_concat(self.graph, p, q)

    def paths_from(self, v, max_len: int) -> Iterator[Path]:
        """Every path starting at ``v`` with at most ``max_len`` edges, shortest first."""
        level = [empty_path(v)]
        for _ in range(max_len + 1):
            yield from level
            nxt = []
            for p in level:
                for e in self.graph.out_of(path_target(self.graph, p)):
                    nxt.append(Path(p.at, p.edges + (e,)))
            level = nxt

    def hom(self, v, w, max_len: int) -> list[Path]:
        return [p for p in self.paths_from(v, max_len) if path_target(self.graph, p) == w]


def free_category(g: DirectedGraph) -> FreeCategory:
    return FreeCategory(g)


class PathEvaluator:
    """The functor out of a free category determined by where the edges go."""

    def __init__(self, g, edge_map, x: FiniteCategory, vertex_map):
        self.graph = g
        self.edge_map = edge_map
        self.target = x
        self.vertex_map = vertex_map

    def __call__(self, p: Path) -> str:
        x = self.target
        result = x.identity[self.vertex_map(p.at)]
        for e in p.edges:
            result = compose(x, self.edge_map(e), result)
        return result


def _as_callable(m) -> Callable:
    return m if callable(m) else m.__getitem__


def free_functor(
    g: DirectedGraph,
    edge_map: Mapping | Callable,
    x: FiniteCategory,
    vertex_map: Mapping | Callable | None = None,
) -> PathEvaluator:
    """Extend an edge assignment to all paths.

    Without ``vertex_map`` the vertices are assumed to be objects of ``x``.
    """
    emap = _as_callable(edge_map)
    vmap = _as_callable(vertex_map) if vertex_map is not None else (lambda v: v)
    for e, (a, b) in g.edges.items():
        image = emap(e)
        if image not in x.morphisms or x.morphisms[image] != (vmap(a), vmap(b)):
            raise EndpointMismatch(f"edge {e!r} sent to {image!r}")
    return PathEvaluator(g, emap, x, vmap)
