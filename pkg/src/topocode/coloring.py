"""The set-coloring value shared by the hypergraph, set-coloring and topcode modules."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .errors import PreconditionError
from .graph_core import Edge, Graph, norm_edge


def fs(xs: Iterable[int]) -> frozenset:
    return frozenset(int(x) for x in xs)


@dataclass(frozen=True)
class SetColoring:
    """Vertex sets F(x), optional edge sets F(uv), and the constraint descriptor."""
    vertex: Tuple[frozenset, ...]
    edge: Optional[Dict[Edge, frozenset]] = None
    constraints: Tuple = ()

    def __init__(self, vertex: Sequence[Iterable[int]], edge: Optional[Mapping] = None, constraints=()):
        object.__setattr__(self, "vertex", tuple(fs(s) for s in vertex))
        if edge is not None:
            edge = {norm_edge(*e): fs(s) for e, s in edge.items()}
        object.__setattr__(self, "edge", edge)
        object.__setattr__(self, "constraints", tuple(constraints))

    def __hash__(self):
        return hash((self.vertex, tuple(sorted((e, tuple(sorted(s))) for e, s in (self.edge or {}).items()))))

    def edge_set(self, e: Sequence[int]) -> frozenset:
        if self.edge is None:
            raise PreconditionError("set-coloring has no edge sets")
        return self.edge[norm_edge(*e)]

    def check_shape(self, g: Graph, need_edges: bool = False) -> None:
        if len(self.vertex) != g.p:
            raise PreconditionError(f"vertex sets cover {len(self.vertex)} vertices, graph has {g.p}")
        if need_edges:
            if self.edge is None:
                raise PreconditionError("edge sets missing")
            missing = [e for e in g.edges if e not in self.edge]
            if missing:
                raise PreconditionError(f"edge sets missing for {missing}")

    def with_intersection_edges(self, g: Graph) -> "SetColoring":
        """Fill edge sets with F(u) & F(v)."""
        return SetColoring(self.vertex, {e: self.vertex[e[0]] & self.vertex[e[1]] for e in g.edges},
                           self.constraints)

    def ground(self) -> frozenset:
        out = set()
        for s in self.vertex:
            out |= s
        return frozenset(out)


def sorted_set(s) -> list:
    return sorted(s)
