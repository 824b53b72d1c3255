"""Directed/weighted social graph and derived-subgraph construction.

Nodes carry a display label (a pseudonym, unique per graph), an attribute
map filled from questionnaire data, and an annotation map filled by the
metric pipeline.  Tie weights are the five contact-intensity grades of the
generating question (1 = no contact .. 5 = always together).  Node ids are
dense non-negative integers assigned in insertion order, which makes the
interchange exports byte-deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import GraphError
from .vocab import GRAPH_METRICS, NODE_METRICS

WEIGHT_MIN = 1
WEIGHT_MAX = 5

Scalar = int | float | str | bool


@dataclass
class NodeRef:
    """A person in a social graph."""

    id: int
    label: str
    attrs: dict[str, Scalar] = field(default_factory=dict)
    annotations: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True, order=True)
class Tie:
    src: int
    dst: int
    weight: int | None = None


class SocialGraph:
    """A directed or undirected, optionally weighted graph of persons.

    Instances are mutable while being built and immutable once
    :meth:`freeze` has been called; all analysis operates on frozen
    graphs, which are safe for concurrent reads.  Undirected graphs store
    each edge once under the (min id, max id) key.
    """

    def __init__(self, name: str, *, directed: bool = True, weighted: bool = False):
        self.name = name
        self.directed = directed
        self.weighted = weighted
        self._nodes: list[NodeRef] = []
        self._by_label: dict[str, int] = {}
        self._ties: dict[tuple[int, int], int | None] = {}
        self._annotations: dict[str, float] = {}
        self._frozen = False
        self._ties_cache: list[Tie] | None = None

    # -- construction -------------------------------------------------

    def add_node(self, label: str, attrs: Mapping[str, Scalar] | None = None) -> NodeRef:
        self._check_mutable()
        if not label:
            raise GraphError("node label must be non-empty")
        if label in self._by_label:
            raise GraphError(f"duplicate node label {label!r}")
        node = NodeRef(id=len(self._nodes), label=label, attrs=dict(attrs or {}))
        self._nodes.append(node)
        self._by_label[label] = node.id
        return node

    def add_tie(self, src: int, dst: int, weight: int | None = None) -> None:
        self._check_mutable()
        for v in (src, dst):
            if not (0 <= v < len(self._nodes)):
                raise GraphError(f"unknown node id {v}")
        if src == dst:
            raise GraphError(f"self-tie on node {src} not allowed")
        if self.weighted:
            if weight is None:
                raise GraphError("weighted graph requires a tie weight")
            if not (WEIGHT_MIN <= weight <= WEIGHT_MAX):
                raise GraphError(
                    f"tie weight {weight} outside {WEIGHT_MIN}..{WEIGHT_MAX}"
                )
        elif weight is not None:
            raise GraphError("unweighted graph cannot carry tie weights")
        self._ties[self._key(src, dst)] = weight

    def freeze(self) -> "SocialGraph":
        self._frozen = True
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    def _check_mutable(self) -> None:
        if self._frozen:
            raise GraphError("graph is frozen")

    def _key(self, src: int, dst: int) -> tuple[int, int]:
        if self.directed:
            return (src, dst)
        return (src, dst) if src < dst else (dst, src)

    # -- annotations ---------------------------------------------------

    @property
    def annotations(self) -> dict[str, float]:
        return dict(self._annotations)

    def set_annotation(self, name: str, value: float) -> None:
        if name not in GRAPH_METRICS:
            raise GraphError(f"unknown graph metric {name!r}")
        self._annotations[name] = value

    def set_node_annotation(self, node_id: int, name: str, value: float) -> None:
        if name not in NODE_METRICS:
            raise GraphError(f"unknown node metric {name!r}")
        self.node(node_id).annotations[name] = value

    # -- access --------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._nodes)

    @property
    def m(self) -> int:
        return len(self._ties)

    @property
    def nodes(self) -> tuple[NodeRef, ...]:
        return tuple(self._nodes)

    def node(self, node_id: int) -> NodeRef:
        if not (0 <= node_id < len(self._nodes)):
            raise GraphError(f"unknown node id {node_id}")
        return self._nodes[node_id]

    def node_id(self, label: str) -> int:
        try:
            return self._by_label[label]
        except KeyError:
            raise GraphError(f"unknown node label {label!r}") from None

    def has_label(self, label: str) -> bool:
        return label in self._by_label

    def labels(self) -> tuple[str, ...]:
        return tuple(n.label for n in self._nodes)

    def ties(self) -> list[Tie]:
        # frozen graphs cannot gain or lose ties, so build the list once
        if self._frozen:
            if self._ties_cache is None:
                self._ties_cache = [
                    Tie(s, d, w) for (s, d), w in sorted(self._ties.items())
                ]
            return list(self._ties_cache)
        return [Tie(s, d, w) for (s, d), w in sorted(self._ties.items())]

    def has_tie(self, src: int, dst: int) -> bool:
        return self._key(src, dst) in self._ties

    def tie_weight(self, src: int, dst: int) -> int | None:
        key = self._key(src, dst)
        if key not in self._ties:
            raise GraphError(f"no tie {src}->{dst}")
        return self._ties[key]

    def out_neighbors(self, v: int) -> list[int]:
        self.node(v)
        if self.directed:
            return sorted(d for (s, d) in self._ties if s == v)
        return self.neighbors(v)

    def in_neighbors(self, v: int) -> list[int]:
        self.node(v)
        if self.directed:
            return sorted(s for (s, d) in self._ties if d == v)
        return self.neighbors(v)

    def neighbors(self, v: int) -> list[int]:
        """Distinct nodes tied to v in either direction."""
        self.node(v)
        out = set()
        for s, d in self._ties:
            if s == v:
                out.add(d)
            elif d == v:
                out.add(s)
        return sorted(out)

    # -- derived graphs --------------------------------------------------

    def filter_min_weight(self, min_w: int, name: str | None = None) -> "SocialGraph":
        """Subgraph on the same node set keeping ties of weight >= min_w."""
        if not self.weighted:
            raise GraphError("filter_min_weight requires a weighted graph")
        if not (WEIGHT_MIN <= min_w <= WEIGHT_MAX):
            raise GraphError(f"min weight {min_w} outside {WEIGHT_MIN}..{WEIGHT_MAX}")
        out = SocialGraph(name or self.name, directed=self.directed, weighted=True)
        self._copy_nodes_into(out)
        for (s, d), w in self._ties.items():
            if w >= min_w:
                out.add_tie(s, d, w)
        return out.freeze()

    def mutual_projection(self, min_w: int, name: str | None = None) -> "SocialGraph":
        """Undirected graph with edge {u,v} iff both arcs exist with weight >= min_w."""
        if not (self.directed and self.weighted):
            raise GraphError("mutual_projection requires a directed weighted graph")
        if not (WEIGHT_MIN <= min_w <= WEIGHT_MAX):
            raise GraphError(f"min weight {min_w} outside {WEIGHT_MIN}..{WEIGHT_MAX}")
        out = SocialGraph(name or self.name, directed=False, weighted=False)
        self._copy_nodes_into(out)
        for (s, d), w in self._ties.items():
            if s < d and w >= min_w:
                back = self._ties.get((d, s))
                if back is not None and back >= min_w:
                    out.add_tie(s, d)
        return out.freeze()

    def undirected_projection(self, name: str | None = None) -> "SocialGraph":
        """Undirected, unweighted graph with edge {u,v} iff any arc between u and v."""
        out = SocialGraph(name or self.name, directed=False, weighted=False)
        self._copy_nodes_into(out)
        for s, d in self._ties:
            if not out.has_tie(s, d):
                out.add_tie(s, d)
        return out.freeze()

    def with_node_attrs(self, attrs_by_label: Mapping[str, Mapping[str, Scalar]]) -> "SocialGraph":
        """Copy of the graph with extra attributes merged into each node."""
        out = self._clone()
        for node in out._nodes:
            extra = attrs_by_label.get(node.label)
            if extra:
                node.attrs.update(extra)
        return out.freeze()

    def _clone(self) -> "SocialGraph":
        out = SocialGraph(self.name, directed=self.directed, weighted=self.weighted)
        self._copy_nodes_into(out)
        out._ties = dict(self._ties)
        out._annotations = dict(self._annotations)
        return out

    def _copy_nodes_into(self, other: "SocialGraph") -> None:
        for node in self._nodes:
            ref = other.add_node(node.label, node.attrs)
            ref.annotations.update(node.annotations)

    # -- comparison / serialization --------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SocialGraph):
            return NotImplemented
        return (
            self.name == other.name
            and self.directed == other.directed
            and self.weighted == other.weighted
            and self._ties == other._ties
            and self._annotations == other._annotations
            and [(n.label, n.attrs, n.annotations) for n in self._nodes]
            == [(n.label, n.attrs, n.annotations) for n in other._nodes]
        )

    def __repr__(self) -> str:
        kind = "digraph" if self.directed else "graph"
        return f"<SocialGraph {self.name!r} {kind} n={self.n} m={self.m}>"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "directed": self.directed,
            "weighted": self.weighted,
            "annotations": dict(sorted(self._annotations.items())),
            "nodes": [
                {
                    "id": n.id,
                    "label": n.label,
                    "attrs": dict(sorted(n.attrs.items())),
                    "annotations": dict(sorted(n.annotations.items())),
                }
                for n in self._nodes
            ],
            "ties": [
                {"src": t.src, "dst": t.dst}
                | ({"weight": t.weight} if t.weight is not None else {})
                for t in self.ties()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SocialGraph":
        g = cls(data["name"], directed=data["directed"], weighted=data["weighted"])
        for nd in data["nodes"]:
            ref = g.add_node(nd["label"], nd.get("attrs") or {})
            ref.annotations.update(nd.get("annotations") or {})
        for td in data["ties"]:
            g.add_tie(td["src"], td["dst"], td.get("weight"))
        for name, value in (data.get("annotations") or {}).items():
            g.set_annotation(name, value)
        return g.freeze()
