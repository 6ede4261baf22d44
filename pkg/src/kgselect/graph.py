"""Knowledge-graph construction from a catalog.

Nodes are enablers and design principles; undirected edges either link two
enablers (a dependency, weight 0) or an enabler to a principle it fulfills
(weight 1). Node features encode maturity, migration criticality (weight 3
vs 1), the aggregate KPI score, and whether any principle is fulfilled.
Graphs are immutable snapshots; derived views are new graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Any, Iterable, Mapping

from . import scoring
from .catalog import Catalog, catalog_digest, validate_catalog
from .errors import IntegrityError, SchemaError, UnknownNodeError
from .scoring import DEFAULT_NODE_WEIGHT, MIGRATION_CRITICAL_WEIGHT


class NodeKind(str, Enum):
    ENABLER = "enabler"
    PRINCIPLE = "principle"


class EdgeKind(str, Enum):
    DEPENDENCY = "dependency"
    FULFILLS = "fulfills"

    @property
    def weight(self) -> int:
        return 0 if self is EdgeKind.DEPENDENCY else 1


# color scheme used by every visual export
NODE_COLOR_FULFILLING = "blue"
NODE_COLOR_UNATTACHED = "orange"
NODE_COLOR_PRINCIPLE = "green"
EDGE_COLORS = {EdgeKind.FULFILLS: "green", EdgeKind.DEPENDENCY: "red"}


@dataclass(frozen=True)
class NodeFeatures:
    trl: int | None
    node_weight: int
    kpi_score: int
    fulfills_any_principle: bool


@dataclass(frozen=True)
class Node:
    id: str
    kind: NodeKind
    features: NodeFeatures

    @property
    def migration_critical(self) -> bool:
        return self.features.node_weight == MIGRATION_CRITICAL_WEIGHT

    @property
    def color(self) -> str:
        if self.kind is NodeKind.PRINCIPLE:
            return NODE_COLOR_PRINCIPLE
        return NODE_COLOR_FULFILLING if self.features.fulfills_any_principle else NODE_COLOR_UNATTACHED


@dataclass(frozen=True, order=True)
class Edge:
    """Undirected edge with lexicographically ordered endpoints."""

    a: str
    b: str
    kind: EdgeKind

    @staticmethod
    def between(x: str, y: str, kind: EdgeKind) -> "Edge":
        if x == y:
            raise SchemaError(f"self-loop on node '{x}' is not allowed")
        a, b = sorted((x, y))
        return Edge(a, b, kind)

    @property
    def weight(self) -> int:
        return self.kind.weight


@dataclass(frozen=True)
class KnowledgeGraph:
    nodes: Mapping[str, Node]
    edges: frozenset[Edge]
    provenance: str

    @cached_property
    def _adjacency(self) -> Mapping[str, frozenset[tuple[str, EdgeKind]]]:
        adj: dict[str, set[tuple[str, EdgeKind]]] = {node_id: set() for node_id in self.nodes}
        for edge in self.edges:
            adj[edge.a].add((edge.b, edge.kind))
            adj[edge.b].add((edge.a, edge.kind))
        return {node_id: frozenset(pairs) for node_id, pairs in adj.items()}

    def neighbors(self, node_id: str, kind: EdgeKind | None = None) -> frozenset[str]:
        if node_id not in self.nodes:
            raise UnknownNodeError(f"unknown node '{node_id}'")
        pairs = self._adjacency[node_id]
        if kind is None:
            return frozenset(other for other, _ in pairs)
        return frozenset(other for other, k in pairs if k is kind)

    @cached_property
    def enabler_ids(self) -> frozenset[str]:
        return frozenset(i for i, n in self.nodes.items() if n.kind is NodeKind.ENABLER)

    @cached_property
    def principle_ids(self) -> frozenset[str]:
        return frozenset(i for i, n in self.nodes.items() if n.kind is NodeKind.PRINCIPLE)

    def node(self, node_id: str) -> Node:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise UnknownNodeError(f"unknown node '{node_id}'") from None


def build_full_kg(catalog: Catalog) -> KnowledgeGraph:
    """Construct the full knowledge graph for a valid catalog.

    Duplicate edge declarations (e.g. mutual dependency entries) collapse to
    a single undirected edge; self-dependencies were already rejected by
    catalog validation.
    """
    violations = validate_catalog(catalog)
    if violations:
        v = violations[0]
        raise IntegrityError(
            f"catalog has {len(violations)} validation violation(s); first: "
            f"{v.entity_kind} '{v.entity_id}': {v.message}"
        )

    nodes: dict[str, Node] = {}
    edges: set[Edge] = set()
    for e in catalog.enablers:
        nodes[e.id] = Node(
            id=e.id,
            kind=NodeKind.ENABLER,
            features=NodeFeatures(
                trl=e.trl,
                node_weight=scoring.node_weight(e),
                kpi_score=scoring.kpi_score(e),
                fulfills_any_principle=bool(e.principle_ids),
            ),
        )
    for p in catalog.principles:
        nodes[p.id] = Node(
            id=p.id,
            kind=NodeKind.PRINCIPLE,
            features=NodeFeatures(
                trl=None,
                node_weight=DEFAULT_NODE_WEIGHT,
                kpi_score=0,
                fulfills_any_principle=False,
            ),
        )
    for e in catalog.enablers:
        for dep in e.dependency_ids:
            edges.add(Edge.between(e.id, dep, EdgeKind.DEPENDENCY))
        for pid in e.principle_ids:
            edges.add(Edge.between(e.id, pid, EdgeKind.FULFILLS))

    return KnowledgeGraph(nodes=nodes, edges=frozenset(edges), provenance=catalog_digest(catalog))


def subgraph(g: KnowledgeGraph, keep_enablers: Iterable[str]) -> KnowledgeGraph:
    """Induced subgraph on the given enablers; a principle survives only
    while at least one of its fulfills edges does."""
    keep = set(keep_enablers) & g.enabler_ids
    surviving_principles = {
        e.a if e.a in g.principle_ids else e.b
        for e in g.edges
        if e.kind is EdgeKind.FULFILLS and (e.a in keep or e.b in keep)
    }
    node_ids = keep | surviving_principles
    nodes = {i: g.nodes[i] for i in g.nodes if i in node_ids}
    edges = frozenset(e for e in g.edges if e.a in node_ids and e.b in node_ids)
    return KnowledgeGraph(nodes=nodes, edges=edges, provenance=g.provenance)


@dataclass(frozen=True)
class GraphDiff:
    added_enablers: frozenset[str] = frozenset()
    removed_enablers: frozenset[str] = frozenset()
    added_principles: frozenset[str] = frozenset()
    removed_principles: frozenset[str] = frozenset()
    added_dependencies: frozenset[tuple[str, str]] = frozenset()
    removed_dependencies: frozenset[tuple[str, str]] = frozenset()
    added_fulfills: frozenset[tuple[str, str]] = frozenset()
    removed_fulfills: frozenset[tuple[str, str]] = frozenset()
    changed_nodes: frozenset[str] = frozenset()

    def is_empty(self) -> bool:
        return not (
            self.added_enablers
            or self.removed_enablers
            or self.added_principles
            or self.removed_principles
            or self.added_dependencies
            or self.removed_dependencies
            or self.added_fulfills
            or self.removed_fulfills
            or self.changed_nodes
        )

    def to_jsonable(self) -> dict[str, Any]:
        return {
            "added_enablers": sorted(self.added_enablers),
            "removed_enablers": sorted(self.removed_enablers),
            "added_principles": sorted(self.added_principles),
            "removed_principles": sorted(self.removed_principles),
            "added_dependencies": sorted(list(p) for p in self.added_dependencies),
            "removed_dependencies": sorted(list(p) for p in self.removed_dependencies),
            "added_fulfills": sorted(list(p) for p in self.added_fulfills),
            "removed_fulfills": sorted(list(p) for p in self.removed_fulfills),
            "changed_nodes": sorted(self.changed_nodes),
        }


def diff_catalog(g: KnowledgeGraph, catalog: Catalog) -> GraphDiff:
    """Structural diff between an existing graph and a rebuild from ``catalog``.

    Empty iff the rebuild matches ``g`` node-for-node (kinds and features
    included) and edge-for-edge.
    """
    rebuilt = build_full_kg(catalog)

    def pairs(graph: KnowledgeGraph, kind: EdgeKind) -> frozenset[tuple[str, str]]:
        return frozenset((e.a, e.b) for e in graph.edges if e.kind is kind)

    changed = frozenset(
        i
        for i in set(g.nodes) & set(rebuilt.nodes)
        if g.nodes[i] != rebuilt.nodes[i]
    )
    return GraphDiff(
        added_enablers=rebuilt.enabler_ids - g.enabler_ids,
        removed_enablers=g.enabler_ids - rebuilt.enabler_ids,
        added_principles=rebuilt.principle_ids - g.principle_ids,
        removed_principles=g.principle_ids - rebuilt.principle_ids,
        added_dependencies=pairs(rebuilt, EdgeKind.DEPENDENCY) - pairs(g, EdgeKind.DEPENDENCY),
        removed_dependencies=pairs(g, EdgeKind.DEPENDENCY) - pairs(rebuilt, EdgeKind.DEPENDENCY),
        added_fulfills=pairs(rebuilt, EdgeKind.FULFILLS) - pairs(g, EdgeKind.FULFILLS),
        removed_fulfills=pairs(g, EdgeKind.FULFILLS) - pairs(rebuilt, EdgeKind.FULFILLS),
        changed_nodes=changed,
    )


# ---------------------------------------------------------------------------
# serialization (canonical ordering throughout)

def graph_to_jsonable(g: KnowledgeGraph) -> dict[str, Any]:
    return {
        "provenance": g.provenance,
        "nodes": [
            {
                "id": node.id,
                "kind": node.kind.value,
                "trl": node.features.trl,
                "node_weight": node.features.node_weight,
                "kpi_score": node.features.kpi_score,
                "fulfills_any_principle": node.features.fulfills_any_principle,
                "color": node.color,
            }
            for node in (g.nodes[i] for i in sorted(g.nodes))
        ],
        "edges": [
            {
                "source": e.a,
                "target": e.b,
                "kind": e.kind.value,
                "weight": e.weight,
                "color": EDGE_COLORS[e.kind],
            }
            for e in sorted(g.edges)
        ],
    }


def graph_from_jsonable(obj: Any) -> KnowledgeGraph:
    if not isinstance(obj, Mapping):
        raise SchemaError("graph document must be an object")
    for fieldname in ("provenance", "nodes", "edges"):
        if fieldname not in obj:
            raise SchemaError(f"graph document: missing field '{fieldname}'")
    unknown = sorted(set(obj) - {"provenance", "nodes", "edges"})
    if unknown:
        raise SchemaError(f"graph document: unknown field(s) {', '.join(unknown)}")

    nodes: dict[str, Node] = {}
    for i, row in enumerate(obj["nodes"]):
        where = f"nodes[{i}]"
        required = {"id", "kind", "trl", "node_weight", "kpi_score", "fulfills_any_principle", "color"}
        if not isinstance(row, Mapping) or set(row) != required:
            raise SchemaError(f"graph document: {where} must have fields {sorted(required)}")
        try:
            kind = NodeKind(row["kind"])
        except ValueError:
            raise SchemaError(f"graph document: {where} has unknown kind {row['kind']!r}") from None
        node = Node(
            id=row["id"],
            kind=kind,
            features=NodeFeatures(
                trl=row["trl"],
                node_weight=row["node_weight"],
                kpi_score=row["kpi_score"],
                fulfills_any_principle=row["fulfills_any_principle"],
            ),
        )
        if node.id in nodes:
            raise SchemaError(f"graph document: duplicate node id '{node.id}'")
        nodes[node.id] = node

    edges: set[Edge] = set()
    for i, row in enumerate(obj["edges"]):
        where = f"edges[{i}]"
        required = {"source", "target", "kind", "weight", "color"}
        if not isinstance(row, Mapping) or set(row) != required:
            raise SchemaError(f"graph document: {where} must have fields {sorted(required)}")
        try:
            kind = EdgeKind(row["kind"])
        except ValueError:
            raise SchemaError(f"graph document: {where} has unknown kind {row['kind']!r}") from None
        if row["weight"] != kind.weight:
            raise SchemaError(
                f"graph document: {where} weight {row['weight']!r} does not match kind '{kind.value}'"
            )
        for endpoint in (row["source"], row["target"]):
            if endpoint not in nodes:
                raise SchemaError(f"graph document: {where} references unknown node '{endpoint}'")
        edges.add(Edge.between(row["source"], row["target"], kind))

    return KnowledgeGraph(nodes=nodes, edges=frozenset(edges), provenance=obj["provenance"])
