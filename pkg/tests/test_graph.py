from __future__ import annotations

import json

import pytest
from hypothesis import given, settings

import oracle
from kgselect.canonical import canonical_dumps
from kgselect.catalog import parse_catalog
from kgselect.errors import IntegrityError, UnknownNodeError
from kgselect.graph import (
    EdgeKind,
    NodeKind,
    build_full_kg,
    diff_catalog,
    graph_from_jsonable,
    graph_to_jsonable,
    subgraph,
)
from strategies import catalog_docs


def two_enabler_doc(**tweaks) -> dict:
    doc = {
        "use_case_name": "Pair",
        "kpis": [{"id": "k1", "name": "K1", "target": "", "unit": "", "rationale": ""}],
        "requirements": [],
        "kvis": [],
        "key_values": [],
        "principles": [],
        "enablers": [
            {
                "id": "a",
                "name": "A",
                "category": "c",
                "trl": 5,
                "migration_critical": False,
                "kpi_impacts": {},
                "principle_ids": [],
                "dependency_ids": [],
                "requirement_ids": [],
            },
            {
                "id": "b",
                "name": "B",
                "category": "c",
                "trl": 5,
                "migration_critical": False,
                "kpi_impacts": {},
                "principle_ids": [],
                "dependency_ids": [],
                "requirement_ids": [],
            },
        ],
    }
    doc.update(tweaks)
    return doc


def test_fulfills_edge_has_weight_one():
    doc = two_enabler_doc(principles=[{"id": "p", "name": "P"}])
    doc["enablers"][0]["principle_ids"] = ["p"]
    g = build_full_kg(parse_catalog(doc))
    (edge,) = g.edges
    assert edge.kind is EdgeKind.FULFILLS
    assert edge.weight == 1
    assert {edge.a, edge.b} == {"a", "p"}


def test_dependency_edge_has_weight_zero():
    doc = two_enabler_doc()
    doc["enablers"][0]["dependency_ids"] = ["b"]
    g = build_full_kg(parse_catalog(doc))
    (edge,) = g.edges
    assert edge.kind is EdgeKind.DEPENDENCY
    assert edge.weight == 0


def test_isolated_enablers_build_edgeless_graph():
    g = build_full_kg(parse_catalog(two_enabler_doc()))
    assert len(g.nodes) == 2
    assert len(g.edges) == 0


def test_node_weight_follows_migration_flag(tiny):
    g = build_full_kg(tiny)
    assert g.nodes["e-gamma"].features.node_weight == 3
    assert g.nodes["e-alpha"].features.node_weight == 1
    assert g.nodes["e-gamma"].migration_critical


def test_kpi_score_feature_matches_raw_sum(tiny, tiny_doc):
    g = build_full_kg(tiny)
    for raw in tiny_doc["enablers"]:
        assert g.nodes[raw["id"]].features.kpi_score == oracle.score(raw)


def test_principle_nodes_carry_no_trl(tiny):
    g = build_full_kg(tiny)
    principle = g.nodes["p-sustainability"]
    assert principle.kind is NodeKind.PRINCIPLE
    assert principle.features.trl is None


def test_fulfills_any_principle_flag_and_colors(tiny):
    g = build_full_kg(tiny)
    assert g.nodes["e-alpha"].features.fulfills_any_principle
    assert not g.nodes["e-beta"].features.fulfills_any_principle
    assert g.nodes["e-alpha"].color == "blue"
    assert g.nodes["e-beta"].color == "orange"
    assert g.nodes["p-sustainability"].color == "green"


def test_duplicate_dependency_declarations_collapse():
    doc = two_enabler_doc()
    doc["enablers"][0]["dependency_ids"] = ["b", "b"]
    doc["enablers"][1]["dependency_ids"] = ["a"]
    g = build_full_kg(parse_catalog(doc))
    assert len(g.edges) == 1


def test_invalid_catalog_is_integrity_error():
    doc = two_enabler_doc()
    doc["enablers"][0]["dependency_ids"] = ["ghost"]
    with pytest.raises(IntegrityError, match="ghost"):
        build_full_kg(parse_catalog(doc, validate=False))


def test_neighbors_basics(tiny):
    g = build_full_kg(tiny)
    assert g.neighbors("e-alpha", EdgeKind.DEPENDENCY) == {"e-beta"}
    assert g.neighbors("e-alpha", EdgeKind.FULFILLS) == {"p-sustainability"}
    assert g.neighbors("e-alpha") == {"e-beta", "p-sustainability"}
    assert g.neighbors("e-gamma") == frozenset()


def test_neighbors_unknown_node(tiny):
    g = build_full_kg(tiny)
    with pytest.raises(UnknownNodeError, match="nope"):
        g.neighbors("nope")


def test_diff_same_catalog_is_empty(tiny):
    g = build_full_kg(tiny)
    assert diff_catalog(g, tiny).is_empty()


def test_diff_detects_new_enabler(tiny, tiny_doc):
    g = build_full_kg(tiny)
    doc = json.loads(json.dumps(tiny_doc))
    doc["enablers"].append(
        {
            "id": "e-new",
            "name": "New",
            "category": "core",
            "trl": 2,
            "migration_critical": False,
            "kpi_impacts": {},
            "principle_ids": [],
            "dependency_ids": [],
            "requirement_ids": [],
        }
    )
    diff = diff_catalog(g, parse_catalog(doc))
    assert diff.added_enablers == {"e-new"}
    assert not diff.removed_enablers


def test_diff_detects_removed_dependency(tiny, tiny_doc):
    g = build_full_kg(tiny)
    doc = json.loads(json.dumps(tiny_doc))
    doc["enablers"][0]["dependency_ids"] = []
    diff = diff_catalog(g, parse_catalog(doc))
    # brute-force edge enumeration over the two documents
    before = oracle.dependency_pairs(tiny_doc)
    after = oracle.dependency_pairs(doc)
    expected = {tuple(sorted(p)) for p in before - after}
    assert diff.removed_dependencies == expected
    assert diff.removed_dependencies == {("e-alpha", "e-beta")}


def test_subgraph_drops_nodes_and_incident_edges(tiny):
    g = build_full_kg(tiny)
    sub = subgraph(g, {"e-alpha", "e-gamma"})
    assert "e-beta" not in sub.nodes
    assert all("e-beta" not in (e.a, e.b) for e in sub.edges)
    # principles survive only with a live fulfills edge
    assert "p-sustainability" in sub.nodes
    sub2 = subgraph(g, {"e-beta", "e-gamma"})
    assert "p-sustainability" not in sub2.nodes


@settings(max_examples=60, deadline=None)
@given(doc=catalog_docs(max_enablers=15))
def test_structure_matches_brute_force_enumeration(doc):
    catalog = parse_catalog(doc)
    g = build_full_kg(catalog)

    principle_ids = {p["id"] for p in doc["principles"]}
    fulfilled = {p for e in doc["enablers"] for p in e["principle_ids"]}
    assert len(g.nodes) == len(doc["enablers"]) + len(principle_ids)

    dep_pairs = {tuple(sorted(p)) for p in oracle.dependency_pairs(doc)}
    ful_pairs = {tuple(sorted(p)) for p in oracle.fulfills_pairs(doc)}
    got_dep = {(e.a, e.b) for e in g.edges if e.kind is EdgeKind.DEPENDENCY}
    got_ful = {(e.a, e.b) for e in g.edges if e.kind is EdgeKind.FULFILLS}
    assert got_dep == dep_pairs
    assert got_ful == ful_pairs
    assert len(g.edges) == len(dep_pairs) + len(ful_pairs)

    for e in doc["enablers"]:
        node = g.nodes[e["id"]]
        assert node.features.fulfills_any_principle == bool(e["principle_ids"])
        assert node.features.node_weight == (3 if e["migration_critical"] else 1)
    assert fulfilled <= principle_ids

    # determinism: a second build serializes identically
    again = build_full_kg(catalog)
    assert canonical_dumps(graph_to_jsonable(again)) == canonical_dumps(graph_to_jsonable(g))
    assert diff_catalog(g, catalog).is_empty()


def test_jsonable_round_trip(cobots):
    g = build_full_kg(cobots)
    again = graph_from_jsonable(graph_to_jsonable(g))
    assert again.nodes == g.nodes
    assert again.edges == g.edges
    assert again.provenance == g.provenance
