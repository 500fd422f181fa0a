"""JSON schemas for the command payloads (draft 2020-12)."""

from __future__ import annotations

GRAPH = {
    "type": "object",
    "required": ["n", "edges"],
    "properties": {
        "n": {"type": "integer", "minimum": 0},
        "edges": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        },
    },
    "additionalProperties": False,
}

_VERTEX_SETS = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}

_PARTITION = {
    "type": "object",
    "required": ["A", "B", "C"],
    "properties": {k: {"type": "array", "items": {"type": "integer"}} for k in "ABC"},
}

_BASE = {
    "command": {"type": "string"},
    "graph": {"anyOf": [GRAPH, {"type": "null"}]},
    "seed": {"type": "integer", "minimum": 0},
}


def _payload(command: str, required: list[str], props: dict) -> dict:
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "type": "object",
        "required": ["command", "graph", "seed"] + required,
        "properties": {**_BASE, "command": {"const": command}, **props},
    }


_MATRIX = {
    "type": "object",
    "required": ["rows", "cols", "data"],
    "properties": {
        "rows": {"type": "array", "items": {"type": "string"}},
        "cols": {"type": "array", "items": {"type": "string"}},
        "data": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
    },
}

_MARKOV = {
    "type": "object",
    "required": ["degree_bound", "fibers_checked", "max_fiber_size", "all_connected", "failures"],
    "properties": {
        "degree_bound": {"type": "integer"},
        "verified_degree": {"type": "integer"},
        "fibers_checked": {"type": "integer"},
        "max_fiber_size": {"type": "integer"},
        "all_connected": {"type": "boolean"},
        "failures": {"type": "array"},
    },
}

SCHEMAS = {
    "classify": _payload("classify", ["block", "biconnected_components", "centers", "partitions"], {
        "block": {"type": "boolean"},
        "connected": {"type": "boolean"},
        "biconnected_components": _VERTEX_SETS,
        "non_clique_blocks": _VERTEX_SETS,
        "centers": {"type": "array", "items": {"type": "integer"}},
        "partitions": {"type": "integer", "minimum": 0},
        "one_clique_partitions": {"type": "array", "items": _PARTITION},
    }),
    "ci": _payload("ci", ["mode", "count", "generators"], {
        "mode": {"enum": ["1clique", "full"]},
        "max_c": {"type": ["integer", "null"]},
        "count": {"type": "integer", "minimum": 0},
        "generators": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["text", "degree", "provenance"],
                "properties": {
                    "text": {"type": "string"},
                    "degree": {"type": "integer"},
                    "provenance": {"type": "object"},
                },
            },
        },
    }),
    "verify": _payload("verify", ["status", "evidence"], {
        "status": {"enum": ["CONFIRMED", "NOT_BLOCK", "INCONSISTENT"]},
        "evidence": {"type": "object"},
    }),
    "counterexamples": _payload("counterexamples", ["a", "b", "c", "ok"], {
        "a": {"type": "object", "required": ["cubics", "ok"]},
        "b": {"type": "object", "required": ["dims", "ok"],
              "properties": {"dims": {"type": "array", "items": {"type": "integer"}}}},
        "c": {"type": "object", "required": ["m_vanishes", "m_in_CI", "m_in_low_degree_part", "ok"]},
        "ok": {"type": "boolean"},
    }),
    "adjugate": _payload("adjugate", ["entries", "all_leading"], {
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["i", "j", "f", "path_term", "leading"],
                "properties": {
                    "i": {"type": "integer"},
                    "j": {"type": "integer"},
                    "f": {"type": "string"},
                    "path_term": {"type": "string"},
                    "leading": {"type": "boolean"},
                },
            },
        },
        "all_leading": {"type": "boolean"},
    }),
    "maps": _payload("maps", ["psi", "phi", "row_space_equal", "kii_relation"], {
        "psi": _MATRIX,
        "phi": _MATRIX,
        "rank_psi": {"type": "integer"},
        "rank_phi": {"type": "integer"},
        "row_space_equal": {"type": "boolean"},
        "kii_relation": {"type": "boolean"},
    }),
    "sagbi": _payload("sagbi", ["homogeneous", "generators"], {
        "homogeneous": {"type": "boolean"},
        "generators": {"type": "array"},
    }),
}

MARKOV_REPORT = _MARKOV
