"""JSON schema for command reports, and validation through jsonschema."""

from __future__ import annotations

import jsonschema

VERDICTS = ["verified", "failed", "inconclusive"]

CHECK_SCHEMA = {
    "type": "object",
    "required": ["name", "verdict", "degree_cap", "assumptions"],
    "properties": {
        "name": {"type": "string"},
        "verdict": {"enum": VERDICTS},
        "degree_cap": {"type": ["integer", "null"], "minimum": 1},
        "witness": {"type": "string"},
        "assumptions": {"type": "array", "items": {"type": "string"}},
        "detail": {"type": "string"},
        "count": {"type": "integer", "minimum": 0},
        "seconds": {"type": "number", "minimum": 0},
    },
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "hgw verification report",
    "type": "object",
    "required": ["session", "checks", "verdict"],
    "properties": {
        "session": {
            "type": "object",
            "required": ["command", "field", "degree_cap"],
            "properties": {
                "command": {"type": "string"},
                "target": {"type": "string"},
                "field": {"type": "string"},
                "cyclotomic_order": {"type": "integer", "minimum": 1},
                "degree_cap": {"type": "integer", "minimum": 1},
                "alpha_cap": {"type": "integer", "minimum": 1},
                "capacity_monomials": {"type": "integer", "minimum": 1},
                "parallel": {"type": "integer", "minimum": 1},
                "report": {"enum": ["text", "json"]},
                "seed": {"type": "integer"},
                "timing": {"type": "boolean"},
                "parameters": {"type": "object"},
            },
        },
        "title": {"type": "string"},
        "header": {"type": "array", "items": {"type": "string"}},
        "assumptions": {"type": "array", "items": {"type": "string"}},
        "checks": {"type": "array", "items": CHECK_SCHEMA},
        "output": {"type": "array", "items": {"type": "string"}},
        "verdict": {"enum": VERDICTS},
    },
    "additionalProperties": False,
}


def validate_report(doc: dict) -> None:
    """Raise jsonschema.ValidationError if ``doc`` does not follow the report schema."""
    jsonschema.validate(doc, REPORT_SCHEMA)
