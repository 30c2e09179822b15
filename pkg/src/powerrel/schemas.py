"""JSON Schemas for the documents the CLI emits."""

_POSITION = {
    "type": "array",
    "items": {"type": "integer", "minimum": 1},
    "minItems": 2,
    "maxItems": 2,
}

RELATION = {
    "type": "object",
    "required": ["n", "entries", "coefficients", "verified_up_to"],
    "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 2},
        "entries": {"type": "array", "items": _POSITION, "minItems": 1},
        "coefficients": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "verified_up_to": {"type": "integer", "minimum": 0},
    },
}

ORBIT_CLASS = {
    "type": "object",
    "required": ["representative", "orbit_size", "group"],
    "additionalProperties": False,
    "properties": {
        "representative": {"type": "array", "items": _POSITION, "minItems": 1},
        "orbit_size": {"type": "integer", "minimum": 1},
        "group": {"enum": ["perm", "perm+transpose"]},
    },
}

REPORT_ENTRY = {
    "type": "object",
    "required": ["orbit", "relation", "error"],
    "additionalProperties": False,
    "properties": {
        "orbit": ORBIT_CLASS,
        "relation": {"oneOf": [RELATION, {"type": "null"}]},
        "error": {"type": ["string", "null"]},
    },
}

BIJECTION_REPORT = {
    "type": "object",
    "required": ["n", "m", "i", "domain_size", "codomain_size", "pass", "counterexample"],
    "additionalProperties": False,
    "properties": {
        "n": {"type": "integer"},
        "m": {"type": "integer"},
        "i": {"type": "integer"},
        "domain_size": {"type": "integer", "minimum": 0},
        "codomain_size": {"type": "integer", "minimum": 0},
        "pass": {"type": "boolean"},
        "counterexample": {"type": ["string", "null"]},
    },
}
