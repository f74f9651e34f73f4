"""JSON Schemas (draft 2020-12) for every document the package reads or writes."""
from __future__ import annotations

SCALAR = {
    "oneOf": [
        {"type": "number"},
        {"type": "string", "pattern": r"^\s*[-+0-9/ .*a-z()]+\s*$"},
    ]
}

_ROW = {"type": "array", "items": SCALAR, "minItems": 2, "maxItems": 2}
_MATRIX = {"type": "array", "items": _ROW, "minItems": 2, "maxItems": 2}
_STRING_MATRIX = {
    "type": "array",
    "minItems": 2,
    "maxItems": 2,
    "items": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2},
}

MATRIX_SET = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "MatrixSet",
    "type": "object",
    "required": ["matrices"],
    "properties": {"matrices": {"type": "array", "items": _MATRIX, "minItems": 1}},
}

_TABLE = {
    "type": "object",
    "patternProperties": {"^[1-9]+$": SCALAR},
    "additionalProperties": False,
    "minProperties": 1,
}

COCYCLE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "CocycleSpec",
    "type": "object",
    "required": ["alphabet", "window", "f", "g", "phi"],
    "properties": {
        "alphabet": {"type": "integer", "minimum": 1, "maximum": 9},
        "window": {"type": "integer", "minimum": 1},
        "f": _TABLE,
        "g": _TABLE,
        "phi": _TABLE,
    },
}

GROWTH_CLASS = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "GrowthClass",
    "type": "object",
    "required": ["tag", "reason", "certificate", "witness"],
    "additionalProperties": False,
    "properties": {
        "tag": {"enum": ["Bounded", "Linear", "NotMarginal"]},
        "reason": {"type": "string"},
        "certificate": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["beta", "m_const", "bound"],
                    "additionalProperties": False,
                    "properties": {"beta": {"type": "string"}, "m_const": {"type": "string"}, "bound": {"type": "string"}},
                },
            ]
        },
        "witness": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["word", "rate_lower"],
                    "additionalProperties": False,
                    "properties": {
                        "word": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
                        "rate_lower": {"type": "string"},
                        "product": _STRING_MATRIX,
                    },
                },
            ]
        },
    },
    "allOf": [
        {"if": {"properties": {"tag": {"const": "Linear"}}}, "then": {"properties": {"witness": {"type": "object"}}}},
        {
            "if": {"properties": {"tag": {"const": "Bounded"}, "certificate": {"type": "null"}}},
            "then": {"properties": {"reason": {"const": "extremal norm case"}}},
        },
    ],
}

RHO_REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "RhoReport",
    "type": "object",
    "required": ["status", "estimate", "lower", "upper", "eps"],
    "properties": {
        "status": {"enum": ["ExactOne", "NumericWithin", "Not1", "Undecided"]},
        "estimate": {"type": ["string", "number"]},
        "lower": {"type": ["number", "null"]},
        "upper": {"type": ["number", "null"]},
        "eps": {"type": ["number", "null"]},
    },
}

THEOREM3_RESULT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Theorem3Result",
    "type": "object",
    "required": ["beta_log_f_zero", "beta_log_g_zero", "intersection_nonempty", "limit", "limit_float", "witness_cycle"],
    "additionalProperties": False,
    "properties": {
        "beta_log_f_zero": {"type": "boolean"},
        "beta_log_g_zero": {"type": "boolean"},
        "intersection_nonempty": {"type": "boolean"},
        "limit": {"type": ["string", "number"]},
        "limit_float": {"type": "number", "minimum": 0},
        "witness_cycle": {
            "oneOf": [{"type": "null"}, {"type": "array", "items": {"type": "string"}, "minItems": 1}]
        },
    },
}

CHACON_SUMMARY = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ChaconSummary",
    "type": "object",
    "required": [
        "depth",
        "prefix_length",
        "max_n",
        "seed",
        "discrepancy",
        "s_over_n",
        "rho_one_observed",
        "sublinear_observed",
        "unbounded_trend_observed",
    ],
    "properties": {
        "depth": {"type": "integer", "minimum": 0},
        "prefix_length": {"type": "integer", "minimum": 1},
        "max_n": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer"},
        "samples": {"type": ["integer", "null"]},
        "discrepancy": {
            "type": "object",
            "patternProperties": {"^[0-9]+$": {"type": "string"}},
            "additionalProperties": False,
        },
        "s_over_n": {
            "type": "object",
            "required": ["first", "last"],
            "properties": {"first": {"type": "number"}, "last": {"type": "number"}},
        },
        "rho_one_observed": {"type": "boolean"},
        "sublinear_observed": {"type": "boolean"},
        "unbounded_trend_observed": {"type": "boolean"},
    },
}

RUN_RECORD = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "RunRecord",
    "type": "object",
    "required": ["command", "input_digest", "parameters", "results", "wall_time_s"],
    "properties": {
        "command": {"type": "string"},
        "input_digest": {"type": ["string", "null"], "pattern": "^[0-9a-f]{64}$"},
        "parameters": {"type": "object"},
        "results": {"type": "object"},
        "wall_time_s": {"type": "number", "minimum": 0},
    },
}

ALL = {
    "MatrixSet": MATRIX_SET,
    "CocycleSpec": COCYCLE,
    "GrowthClass": GROWTH_CLASS,
    "RhoReport": RHO_REPORT,
    "Theorem3Result": THEOREM3_RESULT,
    "ChaconSummary": CHACON_SUMMARY,
    "RunRecord": RUN_RECORD,
}
