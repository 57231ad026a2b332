"""JSON schemas (draft 2020-12) for every JSON document the CLI emits."""
from __future__ import annotations

DRAFT = "https://json-schema.org/draft/2020-12/schema"

_INT = {"type": "integer"}
_BOOL = {"type": "boolean"}
_STRS = {"type": "array", "items": {"type": "string"}}
_OPT_BOOL = {"type": ["boolean", "null"]}


def _obj(props: dict, required=None, extra=False) -> dict:
    return {
        "type": "object",
        "properties": props,
        "required": list(props) if required is None else required,
        "additionalProperties": extra,
    }


ANALYZE = {
    "$schema": DRAFT,
    "title": "qkrull analyze",
    **_obj({
        "ring": {"type": "string"},
        "dim": {"type": "integer", "minimum": 0},
        "q_dim": {"type": "integer", "minimum": 0},
        "ass": _STRS,
        "min": _STRS,
        "q_max": _STRS,
        "heights": {"type": "object", "additionalProperties": _INT},
        "reduced": _OPT_BOOL,
        "tau_q_vnr": _OPT_BOOL,
        "min_count": _INT,
        "tainted": _BOOL,
        "semiregular_rule": {"type": "string"},
    }),
}

_GENERATORS = _obj({"generators": _STRS})

QUERY = {
    "dense": _obj({"dense": _BOOL}),
    "semiregular": _obj({"semiregular": _BOOL}),
    "qclosure-member": _obj({"member": _BOOL}),
    "qclosure": _GENERATORS,
    "ann": _GENERATORS,
    "height": _obj({"height": _INT}),
    "extend": _obj({"extension_variable": {"type": "string"}, "analysis": ANALYZE}),
    "dm-check": _obj({"k": _INT, "deg_t_f": _INT}),
    "content-lemma": _obj({"applicable": _BOOL, "holds": _OPT_BOOL,
                           "reason": {"type": ["string", "null"]}}),
}
for _name, _schema in QUERY.items():
    _schema.setdefault("$schema", DRAFT)
    _schema.setdefault("title", f"qkrull query {_name}")

_VERDICT = _obj({
    "property": {"type": "string"},
    "ring": {"type": "string"},
    "status": {"enum": ["pass", "fail", "skip"]},
    "reason": {"type": ["string", "null"]},
    "details": {"type": "object"},
})

VERIFY = {
    "$schema": DRAFT,
    "title": "qkrull verify",
    **_obj({
        "corpus": {"type": "object"},
        "properties": {"type": "object", "additionalProperties": {"type": "string"}},
        "rings": {"type": "object", "additionalProperties": {"type": "string"}},
        "verdicts": {"type": "array", "items": _VERDICT},
        "summary": _obj({"pass": _INT, "fail": _INT, "skip": _INT}),
    }),
}

ERROR = {
    "$schema": DRAFT,
    "title": "qkrull error (stderr)",
    **_obj({
        "error": {"type": "string"},
        "message": {"type": "string"},
        "missing": {"type": ["string", "null"]},
        "line": _INT,
        "column": _INT,
        "source": {"type": "string"},
    }, required=["error", "message"]),
}
