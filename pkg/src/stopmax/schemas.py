"""JSON schemas of the command-line outputs (draft 2020-12)."""

_num = {"type": "number"}
_int = {"type": "integer"}
_prob = {"type": "number", "minimum": 0, "maximum": 1}


def _obj(props: dict, required=None) -> dict:
    return {
        "type": "object",
        "properties": props,
        "required": list(required if required is not None else props),
        "additionalProperties": False,
    }


_sim_report = _obj({
    "game": {"enum": ["max", "alpha"]},
    "alpha": {"type": ["number", "null"]},
    "estimate": _prob,
    "stderr": _num,
    "samples": _int,
    "seed": _int,
    "wins": _int,
})

SCHEMAS = {
    "gm-table": _obj({
        "command": {"const": "gm-table"},
        "grid": _int,
        "rows": {"type": "array", "items": _obj({"n": _int, "value": _prob, "decision_number": _prob})},
    }),
    "solve": _obj({
        "command": {"const": "solve"},
        "dist": {"type": "string"},
        "n": _int,
        "alpha": _num,
        "method": {"enum": ["exact", "grid"]},
        "grid": {"type": ["integer", "null"]},
        "optimal_value": _prob,
        "threshold": {"type": ["number", "null"]},
        "stop_intervals": {"type": "array", "items": {"type": "array", "items": _num, "minItems": 2, "maxItems": 2}},
        "tables": {"type": ["object", "null"]},
    }),
    "sweep": _obj({
        "command": {"const": "sweep"},
        "dist": {"type": "string"},
        "n": _int,
        "grid": _int,
        "rows": {"type": "array", "items": _obj({
            "alpha": _num, "dp_value": _prob, "closed_form": {"type": ["number", "null"]},
        })},
    }),
    "simulate": _obj({
        "command": {"const": "simulate"},
        "dist": {"type": "string"},
        "n": _int,
        "policy": {"enum": ["gm", "optimal"]},
        "seed": _int,
        "samples": _int,
        "reports": {"type": "array", "items": _sim_report, "minItems": 1},
        "dominance_violations": {"type": ["integer", "null"]},
    }),
    "certainty": _obj({
        "command": {"const": "certainty"},
        "dist": {"type": "string"},
        "alpha": _num,
        "certain": {"type": "boolean"},
        "condition": {"enum": ["i", "ii", None]},
        "support_min": _num,
        "support_max": _num,
        "interval": {"type": ["array", "null"], "items": _num},
        "interval_mass": {"type": ["number", "null"]},
        "reason": {"type": "string"},
    }, required=["command", "dist", "alpha", "certain", "condition", "support_min", "support_max",
                 "interval", "interval_mass"]),
    "bound-demo": _obj({
        "command": {"const": "bound-demo"},
        "n": _int, "alpha": _num, "delta": _num, "k_used": _int, "eps_used": _num,
        "v_alpha_est": _prob, "v_alpha_stderr": _num, "v_max_est": _prob, "v_max_stderr": _num,
        "gap_est": _num, "combined_stderr": _num, "dominance_violations": _int,
        "dp_value": _prob, "gm_value": _prob, "samples": _int, "seed": _int,
    }),
}
