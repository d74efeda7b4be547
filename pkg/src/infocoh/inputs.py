"""Structure files (JSON) and report serialization."""

import json
from fractions import Fraction

from .probability import ProbabilityFunctor, SupportComplex
from .structure import (
    Arrow, InfoStructure, StructureError, Variable, build_concrete_structure,
    build_simplicial_structure,
)


class InputError(ValueError):
    """A structure file that cannot be read or does not define a structure."""


def _label(v):
    if isinstance(v, list):
        return tuple(_label(x) for x in v)
    return v


def parse_structure(doc):
    kind = doc.get("kind")
    try:
        if kind == "concrete":
            omega = [_label(p) for p in doc["omega"]]
            gens = {}
            for g in doc["partitions"]:
                if g["id"] in gens:
                    raise InputError("duplicate partition id %r" % (g["id"],))
                gens[g["id"]] = [[_label(p) for p in b] for b in g["blocks"]]
            faces = doc.get("faces")
            return build_concrete_structure(omega, gens, close=bool(doc.get("close", False)), faces=faces)
        if kind == "abstract":
            variables = [Variable(v["id"], tuple(_label(x) for x in v["values"])) for v in doc["variables"]]
            lookup = {v.id: {_key(x): x for x in v.values} for v in variables}
            arrows = []
            for a in doc["arrows"]:
                src, dst = a["from"], a["to"]
                if src not in lookup or dst not in lookup:
                    raise InputError("arrow %r -> %r names an unknown variable" % (src, dst))
                m = {}
                for k, v in a["map"].items():
                    if k not in lookup[src]:
                        raise InputError("arrow %s -> %s maps unknown value %r" % (src, dst, k))
                    m[lookup[src][k]] = lookup[dst].get(_key(_label(v)), _label(v))
                arrows.append(Arrow(src, dst, m))
            return InfoStructure(variables, arrows, doc["terminal"])
        if kind == "simplicial":
            cards = {v["id"]: int(v["cardinality"]) for v in doc["vertices"]}
            return build_simplicial_structure(cards, doc["faces"])
    except KeyError as e:
        raise InputError("missing field %s" % e) from None
    except StructureError as e:
        raise InputError(str(e)) from None
    raise InputError("unknown kind %r" % (kind,))


def _key(x):
    """JSON object keys are strings: compare labels through their string form."""
    if isinstance(x, tuple):
        return json.dumps(list(x))
    return str(x)


def parse_functor(S, spec):
    if spec is None or spec == "full":
        return ProbabilityFunctor(S, {})
    if not isinstance(spec, dict):
        raise InputError("Q must be \"full\" or an object")
    comp = {}
    for x, body in spec.items():
        if x not in S.variables:
            raise InputError("Q names unknown variable %r" % (x,))
        lookup = {_key(v): v for v in S.values(x)}
        sups = []
        for sup in body["maximal_supports"]:
            try:
                sups.append([lookup[_key(_label(v))] for v in sup])
            except KeyError as e:
                raise InputError("support of %r mentions unknown value %s" % (x, e)) from None
        comp[x] = SupportComplex(x, S.values(x), sups)
    return ProbabilityFunctor(S, comp)


def parse_spec(path):
    """(structure, probability functor) from a JSON file."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError("cannot read %s: %s" % (path, e.strerror)) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError("%s: line %d column %d: %s" % (path, e.lineno, e.colno, e.msg)) from None
    if not isinstance(doc, dict):
        raise InputError("%s: top level must be an object" % path)
    S = parse_structure(doc)
    Q = parse_functor(S, doc.get("Q", "full"))
    return S, Q


def label_json(v):
    if isinstance(v, tuple):
        return [label_json(x) for x in v]
    if isinstance(v, Fraction):
        return "%d/%d" % (v.numerator, v.denominator)
    return v


def structure_to_dict(S):
    """Abstract-kind document for any structure (generating arrows only)."""
    return {
        "kind": "abstract",
        "variables": [{"id": x, "values": [label_json(v) for v in S.values(x)]} for x in S.ids],
        "arrows": [
            {"from": s, "to": t, "map": {_key(k): label_json(v) for k, v in m.items()}}
            for (s, t), m in S.given.items() if s != t
        ],
        "terminal": S.terminal,
    }


def dumps(report):
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
