"""JSON encodings of states and channels.

A state looks like::

    {"domain": [["x", "y"], ["a", "b"]],
     "names": ["X", "A"],
     "weights": [{"elem": ["x", "a"], "num": "1", "den": "8"}, ...]}

``names`` is optional on input. Each weight may instead be given as
``{"elem": [...], "weight": "1/8"}`` (or a decimal string). Fractions are
strings so nothing is lost to floating point.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import List

from .channel import Channel
from .core import Dist, dist_new, format_rat, parse_rat
from .domain import Domain, ProductDomain, Space, from_wires, space_of, to_wires, wires
from .errors import ProbError


class JsonFormatError(ProbError):
    pass


def _wire_domains(space: Space) -> List[Domain]:
    ws = list(wires(space))
    for w in ws:
        if not isinstance(w, Domain):
            raise JsonFormatError(f"cannot encode nested product factor {w.name}")
    return ws


def _encode_space(space: Space) -> dict:
    ws = _wire_domains(space)
    return {"domain": [list(w.elements) for w in ws], "names": [w.name for w in ws]}


def _decode_space(obj: dict, key: str = "domain", names_key: str = "names") -> Space:
    try:
        factors = obj[key]
    except (KeyError, TypeError):
        raise JsonFormatError(f"missing {key!r}") from None
    if not isinstance(factors, list) or not all(isinstance(f, list) for f in factors):
        raise JsonFormatError(f"{key!r} must be a list of element lists")
    names = obj.get(names_key) or [f"X{i + 1}" for i in range(len(factors))]
    if len(names) != len(factors):
        raise JsonFormatError(f"{names_key!r} and {key!r} lengths differ")
    try:
        ws = [Domain(str(n), tuple(f)) for n, f in zip(names, factors)]
    except (ValueError, TypeError) as e:
        raise JsonFormatError(str(e)) from None
    if not ws:
        return ProductDomain(())
    return space_of(ws)


def _weight_obj(elem_wires, w: Fraction) -> dict:
    return {"elem": list(elem_wires), "num": str(w.numerator), "den": str(w.denominator),
            "decimal": format_rat(w, 6)}


def _decode_weights(space: Space, items) -> list:
    if not isinstance(items, list):
        raise JsonFormatError("'weights' must be a list")
    out = []
    for it in items:
        try:
            elem = from_wires(space, tuple(it["elem"]))
            if "num" in it:
                w = Fraction(int(it["num"]), int(it["den"]))
            else:
                w = parse_rat(str(it.get("weight", it.get("p"))))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise JsonFormatError(f"bad weight entry {it!r}: {e}") from None
        out.append((elem, w))
    return out


def dumps(obj: dict) -> str:
    """Indent the top level only; each list item goes on its own line."""
    lines = ["{"]
    keys = list(obj)
    for i, k in enumerate(keys):
        v = obj[k]
        end = "," if i < len(keys) - 1 else ""
        if isinstance(v, list) and v:
            lines.append(f"  {json.dumps(k)}: [")
            lines.extend(f"    {json.dumps(x)}" + ("," if j < len(v) - 1 else "")
                         for j, x in enumerate(v))
            lines.append(f"  ]{end}")
        else:
            lines.append(f"  {json.dumps(k)}: {json.dumps(v)}{end}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dist_to_obj(d: Dist) -> dict:
    obj = _encode_space(d.domain)
    obj["weights"] = [_weight_obj(to_wires(d.domain, e), w) for e, w in d.items()]
    return obj


def dist_from_obj(obj: dict) -> Dist:
    space = _decode_space(obj)
    return dist_new(space, _decode_weights(space, obj.get("weights")))


def write_dist(d: Dist) -> str:
    return dumps(dist_to_obj(d))


def read_dist(text: str) -> Dist:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise JsonFormatError(f"malformed JSON: {e}") from None
    if not isinstance(obj, dict):
        raise JsonFormatError("expected a JSON object")
    return dist_from_obj(obj)


def channel_to_obj(c: Channel) -> dict:
    dom = _encode_space(c.dom)
    cod = _encode_space(c.cod)
    return {
        "dom": dom["domain"], "dom_names": dom["names"],
        "cod": cod["domain"], "cod_names": cod["names"],
        "rows": [{"elem": list(to_wires(c.dom, a)),
                  "weights": [_weight_obj(to_wires(c.cod, b), w) for b, w in r.items()]}
                 for a, r in c.items()],
    }


def channel_from_obj(obj: dict) -> Channel:
    dom = _decode_space(obj, "dom", "dom_names")
    cod = _decode_space(obj, "cod", "cod_names")
    table = {}
    for r in obj.get("rows", []):
        try:
            a = from_wires(dom, tuple(r["elem"]))
        except (KeyError, TypeError):
            raise JsonFormatError(f"bad row {r!r}") from None
        table[a] = dist_new(cod, _decode_weights(cod, r.get("weights")))
    missing = [a for a in dom.elements if a not in table]
    if missing:
        raise JsonFormatError(f"missing rows for {missing[:3]}")
    return Channel(dom, cod, [table[a] for a in dom.elements])


def write_channel(c: Channel) -> str:
    return dumps(channel_to_obj(c))


def read_channel(text: str) -> Channel:
    try:
        return channel_from_obj(json.loads(text))
    except json.JSONDecodeError as e:
        raise JsonFormatError(f"malformed JSON: {e}") from None
