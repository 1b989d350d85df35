"""JSON formats for carriers, elements, groups and reports.

Rationals are always two-integer arrays [num, den] in lowest terms with
0 <= num <= den; anything else is a SchemaError carrying a JSON-pointer
location. Carriers serialize sorted lexicographically by value vector, so
payloads are deterministic.
"""

import json
from fractions import Fraction
from math import gcd

from .algebra import DEFAULT_CAP, FiniteAlgebra, Kind, Signature, generate_subalgebra
from .errors import SchemaError
from .functions import PointFunction
from .points import PointSet
from .tower import TowerElement


def rational_to_pair(q: Fraction) -> list:
    return [q.numerator, q.denominator]


def pair_to_rational(obj, location: str) -> Fraction:
    if (
        not isinstance(obj, (list, tuple))
        or len(obj) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in obj)
    ):
        raise SchemaError("rational must be a [num, den] pair of integers", location)
    num, den = obj
    if den < 1:
        raise SchemaError("denominator must be positive", location)
    if not 0 <= num <= den:
        raise SchemaError("rational must lie in [0,1]", location)
    if gcd(num, den) != 1:
        raise SchemaError("rational must be in lowest terms", location)
    return Fraction(num, den)


def element_to_payload(f: PointFunction) -> dict:
    return {label: rational_to_pair(v) for label, v in zip(f.domain.labels, f.values)}


def element_from_payload(obj, points: PointSet, location: str) -> PointFunction:
    if not isinstance(obj, dict):
        raise SchemaError("element must be an object of label -> rational", location)
    missing = [p for p in points.labels if p not in obj]
    if missing:
        raise SchemaError(f"element is missing points {missing}", location)
    extra = [k for k in obj if k not in points.labels]
    if extra:
        raise SchemaError(f"element has unknown points {extra}", location)
    return PointFunction(
        points,
        tuple(pair_to_rational(obj[label], f"{location}/{label}") for label in points.labels),
    )


def signature_to_payload(sig: Signature) -> dict:
    out = {"signature": sig.kind.value}
    if sig.scalars:
        out["scalars"] = [rational_to_pair(a) for a in sig.scalars]
    return out


def algebra_to_payload(algebra: FiniteAlgebra, include_carrier: bool = True) -> dict:
    out = {
        "points": list(algebra.points.labels),
        **signature_to_payload(algebra.signature),
        "generators": [element_to_payload(g) for g in algebra.generators],
    }
    if include_carrier:
        out["carrier"] = [element_to_payload(f) for f in algebra.sorted_elements()]
    return out


def algebra_from_payload(obj, cap: int = DEFAULT_CAP, location: str = "") -> FiniteAlgebra:
    if not isinstance(obj, dict):
        raise SchemaError("algebra payload must be an object", location)
    if "points" not in obj:
        raise SchemaError("missing 'points'", location)
    if "signature" not in obj:
        raise SchemaError("missing 'signature'", location)
    labels = obj["points"]
    if (
        not isinstance(labels, list)
        or not labels
        or not all(isinstance(p, str) for p in labels)
    ):
        raise SchemaError("'points' must be a non-empty list of labels", f"{location}/points")
    try:
        points = PointSet(tuple(labels))
    except ValueError as exc:
        raise SchemaError(str(exc), f"{location}/points") from None
    try:
        kind = Kind(obj["signature"])
    except ValueError:
        raise SchemaError(
            f"unknown signature {obj['signature']!r}", f"{location}/signature"
        ) from None
    scalars = tuple(
        pair_to_rational(pair, f"{location}/scalars/{i}")
        for i, pair in enumerate(obj.get("scalars", []))
    )
    try:
        sig = Signature(kind, scalars)
    except ValueError as exc:
        raise SchemaError(str(exc), f"{location}/scalars") from None
    gens_obj = obj.get("generators")
    if not isinstance(gens_obj, list):
        raise SchemaError("'generators' must be a list", f"{location}/generators")
    gens = [
        element_from_payload(g, points, f"{location}/generators/{i}")
        for i, g in enumerate(gens_obj)
    ]
    algebra = generate_subalgebra(points, gens, sig, cap)
    if "carrier" in obj:
        listed = [
            element_from_payload(f, points, f"{location}/carrier/{i}")
            for i, f in enumerate(obj["carrier"])
        ]
        if {f.values for f in listed} != algebra.carrier_values():
            raise SchemaError(
                "listed carrier is not the closure of the generators",
                f"{location}/carrier",
            )
    return algebra


def load_algebra(path: str, cap: int = DEFAULT_CAP) -> FiniteAlgebra:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}", "") from None
    return algebra_from_payload(obj, cap)


def save_algebra(path: str, algebra: FiniteAlgebra):
    with open(path, "w") as fh:
        json.dump(algebra_to_payload(algebra), fh, indent=2, sort_keys=True)
        fh.write("\n")


def group_to_payload(group) -> dict:
    return {"factors": list(group.factors)}


def group_from_payload(obj, location: str = ""):
    from .groups import UnitGroup

    if not isinstance(obj, dict) or "factors" not in obj:
        raise SchemaError("group payload must be {'factors': [...]}", location)
    factors = obj["factors"]
    if not isinstance(factors, list) or not all(
        isinstance(n, int) and not isinstance(n, bool) and n >= 1 for n in factors
    ):
        raise SchemaError("factors must be positive integers", f"{location}/factors")
    return UnitGroup(tuple(factors))


def tower_element_to_payload(x: TowerElement) -> dict:
    return {"level": x.level, "value": element_to_payload(x.value)}


def tower_element_from_payload(obj, tower, location: str = "") -> TowerElement:
    if not isinstance(obj, dict) or "level" not in obj or "value" not in obj:
        raise SchemaError("tower element must be {'level': n, 'value': {...}}", location)
    level = obj["level"]
    if not isinstance(level, int) or not 1 <= level <= tower.max_level:
        raise SchemaError(f"level must be in 1..{tower.max_level}", f"{location}/level")
    value = element_from_payload(obj["value"], tower.level(level).points, f"{location}/value")
    return tower.element(level, value)


def hom_to_payload(hom) -> dict:
    return {
        "source_generators": [element_to_payload(g) for g in hom.source.generators],
        "images": [element_to_payload(hom(g)) for g in hom.source.generators],
        "injective": hom.is_injective(),
    }


def dumps_payload(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)
