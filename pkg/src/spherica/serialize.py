"""JSON input/output for every domain object.

A single document format with a ``kind`` tag covers diagrams, systems,
homogeneous data, admissible maps, ARS-sets, and extended-weight-semigroup
generators.  Root vectors are integer arrays in simple-root coordinates
(halved catalog roots carry an explicit denominator); functionals are
integer matrices.  Output is canonical: sorted keys, fixed separators, and
no floating point anywhere (rationals, should they occur, are ``"p/q"``
strings).
"""

from __future__ import annotations

import json
from fractions import Fraction

import jsonschema

from spherica import ars as ars_mod
from spherica import ews as ews_mod
from spherica import luna
from spherica.admissible import AdmissibleMap
from spherica.lattice import FgAbelianGroup, Sublattice, quotient_group
from spherica.rootsys import DynkinDiagram, RootSystem, WeightVec, build_root_system


class InputError(ValueError):
    """Malformed or schema-violating input."""


_vec = {"type": "array", "items": {"type": "integer"}}
_mat = {"type": "array", "items": _vec}
_sph_root = {
    "oneOf": [
        _vec,
        {
            "type": "object",
            "properties": {"num": _vec, "den": {"enum": [1, 2]}},
            "required": ["num"],
            "additionalProperties": False,
        },
    ]
}
_diagram = {
    "oneOf": [
        {"type": "string"},
        {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [{"type": "string"}, {"type": "integer"}],
                "minItems": 2,
                "maxItems": 2,
            },
        },
    ]
}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["kind"],
    "properties": {"kind": {"enum": ["diagram", "system", "hsd", "admissible", "ars", "ews"]}},
    "allOf": [
        {
            "if": {"properties": {"kind": {"const": "diagram"}}},
            "then": {"required": ["diagram"], "properties": {"diagram": _diagram}},
        },
        {
            "if": {"properties": {"kind": {"const": "system"}}},
            "then": {
                "required": ["diagram", "sigma", "kappa"],
                "properties": {
                    "diagram": _diagram,
                    "pp": _vec,
                    "sigma": {"type": "array", "items": _sph_root},
                    "kappa": _mat,
                },
            },
        },
        {
            "if": {"properties": {"kind": {"const": "hsd"}}},
            "then": {
                "required": ["diagram", "sigma", "lattice", "kappa"],
                "properties": {
                    "diagram": _diagram,
                    "pp": _vec,
                    "central_rank": {"type": "integer", "minimum": 0},
                    "sigma": {"type": "array", "items": _sph_root},
                    "lattice": _mat,
                    "kappa": _mat,
                },
            },
        },
        {
            "if": {"properties": {"kind": {"const": "admissible"}}},
            "then": {
                "required": ["diagram", "matrix"],
                "properties": {"diagram": _diagram, "matrix": _mat},
            },
        },
        {
            "if": {"properties": {"kind": {"const": "ars"}}},
            "then": {
                "required": ["diagram", "maximal", "pi"],
                "properties": {
                    "diagram": _diagram,
                    "maximal": _mat,
                    "pi": _vec,
                    "classes": {"type": "array", "items": _vec},
                    "central_rank": {"type": "integer", "minimum": 0},
                    "ker_tau": _mat,
                },
            },
        },
        {
            "if": {"properties": {"kind": {"const": "ews"}}},
            "then": {
                "required": ["diagram", "char_rank", "char_relations", "generators"],
                "properties": {
                    "diagram": _diagram,
                    "central_rank": {"type": "integer", "minimum": 0},
                    "char_rank": {"type": "integer", "minimum": 0},
                    "char_relations": _mat,
                    "generators": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["weight", "chi"],
                            "properties": {
                                "weight": _vec,
                                "central": _vec,
                                "chi": _vec,
                            },
                        },
                    },
                    "central_chi": _mat,
                },
            },
        },
    ],
}


def _rational(x) -> str | int:
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        return f"{x.numerator}/{x.denominator}"
    return x


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, stable separators, exact numbers."""

    def default(x):
        if isinstance(x, Fraction):
            return _rational(x)
        if isinstance(x, frozenset):
            return sorted(x)
        raise TypeError(f"cannot serialize {type(x)!r}")

    return json.dumps(obj, sort_keys=True, indent=2, default=default) + "\n"


def load_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise InputError(f"schema violation: {exc.message}") from exc
    return doc


def parse_diagram(spec) -> DynkinDiagram:
    try:
        if isinstance(spec, str):
            return DynkinDiagram.parse(spec)
        return DynkinDiagram(tuple((l, r) for l, r in spec))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _parse_sph_root(rs: RootSystem, entry) -> luna.SphRoot:
    if isinstance(entry, dict):
        num, den = tuple(entry["num"]), entry.get("den", 1)
    else:
        num, den = tuple(entry), 1
    if len(num) != rs.rank:
        raise InputError(f"root length {len(num)} does not match rank {rs.rank}")
    return luna.SphRoot(num, den)


def _sph_root_doc(s: luna.SphRoot):
    return list(s.num) if s.den == 1 else {"num": list(s.num), "den": s.den}


# -- object <-> document ----------------------------------------------------


def system_from_doc(doc) -> luna.SphericalSystem:
    rs = build_root_system(parse_diagram(doc["diagram"]))
    sigma = tuple(_parse_sph_root(rs, e) for e in doc["sigma"])
    kappa = tuple(tuple(row) for row in doc["kappa"])
    for row in kappa:
        if len(row) != len(sigma):
            raise InputError("kappa row length does not match sigma")
    return luna.SphericalSystem(rs, frozenset(doc.get("pp", [])), sigma, kappa)


def system_to_doc(s: luna.SphericalSystem) -> dict:
    return {
        "kind": "system",
        "diagram": str(s.rs.diagram),
        "pp": sorted(s.pp),
        "sigma": [_sph_root_doc(x) for x in s.sigma],
        "kappa": [list(r) for r in s.kappa],
    }


def hsd_from_doc(doc) -> luna.HomogeneousSphericalDatum:
    rs = build_root_system(parse_diagram(doc["diagram"]))
    central = doc.get("central_rank", 0)
    sigma = tuple(_parse_sph_root(rs, e) for e in doc["sigma"])
    lam = Sublattice.from_rows(rs.rank + central, [tuple(r) for r in doc["lattice"]])
    kappa = tuple(tuple(row) for row in doc["kappa"])
    for row in kappa:
        if len(row) != lam.rank:
            raise InputError("kappa row length does not match the lattice rank")
    return luna.HomogeneousSphericalDatum(rs, central, frozenset(doc.get("pp", [])), sigma, lam, kappa)


def hsd_to_doc(d: luna.HomogeneousSphericalDatum) -> dict:
    return {
        "kind": "hsd",
        "diagram": str(d.rs.diagram),
        "central_rank": d.central_rank,
        "pp": sorted(d.pp),
        "sigma": [_sph_root_doc(x) for x in d.sigma],
        "lattice": [list(r) for r in d.lam.basis],
        "kappa": [list(r) for r in d.kappa],
    }


def admissible_from_doc(doc) -> AdmissibleMap:
    rs = build_root_system(parse_diagram(doc["diagram"]))
    matrix = tuple(tuple(row) for row in doc["matrix"])
    if len(matrix) != rs.rank or any(len(r) != rs.rank for r in matrix):
        raise InputError("matrix shape does not match the diagram rank")
    return AdmissibleMap(rs, matrix)


def admissible_to_doc(am: AdmissibleMap) -> dict:
    return {
        "kind": "admissible",
        "diagram": str(am.rs.diagram),
        "matrix": [list(r) for r in am.eta],
    }


def ars_from_doc(doc):
    rs = build_root_system(parse_diagram(doc["diagram"]))
    maximal = [tuple(r) for r in doc["maximal"]]
    pi = list(doc["pi"])
    if len(pi) != len(maximal):
        raise InputError("pi length does not match the maximal roots")
    classes = doc.get("classes", [[i] for i in range(len(maximal))])
    aset = ars_mod.ARSSet(
        rs,
        tuple(maximal),
        tuple(pi),
        tuple(frozenset(c) for c in classes),
    )
    if "ker_tau" in doc or "central_rank" in doc:
        central = doc.get("central_rank", 0)
        rows = [tuple(r) for r in doc.get("ker_tau", [])]
        ker = Sublattice.from_rows(rs.rank + central, rows)
        return ars_mod.ExtendedARSSet(aset, central, ker)
    return aset


def ars_to_doc(obj) -> dict:
    if isinstance(obj, ars_mod.ExtendedARSSet):
        base = ars_to_doc(obj.ars)
        base["central_rank"] = obj.central_rank
        base["ker_tau"] = [list(r) for r in obj.ker_tau.basis]
        return base
    return {
        "kind": "ars",
        "diagram": str(obj.rs.diagram),
        "maximal": [list(r) for r in obj.maximal],
        "pi": list(obj.pi),
        "classes": [sorted(c) for c in obj.classes],
    }


def active_classes_doc(classes) -> list:
    return [[list(r) for r in cls] for cls in classes]


def ews_from_doc(doc) -> ews_mod.EWSGenerators:
    rs = build_root_system(parse_diagram(doc["diagram"]))
    central = doc.get("central_rank", 0)
    k = doc["char_rank"]
    group = quotient_group(k, [tuple(r) for r in doc["char_relations"]])
    gens = []
    for g in doc["generators"]:
        weight = WeightVec(tuple(g["weight"]), tuple(g.get("central", [0] * central)))
        if len(weight.ss) != rs.rank or len(weight.central) != central:
            raise InputError("generator weight dimensions are inconsistent")
        chi = tuple(g["chi"])
        if len(chi) != k:
            raise InputError("generator character length does not match char_rank")
        gens.append((weight, chi))
    central_chi = tuple(tuple(r) for r in doc.get("central_chi", []))
    if len(central_chi) != central:
        raise InputError("central_chi must have one row per central rank")
    return ews_mod.EWSGenerators(rs, central, group, tuple(gens), central_chi)


def ews_to_doc(g: ews_mod.EWSGenerators) -> dict:
    return {
        "kind": "ews",
        "diagram": str(g.rs.diagram),
        "central_rank": g.central_rank,
        "char_rank": g.char_group.n,
        "char_relations": [list(r) for r in g.char_group.relations],
        "generators": [
            {"weight": list(w.ss), "central": list(w.central), "chi": list(chi)}
            for w, chi in g.generators
        ],
        "central_chi": [list(r) for r in g.central_chi],
    }


def object_from_doc(doc):
    kind = doc["kind"]
    if kind == "diagram":
        return parse_diagram(doc["diagram"])
    if kind == "system":
        return system_from_doc(doc)
    if kind == "hsd":
        return hsd_from_doc(doc)
    if kind == "admissible":
        return admissible_from_doc(doc)
    if kind == "ars":
        return ars_from_doc(doc)
    if kind == "ews":
        return ews_from_doc(doc)
    raise InputError(f"unknown kind {kind!r}")


def object_to_doc(obj):
    if isinstance(obj, DynkinDiagram):
        return {"kind": "diagram", "diagram": str(obj)}
    if isinstance(obj, luna.SphericalSystem):
        return system_to_doc(obj)
    if isinstance(obj, luna.HomogeneousSphericalDatum):
        return hsd_to_doc(obj)
    if isinstance(obj, AdmissibleMap):
        return admissible_to_doc(obj)
    if isinstance(obj, (ars_mod.ARSSet, ars_mod.ExtendedARSSet)):
        return ars_to_doc(obj)
    if isinstance(obj, ews_mod.EWSGenerators):
        return ews_to_doc(obj)
    raise TypeError(f"cannot serialize {type(obj)!r}")
