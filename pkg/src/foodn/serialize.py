"""Canonical JSON documents and DOT export.

Serialization is canonical: keys are sorted, property and method lists are
ordered by id, name-keyed collections by name.  Serializing, loading, and
serializing again yields byte-identical text.
"""
from __future__ import annotations

import json

from .errors import CorruptDocument, SchemaVersionMismatch
from .fuzzy import DEFAULT_TOL, FuzzySet
from .model import (
    Absent,
    Binding,
    ClassSpec,
    CrispNumber,
    CrispTuple,
    Fuzzy,
    FuzzyMarker,
    FuzzyObject,
    FuzzyTuple,
    HeterogeneousClass,
    Interval,
    MethodDef,
    Property,
    TruthDegree,
)
from .modifiers import Change, Modifier
from .network import Network, ProvenanceRecord, Relation

SCHEMA_VERSION = 1


# -- values -------------------------------------------------------------------


def _fs_doc(fs: FuzzySet) -> dict:
    return {"elements": [[s, d] for s, d in fs.elements], "unit": fs.unit}


def _fs_from(doc) -> FuzzySet:
    return FuzzySet(tuple((float(s), float(d)) for s, d in doc["elements"]), doc["unit"])


def value_to_doc(value) -> dict:
    if isinstance(value, CrispNumber):
        return {"kind": "number", "value": value.value, "unit": value.unit}
    if isinstance(value, CrispTuple):
        return {"kind": "tuple", "values": list(value.values), "unit": value.unit}
    if isinstance(value, Interval):
        return {
            "kind": "interval",
            "lo": value.lo,
            "hi": value.hi,
            "lo_open": value.lo_open,
            "hi_open": value.hi_open,
            "unit": value.unit,
        }
    if isinstance(value, TruthDegree):
        return {"kind": "truth", "value": value.value}
    if isinstance(value, FuzzyMarker):
        return {"kind": "fuzzy-marker"}
    if isinstance(value, Absent):
        return {"kind": "absent"}
    if isinstance(value, Fuzzy):
        return {"kind": "fuzzy", **_fs_doc(value.value)}
    if isinstance(value, FuzzyTuple):
        return {"kind": "fuzzy-tuple", "values": [_fs_doc(fs) for fs in value.values]}
    raise TypeError(f"not a property value: {value!r}")


def value_from_doc(doc):
    try:
        kind = doc["kind"]
        if kind == "number":
            return CrispNumber(float(doc["value"]), doc["unit"])
        if kind == "tuple":
            return CrispTuple(tuple(float(v) for v in doc["values"]), doc["unit"])
        if kind == "interval":
            return Interval(
                float(doc["lo"]), float(doc["hi"]), doc["unit"], doc["lo_open"], doc["hi_open"]
            )
        if kind == "truth":
            return TruthDegree(float(doc["value"]))
        if kind == "fuzzy-marker":
            return FuzzyMarker()
        if kind == "absent":
            return Absent()
        if kind == "fuzzy":
            return Fuzzy(_fs_from(doc))
        if kind == "fuzzy-tuple":
            return FuzzyTuple(tuple(_fs_from(v) for v in doc["values"]))
    except (KeyError, TypeError) as exc:
        raise CorruptDocument(f"bad value document {doc!r}: {exc}") from exc
    raise CorruptDocument(f"unknown value kind {doc.get('kind')!r}")


# -- entities -----------------------------------------------------------------


def _property_doc(p: Property) -> dict:
    return {"id": p.id, "semantic": p.semantic, "value": value_to_doc(p.value)}


def _property_from(doc) -> Property:
    try:
        return Property(doc["id"], doc["semantic"], value_from_doc(doc["value"]))
    except (KeyError, TypeError) as exc:
        raise CorruptDocument(f"bad property document: {exc}") from exc


def _method_doc(m: MethodDef) -> dict:
    return {
        "id": m.id,
        "semantic": m.semantic,
        "body": m.body,
        "bindings": [
            {"var": b.var, "prop": b.prop, "accessor": b.accessor, "index": b.index}
            for b in m.bindings
        ],
        "result_unit": m.result_unit,
    }


def _method_from(doc) -> MethodDef:
    try:
        bindings = tuple(
            Binding(b["var"], b["prop"], b["accessor"], b["index"]) for b in doc["bindings"]
        )
        return MethodDef(doc["id"], doc["semantic"], doc["body"], bindings, doc["result_unit"])
    except (KeyError, TypeError) as exc:
        raise CorruptDocument(f"bad method document: {exc}") from exc


def entity_to_doc(entity) -> dict:
    if isinstance(entity, FuzzyObject):
        return {
            "kind": "object",
            "name": entity.name,
            "declared_class": entity.declared_class,
            "properties": [_property_doc(p) for p in sorted(entity.specification, key=lambda p: p.id)],
            "methods": [_method_doc(m) for m in sorted(entity.signature, key=lambda m: m.id)],
        }
    if isinstance(entity, ClassSpec):
        return {
            "kind": "class",
            "name": entity.name,
            "mode": entity.mode,
            "extension": sorted(entity.extension),
            "properties": [_property_doc(p) for p in sorted(entity.specification, key=lambda p: p.id)],
            "methods": [_method_doc(m) for m in sorted(entity.signature, key=lambda m: m.id)],
        }
    if isinstance(entity, HeterogeneousClass):
        return {
            "kind": "heterogeneous-class",
            "name": entity.name,
            "projections": [
                entity_to_doc(p) for p in sorted(entity.projections, key=lambda p: p.name)
            ],
        }
    raise TypeError(f"not an entity: {entity!r}")


def entity_from_doc(doc):
    try:
        kind = doc["kind"]
        if kind == "object":
            return FuzzyObject(
                doc["name"],
                tuple(_property_from(p) for p in doc["properties"]),
                tuple(_method_from(m) for m in doc["methods"]),
                doc["declared_class"],
            )
        if kind == "class":
            return ClassSpec(
                doc["name"],
                tuple(_property_from(p) for p in doc["properties"]),
                tuple(_method_from(m) for m in doc["methods"]),
                doc["mode"],
                tuple(doc["extension"]),
            )
        if kind == "heterogeneous-class":
            return HeterogeneousClass(
                doc["name"], tuple(entity_from_doc(p) for p in doc["projections"])
            )
    except (KeyError, TypeError) as exc:
        raise CorruptDocument(f"bad entity document: {exc}") from exc
    raise CorruptDocument(f"unknown entity kind {doc.get('kind')!r}")


# -- networks -----------------------------------------------------------------


def _change_doc(c: Change) -> dict:
    return {"prop": c.prop, "before": value_to_doc(c.before), "after": value_to_doc(c.after)}


def _change_from(doc) -> Change:
    try:
        return Change(doc["prop"], value_from_doc(doc["before"]), value_from_doc(doc["after"]))
    except (KeyError, TypeError) as exc:
        raise CorruptDocument(f"bad change document: {exc}") from exc


def to_document(net: Network) -> dict:
    return {
        "foodn_version": SCHEMA_VERSION,
        "objects": [entity_to_doc(net.objects[n]) for n in sorted(net.objects)],
        "classes": [entity_to_doc(net.classes[n]) for n in sorted(net.classes)],
        "relations": [
            {"source": r.source, "target": r.target, "kind": r.kind, "degree": r.degree}
            for r in sorted(net.relations, key=lambda r: (r.source, r.target, r.kind))
        ],
        "exploiters": [
            {"kind": e.kind, "arity": e.arity}
            for e in sorted(net.exploiters.values(), key=lambda e: e.kind)
        ],
        "modifiers": [
            {
                "name": m.name,
                "level": m.level,
                "source": m.source,
                "target_name": m.target_name,
                "target_class": m.target_class,
                "changes": [_change_doc(c) for c in m.changes],
            }
            for m in sorted(net.modifiers.values(), key=lambda m: m.name)
        ],
        "provenance": [
            {
                "seq": p.seq,
                "op": p.op,
                "sources": list(p.sources),
                "target": p.target,
                "changes": [_change_doc(c) for c in p.changes],
            }
            for p in net.provenance
        ],
        "history": dict(sorted(net.history.items())),
    }


def from_document(doc, tol: float = DEFAULT_TOL) -> Network:
    if not isinstance(doc, dict):
        raise CorruptDocument("a network document must be a JSON object")
    version = doc.get("foodn_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionMismatch(
            f"unsupported schema version {version!r}, expected {SCHEMA_VERSION}"
        )
    required = ("objects", "classes", "relations", "modifiers", "provenance", "history")
    for key in required:
        if key not in doc:
            raise CorruptDocument(f"missing key {key!r}")
    net = Network(tol)
    try:
        net.history = dict(doc["history"])
        for edoc in doc["classes"]:
            net.add(entity_from_doc(edoc))
        for edoc in doc["objects"]:
            net.add(entity_from_doc(edoc))
        for rdoc in doc["relations"]:
            net.add_relation(rdoc["source"], rdoc["target"], rdoc["kind"], rdoc["degree"])
        for mdoc in doc["modifiers"]:
            net.register_modifier(
                Modifier(
                    mdoc["name"],
                    mdoc["level"],
                    mdoc["source"],
                    mdoc["target_name"],
                    tuple(_change_from(c) for c in mdoc["changes"]),
                    mdoc["target_class"],
                )
            )
        for pdoc in doc["provenance"]:
            net.provenance.append(
                ProvenanceRecord(
                    int(pdoc["seq"]),
                    pdoc["op"],
                    tuple(pdoc["sources"]),
                    pdoc["target"],
                    tuple(_change_from(c) for c in pdoc["changes"]),
                )
            )
    except (KeyError, TypeError) as exc:
        raise CorruptDocument(f"bad network document: {exc}") from exc
    return net


def dumps(net: Network) -> str:
    return json.dumps(to_document(net), sort_keys=True, indent=2) + "\n"


def loads(text: str, tol: float = DEFAULT_TOL) -> Network:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorruptDocument(f"not valid JSON: {exc}") from exc
    return from_document(doc, tol)


def load_file(path: str, tol: float = DEFAULT_TOL):
    """(network, warnings) from a .foodn text file or a JSON document."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if str(path).endswith(".foodn"):
        from .dsl import parse_network

        return parse_network(text, tol)
    return loads(text, tol), []


def save_file(net: Network, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(net))


# -- DOT export ---------------------------------------------------------------


def _q(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(net: Network, overlay=()) -> str:
    """Render the relation graph in DOT.

    Objects are boxes, classes ellipses (doubled for heterogeneous ones),
    retired names dotted.  With *overlay*, virtual result nodes for the
    universal exploiters over those entities are added; operations whose
    result may not exist are dashed.
    """
    overlay = list(overlay)
    lines = ["digraph foodn {", "  rankdir=BT;"]

    mentioned = set()
    for r in net.relations:
        mentioned.update((r.source, r.target))
    for name in sorted(net.objects):
        lines.append(f"  {_q(name)} [shape=box];")
    for name in sorted(net.classes):
        shape = "ellipse"
        extra = ""
        if isinstance(net.classes[name], HeterogeneousClass):
            extra = ", peripheries=2"
        lines.append(f"  {_q(name)} [shape={shape}{extra}];")
    for name in sorted(mentioned):
        if name in net.objects or name in net.classes:
            continue
        kind = net.history.get(name)
        shape = "box" if kind == "object" else "ellipse"
        lines.append(f"  {_q(name)} [shape={shape}, style=dotted];")

    for r in sorted(net.relations, key=lambda r: (r.source, r.target, r.kind)):
        label = r.kind
        if r.degree < 1.0:
            from .fuzzy import format_number

            label += f" {format_number(r.degree)}"
        style = ", style=dashed" if r.kind == "modification-of" else ""
        lines.append(f"  {_q(r.source)} -> {_q(r.target)} [label={_q(label)}{style}];")

    if overlay:
        for name in overlay:
            net.entity(name)  # raises UnknownEntity for strangers
        joined = ", ".join(overlay)
        if len(overlay) >= 2:
            for symbol, word, dashed in (
                ("∪", "union", False),          # always exists
                ("∩", "intersection", True),
                ("∖", "difference", True),
                ("÷", "sym-difference", True),
            ):
                if word in ("difference", "sym-difference") and len(overlay) != 2:
                    continue
                node = f"{symbol}({joined})"
                style = ", style=dashed" if dashed else ""
                lines.append(f"  {_q(node)} [shape=hexagon{style}];")
                for name in overlay:
                    estyle = ", style=dashed" if dashed else ""
                    lines.append(
                        f"  {_q(name)} -> {_q(node)} [label={_q(symbol)}{estyle}];"
                    )
        for name in overlay:
            node = f"clone({name})"
            lines.append(f"  {_q(node)} [shape=hexagon];")
            lines.append(f"  {_q(name)} -> {_q(node)} [label={_q('clone')}];")

    lines.append("}")
    return "\n".join(lines) + "\n"
