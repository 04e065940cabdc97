"""The network: entities, relations, exploiters, modifiers, and history.

A network is the single mutable structure in the engine.  Entities stay
immutable; every transformation stores a new entity, retires old names into
the history map, and appends a provenance record, so past states remain
reconstructible from the relation graph.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

from . import exploiters as _exp
from .errors import (
    ArityError,
    DuplicateName,
    KindMismatch,
    NameCollision,
    NotApplicable,
    ReflectionWarning,
    SemanticMismatch,
    UnknownEndpoint,
    UnknownEntity,
    UnknownExploiter,
    UnknownModifier,
)
from .fuzzy import DEFAULT_TOL, check_degree, format_number
from .model import (
    ClassSpec,
    FuzzyObject,
    HeterogeneousClass,
    entity_kind,
    is_fuzzy_entity,
    membership_degree,
)
from .modifiers import Modifier, check_applicable, transform

RELATION_KINDS = (
    "instance-of",
    "is-a",
    "a-kind-of",
    "modification-of",
    "aggregation",
    "association",
)

# Endpoint kind constraints: (source kind, target kind); None means any.
_ENDPOINT_RULES = {
    "instance-of": ("object", "class"),
    "is-a": ("class", "class"),
    "a-kind-of": ("class", "class"),
    "modification-of": ("same", "same"),
    "aggregation": (None, None),
    "association": (None, None),
}


@dataclass(frozen=True)
class Relation:
    source: str
    target: str
    kind: str
    degree: float = 1.0

    def __post_init__(self):
        if self.kind not in RELATION_KINDS:
            raise KindMismatch(f"unknown relation kind {self.kind!r}")
        check_degree(self.degree, "relation degree")

    def __str__(self):
        text = f"{self.source} {self.kind} {self.target}"
        if self.degree != 1.0:
            text += f" [{format_number(self.degree)}]"
        return text


@dataclass(frozen=True)
class Witness:
    """One reason a network is fuzzy."""

    name: str
    kind: str  # "object", "class" or "relation"
    details: tuple[str, ...]


@dataclass(frozen=True)
class ProvenanceRecord:
    seq: int
    op: str
    sources: tuple[str, ...]
    target: str
    changes: tuple = ()


class Network:
    """A fuzzy object-oriented dynamic network."""

    def __init__(self, tol: float = DEFAULT_TOL):
        self.tol = tol
        self.objects: dict[str, FuzzyObject] = {}
        self.classes: dict[str, ClassSpec | HeterogeneousClass] = {}
        self.relations: list[Relation] = []
        self.modifiers: dict[str, Modifier] = {}
        self.exploiters: dict[str, _exp.ExploiterInfo] = {
            e.kind: e for e in _exp.UNIVERSAL_EXPLOITERS
        }
        self.provenance: list[ProvenanceRecord] = []
        self.history: dict[str, str] = {}  # retired name -> entity kind

    # -- construction ---------------------------------------------------

    def _check_free(self, name: str):
        if name in self.objects or name in self.classes:
            raise DuplicateName(f"{name!r} is already bound to a live entity")

    def add(self, entity):
        if isinstance(entity, FuzzyObject):
            self._check_free(entity.name)
            self.objects[entity.name] = entity
        elif isinstance(entity, (ClassSpec, HeterogeneousClass)):
            self._check_free(entity.name)
            self.classes[entity.name] = entity
        else:
            raise TypeError(f"not an entity: {entity!r}")
        return entity

    def _endpoint_kind(self, name: str) -> str:
        if name in self.objects:
            return "object"
        if name in self.classes:
            return "class"
        if name in self.history:
            return self.history[name]
        raise UnknownEndpoint(f"no entity, live or historical, named {name!r}")

    def _append_relation(self, relation: Relation):
        src = self._endpoint_kind(relation.source)
        tgt = self._endpoint_kind(relation.target)
        want_src, want_tgt = _ENDPOINT_RULES[relation.kind]
        if want_src == "same":
            if src != tgt:
                raise KindMismatch(
                    f"{relation.kind} links entities of one kind, got {src} and {tgt}"
                )
        else:
            if want_src is not None and src != want_src:
                raise KindMismatch(f"{relation.kind} needs a {want_src} source, got {src}")
            if want_tgt is not None and tgt != want_tgt:
                raise KindMismatch(f"{relation.kind} needs a {want_tgt} target, got {tgt}")
        for existing in self.relations:
            if (existing.source, existing.target, existing.kind) == (
                relation.source,
                relation.target,
                relation.kind,
            ):
                if existing.degree == relation.degree:
                    return  # set semantics: an exact duplicate is a no-op
                raise DuplicateName(
                    f"relation {existing} already present with a different degree"
                )
        self.relations.append(relation)

    def add_relation(self, source: str, target: str, kind: str, degree: float = 1.0):
        self._append_relation(Relation(source, target, kind, degree))

    def register_modifier(self, modifier: Modifier):
        if modifier.name in self.modifiers:
            raise DuplicateName(f"modifier {modifier.name!r} already registered")
        self.modifiers[modifier.name] = modifier
        return modifier

    # -- lookups ----------------------------------------------------------

    def entity(self, name: str):
        if name in self.objects:
            return self.objects[name]
        if name in self.classes:
            return self.classes[name]
        raise UnknownEntity(f"no live entity named {name!r}")

    def _fresh_name(self, base: str) -> str:
        if base not in self.objects and base not in self.classes:
            return base
        i = 2
        while f"{base}_{i}" in self.objects or f"{base}_{i}" in self.classes:
            i += 1
        return f"{base}_{i}"

    # -- queries ----------------------------------------------------------

    def is_fuzzy(self) -> tuple[bool, list[Witness]]:
        """Whether anything in the network is fuzzy, with all the reasons:
        fuzzy-valued objects, fuzzy-valued classes, graded relations."""
        witnesses: list[Witness] = []
        for name in sorted(self.objects):
            fuzzy, ids = is_fuzzy_entity(self.objects[name])
            if fuzzy:
                witnesses.append(Witness(name, "object", ids))
        for name in sorted(self.classes):
            fuzzy, ids = is_fuzzy_entity(self.classes[name])
            if fuzzy:
                witnesses.append(Witness(name, "class", ids))
        for rel in self.relations:
            if rel.degree < 1.0:
                witnesses.append(
                    Witness(str(rel), "relation", (f"degree {format_number(rel.degree)}",))
                )
        return bool(witnesses), witnesses

    def membership(self, object_name: str, class_name: str, tnorm: str = "min") -> float:
        if object_name not in self.objects:
            raise UnknownEntity(f"no live object named {object_name!r}")
        if class_name not in self.classes:
            raise UnknownEntity(f"no live class named {class_name!r}")
        return membership_degree(self.objects[object_name], self.classes[class_name], tnorm, self.tol)

    def query_related(self, name: str, kinds, direction: str = "out", transitive: bool = False):
        """Names reachable over relations of the given kinds.

        Historical entities participate: modification chains stay queryable
        after their intermediate names retire.  Pure cycles terminate; the
        result is sorted and excludes duplicates.
        """
        if isinstance(kinds, str):
            kinds = (kinds,)
        for k in kinds:
            if k not in RELATION_KINDS:
                raise KindMismatch(f"unknown relation kind {k!r}")
        if direction not in ("out", "in"):
            raise ValueError(f"direction must be out or in, got {direction!r}")
        self._endpoint_kind(name)  # raises UnknownEndpoint for strangers

        step: dict[str, set[str]] = {}
        for rel in self.relations:
            if rel.kind in kinds:
                a, b = (rel.source, rel.target) if direction == "out" else (rel.target, rel.source)
                step.setdefault(a, set()).add(b)

        found: set[str] = set()
        frontier = [name]
        seen = {name}
        while frontier:
            here = frontier.pop()
            for nxt in step.get(here, ()):
                if nxt not in found:
                    found.add(nxt)
                    if transitive and nxt not in seen:
                        seen.add(nxt)
                        frontier.append(nxt)
            if not transitive:
                break
        return sorted(found)

    def infer_relations(self, threshold: float = 0.0) -> list[Relation]:
        """Propose instance-of edges for object/class pairs whose membership
        clears the threshold; nothing is added to the network."""
        existing = {
            (r.source, r.target) for r in self.relations if r.kind == "instance-of"
        }
        proposals = []
        for oname in sorted(self.objects):
            for cname in sorted(self.classes):
                if (oname, cname) in existing:
                    continue
                try:
                    degree = self.membership(oname, cname)
                except SemanticMismatch:
                    continue
                if degree > 0.0 and degree >= threshold:
                    proposals.append(Relation(oname, cname, "instance-of", degree))
        return proposals

    # -- dynamics ---------------------------------------------------------

    def _record(self, op: str, sources, target: str, changes=()):
        self.provenance.append(
            ProvenanceRecord(len(self.provenance) + 1, op, tuple(sources), target, tuple(changes))
        )

    def apply_exploiter(self, kind: str, names, result_name: str | None = None, index: int | None = None) -> str:
        """Run an exploiter over live entities and store what it creates.

        Returns the stored entity's name.  For a union over objects the
        stored artifact is the induced extensional class.
        """
        if kind not in self.exploiters:
            raise UnknownExploiter(f"no exploiter {kind!r}; have {sorted(self.exploiters)}")
        names = list(names)
        entities = [self.entity(n) for n in names]

        if kind == "clone":
            if len(entities) != 1:
                raise ArityError(f"clone takes one entity, got {len(entities)}")
            if index is None:
                index = 1
                while f"{names[0]}_clone{index}" in self.objects or (
                    f"{names[0]}_clone{index}" in self.classes
                ):
                    index += 1
            result = _exp.clone_op(entities[0], index)
            if result.name in self.objects or result.name in self.classes:
                raise NameCollision(f"{result.name!r} is already live")
            self.add(result)
            self._record("clone", names, result.name)
            return result.name

        if result_name is None:
            result_name = f"{kind}_" + "_".join(names)
        if result_name in self.objects or result_name in self.classes:
            raise NameCollision(f"{result_name!r} is already live")

        if kind == "union":
            result = _exp.union_op(entities, result_name)
            stored = result.induced_class if isinstance(result, _exp.ObjectSet) else result
            self.classes[stored.name] = stored
        elif kind == "intersection":
            stored = _exp.intersection_op(entities, result_name, self.tol)
            self.classes[stored.name] = stored
        elif kind == "difference":
            if len(entities) != 2:
                raise ArityError(f"difference takes two entities, got {len(entities)}")
            stored = _exp.difference_op(entities[0], entities[1], result_name, self.tol)
            self.classes[stored.name] = stored
        else:  # sym-difference
            if len(entities) != 2:
                raise ArityError(f"sym-difference takes two entities, got {len(entities)}")
            stored = _exp.sym_difference_op(entities[0], entities[1], result_name, self.tol)
            self.classes[stored.name] = stored
        self._record(kind, names, stored.name)
        return stored.name

    def apply_modifier(self, modifier_name: str, entity_name: str) -> str:
        """Replace the entity with its transformed version.

        All checks happen before any mutation, so a failed application
        leaves the network exactly as it was.
        """
        if modifier_name not in self.modifiers:
            raise UnknownModifier(f"no modifier named {modifier_name!r}")
        mod = self.modifiers[modifier_name]
        entity = self.entity(entity_name)
        ok, reasons = check_applicable(mod, entity, self.tol)
        if not ok:
            raise NotApplicable(
                f"{modifier_name} does not apply to {entity_name}: " + "; ".join(reasons),
                reasons,
            )

        result = transform(mod, entity)
        donor = None
        if mod.target_class is not None:
            if mod.target_class not in self.classes:
                raise UnknownEntity(f"target class {mod.target_class!r} is not live")
            donor = self.classes[mod.target_class]
            if isinstance(donor, HeterogeneousClass):
                raise KindMismatch(
                    f"target class {mod.target_class!r} is heterogeneous and has no signature"
                )

        kind = entity_kind(entity)
        new_name = self._fresh_name(mod.target_name)
        if donor is not None:
            if kind == "object":
                result = replace(result, signature=donor.signature, declared_class=donor.name)
            else:
                result = replace(result, signature=donor.signature)
        result = replace(result, name=new_name)

        # point of no return; nothing below can fail
        if kind == "object":
            del self.objects[entity_name]
            self.objects[new_name] = result
        else:
            del self.classes[entity_name]
            self.classes[new_name] = result
        self.history[entity_name] = kind
        self._append_relation(Relation(new_name, entity_name, "modification-of"))
        self._record(modifier_name, (entity_name,), new_name, mod.changes)

        if kind == "object" and mod.target_class is not None:
            try:
                degree = membership_degree(result, donor, "min", self.tol)
                reason = None if degree > 0.0 else "membership degree is 0"
            except SemanticMismatch as exc:
                reason = str(exc)
            if reason is not None:
                warnings.warn(
                    f"{modifier_name}: result {new_name} does not belong to its "
                    f"target class {mod.target_class} ({reason})",
                    ReflectionWarning,
                    stacklevel=2,
                )
        return new_name
