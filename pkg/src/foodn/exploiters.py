"""Set-style operations over entities.  They create, they never mutate.

Union over objects yields an ObjectSet plus the extensional class it
induces; union over classes yields a heterogeneous class keeping one
projection per source.  Intersection, difference and symmetric difference
compare specifications and signatures id by id and build intensional
classes; an empty outcome is reported as DoesNotExist rather than stored.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import ArityError, DoesNotExist, MixedKinds
from .fuzzy import DEFAULT_TOL
from .model import (
    ClassSpec,
    Entity,
    FuzzyObject,
    HeterogeneousClass,
    MethodDef,
    Property,
    entity_kind,
    method_equivalent,
    property_equivalent,
)


@dataclass(frozen=True)
class ExploiterInfo:
    kind: str
    arity: str  # "1", "2" or "n"


# The universal exploiters; every network carries these five.
UNIVERSAL_EXPLOITERS = (
    ExploiterInfo("union", "n"),
    ExploiterInfo("intersection", "n"),
    ExploiterInfo("difference", "2"),
    ExploiterInfo("sym-difference", "2"),
    ExploiterInfo("clone", "1"),
)


@dataclass(frozen=True)
class ObjectSet:
    """A named collection of objects plus the class it induces."""

    name: str
    members: tuple[str, ...]
    induced_class: ClassSpec


def _all_kinds(entities) -> str:
    kinds = {entity_kind(e) for e in entities}
    if len(kinds) != 1:
        raise MixedKinds(f"arguments mix kinds: {sorted(kinds)}")
    return kinds.pop()


def _plain_classes(entities, op: str):
    for e in entities:
        if isinstance(e, HeterogeneousClass):
            raise MixedKinds(
                f"{op} needs plain classes; {e.name} is heterogeneous and has no "
                "single specification to compare"
            )


def union_op(entities, result_name: str):
    """n-ary union of distinct entities of one kind."""
    entities = list(entities)
    names = [e.name for e in entities]
    if len(set(names)) != len(names):
        raise ArityError(f"union arguments must be distinct, got {names}")
    if len(entities) < 2:
        raise ArityError("union needs at least two entities")
    kind = _all_kinds(entities)
    if kind == "object":
        members = tuple(names)
        induced = ClassSpec(result_name, mode="extensional", extension=members)
        return ObjectSet(result_name, members, induced)
    _plain_classes(entities, "union")
    return HeterogeneousClass(result_name, tuple(entities))


def _shared(entities, tol: float):
    """Properties and methods of the first entity equivalent across all."""
    first, rest = entities[0], entities[1:]
    props = []
    for p in first.specification:
        others = [e.get_property(p.id) for e in rest]
        if all(q is not None and property_equivalent(p, q, tol) for q in others):
            props.append(p)
    methods = []
    for m in first.signature:
        others = [e.get_method(m.id) for e in rest]
        if all(q is not None and method_equivalent(m, q) for q in others):
            methods.append(m)
    return props, methods


def intersection_op(entities, result_name: str, tol: float = DEFAULT_TOL) -> ClassSpec:
    """Common content of the arguments, as an intensional class."""
    entities = list(entities)
    if len(entities) < 2:
        raise ArityError("intersection needs at least two entities")
    _all_kinds(entities)
    _plain_classes(entities, "intersection")
    props, methods = _shared(entities, tol)
    if not props and not methods:
        names = ", ".join(e.name for e in entities)
        raise DoesNotExist(
            f"intersection of {names} does not exist: no common properties or methods"
        )
    return ClassSpec(result_name, tuple(props), tuple(methods))


def _only_in(a, b, tol: float):
    """Content of *a* with no equivalent counterpart in *b*."""
    props = [
        p
        for p in a.specification
        if (q := b.get_property(p.id)) is None or not property_equivalent(p, q, tol)
    ]
    methods = [
        m
        for m in a.signature
        if (q := b.get_method(m.id)) is None or not method_equivalent(m, q)
    ]
    return props, methods


def difference_op(a: Entity, b: Entity, result_name: str, tol: float = DEFAULT_TOL) -> ClassSpec:
    """Content of *a* that *b* lacks, as an intensional class."""
    _all_kinds([a, b])
    _plain_classes([a, b], "difference")
    props, methods = _only_in(a, b, tol)
    if not props and not methods:
        raise DoesNotExist(
            f"difference of {a.name} and {b.name} does not exist: nothing is left"
        )
    return ClassSpec(result_name, tuple(props), tuple(methods))


def sym_difference_op(a: Entity, b: Entity, result_name: str, tol: float = DEFAULT_TOL) -> ClassSpec:
    """Content unique to either side; clashing ids get an @owner suffix."""
    _all_kinds([a, b])
    _plain_classes([a, b], "sym-difference")
    a_props, a_methods = _only_in(a, b, tol)
    b_props, b_methods = _only_in(b, a, tol)

    def qualify(items, other_items, owner):
        other_ids = {x.id for x in other_items}
        return [
            replace(item, id=f"{item.id}@{owner}") if item.id in other_ids else item
            for item in items
        ]

    props = qualify(a_props, b_props, a.name) + qualify(b_props, a_props, b.name)
    methods = qualify(a_methods, b_methods, a.name) + qualify(b_methods, a_methods, b.name)
    if not props and not methods:
        raise DoesNotExist(
            f"symmetric difference of {a.name} and {b.name} does not exist: "
            "the entities are equivalent"
        )
    return ClassSpec(result_name, tuple(props), tuple(methods))


def clone_op(entity: Entity, index: int = 1) -> Entity:
    """A copy under the derived name <name>_clone<index>."""
    if index < 1:
        raise ArityError(f"clone index must be positive, got {index}")
    return replace(entity, name=f"{entity.name}_clone{index}")
