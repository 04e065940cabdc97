"""Method evaluation over fuzzy-valued properties.

A method body is compiled to a small stack program; every bound variable
becomes a program slot carrying the supports and degrees of its value
(crisp values are one-point supports at degree 1).  The kernel enumerates
all support combinations, so a variable bound once names one quantity no
matter how often the body mentions it, while an indexed family bound with
[*] enumerates each component independently inside sum().
"""
from __future__ import annotations

from . import kernel as _kernel
from .errors import UnknownMethod, UnresolvedBinding
from .expr import Bin, Call, Expr, Neg, Num, Sum, Var, compile_program, parse_expr
from .fuzzy import DEFAULT_TOL, FuzzySet
from .model import (
    Binding,
    CrispNumber,
    CrispTuple,
    Fuzzy,
    FuzzyTuple,
    MethodDef,
    TruthDegree,
)


def resolve_binding(entity, binding: Binding):
    """Value(s) the binding selects on *entity*.

    Returns a float or FuzzySet for scalar selectors, or a list of those for
    an indexed family ([*]).  Raises UnresolvedBinding when the property is
    missing or its shape does not fit the accessor.
    """
    prop = entity.get_property(binding.prop)
    if prop is None:
        raise UnresolvedBinding(
            f"{entity.name}: no property {binding.prop!r} for variable {binding.var!r}"
        )
    value = prop.value

    def components():
        if isinstance(value, CrispTuple):
            return list(value.values)
        if isinstance(value, FuzzyTuple):
            return list(value.values)
        return None

    if binding.accessor == "count":
        parts = components()
        return float(len(parts)) if parts is not None else 1.0
    if binding.accessor == "scalar":
        if isinstance(value, CrispNumber):
            return value.value
        if isinstance(value, TruthDegree):
            return value.value
        if isinstance(value, Fuzzy):
            return value.value
        raise UnresolvedBinding(
            f"{entity.name}.{binding.prop} is not a scalar; bind a component or use [*]"
        )
    if binding.accessor == "component":
        parts = components()
        if parts is None:
            raise UnresolvedBinding(f"{entity.name}.{binding.prop} has no components")
        if binding.index > len(parts):
            raise UnresolvedBinding(
                f"{entity.name}.{binding.prop} has {len(parts)} components, "
                f"index {binding.index} is out of range"
            )
        return parts[binding.index - 1]
    # "all": an indexed family; scalars act as a one-member family
    parts = components()
    if parts is not None:
        return parts
    if isinstance(value, CrispNumber):
        return [value.value]
    if isinstance(value, Fuzzy):
        return [value.value]
    raise UnresolvedBinding(f"{entity.name}.{binding.prop} cannot form an indexed family")


def _expand(node: Expr, families: dict[str, int]) -> Expr:
    """Replace sum(v) with an explicit chain over the family members."""
    if isinstance(node, (Num, Var)):
        if isinstance(node, Var) and node.name in families:
            raise UnresolvedBinding(
                f"family variable {node.name!r} can only appear inside sum()"
            )
        return node
    if isinstance(node, Neg):
        return Neg(_expand(node.operand, families))
    if isinstance(node, Bin):
        return Bin(node.op, _expand(node.left, families), _expand(node.right, families))
    if isinstance(node, Call):
        return Call(node.func, _expand(node.arg, families))
    if isinstance(node, Sum):
        if node.var not in families:
            # a scalar under sum() is just itself
            return Var(node.var)
        out: Expr = Var(f"{node.var}#1")
        for i in range(2, families[node.var] + 1):
            out = Bin("+", out, Var(f"{node.var}#{i}"))
        return out
    raise TypeError(f"not an expression node: {node!r}")


def evaluate_method(entity, method: MethodDef, tol: float = DEFAULT_TOL, backend=None):
    """Run *method* on *entity*; fuzzy inputs yield a FuzzySet, crisp a float."""
    run = backend or _kernel.eval_program
    ast = parse_expr(method.body)

    scalars: dict[str, object] = {}
    families: dict[str, list] = {}
    for b in method.bindings:
        resolved = resolve_binding(entity, b)
        if isinstance(resolved, list):
            families[b.var] = resolved
        else:
            scalars[b.var] = resolved

    expanded = _expand(ast, {v: len(parts) for v, parts in families.items()})

    slots: dict[str, int] = {}
    supports: list[list[float]] = []
    degrees: list[list[float]] = []
    any_fuzzy = False

    def add_slot(name, value):
        nonlocal any_fuzzy
        slots[name] = len(supports)
        if isinstance(value, FuzzySet):
            any_fuzzy = True
            supports.append(list(value.supports()))
            degrees.append(list(value.degrees()))
        else:
            supports.append([float(value)])
            degrees.append([1.0])

    for var, value in scalars.items():
        add_slot(var, value)
    for var, parts in families.items():
        for i, part in enumerate(parts, start=1):
            add_slot(f"{var}#{i}", part)

    program = compile_program(expanded, slots)
    values, degs = run(
        program.codes,
        program.operands,
        program.consts,
        program.max_stack,
        supports,
        degrees,
        tol,
    )
    if not any_fuzzy:
        return values[0]
    return FuzzySet(tuple(zip(values, degs)), method.result_unit)


def eval_method(entity, method_id: str, tol: float = DEFAULT_TOL, backend=None):
    """Evaluate the entity's own method with the given id."""
    method = entity.get_method(method_id)
    if method is None:
        raise UnknownMethod(f"{entity.name} has no method {method_id!r}")
    return evaluate_method(entity, method, tol, backend)
