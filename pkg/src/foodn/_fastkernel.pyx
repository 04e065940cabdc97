# cython: boundscheck=False, wraparound=False
"""Compiled evaluation kernel; the structure mirrors _pykernel.eval_program.

Both kernels must stay behaviourally identical: same canonicalization, same
error conditions.  The test suite cross-checks them on random programs.
"""

from libc.math cimport M_PI, cos, floor, isfinite, pow, sin, sqrt
from libc.stdlib cimport free, malloc, qsort

from .errors import EvaluationError
from . import expr as _expr
from .fuzzy import MAX_COMBINATIONS

BACKEND = "compiled"

# Opcode values are hard-coded in the switch below; fail loudly at import if
# they ever drift from the canonical definitions.
assert (
    _expr.OP_CONST, _expr.OP_VAR, _expr.OP_ADD, _expr.OP_SUB, _expr.OP_MUL,
    _expr.OP_DIV, _expr.OP_POW, _expr.OP_NEG, _expr.OP_SIN, _expr.OP_COS,
    _expr.OP_SQRT,
) == (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10)

cdef double _DEG = M_PI / 180.0


cdef int _cmp_pair(const void* a, const void* b) noexcept nogil:
    cdef double va = (<const double*> a)[0]
    cdef double vb = (<const double*> b)[0]
    if va < vb:
        return -1
    if va > vb:
        return 1
    return 0


def eval_program(codes, operands, consts, int max_stack, supports, degrees, double tol):
    """Enumerate the program over fuzzy variables; see _pykernel for the contract."""
    cdef Py_ssize_t n_ops = len(codes)
    cdef Py_ssize_t n_vars = len(supports)
    cdef Py_ssize_t n_consts = len(consts)
    cdef Py_ssize_t i, k, sp, flat, n_out
    cdef long long total = 1, combo
    cdef int op, arg
    cdef double value, degree, d, divisor, base, expo, rep
    cdef long long limit = MAX_COMBINATIONS

    cdef Py_ssize_t total_supports = 0
    for k in range(n_vars):
        if len(supports[k]) == 0:
            raise EvaluationError("a variable has an empty support")
        total_supports += len(supports[k])
        total *= len(supports[k])
    if total > limit:
        raise EvaluationError(f"{total} support combinations exceed the enumeration limit")

    cdef int* ccodes = <int*> malloc(n_ops * sizeof(int))
    cdef int* cargs = <int*> malloc(n_ops * sizeof(int))
    cdef double* cconsts = <double*> malloc((n_consts or 1) * sizeof(double))
    cdef double* flat_sup = <double*> malloc((total_supports or 1) * sizeof(double))
    cdef double* flat_deg = <double*> malloc((total_supports or 1) * sizeof(double))
    cdef Py_ssize_t* offset = <Py_ssize_t*> malloc((n_vars or 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t* size = <Py_ssize_t*> malloc((n_vars or 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t* idx = <Py_ssize_t*> malloc((n_vars or 1) * sizeof(Py_ssize_t))
    cdef double* stack = <double*> malloc((max_stack if max_stack > 0 else 1) * sizeof(double))
    cdef double* pairs = <double*> malloc(2 * total * sizeof(double))
    if (ccodes == NULL or cargs == NULL or cconsts == NULL or flat_sup == NULL
            or flat_deg == NULL or offset == NULL or size == NULL or idx == NULL
            or stack == NULL or pairs == NULL):
        free(ccodes); free(cargs); free(cconsts); free(flat_sup); free(flat_deg)
        free(offset); free(size); free(idx); free(stack); free(pairs)
        raise MemoryError()

    try:
        for i in range(n_ops):
            ccodes[i] = codes[i]
            cargs[i] = operands[i]
        for i in range(n_consts):
            cconsts[i] = consts[i]
        flat = 0
        for k in range(n_vars):
            offset[k] = flat
            size[k] = len(supports[k])
            idx[k] = 0
            col_s = supports[k]
            col_d = degrees[k]
            for i in range(size[k]):
                flat_sup[flat] = col_s[i]
                flat_deg[flat] = col_d[i]
                flat += 1

        for combo in range(total):
            sp = 0
            for i in range(n_ops):
                op = ccodes[i]
                arg = cargs[i]
                if op == 0:       # const
                    stack[sp] = cconsts[arg]
                    sp += 1
                elif op == 1:     # var
                    stack[sp] = flat_sup[offset[arg] + idx[arg]]
                    sp += 1
                elif op == 2:     # add
                    sp -= 1
                    stack[sp - 1] = stack[sp - 1] + stack[sp]
                elif op == 3:     # sub
                    sp -= 1
                    stack[sp - 1] = stack[sp - 1] - stack[sp]
                elif op == 4:     # mul
                    sp -= 1
                    stack[sp - 1] = stack[sp - 1] * stack[sp]
                elif op == 5:     # div
                    sp -= 1
                    divisor = stack[sp]
                    if divisor == 0.0:
                        raise EvaluationError("division by zero at a support combination")
                    stack[sp - 1] = stack[sp - 1] / divisor
                elif op == 6:     # pow, with Python's math.pow error contract
                    sp -= 1
                    base = stack[sp - 1]
                    expo = stack[sp]
                    if (base < 0.0 and expo == expo and expo != floor(expo)) or (
                            base == 0.0 and expo < 0.0):
                        raise EvaluationError(
                            "power failed at a support combination: math domain error"
                        )
                    value = pow(base, expo)
                    if not isfinite(value) and isfinite(base) and isfinite(expo):
                        raise EvaluationError(
                            "power failed at a support combination: math range error"
                        )
                    stack[sp - 1] = value
                elif op == 7:     # neg
                    stack[sp - 1] = -stack[sp - 1]
                elif op == 8:     # sin, degrees
                    stack[sp - 1] = sin(stack[sp - 1] * _DEG)
                elif op == 9:     # cos, degrees
                    stack[sp - 1] = cos(stack[sp - 1] * _DEG)
                elif op == 10:    # sqrt, domain-checked like math.sqrt
                    if stack[sp - 1] < 0.0:
                        raise EvaluationError(
                            "sqrt failed at a support combination: math domain error"
                        )
                    stack[sp - 1] = sqrt(stack[sp - 1])
                else:
                    raise EvaluationError(f"unknown opcode {op}")
            value = stack[0]
            if not isfinite(value):
                raise EvaluationError("non-finite result at a support combination")

            degree = 1.0
            for k in range(n_vars):
                d = flat_deg[offset[k] + idx[k]]
                if d < degree:
                    degree = d
            pairs[2 * combo] = value
            pairs[2 * combo + 1] = degree

            k = n_vars - 1
            while k >= 0:
                idx[k] += 1
                if idx[k] < size[k]:
                    break
                idx[k] = 0
                k -= 1

        qsort(pairs, total, 2 * sizeof(double), _cmp_pair)

        # Same canonicalization as fuzzy.merge_pairs: fold supports within tol
        # of the group's first value, keep max degree, drop zero degrees.
        out_values = []
        out_degrees = []
        n_out = 0
        rep = 0.0
        for combo in range(total):
            value = pairs[2 * combo]
            degree = pairs[2 * combo + 1]
            if n_out > 0 and value - rep <= tol:
                if degree > out_degrees[n_out - 1]:
                    out_degrees[n_out - 1] = degree
            else:
                out_values.append(value)
                out_degrees.append(degree)
                rep = value
                n_out += 1
        values = []
        degs = []
        for i in range(n_out):
            if out_degrees[i] > 0.0:
                values.append(out_values[i])
                degs.append(out_degrees[i])
        return values, degs
    finally:
        free(ccodes); free(cargs); free(cconsts); free(flat_sup); free(flat_deg)
        free(offset); free(size); free(idx); free(stack); free(pairs)
