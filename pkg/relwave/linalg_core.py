"""
Complex matrices and the real-linear operator calculus.

A real-linear operator acts as x -> A x + B conj(x). Linear operators have
B = 0, antilinear ones (anything carrying a complex conjugation C) have A = 0,
and operators such as U of the Maxwell-Dirac map mix both.
"""
import logging
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)

DEFAULT_RTOL = 1e-12


def as_complex_matrix(entries, name: str = "matrix") -> np.ndarray:
    """
    Validate and freeze a complex matrix.

    Args:
        entries: Anything numpy can turn into a 2D array
        name: Used in error messages

    Returns:
        Read-only complex128 array
    """
    matrix = np.array(entries, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] == 0 or matrix.shape[1] == 0:
        raise ValueError(f"{name} must be a non-empty 2D array, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError(f"{name} contains NaN or Inf entries")
    matrix.setflags(write=False)
    return matrix


def frobenius(matrix: np.ndarray) -> float:
    return float(np.linalg.norm(matrix))


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


@dataclass(frozen=True)
class RealLinearOperator:
    """Operator x -> A x + B conj(x) on C^n"""
    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        a = as_complex_matrix(self.A, "linear part A")
        b = as_complex_matrix(self.B, "antilinear part B")
        if a.shape[0] != a.shape[1]:
            raise ValueError(f"Operator must be square, got A with shape {a.shape}")
        if a.shape != b.shape:
            raise ValueError(f"A and B shapes differ: {a.shape} vs {b.shape}")
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)

    @classmethod
    def linear(cls, matrix) -> "RealLinearOperator":
        a = as_complex_matrix(matrix)
        return cls(a, np.zeros_like(a))

    @classmethod
    def antilinear(cls, matrix) -> "RealLinearOperator":
        """The operator M C, i.e. x -> M conj(x)"""
        b = as_complex_matrix(matrix)
        return cls(np.zeros_like(b), b)

    @classmethod
    def identity(cls, dim: int) -> "RealLinearOperator":
        return cls.linear(np.eye(dim))

    @classmethod
    def conjugation(cls, dim: int) -> "RealLinearOperator":
        return cls.antilinear(np.eye(dim))

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    @property
    def is_linear(self) -> bool:
        return not np.any(self.B)

    @property
    def is_antilinear(self) -> bool:
        return not np.any(self.A)

    def scaled(self, factor: complex) -> "RealLinearOperator":
        """Multiply the output by a complex number: x -> factor * op(x)"""
        return RealLinearOperator(factor * self.A, factor * self.B)

    def __add__(self, other: "RealLinearOperator") -> "RealLinearOperator":
        _check_same_dim(self, other)
        return RealLinearOperator(self.A + other.A, self.B + other.B)

    def __sub__(self, other: "RealLinearOperator") -> "RealLinearOperator":
        _check_same_dim(self, other)
        return RealLinearOperator(self.A - other.A, self.B - other.B)

    def __neg__(self) -> "RealLinearOperator":
        return self.scaled(-1.0)

    def __call__(self, x, axis: int = -1) -> np.ndarray:
        return rl_apply(self, x, axis=axis)

    def norm(self) -> float:
        """Frobenius norm of the (A, B) pair"""
        return float(np.sqrt(frobenius(self.A) ** 2 + frobenius(self.B) ** 2))


def _check_same_dim(first: RealLinearOperator, second: RealLinearOperator):
    if first.dim != second.dim:
        raise ValueError(f"Dimension mismatch: {first.dim} vs {second.dim}")


def rl_apply(op: RealLinearOperator, x, axis: int = -1) -> np.ndarray:
    """
    Apply a real-linear operator to a vector or to a batch of vectors.

    Args:
        op: Operator (A, B)
        x: Complex array whose `axis` has length op.dim
        axis: Axis holding the vector components

    Returns:
        A x + B conj(x), same shape as x
    """
    x = np.asarray(x, dtype=np.complex128)
    if x.ndim == 0 or x.shape[axis] != op.dim:
        raise ValueError(f"Vector dimension {x.shape} does not match operator dimension {op.dim}")
    moved = np.moveaxis(x, axis, -1)
    result = moved @ op.A.T + np.conj(moved) @ op.B.T
    return np.moveaxis(result, -1, axis)


def rl_compose(first_applied: RealLinearOperator, second_applied: RealLinearOperator) -> RealLinearOperator:
    """
    Return second_applied o first_applied.

    With first = (A2, B2) and second = (A1, B1) the result is
    (A1 A2 + B1 conj(B2), A1 B2 + B1 conj(A2)).
    """
    _check_same_dim(first_applied, second_applied)
    a2, b2 = first_applied.A, first_applied.B
    a1, b1 = second_applied.A, second_applied.B
    return RealLinearOperator(a1 @ a2 + b1 @ np.conj(b2), a1 @ b2 + b1 @ np.conj(a2))


def rl_chain(*ops: RealLinearOperator) -> RealLinearOperator:
    """Compose right to left, like written operator products: rl_chain(X, Y, Z) = X o Y o Z"""
    if not ops:
        raise ValueError("rl_chain needs at least one operator")
    result = ops[-1]
    for op in reversed(ops[:-1]):
        result = rl_compose(result, op)
    return result


def rl_adjoint(op: RealLinearOperator) -> RealLinearOperator:
    """Adjoint with respect to Re<x, y>: (A^dagger, B^T). For M C this is M^T C = C M^dagger."""
    return RealLinearOperator(op.A.conj().T, op.B.T)


def rl_distance(first: RealLinearOperator, second: RealLinearOperator) -> float:
    return (first - second).norm()


def rl_is_unitary(op: RealLinearOperator, tol: float = DEFAULT_RTOL) -> bool:
    """True iff op o op^dagger and op^dagger o op are both the identity within tol (Frobenius)"""
    if not tol > 0:
        raise ValueError(f"Tolerance must be positive, got {tol}")
    identity = RealLinearOperator.identity(op.dim)
    adjoint = rl_adjoint(op)
    left = rl_distance(rl_compose(adjoint, op), identity)
    right = rl_distance(rl_compose(op, adjoint), identity)
    logger.debug(f"Unitarity residuals {left:.3e}, {right:.3e}")
    return left <= tol and right <= tol


def block_diag(*blocks) -> np.ndarray:
    """Block diagonal complex matrix from square blocks"""
    size = sum(np.shape(block)[0] for block in blocks)
    result = np.zeros((size, size), dtype=np.complex128)
    offset = 0
    for block in blocks:
        block = np.asarray(block, dtype=np.complex128)
        n = block.shape[0]
        result[offset:offset + n, offset:offset + n] = block
        offset += n
    return result
