"""
The 4x4 three-parameter chain Hamiltonian and its secular quartic.

The Hamiltonian has the equidistant diagonal (-3, -1, 1, 3) and the
antisymmetric off-diagonal couplings (b, a, c), where the upper coupling
b = sqrt(c^2 + f^2) carries the asymmetry f. Its secular determinant
det(H - E) reduces to

    Y(E) = E^4 - A E^2 - 4 f^2 E + C

with A = 10 - a^2 - 2c^2 - f^2 and C given by several equivalent printed
forms which are cross-checked on every evaluation.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

logger = logging.getLogger(__name__)

DIAGONAL = (-3.0, -1.0, 1.0, 3.0)

# Forms (i), (iii) and (iv) must agree with form (ii) to this relative tolerance.
C_FORM_ASSERT_TOL = 1e-9


class InvalidCouplingError(ValueError):
    """Raised when a coupling triple contains a non-finite value."""
    pass


class SecularConsistencyError(RuntimeError):
    """Raised when the printed forms of C disagree (an implementation bug)."""

    def __init__(self, message: str, forms: Dict[str, float]):
        super().__init__(message)
        self.forms = forms


@dataclass(frozen=True)
class Couplings:
    """Coupling triple (a, c, f), canonicalized to the positive octant.

    The secular coefficients depend on a^2, c^2 and f^2 only, so negative
    inputs are replaced by their absolute values at construction.
    """
    a: float
    c: float
    f: float

    def __post_init__(self):
        for name in ("a", "c", "f"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise InvalidCouplingError(
                    f"Invalid coupling {name}={value!r}. Must be finite"
                )
            object.__setattr__(self, name, abs(value))

    @property
    def b(self) -> float:
        """Upper coupling b = sqrt(c^2 + f^2)."""
        return math.hypot(self.c, self.f)

    def with_f(self, f: float) -> "Couplings":
        """Return the same (a, c) with a different asymmetry."""
        return Couplings(self.a, self.c, f)

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.a, self.c, self.f)


@dataclass(frozen=True)
class Matrix4:
    """Real 4x4 matrix held as a read-only numpy array."""
    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=float)
        if arr.shape != (4, 4):
            raise ValueError(f"Invalid matrix shape {arr.shape}. Must be (4, 4)")
        if not np.all(np.isfinite(arr)):
            raise InvalidCouplingError("Matrix entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def trace(self) -> float:
        return float(np.trace(self.entries))

    def determinant(self) -> float:
        return float(np.linalg.det(self.entries))


@dataclass(frozen=True)
class SecularQuartic:
    """Coefficients of E^4 - A E^2 - 4 f2 E + C."""
    A: float
    C: float
    f2: float

    def __post_init__(self):
        for name in ("A", "C", "f2"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidCouplingError(f"Quartic coefficient {name} must be finite")
        if self.f2 < 0:
            raise ValueError(f"Invalid f2: {self.f2}. Must be >= 0")


def build_hamiltonian(couplings: Couplings) -> Matrix4:
    """Build the chain Hamiltonian for the given couplings.

    Diagonal (-3, -1, 1, 3), superdiagonal (b, a, c), subdiagonal
    (-b, -a, -c).
    """
    b = couplings.b
    upper = (b, couplings.a, couplings.c)
    h = np.diag(DIAGONAL)
    for k, value in enumerate(upper):
        h[k, k + 1] = value
        h[k + 1, k] = -value
    return Matrix4(h)


def c_forms(couplings: Couplings) -> Dict[str, float]:
    """Evaluate every printed form of C for inspection and cross-checks."""
    a2 = couplings.a ** 2
    c2 = couplings.c ** 2
    f2 = couplings.f ** 2
    A = 10.0 - a2 - 2.0 * c2 - f2
    return {
        "expanded": 9.0 + 6.0 * c2 - 9.0 * a2 + 3.0 * f2 + c2 * c2 + f2 * c2,
        "compact": (3.0 + c2) ** 2 + f2 * (3.0 + c2) - 9.0 * a2,
        "completed_square": (3.0 + c2 + f2 / 2.0) ** 2 - (9.0 * a2 + f2 * f2 / 4.0),
        "in_terms_of_A": (8.0 - A / 2.0 - a2 / 2.0) ** 2 - (9.0 * a2 + f2 * f2 / 4.0),
    }


def secular_quartic(couplings: Couplings) -> SecularQuartic:
    """Return (A, C, f^2) for the couplings.

    C is taken from the compact form; the remaining printed forms are
    asserted against it.
    """
    a2 = couplings.a ** 2
    c2 = couplings.c ** 2
    f2 = couplings.f ** 2
    A = 10.0 - a2 - 2.0 * c2 - f2

    forms = c_forms(couplings)
    C = forms["compact"]
    limit = C_FORM_ASSERT_TOL * (1.0 + abs(C))
    for name, value in forms.items():
        if abs(value - C) > limit:
            logger.error("C forms disagree for %s: %s", couplings, forms)
            raise SecularConsistencyError(
                f"C form '{name}' = {value!r} differs from compact form {C!r}",
                forms,
            )
    return SecularQuartic(A=A, C=C, f2=f2)


def eval_secular(q: SecularQuartic, E: float) -> float:
    """Evaluate Y(E) = E^4 - A E^2 - 4 f2 E + C in Horner form."""
    return ((E * E - q.A) * E - 4.0 * q.f2) * E + q.C


def characteristic_coefficients(q: SecularQuartic) -> Tuple[float, float, float, float, float]:
    """Coefficients of Y(E), highest degree first."""
    return (1.0, 0.0, -q.A, -4.0 * q.f2, q.C)


def hamiltonian_stack(a: np.ndarray, c: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Vectorized build_hamiltonian: an (N, 4, 4) stack for coupling arrays."""
    a = np.abs(np.asarray(a, dtype=float))
    c = np.abs(np.asarray(c, dtype=float))
    f = np.abs(np.asarray(f, dtype=float))
    a, c, f = np.broadcast_arrays(a, c, f)
    n = a.size
    b = np.hypot(c, f).ravel()
    h = np.zeros((n, 4, 4))
    h[:, range(4), range(4)] = DIAGONAL
    for k, values in enumerate((b, a.ravel(), c.ravel())):
        h[:, k, k + 1] = values
        h[:, k + 1, k] = -values
    return h


def secular_arrays(a: np.ndarray, c: np.ndarray, f: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized (A, C, f^2) from the compact printed forms."""
    a2 = np.asarray(a, dtype=float) ** 2
    c2 = np.asarray(c, dtype=float) ** 2
    f2 = np.asarray(f, dtype=float) ** 2
    A = 10.0 - a2 - 2.0 * c2 - f2
    C = (3.0 + c2) ** 2 + f2 * (3.0 + c2) - 9.0 * a2
    return np.broadcast_arrays(A, C, f2)
