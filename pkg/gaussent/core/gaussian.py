"""
Gaussian state core: two-mode covariance matrices, the squeezed vacuum,
physicality and purity, Wigner evaluation, and the sum/difference modes.

Convention: hbar = 1, quadratures ordered (x1, p1, x2, p2), vacuum variance 1/2.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from gaussent.core.errors import (
    DomainError,
    NotStandardForm,
    NumericalError,
    SingularCovariance,
    UnphysicalState,
)

logger = logging.getLogger(__name__)

_SYMMETRY_TOL = 1e-9
STANDARD_FORM_TOL = 1e-10
PHYSICALITY_TOL = 1e-9
_PURITY_TOL = 1e-9
_PAIRING_TOL = 1e-9

# (x1, p1, x2, p2) -> (x_S, p_S, x_D, p_D); orthogonal and symplectic
_SUM_DIFF = np.array(
    [
        [1.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 1.0],
        [-1.0, 0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0, 1.0],
    ]
) / math.sqrt(2.0)

# Entries that must vanish in standard form (upper triangle)
_OFF_PATTERN = ((0, 1), (0, 3), (1, 2), (2, 3))


def symplectic_form() -> np.ndarray:
    """The 4x4 symplectic form Omega for (x1, p1, x2, p2) ordering."""
    return np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def _readonly(matrix: np.ndarray) -> np.ndarray:
    matrix.setflags(write=False)
    return matrix


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CovarianceMatrix4:
    """Symmetric 4x4 quadrature variance matrix of a zero-mean two-mode state."""

    entries: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.entries, dtype=float)
        if matrix.shape != (4, 4):
            raise DomainError(f"covariance must be 4x4, got shape {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise DomainError("covariance has non-finite entries")
        scale = max(1.0, float(np.max(np.abs(matrix))))
        asymmetry = float(np.max(np.abs(matrix - matrix.T)))
        if asymmetry > _SYMMETRY_TOL * scale:
            raise DomainError(f"covariance is not symmetric (deviation {asymmetry:.3e})")
        object.__setattr__(self, "entries", _readonly(0.5 * (matrix + matrix.T)))

    def blocks(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Return (A, B, C): mode-1 block, mode-2 block, and the cross block."""
        v = self.entries
        return v[0:2, 0:2].copy(), v[2:4, 2:4].copy(), v[0:2, 2:4].copy()

    def symplectic_spectrum(self) -> tuple[float, float]:
        return symplectic_eigenvalues(self.entries)

    def is_physical(self, tol: float = PHYSICALITY_TOL) -> bool:
        """Uncertainty principle: every symplectic eigenvalue satisfies 2*lambda >= 1 - tol."""
        try:
            low, _ = self.symplectic_spectrum()
        except NumericalError:
            return False
        return 2.0 * low >= 1.0 - tol

    def check_physical(self, tol: float = PHYSICALITY_TOL) -> None:
        if not self.is_physical(tol):
            raise UnphysicalState("covariance violates the uncertainty principle")


@dataclass(frozen=True)
class StandardFormElements:
    """
    The four numbers (n1, n2, c1, c2) of the standard-form covariance

        V = 1/2 * [[n1, 0, c1, 0], [0, n2, 0, c2], [c1, 0, n1, 0], [0, c2, 0, n2]]
    """

    n1: float
    n2: float
    c1: float
    c2: float

    def to_covariance(self) -> CovarianceMatrix4:
        return CovarianceMatrix4(
            0.5
            * np.array(
                [
                    [self.n1, 0.0, self.c1, 0.0],
                    [0.0, self.n2, 0.0, self.c2],
                    [self.c1, 0.0, self.n1, 0.0],
                    [0.0, self.c2, 0.0, self.n2],
                ]
            )
        )


@dataclass(frozen=True)
class SqueezedVacuumParams:
    r: float  # squeezing parameter; sign allowed

    def __post_init__(self):
        if not math.isfinite(self.r):
            raise DomainError(f"squeezing parameter must be finite, got {self.r!r}")


@dataclass(frozen=True, eq=False)
class ModePartition:
    """Covariance blocks in the sum (S) / difference (D) mode basis."""

    sum_block: np.ndarray
    diff_block: np.ndarray
    cross_block: np.ndarray

    def __post_init__(self):
        for name in ("sum_block", "diff_block"):
            block = np.array(getattr(self, name), dtype=float)
            if np.any(np.linalg.eigvalsh(0.5 * (block + block.T)) <= 0):
                raise UnphysicalState(f"{name} is not positive definite")
            object.__setattr__(self, name, _readonly(block))
        object.__setattr__(
            self, "cross_block", _readonly(np.array(self.cross_block, dtype=float))
        )


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def vacuum_covariance() -> CovarianceMatrix4:
    return CovarianceMatrix4(0.5 * np.eye(4))


def thermal_covariance(nbar: float) -> CovarianceMatrix4:
    """Product of two thermal states with mean photon number nbar: (N/2) * I4."""
    if not (math.isfinite(nbar) and nbar >= 0):
        raise DomainError(f"nbar must be finite and >= 0, got {nbar!r}")
    return CovarianceMatrix4(0.5 * (2.0 * nbar + 1.0) * np.eye(4))


def tmsv_covariance(params: SqueezedVacuumParams) -> CovarianceMatrix4:
    """Two-mode squeezed vacuum: n1 = n2 = cosh 2r, c2 = -c1 = sinh 2r."""
    n = math.cosh(2.0 * params.r)
    s = math.sinh(2.0 * params.r)
    return StandardFormElements(n1=n, n2=n, c1=-s, c2=s).to_covariance()


def to_standard_form(
    covariance: CovarianceMatrix4, tol: float = STANDARD_FORM_TOL
) -> StandardFormElements:
    """
    Read (n1, n2, c1, c2) off a covariance that has the standard-form pattern.

    Raises NotStandardForm when an off-pattern entry exceeds tol or the
    diagonal of the two modes differs by more than tol.
    """
    v = covariance.entries
    for i, j in _OFF_PATTERN:
        if abs(v[i, j]) > tol:
            raise NotStandardForm((i, j), abs(float(v[i, j])))
    for i, j in ((0, 2), (1, 3)):
        deviation = abs(float(v[i, i] - v[j, j]))
        if deviation > tol:
            raise NotStandardForm((j, j), deviation)
    return StandardFormElements(
        n1=2.0 * float(v[0, 0]),
        n2=2.0 * float(v[1, 1]),
        c1=2.0 * float(v[0, 2]),
        c2=2.0 * float(v[1, 3]),
    )


# ---------------------------------------------------------------------------
# State functionals
# ---------------------------------------------------------------------------


def symplectic_eigenvalues(matrix: np.ndarray) -> tuple[float, float]:
    """
    Symplectic eigenvalues (ascending) of a 4x4 positive definite matrix: the
    moduli of the eigenvalues of Omega @ matrix, which come in +/- pairs.

    Evaluated on the Hermitian form i V^1/2 Omega V^1/2 (same spectrum) so
    strongly squeezed states keep full accuracy.
    """
    sym = np.asarray(matrix, dtype=float)
    weights, basis = np.linalg.eigh(0.5 * (sym + sym.T))
    if np.any(weights <= 0):
        raise NumericalError("symplectic spectrum needs a positive definite matrix")
    root = (basis * np.sqrt(weights)) @ basis.T
    moduli = np.sort(np.abs(np.linalg.eigvalsh(1j * (root @ symplectic_form() @ root))))
    pairs = ((moduli[0], moduli[1]), (moduli[2], moduli[3]))
    for a, b in pairs:
        if abs(a - b) > _PAIRING_TOL * max(1.0, b):
            raise NumericalError(
                f"symplectic eigenvalues failed to pair: {a:.12g} vs {b:.12g}"
            )
    return float(0.5 * (moduli[0] + moduli[1])), float(0.5 * (moduli[2] + moduli[3]))


def purity(elems: StandardFormElements) -> float:
    """Tr[rho^2] = 1 / sqrt((n1^2 - c1^2)(n2^2 - c2^2))."""
    first = (elems.n1 - abs(elems.c1)) * (elems.n1 + abs(elems.c1))
    second = (elems.n2 - abs(elems.c2)) * (elems.n2 + abs(elems.c2))
    if first <= 0 or second <= 0:
        raise UnphysicalState(
            f"purity radicand is not positive: ({first:.6g}) * ({second:.6g})"
        )
    radicand = first * second
    # n - |c| carries an absolute rounding error of order eps * n
    slack = _PURITY_TOL + 8.0 * np.finfo(float).eps * max(elems.n1, elems.n2) ** 2
    if radicand < 1.0 - slack:
        raise UnphysicalState(f"purity exceeds 1 (radicand {radicand:.12g})")
    return min(1.0, 1.0 / math.sqrt(radicand))


def wigner_density(covariance: CovarianceMatrix4, points) -> float | np.ndarray:
    """
    Gaussian Wigner function (2 pi)^-2 det(V)^-1/2 exp(-X V^-1 X^T / 2).

    points may be a single 4-vector or any array whose last axis has length 4;
    the result has the matching leading shape.
    """
    try:
        chol = np.linalg.cholesky(covariance.entries)
    except np.linalg.LinAlgError as exc:
        raise SingularCovariance("covariance is not positive definite") from exc
    det = float(np.prod(np.diag(chol))) ** 2
    if det <= 0:
        raise SingularCovariance(f"covariance determinant is {det:.3e}")

    x = np.asarray(points, dtype=float)
    if x.shape[-1:] != (4,):
        raise DomainError(f"phase-space points need a trailing axis of 4, got {x.shape}")
    inverse = np.linalg.inv(covariance.entries)
    exponent = np.einsum("...i,ij,...j->...", x, inverse, x)
    density = np.exp(-0.5 * exponent) / (4.0 * math.pi**2 * math.sqrt(det))
    if density.ndim == 0:
        return float(density)
    return density


def sum_diff_decompose(covariance: CovarianceMatrix4) -> ModePartition:
    """
    Rotate to x_S = (x1 + x2)/sqrt2, x_D = (x2 - x1)/sqrt2 (same for p) and
    split the result into the S block, the D block and the S-D cross block.
    """
    rotated = _SUM_DIFF @ covariance.entries @ _SUM_DIFF.T
    return ModePartition(
        sum_block=rotated[0:2, 0:2],
        diff_block=rotated[2:4, 2:4],
        cross_block=rotated[0:2, 2:4],
    )


def mode_purities(partition: ModePartition) -> tuple[float, float]:
    """Single-mode purities 1 / (2 sqrt(det)) of the S and D modes."""
    return (
        1.0 / (2.0 * math.sqrt(float(np.linalg.det(partition.sum_block)))),
        1.0 / (2.0 * math.sqrt(float(np.linalg.det(partition.diff_block)))),
    )
