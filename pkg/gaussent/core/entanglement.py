"""
Entanglement tests for two-mode Gaussian states: the Simon (PPT) criterion in
full and reduced form, symplectic spectra, and the logarithmic negativity.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from gaussent.core.errors import DomainError, UnphysicalState
from gaussent.core.gaussian import (
    CovarianceMatrix4,
    StandardFormElements,
    symplectic_eigenvalues,
)

logger = logging.getLogger(__name__)

_J = np.array([[0.0, 1.0], [-1.0, 0.0]])

# Mirror reflection p2 -> -p2
_PARTIAL_TRANSPOSE = np.diag([1.0, 1.0, 1.0, -1.0])

SIGN_BAND = 1e-12


@dataclass(frozen=True)
class SymplecticSpectrum:
    lambda1: float  # smaller eigenvalue
    lambda2: float

    def __post_init__(self):
        if not (self.lambda1 > 0 and self.lambda2 > 0):
            raise DomainError(
                f"symplectic eigenvalues must be positive, got ({self.lambda1}, {self.lambda2})"
            )
        if self.lambda1 > self.lambda2:
            raise DomainError("symplectic spectrum must be sorted ascending")

    @classmethod
    def from_pair(cls, a: float, b: float) -> "SymplecticSpectrum":
        low, high = sorted((a, b))
        return cls(lambda1=low, lambda2=high)


@dataclass(frozen=True)
class SeparabilityVerdict:
    simon_value: float
    entangled: bool


# ---------------------------------------------------------------------------
# Simon criterion
# ---------------------------------------------------------------------------


def simon_full(covariance: CovarianceMatrix4) -> float:
    """
    Left-hand side of the Simon inequality

        det A det B + (1/4 - |det C|)^2 - Tr[A J C J B J C^T J] - (det A + det B)/4

    Negative means entangled; zero is the separable boundary.
    """
    a, b, c = covariance.blocks()
    det_a = float(np.linalg.det(a))
    det_b = float(np.linalg.det(b))
    det_c = float(np.linalg.det(c))
    trace_term = float(np.trace(a @ _J @ c @ _J @ b @ _J @ c.T @ _J))
    return det_a * det_b + (0.25 - abs(det_c)) ** 2 - trace_term - 0.25 * (det_a + det_b)


def simon_reduced(elems: StandardFormElements) -> SeparabilityVerdict:
    """Sign-equivalent criterion for standard-form states: (n1-|c1|)(n2-|c2|) - 1."""
    value = (elems.n1 - abs(elems.c1)) * (elems.n2 - abs(elems.c2)) - 1.0
    return SeparabilityVerdict(simon_value=value, entangled=value < 0)


def criterion_sign(value: float, scale: float = 1.0, band: float = SIGN_BAND) -> int:
    """Sign of a criterion value, with |value| < band * max(1, scale) read as zero."""
    if abs(value) < band * max(1.0, scale):
        return 0
    return 1 if value > 0 else -1


# ---------------------------------------------------------------------------
# Symplectic spectra
# ---------------------------------------------------------------------------


def symplectic_spectrum_pt(elems: StandardFormElements) -> SymplecticSpectrum:
    """
    Closed-form spectrum of the partially transposed standard-form state:
    1/2 sqrt((n1 - c1)(n2 + c2)) and 1/2 sqrt((n1 + c1)(n2 - c2)), sorted.
    """
    first = (elems.n1 - elems.c1) * (elems.n2 + elems.c2)
    second = (elems.n1 + elems.c1) * (elems.n2 - elems.c2)
    if first <= 0 or second <= 0:
        raise UnphysicalState(
            f"partial-transpose spectrum radicand is not positive: {first:.6g}, {second:.6g}"
        )
    return SymplecticSpectrum.from_pair(0.5 * math.sqrt(first), 0.5 * math.sqrt(second))


def symplectic_spectrum_general(
    covariance: CovarianceMatrix4, partial_transpose: bool
) -> SymplecticSpectrum:
    """Numerical spectrum of V (or of its partial transpose) from Omega @ V."""
    matrix = covariance.entries
    if partial_transpose:
        matrix = _PARTIAL_TRANSPOSE @ matrix @ _PARTIAL_TRANSPOSE
    low, high = symplectic_eigenvalues(matrix)
    return SymplecticSpectrum(lambda1=low, lambda2=high)


# ---------------------------------------------------------------------------
# Logarithmic negativity
# ---------------------------------------------------------------------------


def negativity_kernel(lam: float) -> float:
    """F(lambda): 0 for 2 lambda >= 1, otherwise -log2(2 lambda)."""
    if not (math.isfinite(lam) and lam > 0):
        raise DomainError(f"symplectic eigenvalue must be positive and finite, got {lam!r}")
    if 2.0 * lam >= 1.0:
        return 0.0
    return -math.log2(2.0 * lam)


def _negativity(spectrum: SymplecticSpectrum) -> float:
    return negativity_kernel(spectrum.lambda1) + negativity_kernel(spectrum.lambda2)


def log_negativity(elems: StandardFormElements) -> float:
    return _negativity(symplectic_spectrum_pt(elems))


def log_negativity_general(covariance: CovarianceMatrix4) -> float:
    """Logarithmic negativity of any two-mode covariance, standard form or not."""
    return _negativity(symplectic_spectrum_general(covariance, partial_transpose=True))


def entanglement_margin(elems: StandardFormElements) -> float:
    """2 * min(partial-transpose spectrum) - 1; negative exactly when entangled."""
    return 2.0 * symplectic_spectrum_pt(elems).lambda1 - 1.0
