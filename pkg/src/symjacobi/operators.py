"""Spectral multipliers and derivative-type operators on coefficient vectors.

Every operator here is exact on band-limited expansions: potentials and
semigroups multiply coefficients by a symbol of the eigenvalue, the ladder
and Dunkl-type derivatives move coefficients between neighboring indices
with closed-form constants. Finite-difference helpers at the bottom provide
the independent pointwise route used to validate the spectral one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .basis import HalfLineExpansion, SymmExpansion, to_halfline
from .core import JacobiParams
from .errors import DomainError, UnsupportedParametersError

__all__ = [
    "SpectralMultiplier",
    "LadderCoefficients",
    "apply_multiplier",
    "riesz_potential",
    "bessel_potential",
    "modified_riesz_potential",
    "poisson_semigroup",
    "poisson_time_derivative",
    "schrodinger_propagator",
    "ladder_down",
    "ladder_up",
    "dunkl_derivative",
    "var_index_derivative",
    "symm_higher_derivative",
    "riesz_transform",
    "riesz_transform_shifted",
    "FD_STEP",
    "FD_MARGIN",
    "fd_derivative",
    "apply_ladder_down_fd",
    "apply_ladder_up_fd",
    "apply_dunkl_fd",
]


@dataclass(frozen=True)
class SpectralMultiplier:
    """Symbol acting coefficient-wise through the eigenvalue of each index."""

    description: str
    symbol: Callable[[np.ndarray], np.ndarray]

    def symbol_table(self, eigenvalues: np.ndarray) -> np.ndarray:
        table = np.asarray(self.symbol(np.asarray(eigenvalues, dtype=float)))
        if not np.all(np.isfinite(table)):
            raise UnsupportedParametersError(
                f"multiplier {self.description!r} is not finite on the given spectrum"
            )
        return table


def apply_multiplier(m: SpectralMultiplier, e):
    """Multiply coefficients by the symbol at each index's eigenvalue."""
    table = m.symbol_table(e.eigenvalues())
    if isinstance(e, SymmExpansion):
        return SymmExpansion(e.params, e.coeffs * table)
    if isinstance(e, HalfLineExpansion):
        return HalfLineExpansion(e.params, e.coeffs * table, e.parity)
    raise DomainError("multipliers act on symmetrized or half-line expansions")


def _require_positive(value: float, name: str) -> None:
    if not value > 0:
        raise DomainError(f"{name} must be positive, got {value}")


def _has_zero_bottom(params: JacobiParams) -> bool:
    return params.eigen_shift == 0.0


def riesz_potential(e: SymmExpansion, sigma: float) -> SymmExpansion:
    """Negative power of the operator; rejects a zero bottom eigenvalue."""
    _require_positive(sigma, "sigma")
    if _has_zero_bottom(e.params):
        raise UnsupportedParametersError(
            "negative powers are undefined when the bottom eigenvalue is 0 "
            f"(alpha + beta = -1 at {e.params.label()}); use the shifted form"
        )
    m = SpectralMultiplier(f"eigenvalue^(-{sigma:g})", lambda lam: lam ** (-sigma))
    return apply_multiplier(m, e)


def bessel_potential(e: SymmExpansion, sigma: float) -> SymmExpansion:
    """Negative power of (1 + operator); defined for every parameter pair."""
    _require_positive(sigma, "sigma")
    m = SpectralMultiplier(f"(1+eigenvalue)^(-{sigma:g})", lambda lam: (1.0 + lam) ** (-sigma))
    return apply_multiplier(m, e)


def modified_riesz_potential(e: SymmExpansion, s: float) -> SymmExpansion:
    """Negative power of (1 + sqrt(operator)); defined for every pair."""
    _require_positive(s, "s")
    m = SpectralMultiplier(
        f"(1+sqrt(eigenvalue))^(-{s:g})", lambda lam: (1.0 + np.sqrt(lam)) ** (-s)
    )
    return apply_multiplier(m, e)


def poisson_semigroup(e: SymmExpansion, t: float) -> SymmExpansion:
    """Subordinated heat flow exp(-t sqrt(operator))."""
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t}")
    m = SpectralMultiplier(f"exp(-{t:g} sqrt(eigenvalue))", lambda lam: np.exp(-t * np.sqrt(lam)))
    return apply_multiplier(m, e)


def poisson_time_derivative(e: SymmExpansion, t: float, k: int) -> SymmExpansion:
    """k-th time derivative of the flow, each order contributing -sqrt(eigenvalue)."""
    if k < 0:
        raise DomainError(f"derivative order must be nonnegative, got {k}")
    if k == 0:
        return poisson_semigroup(e, t)
    _require_positive(t, "time")
    m = SpectralMultiplier(
        f"(-sqrt(eigenvalue))^{k} exp(-{t:g} sqrt(eigenvalue))",
        lambda lam: (-np.sqrt(lam)) ** k * np.exp(-t * np.sqrt(lam)),
    )
    return apply_multiplier(m, e)


def schrodinger_propagator(e: SymmExpansion, t: float) -> SymmExpansion:
    """Unitary propagator exp(i t operator); coefficients become complex."""
    m = SpectralMultiplier(f"exp(i {t:g} eigenvalue)", lambda lam: np.exp(1j * t * lam))
    return apply_multiplier(m, e)


@dataclass(frozen=True)
class LadderCoefficients:
    """Index-lowering constants sqrt(n (n + alpha + beta + 1)), with entry 0 at 0."""

    params: JacobiParams

    def entry(self, n: int) -> float:
        if n < 0:
            raise DomainError(f"ladder index must be nonnegative, got {n}")
        s = self.params.alpha + self.params.beta + 1.0
        return math.sqrt(n * (n + s))

    def table(self, count: int) -> np.ndarray:
        n = np.arange(count, dtype=float)
        s = self.params.alpha + self.params.beta + 1.0
        return np.sqrt(n * (n + s))


def ladder_down(h: HalfLineExpansion) -> HalfLineExpansion:
    """First-order lowering operator: index n feeds index n-1 of the shifted pair.

    Index 0 is annihilated. The output's extension parity is flipped.
    """
    return var_index_derivative(h, 1)


def ladder_up(h: HalfLineExpansion) -> HalfLineExpansion:
    """Adjoint-type raising operator: index n feeds index n+1 of the unshifted pair.

    The constants are those of the target parameter pair, which must itself
    be valid (alpha, beta > 0 on the input side). Parity flips.
    """
    target = h.params.shift(-1)
    d = LadderCoefficients(target).table(len(h) + 1)
    out = np.zeros(len(h) + 1, dtype=h.coeffs.dtype)
    out[1:] = -d[1:] * h.coeffs
    parity = "odd" if h.parity == "even" else "even"
    return HalfLineExpansion(target, out, parity)


def dunkl_derivative(e: SymmExpansion) -> SymmExpansion:
    """First-order derivative of Dunkl type in coefficient space.

    Even-slot coefficients move down one index, odd-slot coefficients move up
    one, with ladder constants; the result stays in the same symmetrized
    basis, parities exchanged slotwise.
    """
    b = e.coeffs
    n_in = b.size
    out_len = n_in + 1 if n_in % 2 == 0 else n_in
    out = np.zeros(out_len, dtype=b.dtype)
    d = LadderCoefficients(e.params).table(n_in // 2 + 2)
    even_idx = np.arange(2, n_in, 2)
    if even_idx.size:
        out[even_idx - 1] = -d[even_idx // 2] * b[even_idx]
    odd_idx = np.arange(1, n_in, 2)
    if odd_idx.size:
        out[odd_idx + 1] = d[(odd_idx - 1) // 2 + 1] * b[odd_idx]
    return SymmExpansion(e.params, out)


def var_index_derivative(h: HalfLineExpansion, k: int) -> HalfLineExpansion:
    """k-fold lowering with the parameter pair advancing at every step.

    Coefficient a_n lands on index n-k carrying (-1)^k times the product of
    the step constants; indices below k are annihilated. Parity flips k
    times. k = 0 is the identity.
    """
    if k < 0:
        raise DomainError(f"derivative order must be nonnegative, got {k}")
    if k == 0:
        return h
    n_in = len(h)
    out_len = max(n_in - k, 1)
    out = np.zeros(out_len, dtype=h.coeffs.dtype)
    if n_in > k:
        n = np.arange(k, n_in, dtype=float)
        s = h.params.alpha + h.params.beta + 1.0
        factor = np.ones(n.size)
        for j in range(k):
            m = n - j
            factor *= np.sqrt(m * (m + s + 2 * j))
        out[:] = (-1.0) ** k * factor * h.coeffs[k:]
    flips = k % 2
    parity = h.parity if flips == 0 else ("odd" if h.parity == "even" else "even")
    return HalfLineExpansion(h.params.shift(k), out, parity)


def symm_higher_derivative(
    e: SymmExpansion, k: int, twisted: bool = False
) -> tuple[HalfLineExpansion, HalfLineExpansion]:
    """Order-k derivative acting through the parity split.

    The even part is lowered k times starting from the base pair, the odd
    part k times starting from the shifted pair. For odd k the outputs'
    extension parities are swapped relative to their origins; the twisted
    variant multiplies by sign(theta)^k, swapping them back so the pair
    recombines into a symmetrized expansion over the k-shifted parameters.
    """
    ev, od = to_halfline(e)
    dev = var_index_derivative(ev, k)
    dod = var_index_derivative(od, k)
    if twisted and k % 2 == 1:
        dev = replace(dev, parity="even")
        dod = replace(dod, parity="odd")
    return dev, dod


def _inverse_root_symbol(params: JacobiParams, k: int) -> SpectralMultiplier:
    # negative half-power of the operator, shifted when the bottom eigenvalue is 0
    if _has_zero_bottom(params):
        return SpectralMultiplier(
            f"(1+eigenvalue)^(-{k}/2)", lambda lam: (1.0 + lam) ** (-k / 2)
        )
    return SpectralMultiplier(f"eigenvalue^(-{k}/2)", lambda lam: lam ** (-k / 2))


def riesz_transform(e: SymmExpansion, k: int) -> SymmExpansion:
    """k-th power of the Dunkl derivative against the matching potential.

    When the bottom eigenvalue is 0 the potential silently takes the shifted
    form, mirroring the case split of the underlying operator family.
    """
    if k < 1:
        raise DomainError(f"transform order must be at least 1, got {k}")
    out = apply_multiplier(_inverse_root_symbol(e.params, k), e)
    for _ in range(k):
        out = dunkl_derivative(out)
    return out


def riesz_transform_shifted(
    e: SymmExpansion, k: int, twisted: bool = False
) -> tuple[HalfLineExpansion, HalfLineExpansion]:
    """Variable-index derivative of order k against the matching potential."""
    if k < 1:
        raise DomainError(f"transform order must be at least 1, got {k}")
    out = apply_multiplier(_inverse_root_symbol(e.params, k), e)
    return symm_higher_derivative(out, k, twisted=twisted)


# --- finite-difference validation path ---

FD_STEP = 1e-4 * math.pi
FD_MARGIN = 10 * FD_STEP


def _check_margin(theta: np.ndarray) -> None:
    dist = np.minimum(np.abs(theta), math.pi - np.abs(theta))
    if np.any(dist <= FD_MARGIN):
        raise DomainError(
            f"finite differences need distance > {FD_MARGIN:.3e} from 0 and the endpoints"
        )


def fd_derivative(f, theta) -> np.ndarray:
    """First derivative by the central 5-point stencil, away from singular points."""
    th = np.atleast_1d(np.asarray(theta, dtype=float))
    _check_margin(th)
    h = FD_STEP
    return (
        -np.asarray(f(th + 2 * h))
        + 8 * np.asarray(f(th + h))
        - 8 * np.asarray(f(th - h))
        + np.asarray(f(th - 2 * h))
    ) / (12 * h)


def _coefficient_terms(params: JacobiParams, theta: np.ndarray) -> np.ndarray:
    half = theta / 2
    return (
        -(2 * params.alpha + 1) / 4 / np.tan(half)
        + (2 * params.beta + 1) / 4 * np.tan(half)
    )


def apply_ladder_down_fd(params: JacobiParams, f, theta) -> np.ndarray:
    """Pointwise first-order lowering operator of the given pair: f' plus
    cotangent/tangent terms."""
    th = np.atleast_1d(np.asarray(theta, dtype=float))
    return fd_derivative(f, th) + _coefficient_terms(params, th) * np.asarray(f(th))


def apply_ladder_up_fd(params: JacobiParams, f, theta) -> np.ndarray:
    """Pointwise raising operator: the lowering expression minus twice f'."""
    th = np.atleast_1d(np.asarray(theta, dtype=float))
    return -fd_derivative(f, th) + _coefficient_terms(params, th) * np.asarray(f(th))


def apply_dunkl_fd(params: JacobiParams, f, theta) -> np.ndarray:
    """Pointwise Dunkl-type derivative: lowering on the even part, minus
    raising on the odd part."""
    th = np.atleast_1d(np.asarray(theta, dtype=float))

    def f_even(t):
        return (np.asarray(f(t)) + np.asarray(f(-t))) / 2

    def f_odd(t):
        return (np.asarray(f(t)) - np.asarray(f(-t))) / 2

    return apply_ladder_down_fd(params, f_even, th) - apply_ladder_up_fd(params, f_odd, th)
