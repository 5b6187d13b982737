"""Ground-state energy, coherence and concurrence of the dissipative two-level system.

With x = delta/omega_c and p = alpha/(1 - alpha) the renormalized energy is

    0 <= alpha < 1/2, 1/2 < alpha < 1:
        E = C/(1 - 2 alpha) * [delta x^p - delta^2/omega_c]
    alpha = 1/2:
        E = 2 C (delta^2/omega_c) log(omega_c/delta)
    |alpha - 1| <= kt_window, overlay only:
        E = C [delta^2/omega_c - C' omega_c exp(-C'' omega_c/delta)]
    alpha >= 1:
        E = C delta^2/omega_c

<sigma_x> = dE/d(delta) is evaluated in closed form, <sigma_z> = 0 without a
symmetry-breaking field, and the concurrence is |<sigma_x>|.
"""

import logging
import math
from typing import Tuple

from entanglement_engine.errors import DomainError, InputError
from entanglement_engine.models import AlphaDerivative, TLSBranch, TLSModel, TLSResult

logger = logging.getLogger(__name__)

HALF = 0.5

# |q log x| below this uses the expm1 forms around alpha = 1/2
_EXPM1_WINDOW = 0.5


def branch_for(model: TLSModel) -> TLSBranch:
    """Energy regime selected by alpha."""
    alpha = model.alpha
    if model.kt_overlay and abs(alpha - 1.0) <= model.kt_window:
        return TLSBranch.KOSTERLITZ_THOULESS
    if alpha == HALF:
        return TLSBranch.HALF
    if alpha < HALF:
        return TLSBranch.WEAK
    if alpha < 1.0:
        return TLSBranch.INTERMEDIATE
    return TLSBranch.LOCALIZED


def branch_boundaries(model: TLSModel) -> Tuple[float, ...]:
    """Alpha values where the energy switches formula."""
    if model.kt_overlay:
        return (HALF, 1.0 - model.kt_window, 1.0 + model.kt_window)
    return (HALF, 1.0)


def _power_law_energy(model: TLSModel) -> float:
    """Weak and intermediate branches, written with expm1 so alpha -> 1/2 stays accurate."""
    x = model.ratio
    q = (2.0 * model.alpha - 1.0) / (1.0 - model.alpha)  # p - 1
    return model.c0 / (1.0 - 2.0 * model.alpha) * model.delta * x * math.expm1(q * math.log(x))


def _power_law_sigma_x(model: TLSModel) -> float:
    x = model.ratio
    alpha = model.alpha
    q = (2.0 * alpha - 1.0) / (1.0 - alpha)
    one_plus_p = 1.0 / (1.0 - alpha)
    exponent = q * math.log(x)
    if abs(exponent) < _EXPM1_WINDOW:
        bracket = one_plus_p * math.expm1(exponent) + q
    else:
        bracket = one_plus_p * math.exp(exponent) - 2.0
    return model.c0 * x * bracket / (1.0 - 2.0 * alpha)


def _kt_terms(model: TLSModel) -> Tuple[float, float]:
    """(energy, sigma_x) of the KT overlay branch."""
    x = model.ratio
    decay = math.exp(-model.c2 / x)
    energy = model.c0 * (model.delta * x - model.c1 * model.omega_c * decay)
    sigma_x = model.c0 * (2.0 * x - model.c1 * model.c2 * decay / (x * x))
    return energy, sigma_x


def tls_energy(model: TLSModel) -> Tuple[float, TLSBranch]:
    """Ground-state energy and the branch that produced it."""
    branch = branch_for(model)
    if model.delta == 0.0:
        return 0.0, branch

    x = model.ratio
    if branch is TLSBranch.HALF:
        energy = 2.0 * model.c0 * model.delta * x * math.log(1.0 / x)
    elif branch in (TLSBranch.WEAK, TLSBranch.INTERMEDIATE):
        energy = _power_law_energy(model)
    elif branch is TLSBranch.KOSTERLITZ_THOULESS:
        energy, _ = _kt_terms(model)
    else:
        energy = model.c0 * model.delta * x
    return energy, branch


def sigma_x(model: TLSModel) -> float:
    """<sigma_x> = dE/d(delta) of the active branch."""
    if model.delta == 0.0:
        return 0.0

    x = model.ratio
    branch = branch_for(model)
    if branch is TLSBranch.HALF:
        return 2.0 * model.c0 * x * (2.0 * math.log(1.0 / x) - 1.0)
    if branch in (TLSBranch.WEAK, TLSBranch.INTERMEDIATE):
        return _power_law_sigma_x(model)
    if branch is TLSBranch.KOSTERLITZ_THOULESS:
        _, value = _kt_terms(model)
        return value
    return 2.0 * model.c0 * x


def tls_concurrence(model: TLSModel) -> TLSResult:
    """Energy, coherence and concurrence sqrt(<sigma_z>^2 + <sigma_x>^2) with <sigma_z> = 0."""
    energy, branch = tls_energy(model)
    sx = sigma_x(model)
    sz = 0.0
    return TLSResult(
        energy=energy,
        sigma_x=sx,
        sigma_z=sz,
        concurrence=math.hypot(sz, sx),
        branch=branch,
        zero_delta=model.delta == 0.0,
    )


def dC_dalpha(model: TLSModel, step: float, diagnostic: bool = False):
    """Central finite difference of the concurrence in alpha.

    Args:
        model: Evaluation point.
        step: Half-width of the stencil.
        diagnostic: Also return the one-sided differences.

    Returns:
        The central difference, or an AlphaDerivative when ``diagnostic`` is set.

    Raises:
        InputError: non-positive step or a stencil reaching below alpha = 0.
        DomainError: the stencil spans more than one branch boundary.
    """
    if not step > 0.0:
        raise InputError(f"step must be positive, got {step}")
    lower, upper = model.alpha - step, model.alpha + step
    if lower < 0.0:
        raise InputError(f"stencil [{lower:g}, {upper:g}] leaves alpha >= 0")

    crossed = [b for b in branch_boundaries(model) if lower < b < upper]
    if len(crossed) > 1:
        raise DomainError(f"stencil [{lower:g}, {upper:g}] spans boundaries {crossed}")
    if crossed:
        logger.debug(f"stencil at alpha={model.alpha:g} straddles the branch switch at {crossed[0]:g}")

    below = tls_concurrence(model.model_copy(update={"alpha": lower})).concurrence
    centre = tls_concurrence(model).concurrence
    above = tls_concurrence(model.model_copy(update={"alpha": upper})).concurrence

    central = (above - below) / (2.0 * step)
    if not diagnostic:
        return central
    return AlphaDerivative(
        central=central,
        backward=(centre - below) / step,
        forward=(above - centre) / step,
    )


def kondo_to_tls(
    j_perp: float,
    ising: float,
    omega_c: float,
    jz_tilde: float,
) -> Tuple[float, float]:
    """(delta, alpha) of the effective two-level system of two Kondo impurities.

    delta = J_perp^2 / (I omega_c) and alpha = 2 - Jz~, taking the scaling
    correspondences as equalities.
    """
    if ising == 0.0 or omega_c <= 0.0:
        raise InputError("ising coupling must be non-zero and omega_c positive")
    delta = j_perp ** 2 / (ising * omega_c)
    alpha = 2.0 - jz_tilde
    return delta, alpha


def tls_to_kondo(delta: float, alpha: float, ising: float, omega_c: float) -> Tuple[float, float]:
    """(J_perp, Jz~) reproducing a two-level system; inverse of kondo_to_tls."""
    if ising * omega_c * delta < 0.0:
        raise InputError("delta, ising and omega_c must give a non-negative J_perp^2")
    return math.sqrt(delta * ising * omega_c), 2.0 - alpha
