"""
regularization parameter selection



"""

#-----------------------------------------------------------------------------
# Copyright (c) lensless development team. All rights reserved.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file COPYING.txt, distributed with this software.
#-----------------------------------------------------------------------------

import numpy as np

from yt.utilities.operator_registry import \
    OperatorRegistry

from lensless.utilities.exceptions import \
    LenslessConfigError
from lensless.utilities.logger import \
    lenslessLogger as mylog
from lensless.utilities.misc import \
    parse_operator_id

alpha_strategy_registry = OperatorRegistry()

default_alpha_strategy = "fixed-fraction(0.01)"

def add_alpha_strategy(name, function):
    r"""
    Add a strategy to the registry of known alpha selection
    strategies, so it can be chosen by name with
    :func:`~lensless.solver.alpha_selection.select_alpha`.

    Parameters
    ----------
    name : string
        Name of the strategy.
    function : callable
        A function accepting SVDFactors, a measurement vector, and
        any numeric arguments given in parentheses after the name,
        and returning alpha.

    Examples
    --------

    >>> import lensless
    >>> def smallest(f, b):
    ...     return f.S[-1]
    >>> lensless.add_alpha_strategy("smallest", smallest)
    >>> alpha = lensless.select_alpha(f, b, "smallest")

    """
    alpha_strategy_registry[name] = function

def parse_alpha_strategy(strategy):
    """
    Check a strategy id and split it into name and arguments.
    """
    try:
        name, args = parse_operator_id(strategy)
    except ValueError:
        raise LenslessConfigError(f"cannot parse \"{strategy}\"", key="alpha_strategy")
    if name not in alpha_strategy_registry:
        raise LenslessConfigError(
            f"unknown strategy \"{name}\" (known: {', '.join(sorted(alpha_strategy_registry))})",
            key="alpha_strategy")
    return name, args

def select_alpha(f, b, strategy=default_alpha_strategy):
    """
    Choose the regularization parameter.

    Parameters
    ----------
    f : SVDFactors
    b : array_like
        Measurement vector.
    strategy : optional, str
        "fixed-fraction(c)", "fixed(alpha)", "l-curve", or
        "discrepancy(noise_norm)",
        or the name of a strategy added with add_alpha_strategy.
        Default: "fixed-fraction(0.01)".

    Returns
    -------
    alpha : float
    """
    name, args = parse_alpha_strategy(strategy)
    try:
        alpha = float(alpha_strategy_registry[name](f, b, *args))
    except TypeError as err:
        raise LenslessConfigError(f"bad arguments for \"{name}\" ({err})",
                                  key="alpha_strategy")
    mylog.debug(f"Selected alpha = {alpha:.6g} with {strategy}.")
    return alpha

def alpha_grid(f, n=40, low=1e-6):
    """
    Logarithmic grid of n alphas from low * S[0] to S[0].
    """
    if int(n) < 1:
        raise ValueError(f"The alpha grid needs at least one point: {n}.")
    S0 = f.S[0]
    return np.logspace(np.log10(low * S0), np.log10(S0), int(n))

def _spectral_terms(f, b):
    b = np.asarray(b, dtype=np.float64).reshape(-1)
    beta = f.project(b)
    # part of b outside the range of U
    delta2 = float(np.sum((b - f.U @ beta)**2))
    return beta, beta / f.S, delta2

def lcurve_norms(f, b, alphas):
    """
    Residual norms |Ax - b| and solution norms |x| along alphas.
    """
    beta, xi, delta2 = _spectral_terms(f, b)
    rho = np.empty(len(alphas))
    eta = np.empty(len(alphas))
    S2 = f.S**2
    for i, alpha in enumerate(alphas):
        fi = S2 / (S2 + alpha**2)
        cf = alpha**2 / (S2 + alpha**2)
        eta[i] = np.linalg.norm(fi * xi)
        rho[i] = np.sqrt(np.sum((cf * beta)**2) + delta2)
    return rho, eta

def lcurve_curvature(f, b, alphas):
    """
    Signed curvature of the (log |Ax - b|, log |x|) curve at each
    alpha, computed analytically from the filter factors.
    """
    beta, xi, delta2 = _spectral_terms(f, b)
    S2 = f.S**2
    alphas = np.asarray(alphas, dtype=np.float64)
    kappa = np.empty(alphas.size)
    with np.errstate(divide="ignore", invalid="ignore"):
        for i, lam in enumerate(alphas):
            fi = S2 / (S2 + lam**2)
            cf = lam**2 / (S2 + lam**2)
            eta = np.linalg.norm(fi * xi)
            rho = np.sqrt(np.sum((cf * beta)**2) + delta2)
            f1 = -2 * fi * cf / lam
            f2 = -f1 * (3 - 4 * fi) / lam
            phi = np.sum(fi * f1 * xi**2)
            psi = np.sum(cf * f1 * beta**2)
            dphi = np.sum((f1**2 + fi * f2) * xi**2)
            dpsi = np.sum((-f1**2 + cf * f2) * beta**2)

            deta = phi / eta
            drho = -psi / rho
            ddeta = dphi / eta - deta * deta / eta
            ddrho = -dpsi / rho - drho * drho / rho

            dlogeta = deta / eta
            dlogrho = drho / rho
            ddlogeta = ddeta / eta - dlogeta**2
            ddlogrho = ddrho / rho - dlogrho**2
            kappa[i] = (dlogrho * ddlogeta - ddlogrho * dlogeta) / \
              (dlogrho**2 + dlogeta**2)**1.5
    return kappa

def fixed_fraction(f, b, c=0.01):
    """
    alpha = c * S[0].
    """
    if not c > 0:
        raise LenslessConfigError(f"{c} must be positive", key="fixed-fraction")
    return c * f.S[0]

add_alpha_strategy("fixed-fraction", fixed_fraction)

def l_curve(f, b, n=40):
    """
    The grid alpha of maximum L-curve curvature.

    If the curvature is undefined everywhere (for example b = 0),
    the smallest grid alpha is returned.
    """
    alphas = alpha_grid(f, n=n)
    kappa = lcurve_curvature(f, b, alphas)
    if not np.isfinite(kappa).any():
        mylog.warning("L-curve curvature is undefined; using the smallest alpha.")
        return alphas[0]
    kappa[~np.isfinite(kappa)] = -np.inf
    return alphas[int(np.argmax(kappa))]

add_alpha_strategy("l-curve", l_curve)

def discrepancy(f, b, noise_norm, n=40):
    """
    The grid alpha whose residual norm is nearest noise_norm.
    """
    if not noise_norm >= 0:
        raise LenslessConfigError(f"{noise_norm} must be nonnegative",
                                  key="noise_norm")
    alphas = alpha_grid(f, n=n)
    rho, _ = lcurve_norms(f, b, alphas)
    return alphas[int(np.argmin(np.abs(rho - noise_norm)))]

add_alpha_strategy("discrepancy", discrepancy)

def fixed(f, b, alpha):
    """
    A given alpha, independent of the measurement.
    """
    if not alpha >= 0:
        raise LenslessConfigError(f"{alpha} must be nonnegative", key="fixed")
    return alpha

add_alpha_strategy("fixed", fixed)
