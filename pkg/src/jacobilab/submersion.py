"""Catalog of Killing submersion models M(kappa, tau).

A model stores kappa and tau as sampled fields over a 1D base parameter plus,
for analytic families, closed-form evaluators used as oracles.  Three kinds
are supported: homogeneous (both constant), product (tau identically zero
over an arbitrary base), and the doubly warped family built in
:mod:`jacobilab.warped`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable

import numpy as np

from .errors import FieldError, ModelError
from .fields import ScalarField1D
from .geometry import Regime, classify_regime


MIN_DIFF_SAMPLES = 8


class ModelKind(Enum):
    HOMOGENEOUS = "homogeneous"
    PRODUCT = "product"
    WARPED = "warped"


class GradientMode(Enum):
    """Interpretation of |grad tau| used in the eigenvalue bounds.

    INTRINSIC_ON_SURFACE differentiates tau along the surface itself (zero
    whenever tau is constant there); AMBIENT is the magnitude of the full
    base-parameter derivative.  The two coincide except on the warped family,
    where tau varies transversally to the fiber tori.
    """

    INTRINSIC_ON_SURFACE = "intrinsic_on_surface"
    AMBIENT = "ambient"


@dataclass(frozen=True)
class SubmersionModel:
    """Killing submersion described by sampled kappa/tau fields.

    ``fiber_length`` is None for noncompact fibers (product with a line).
    ``kappa_fn``/``tau_fn``/``dtau_fn`` are optional closed-form evaluators
    for analytic models; ``profile`` keeps the generating curvature profile
    of warped models.
    """

    kind: ModelKind
    kappa_field: ScalarField1D
    tau_field: ScalarField1D
    fiber_length: float | None
    name: str = ""
    kappa_fn: Callable | None = None
    tau_fn: Callable | None = None
    dtau_fn: Callable | None = None
    profile: Any = None

    def __post_init__(self):
        if not self.kappa_field.same_grid(self.tau_field):
            raise ModelError("kappa and tau fields must share one grid")
        if self.fiber_length is not None:
            if not (math.isfinite(self.fiber_length) and self.fiber_length > 0):
                raise ModelError(f"fiber_length must be positive, got {self.fiber_length}")
        if self.kind is ModelKind.PRODUCT and np.max(np.abs(self.tau_field.samples)) != 0.0:
            raise ModelError("product models require tau == 0")
        if self.kind is ModelKind.HOMOGENEOUS:
            if not (self.kappa_field.is_constant(1e-15) and self.tau_field.is_constant(1e-15)):
                raise ModelError("homogeneous models require constant kappa and tau")

    @property
    def has_compact_fibers(self) -> bool:
        return self.fiber_length is not None


def homogeneous_model(kappa: float, tau: float, fiber_length: float,
                      n: int = 512, name: str = "") -> SubmersionModel:
    """Model with constant curvature data (a homogeneous 3-manifold)."""
    if not (math.isfinite(fiber_length) and fiber_length > 0):
        raise ModelError(f"fiber_length must be positive, got {fiber_length}")
    period = 2.0 * math.pi
    return SubmersionModel(
        kind=ModelKind.HOMOGENEOUS,
        kappa_field=ScalarField1D.constant(kappa, period, n),
        tau_field=ScalarField1D.constant(tau, period, n),
        fiber_length=float(fiber_length),
        name=name or f"homogeneous(kappa={kappa}, tau={tau})",
        kappa_fn=lambda x, k=float(kappa): np.full_like(np.asarray(x, dtype=float), k),
        tau_fn=lambda x, t=float(tau): np.full_like(np.asarray(x, dtype=float), t),
        dtau_fn=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
    )


def product_model(kappa_field: ScalarField1D, fiber_length: float | None,
                  name: str = "") -> SubmersionModel:
    """Product of a base surface with a circle (finite fiber) or a line."""
    if fiber_length is not None and not (math.isfinite(fiber_length) and fiber_length > 0):
        raise ModelError(f"fiber_length must be positive, got {fiber_length}")
    tau0 = ScalarField1D(np.zeros(kappa_field.n),
                         period=kappa_field.period, interval=kappa_field.interval)
    return SubmersionModel(
        kind=ModelKind.PRODUCT,
        kappa_field=kappa_field,
        tau_field=tau0,
        fiber_length=None if fiber_length is None else float(fiber_length),
        name=name or "product",
        tau_fn=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        dtau_fn=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
    )


def gradient_norm_field(model: SubmersionModel, mode: GradientMode,
                        method: str = "auto") -> ScalarField1D:
    """Sampled |grad tau| over the model's base parameter.

    AMBIENT differentiates the sampled tau field numerically (spectral on
    periodic grids, Richardson central differences otherwise).  INTRINSIC
    follows the curve a lifted surface lives over: for warped models that
    curve is a parallel transverse to the base parameter, so tau is constant
    along it and the field is identically zero; for the other kinds the base
    parameter itself parametrizes the curve.
    """
    if model.tau_field.n < MIN_DIFF_SAMPLES:
        raise FieldError("too few samples to differentiate tau")
    if mode is GradientMode.INTRINSIC_ON_SURFACE and model.kind is ModelKind.WARPED:
        return ScalarField1D(np.zeros(model.tau_field.n),
                             period=model.tau_field.period,
                             interval=model.tau_field.interval)
    return model.tau_field.derivative(method).map(np.abs)


def model_regime(model: SubmersionModel, tol: float | None = None) -> Regime:
    return classify_regime(model.kappa_field.samples, model.tau_field.samples, tol)
