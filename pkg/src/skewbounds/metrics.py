"""Registry of monotone-metric kernels.

Each metric is described by its Morozova-Chentsov function c(x, y) built from
an operator monotone f with f(t) = t f(1/t), together with the constant
m(c) = lim_{t->0} f(t).  What the rest of the package actually consumes is the
pairwise weight

    w(x, y) = (m(c) / 2) * c(x, y) * (x - y)**2,

the eigenbasis action of the kernel on a commutator.  For the WYD family the
weight is always evaluated in the product form (x^a - y^a)(x^(1-a) - y^(1-a))/2,
which has no 0/0 at x = y and no pole at y = 0, so zero eigenvalues (pure and
rank-deficient states) are handled exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError

KIND_WY = "wy"
KIND_WYD = "wyd"
KIND_SLD = "sld"


@dataclass(frozen=True)
class MetricSpec:
    """A named monotone metric with its constant m(c)."""

    kind: str
    m_c: float
    alpha: float | None = None


def make_metric(kind: str, alpha: float | None = None) -> MetricSpec:
    """Build a metric spec.  ``alpha`` is required iff kind is 'wyd'."""
    kind = kind.lower()
    if kind == KIND_WYD:
        if alpha is None:
            raise DomainError("wyd metric requires alpha")
        if not (0.0 < alpha < 1.0):
            raise DomainError(f"alpha {alpha} outside (0, 1)")
        return MetricSpec(kind=KIND_WYD, m_c=alpha * (1.0 - alpha), alpha=alpha)
    if alpha is not None:
        raise DomainError(f"metric {kind!r} takes no alpha")
    if kind == KIND_WY:
        return MetricSpec(kind=KIND_WY, m_c=0.25)
    if kind == KIND_SLD:
        return MetricSpec(kind=KIND_SLD, m_c=0.5)
    raise DomainError(f"unknown metric kind {kind!r}")


def parse_metric(text: str) -> MetricSpec:
    """Parse 'wy', 'sld', or 'wyd:<alpha>'."""
    text = text.strip()
    if text.startswith("wyd:"):
        try:
            alpha = float(text[4:])
        except ValueError as exc:
            raise ValidationError(f"bad wyd alpha in {text!r}") from exc
        try:
            return make_metric(KIND_WYD, alpha)
        except DomainError as exc:
            raise ValidationError(str(exc)) from exc
    if text in (KIND_WY, KIND_SLD):
        return make_metric(text)
    raise ValidationError(f"unknown metric string {text!r}")


def metric_label(m: MetricSpec) -> str:
    """Inverse of parse_metric."""
    if m.kind == KIND_WYD:
        return f"wyd:{m.alpha:g}"
    return m.kind


def _wyd_alpha(m: MetricSpec) -> float:
    return 0.5 if m.kind == KIND_WY else float(m.alpha)


def mc_function(m: MetricSpec, x: float, y: float) -> float:
    """Morozova-Chentsov function c(x, y), with the analytic limit at x = y."""
    if x < 0 or y < 0:
        raise DomainError("c(x, y) requires x, y >= 0")
    if x == 0 and y == 0:
        raise DomainError("c(0, 0) is undefined")
    if m.kind == KIND_SLD:
        return 2.0 / (x + y)
    a = _wyd_alpha(m)
    if x == y:
        return 1.0 / x
    return ((x**a - y**a) * (x ** (1 - a) - y ** (1 - a))) / (
        a * (1 - a) * (x - y) ** 2
    )


def weight(m: MetricSpec, x: float, y: float) -> float:
    """Pairwise weight (m(c)/2) c(x, y) (x - y)^2, finite for all x, y >= 0."""
    if x < 0 or y < 0:
        raise DomainError("weight requires x, y >= 0")
    if m.kind == KIND_SLD:
        s = x + y
        return 0.0 if s == 0.0 else (x - y) ** 2 / (2.0 * s)
    a = _wyd_alpha(m)
    return 0.5 * (x**a - y**a) * (x ** (1 - a) - y ** (1 - a))


def weight_matrix(m: MetricSpec, eigenvalues: np.ndarray) -> np.ndarray:
    """Matrix W[i, j] = weight(m, lam_i, lam_j) for a vector of eigenvalues."""
    lam = np.asarray(eigenvalues, dtype=float)
    if m.kind == KIND_SLD:
        s = lam[:, None] + lam[None, :]
        diff2 = (lam[:, None] - lam[None, :]) ** 2
        with np.errstate(divide="ignore", invalid="ignore"):
            W = np.where(s > 0, diff2 / (2.0 * np.where(s > 0, s, 1.0)), 0.0)
        return W
    a = _wyd_alpha(m)
    pa = lam**a
    pb = lam ** (1 - a)
    return 0.5 * (pa[:, None] - pa[None, :]) * (pb[:, None] - pb[None, :])
