"""Weingarten relations kappa = f(lambda).

Three kinds are supported: :class:`Linear` (a*lam + b), :class:`Power`
(a*lam**m) and :class:`Custom` (any callable).  ``eval_f`` and ``denominator``
accept floats, numpy arrays and mpmath numbers.  Scalars outside the domain of
``f`` raise :class:`DomainError`; arrays get NaN in those slots so that interval
scans can treat them as violated constraints.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from ._backend import is_mp, is_scalar
from .errors import DomainError


@dataclass(frozen=True)
class Linear:
    a: float
    b: float

    @property
    def description(self) -> str:
        return f"kappa = {self.a:g}*lambda + {self.b:g}"


@dataclass(frozen=True)
class Power:
    a: float
    m: float

    @property
    def integer_exponent(self) -> bool:
        return float(self.m).is_integer()

    @property
    def description(self) -> str:
        return f"kappa = {self.a:g}*lambda**{self.m:g}"


@dataclass(frozen=True)
class Custom:
    """User relation.  ``f`` must be re-entrant; it may receive numpy arrays
    (it is then vectorised with ``np.frompyfunc`` if it rejects them) and
    mpmath numbers."""

    f: Callable = field(compare=False)
    description: str = "custom"


WeingartenRelation = Union[Linear, Power, Custom]


class DenominatorKind(enum.Enum):
    EPS_F_MINUS_LAMBDA = "eps_f_minus_lambda"
    F_PLUS_LAMBDA = "f_plus_lambda"


def relation_from_dict(data: dict) -> WeingartenRelation:
    kind = data.get("kind")
    if kind == "linear":
        return Linear(float(data["a"]), float(data["b"]))
    if kind == "power":
        return Power(float(data["a"]), float(data["m"]))
    raise ValueError(f"unknown relation kind {kind!r}; expected 'linear' or 'power'")


def relation_to_dict(rel: WeingartenRelation) -> dict:
    if isinstance(rel, Linear):
        return {"kind": "linear", "a": rel.a, "b": rel.b}
    if isinstance(rel, Power):
        return {"kind": "power", "a": rel.a, "m": rel.m}
    return {"kind": "custom", "description": rel.description}


def _custom_values(f, lam):
    if is_scalar(lam):
        return f(lam)
    try:
        out = np.asarray(f(lam), dtype=float)
        if out.shape == np.shape(lam):
            return out
    except Exception:
        pass
    return np.frompyfunc(f, 1, 1)(lam).astype(float)


def eval_f(rel: WeingartenRelation, lam):
    """kappa = f(lam)."""
    if isinstance(rel, Linear):
        return rel.a * lam + rel.b
    if isinstance(rel, Power):
        return _power(rel, lam)
    return _custom_values(rel.f, lam)


def _power(rel: Power, lam):
    m = rel.m
    if is_scalar(lam):
        if not rel.integer_exponent and not lam > 0:
            raise DomainError(f"lambda**{m} needs lambda > 0 (got {float(lam)!r})")
        if m < 0 and lam == 0:
            raise DomainError("f = a*lambda**m has a pole at lambda = 0")
        if is_mp(lam):
            return rel.a * lam ** int(m) if rel.integer_exponent else rel.a * lam**m
        return rel.a * float(lam) ** m
    lam = np.asarray(lam, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = rel.a * np.power(lam, m)
    bad = ~np.isfinite(out)
    if not rel.integer_exponent:
        bad |= lam <= 0
    return np.where(bad, np.nan, out)


def denominator(rel: WeingartenRelation, kind: DenominatorKind, eps: int, lam):
    """eps*f(lam) - lam, or f(lam) + lam for the second hyperbolic kind.

    A zero marks an umbilic point where the lambda-parameterisation breaks down.
    """
    f = eval_f(rel, lam)
    if kind is DenominatorKind.F_PLUS_LAMBDA:
        return f + lam
    return eps * f - lam
