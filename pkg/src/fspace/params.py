"""Exact exponents.

Exponents are :class:`fractions.Fraction` values end to end. Infinity is the
distinguished value :data:`INF`; its reciprocal is exactly zero. Strings such
as ``"1/2"``, ``"-3"``, ``"inf"`` are parsed without ever going through a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

INF = math.inf

Exponent = Union[Fraction, float]  # float only ever means INF

_INF_SPELLINGS = {"inf", "infinity", "+inf", "oo", "∞"}


def parse_exponent(value) -> Exponent:
    """Convert ``value`` to an exact exponent.

    Accepts ints, Fractions, :data:`INF`, and strings like ``"3/4"``, ``"-2"``,
    ``"inf"``. Finite floats are rejected: they would silently misplace
    boundary cells.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not exponents")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if value == INF:
            return INF
        raise TypeError(f"finite float {value!r} is not an exact exponent; pass a string like '1/2'")
    if isinstance(value, str):
        text = value.strip().lower()
        if text in _INF_SPELLINGS:
            return INF
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse exponent {value!r}") from exc
    raise TypeError(f"unsupported exponent type {type(value).__name__}")


def reciprocal(value: Exponent) -> Fraction:
    """Exact ``1/value`` with ``1/inf == 0``."""
    if value == INF:
        return Fraction(0)
    if value == 0:
        raise ZeroDivisionError("exponent 0 has no reciprocal")
    return 1 / Fraction(value)


def to_float(value: Exponent) -> float:
    return INF if value == INF else float(value)


def format_exponent(value: Exponent) -> str:
    if value == INF:
        return "inf"
    return str(Fraction(value))


@dataclass(frozen=True)
class SpaceParams:
    """Exponents ``(n, p, q, r, s)`` shared by norms and embedding predicates."""

    n: int
    p: Exponent
    q: Exponent = INF
    r: Exponent = Fraction(2)
    s: Fraction = Fraction(0)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"dimension n must be a positive integer, got {self.n!r}")
        for name in ("p", "q", "r"):
            v = parse_exponent(getattr(self, name))
            if v != INF and v <= 0:
                raise ValueError(f"{name} must be positive, got {v}")
            object.__setattr__(self, name, v)
        s = parse_exponent(self.s)
        if s == INF:
            raise ValueError("s must be finite")
        object.__setattr__(self, "s", s)

    @property
    def inv_p(self) -> Fraction:
        return reciprocal(self.p)

    @property
    def inv_q(self) -> Fraction:
        return reciprocal(self.q)

    @property
    def inv_r(self) -> Fraction:
        return reciprocal(self.r)

    def replace(self, **changes) -> "SpaceParams":
        fields = {"n": self.n, "p": self.p, "q": self.q, "r": self.r, "s": self.s}
        fields.update(changes)
        return SpaceParams(**fields)

    def label(self) -> str:
        return ",".join(
            f"{k}={format_exponent(v) if k != 'n' else v}"
            for k, v in (("n", self.n), ("p", self.p), ("q", self.q), ("r", self.r), ("s", self.s))
        )


def parse_point(text: str) -> SpaceParams:
    """Parse ``"n=1,p=1/2,q=2,r=2,s=1"`` into :class:`SpaceParams`."""
    fields = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, val = item.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, got {item!r}")
        key = key.strip()
        if key not in {"n", "p", "q", "r", "s"}:
            raise ValueError(f"unknown parameter {key!r}")
        fields[key] = int(val) if key == "n" else parse_exponent(val)
    if "p" not in fields:
        raise ValueError("point must define p")
    fields.setdefault("n", 1)
    return SpaceParams(**fields)
