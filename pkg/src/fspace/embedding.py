"""Exact decision procedures for the embedding conditions.

Each condition is a conjunction of linear constraints over exact rationals
(``1/inf == 0``). A verdict records which branch fired and whether the
point sits on the closure of some branch with one of its non-strict or
strict inequalities tight, which is where numerics cannot decide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import TheoremDomainError
from .params import INF, SpaceParams, format_exponent, parse_exponent, reciprocal

LE, LT, EQ = "<=", "<", "=="


@dataclass(frozen=True)
class Constraint:
    lhs: Fraction
    op: str
    rhs: Fraction

    def holds(self) -> bool:
        if self.op == LE:
            return self.lhs <= self.rhs
        if self.op == LT:
            return self.lhs < self.rhs
        return self.lhs == self.rhs

    def holds_relaxed(self) -> bool:
        return self.lhs == self.rhs if self.op == EQ else self.lhs <= self.rhs

    def tight(self) -> bool:
        return self.op != EQ and self.lhs == self.rhs


@dataclass(frozen=True)
class EmbeddingVerdict:
    """Outcome of a predicate.

    ``branch`` is ``"none"`` exactly when ``holds`` is false. ``boundary`` is
    set when some branch holds after relaxing strict inequalities and at
    least one of its inequalities is an equality.
    """

    holds: bool
    branch: str
    boundary: bool
    interpretation: str = ""

    def __post_init__(self):
        if (self.branch == "none") == self.holds:
            raise ValueError("branch must be 'none' exactly when the embedding fails")


@dataclass(frozen=True)
class AtomOrders:
    K_min: int
    L_min: int


def _decide(branches: Sequence[tuple[str, Sequence[Constraint]]], interpretation: str = "") -> EmbeddingVerdict:
    fired = next((tag for tag, cons in branches if all(c.holds() for c in cons)), None)
    boundary = any(
        all(c.holds_relaxed() for c in cons) and any(c.tight() for c in cons) for _, cons in branches
    )
    if fired is None:
        return EmbeddingVerdict(False, "none", boundary, interpretation)
    return EmbeddingVerdict(True, fired, boundary, interpretation)


def _require_p_le_1(p):
    if p == INF or p > 1:
        raise TheoremDomainError(f"the theorem is stated for 0 < p <= 1, got p={format_exponent(p)}")


def _thm1_branches(params: SpaceParams, with_r: bool, tag: str):
    n, ip, iq, s = params.n, params.inv_p, params.inv_q, params.s
    cond1 = [Constraint(ip, LE, iq), Constraint(Fraction(0), LE, s)]
    if with_r:
        cond1.append(Constraint(params.inv_r, LE, iq))
    cond2 = [Constraint(iq, LT, ip), Constraint(n * (ip - iq), LT, s)]
    return [(f"{tag}-cond1", cond1), (f"{tag}-cond2", cond2)]


def _thm2_branches(params: SpaceParams, tag: str):
    n, ip, iq, s = params.n, params.inv_p, params.inv_q, params.s
    critical = n * (1 - ip - iq)
    cond1 = [Constraint(iq, LE, ip), Constraint(s, LE, critical)]
    cond2 = [Constraint(ip, LT, iq), Constraint(s, LT, critical)]
    return [(f"{tag}-cond1", cond1), (f"{tag}-cond2", cond2)]


def thm1_M_into_F(params: SpaceParams) -> EmbeddingVerdict:
    """Whether the weighted modulation space embeds into ``F_{p,r}`` (smoothness 0)."""
    _require_p_le_1(params.p)
    return _decide(_thm1_branches(params, True, "thm1"))


def thm2_F_into_M(params: SpaceParams) -> EmbeddingVerdict:
    """Whether ``F_{p,r}`` embeds into the weighted modulation space."""
    _require_p_le_1(params.p)
    return _decide(_thm2_branches(params, "thm2"))


def _hp_params(p, q, s, n) -> SpaceParams:
    return SpaceParams(n=n, p=p, q=q, r=2, s=s)


def thmA_M_into_hp(p, q, s, n) -> EmbeddingVerdict:
    """Modulation space into the local Hardy space ``h_p``."""
    params = _hp_params(p, q, s, n)
    _require_p_le_1(params.p)
    return _decide(_thm1_branches(params, False, "thmA"))


def thmB_hp_into_M(p, q, s, n) -> EmbeddingVerdict:
    """Local Hardy space ``h_p`` into the modulation space."""
    params = _hp_params(p, q, s, n)
    _require_p_le_1(params.p)
    return _decide(_thm2_branches(params, "thmB"))


BRACKET_READING = "grouping"


def besov_thresholds(p, q, n) -> tuple[Fraction, Fraction, Fraction]:
    ip, iq = reciprocal(parse_exponent(p)), reciprocal(parse_exponent(q))
    return Fraction(0), n * (ip - iq), n * (1 - ip - iq)


def besov_embedding(p, q, s, n, direction: str) -> EmbeddingVerdict:
    """Modulation versus Besov inclusion at equal ``(p, q)``.

    ``direction`` is ``"M->B"`` (smoothness ``s`` on the modulation side must
    dominate all three thresholds) or ``"B->M"`` (``s`` must lie below all
    three). Brackets in the source condition are read as grouping.
    """
    s = parse_exponent(s)
    thresholds = besov_thresholds(p, q, n)
    d = direction.replace(" ", "").upper()
    if d in ("M->B", "MB", "M2B"):
        cons = [Constraint(t, LE, s) for t in thresholds]
        return _decide([("lemma-MB", cons)], BRACKET_READING)
    if d in ("B->M", "BM", "B2M"):
        cons = [Constraint(s, LE, t) for t in thresholds]
        return _decide([("lemma-BM", cons)], BRACKET_READING)
    raise ValueError(f"direction must be 'M->B' or 'B->M', got {direction!r}")


def seq_embed_uniform(q1, s1, q2, s2, n) -> EmbeddingVerdict:
    """Inclusion of weighted lattice sequence spaces ``l_{q1}^{s1} in l_{q2}^{s2}`` on ``Z^n``."""
    q1, q2 = parse_exponent(q1), parse_exponent(q2)
    s1, s2 = parse_exponent(s1), parse_exponent(s2)
    iq1, iq2 = reciprocal(q1), reciprocal(q2)
    b1 = [Constraint(s2, LE, s1), Constraint(iq2 + s2 / n, LT, iq1 + s1 / n)]
    b2 = [Constraint(s2, EQ, s1), Constraint(iq2, EQ, iq1)]
    return _decide([("seqU-1", b1), ("seqU-2", b2)])


def seq_embed_dyadic(q1, s1, q2, s2) -> EmbeddingVerdict:
    """Inclusion of weighted sequence spaces on the dyadic index set."""
    s1, s2 = parse_exponent(s1), parse_exponent(s2)
    iq1, iq2 = reciprocal(parse_exponent(q1)), reciprocal(parse_exponent(q2))
    b1 = [Constraint(s2, LT, s1)]
    b2 = [Constraint(s2, EQ, s1), Constraint(iq2, LE, iq1)]
    return _decide([("seqD-1", b1), ("seqD-2", b2)])


def atom_orders(s, p, n) -> AtomOrders:
    """Minimal smoothness order ``K`` and moment order ``L`` for atoms."""
    s = parse_exponent(s)
    ip = reciprocal(parse_exponent(p))
    k_min = max(math.floor(s) + 1, 0)
    l_min = max(math.floor(n * max(ip - 1, Fraction(0)) - s), 1)
    return AtomOrders(int(k_min), int(l_min))


# ---------------------------------------------------------------------------
# region scans

THEOREMS: dict[str, Callable[[SpaceParams], EmbeddingVerdict]] = {
    "1.1": thm1_M_into_F,
    "1.2": thm2_F_into_M,
    "A": lambda P: thmA_M_into_hp(P.p, P.q, P.s, P.n),
    "B": lambda P: thmB_hp_into_M(P.p, P.q, P.s, P.n),
    "lemma-MB": lambda P: besov_embedding(P.p, P.q, P.s, P.n, "M->B"),
    "lemma-BM": lambda P: besov_embedding(P.p, P.q, P.s, P.n, "B->M"),
}
_ALIASES = {"thm1": "1.1", "1": "1.1", "thm2": "1.2", "2": "1.2", "thmA": "A", "thmB": "B"}


def resolve_theorem(name: str) -> str:
    key = _ALIASES.get(str(name), str(name))
    if key not in THEOREMS:
        raise ValueError(f"unknown theorem {name!r}; choose from {sorted(THEOREMS)}")
    return key


@dataclass(frozen=True)
class Axis:
    """Scan axis over ``name`` in ``{"p", "q", "r", "s", "1/p", "1/q", "1/r"}``."""

    name: str
    start: Fraction
    stop: Fraction
    step: Fraction

    def values(self) -> list:
        start, stop, step = (parse_exponent(v) for v in (self.start, self.stop, self.step))
        if step <= 0:
            raise ValueError("axis step must be positive")
        out, v = [], start
        while v <= stop:
            out.append(v)
            v += step
        return out


def _assign(fields: dict, name: str, value):
    if name in ("1/p", "1/q", "1/r"):
        fields[name[2]] = INF if value == 0 else 1 / Fraction(value)
    elif name in ("p", "q", "r", "s"):
        fields[name] = value
    else:
        raise ValueError(f"cannot scan over {name!r}")


@dataclass(frozen=True)
class RegionCell:
    x: Fraction
    y: Fraction
    params: SpaceParams
    verdict: EmbeddingVerdict


def region_scan(fixed: dict, axes: Sequence[Axis], theorem: str) -> list[RegionCell]:
    """Evaluate ``theorem`` on the product of two rational axes.

    ``fixed`` supplies the remaining fields of :class:`SpaceParams`. Cells are
    returned row-major with the first axis varying slowest.
    """
    key = resolve_theorem(theorem)
    pred = THEOREMS[key]
    if len(axes) != 2:
        raise ValueError("region_scan needs exactly two axes")
    xs, ys = axes[0].values(), axes[1].values()
    cells = []
    for x in xs:
        for y in ys:
            fields = {"n": 1, "q": INF, "r": Fraction(2), "s": Fraction(0)}
            fields.update({k: (v if k == "n" else parse_exponent(v)) for k, v in fixed.items()})
            _assign(fields, axes[0].name, x)
            _assign(fields, axes[1].name, y)
            params = SpaceParams(**fields)
            cells.append(RegionCell(x, y, params, pred(params)))
    return cells
