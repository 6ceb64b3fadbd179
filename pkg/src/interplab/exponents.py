"""Exact rational arithmetic over the extended exponent scale.

Exponents are stored as their reciprocals rho = 1/p, so that p = inf is the
ordinary rational 0 and every relation used by the checkers is affine.
Negative p encodes Holder classes via the decomposition s = floor(-n/p),
n/ptilde = s + n/p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction, str]

LEBESGUE = "lebesgue"
SUP = "sup"
HOLDER = "holder"
OUT_OF_SCALE = "out-of-scale"


class CriticalExponentError(ValueError):
    """Sobolev conjugation hit the critical exponent p = n."""

    def __init__(self, exponent: "ExtendedExponent", n: int, index: int = 0):
        self.exponent = exponent
        self.n = n
        self.index = index
        super().__init__(f"critical: r^({index}) = {exponent} = n")


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("exponent arithmetic is exact; pass int, Fraction or str")
    return Fraction(x)


@dataclass(frozen=True)
class ExtendedExponent:
    """An exponent p in (-inf, 0) u (0, inf], stored as rho = 1/p (rho=0 means p=inf)."""

    rho: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rho", _as_fraction(self.rho))

    @classmethod
    def from_p(cls, p: RationalLike) -> "ExtendedExponent":
        if isinstance(p, str):
            return cls.parse(p)
        p = _as_fraction(p)
        if p == 0:
            raise ValueError("p = 0 is not on the exponent scale")
        return cls(Fraction(1, 1) / p)

    @classmethod
    def from_rho(cls, rho: RationalLike) -> "ExtendedExponent":
        return cls(_as_fraction(rho))

    @classmethod
    def parse(cls, text: str) -> "ExtendedExponent":
        """Parse the exponent grammar: "inf", an integer, or "a/b" in lowest terms."""
        text = text.strip()
        if text in ("inf", "+inf", "infinity"):
            return cls(Fraction(0))
        try:
            p = Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"bad exponent {text!r}: expected 'inf', integer or 'a/b'") from e
        return cls.from_p(p)

    @property
    def is_inf(self) -> bool:
        return self.rho == 0

    @property
    def p(self) -> Fraction:
        """The exponent as a Fraction; raises for p = inf."""
        if self.is_inf:
            raise ValueError("p is infinite")
        return 1 / self.rho

    @property
    def p_float(self) -> float:
        return math.inf if self.is_inf else float(self.p)

    def __str__(self) -> str:
        if self.is_inf:
            return "inf"
        p = self.p
        return str(p.numerator) if p.denominator == 1 else f"{p.numerator}/{p.denominator}"

    def __repr__(self) -> str:
        return f"ExtendedExponent(p={self})"


@dataclass(frozen=True)
class HolderDecomposition:
    """Derivative order s and residual exponent ptilde with n/ptilde = s + n/p."""

    s: int
    p_tilde: ExtendedExponent
    alpha: Fraction  # Holder exponent -n/ptilde; unused when p_tilde is inf


@dataclass(frozen=True)
class Decision:
    """Outcome of an admissibility check, with a named reason on rejection."""

    ok: bool
    reason: str = "admissible"
    warnings: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class GnTuple:
    n: int
    j: int
    k: int
    theta: Fraction
    r: ExtendedExponent
    q: ExtendedExponent
    p: ExtendedExponent = field(init=True)
    zeta: Fraction = field(init=True)


def classify(e: ExtendedExponent, n: int) -> str:
    """Total classification of an exponent relative to dimension n."""
    rho = e.rho
    if rho == 0:
        return SUP
    if 0 < rho <= 1:
        return LEBESGUE
    if -Fraction(1, n) <= rho < 0:
        return HOLDER
    # p in (0,1) or p in (-n,0): representable but outside every theorem hypothesis
    return OUT_OF_SCALE


def holder_decompose(e: ExtendedExponent, n: int) -> HolderDecomposition:
    """Split a negative exponent into derivative order s and residual ptilde."""
    if e.rho >= 0:
        raise ValueError(f"holder_decompose needs p < 0, got p = {e}")
    minus_n_over_p = -n * e.rho  # = -n/p > 0
    s = math.floor(minus_n_over_p)
    residual = s - minus_n_over_p  # = n/ptilde <= 0
    if residual == 0:
        return HolderDecomposition(s=s, p_tilde=ExtendedExponent(Fraction(0)), alpha=Fraction(0))
    p_tilde = ExtendedExponent(residual / n)
    return HolderDecomposition(s=s, p_tilde=p_tilde, alpha=-residual)


def sobolev_conjugate(e: ExtendedExponent, n: int) -> ExtendedExponent:
    """Conjugate exponent with 1/p* = 1/p - 1/n; rejects the critical p = n."""
    if e.rho == Fraction(1, n):
        raise CriticalExponentError(e, n)
    return ExtendedExponent(e.rho - Fraction(1, n))


def iterated_conjugate(r: ExtendedExponent, n: int, m: int) -> ExtendedExponent:
    """m-fold Sobolev conjugation r^(m); raises CriticalExponentError at the
    least i < m with r^(i) = n."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    current = r
    for i in range(m):
        if current.rho == Fraction(1, n):
            raise CriticalExponentError(current, n, index=i)
        current = ExtendedExponent(current.rho - Fraction(1, n))
    return current


def interpolation_solve(
    r: ExtendedExponent, q: ExtendedExponent, theta: RationalLike, n: int
) -> tuple[ExtendedExponent, Decision]:
    """Solve 1/p = theta/r + (1-theta)/q exactly and decide admissibility
    for the weak-norm interpolation inequality."""
    theta = _as_fraction(theta)
    p = ExtendedExponent(theta * r.rho + (1 - theta) * q.rho)

    if not (0 < theta < 1):
        return p, Decision(False, f"theta = {theta} not in (0,1)")
    if not (0 <= q.rho <= 1):
        return p, Decision(False, f"q = {q} not in [1,inf]")
    for name, e in (("r", r), ("p", p)):
        tag = classify(e, n)
        if tag == OUT_OF_SCALE:
            return p, Decision(False, f"{name} = {e} out of scale for n = {n}")
    warnings = []
    for name, e in (("r", r), ("p", p)):
        if e.rho == -Fraction(1, n):
            warnings.append(f"{name} = -n boundary: accepted per theorem statement, proof uses open interval")
    return p, Decision(True, warnings=tuple(warnings))


def zeta_split(theta: RationalLike, j: int, k: int) -> Fraction:
    """Convexity weight zeta with theta = 1 - zeta*(1 - j/k)."""
    if not 1 <= j < k:
        raise ValueError(f"need 1 <= j < k, got j={j}, k={k}")
    theta = _as_fraction(theta)
    return (1 - theta) / (1 - Fraction(j, k))


def gn_solve(
    n: int,
    j: int,
    k: int,
    theta: RationalLike,
    r: ExtendedExponent,
    q: ExtendedExponent,
) -> tuple[GnTuple, Decision]:
    """Resolve a Gagliardo-Nirenberg tuple: solve for p and zeta exactly and
    check the theorem's hypotheses including the no-critical-exponent chain."""
    if not 1 <= j < k:
        raise ValueError(f"need 1 <= j < k, got j={j}, k={k}")
    theta = _as_fraction(theta)
    rho_p = Fraction(j, n) + theta * (r.rho - Fraction(k, n)) + (1 - theta) * q.rho
    p = ExtendedExponent(rho_p)
    zeta = zeta_split(theta, j, k)
    tup = GnTuple(n=n, j=j, k=k, theta=theta, r=r, q=q, p=p, zeta=zeta)

    if not (Fraction(j, k) <= theta <= 1):
        reason = (
            f"theta = {theta} < j/k = {Fraction(j, k)}"
            if theta < Fraction(j, k)
            else f"theta = {theta} > 1"
        )
        return tup, Decision(False, reason)
    if not (0 <= q.rho <= 1):
        return tup, Decision(False, f"q = {q} not in [1,inf]")
    # r in (-inf,0) u [1,inf]: excluded only when p(r) in (0,1)
    if r.rho > 1:
        return tup, Decision(False, f"r = {r} in (0,1), outside (-inf,0) u [1,inf]")
    # p in (-inf,0) u (1,inf]: p = 1 explicitly excluded
    if p.rho == 1:
        return tup, Decision(False, "p = 1 excluded by theorem statement")
    if p.rho > 1:
        return tup, Decision(False, f"p = {p} in (0,1), outside (-inf,0) u (1,inf]")
    try:
        iterated_conjugate(r, n, k - j)
    except CriticalExponentError as e:
        return tup, Decision(False, f"critical: r^({e.index}) = {e.exponent} = n")
    warnings = []
    if r.rho < -Fraction(1, n):
        warnings.append(
            f"r = {r} admissible per Gagliardo-Nirenberg, outside the interpolation theorem's direct range"
        )
    return tup, Decision(True, warnings=tuple(warnings))
