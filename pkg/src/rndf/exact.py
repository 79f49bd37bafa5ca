"""Exact integer and rational arithmetic: reduced fractions, continued
fractions, approximation exponents and the mod-4 classification that routes
every rational to its asymptotic regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "Rational",
    "CFExpansion",
    "TildePair",
    "GammaSequence",
    "BuiltIrrational",
    "Mod4Class",
    "reduce",
    "cf_expand",
    "tilde_pair",
    "classify_mod4",
    "gamma_exponents",
    "build_irrational",
    "totient",
]

Q_CAP = 10 ** 60  # denominator budget for constructed irrationals

RealLike = Union[int, float, Fraction, Decimal, str, "Rational"]


class Mod4Class(Enum):
    """Denominator class mod 4: Q013 points reduce to 0, Q2 points to 1/2."""

    Q013 = "q013"
    Q2 = "q2"


@dataclass(frozen=True)
class Rational:
    """Reduced fraction with positive denominator."""

    num: int
    den: int

    def __post_init__(self) -> None:
        if self.den <= 0 or math.gcd(self.num, self.den) != 1:
            raise ValueError(f"not a reduced fraction: {self.num}/{self.den}")

    @property
    def class4(self) -> int:
        return self.den % 4

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __float__(self) -> float:
        return self.num / self.den

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


def reduce(num: int, den: int) -> Rational:
    """gcd-reduced fraction with den > 0."""
    if den == 0:
        raise ValueError("zero denominator")
    if den < 0:
        num, den = -num, -den
    g = math.gcd(num, den)
    return Rational(num // g, den // g)


@dataclass(frozen=True)
class CFExpansion:
    """Partial quotients [a0; a1, a2, ...] with the convergent table (p_n, q_n)."""

    quotients: tuple[int, ...]
    convergents: tuple[tuple[int, int], ...]
    exact: bool  # input was rational and the expansion terminated exactly

    def __len__(self) -> int:
        return len(self.quotients)


def _convergents(quotients: Sequence[int]) -> list[tuple[int, int]]:
    p_prev, q_prev = 1, 0
    p, q = quotients[0], 1
    out = [(p, q)]
    for a in quotients[1:]:
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        out.append((p, q))
    return out


def _significant_digits(x: RealLike) -> int:
    if isinstance(x, float):
        return 16
    if isinstance(x, Decimal):
        return max(len(x.as_tuple().digits), 16)
    if isinstance(x, str):
        return max(sum(c.isdigit() for c in x), 16)
    return 0  # exact input


def _as_fraction(x: RealLike) -> Fraction:
    if isinstance(x, Rational):
        return x.as_fraction()
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, (Decimal, str)):
        return Fraction(Decimal(x))
    raise TypeError(f"unsupported input type {type(x)!r}")


def cf_expand(x: RealLike, max_terms: int | None = None) -> CFExpansion:
    """Continued fraction [a0; a1, ...] of x with its convergent table.

    Exact rational inputs (int, Fraction, Rational) terminate exactly.  Real
    inputs (float, Decimal, str) carry finitely many significant digits; the
    expansion stops once the residual |x - p_n/q_n| drops below
    10^-(digits-10), before the spurious terminal quotients of the binary or
    decimal representation can surface.  max_terms must be positive for real
    inputs and bounds the expansion either way.
    """
    digits = _significant_digits(x)
    inexact = digits > 0
    if inexact and (max_terms is None or max_terms <= 0):
        raise ValueError("max_terms must be positive for real input")
    value = _as_fraction(x)
    cutoff = Fraction(1, 10 ** (digits - 10)) if inexact else None

    quotients: list[int] = []
    rest = value
    exact_end = False
    while True:
        a = math.floor(rest)
        quotients.append(a)
        frac_part = rest - a
        if frac_part == 0:
            exact_end = True
            break
        if max_terms is not None and len(quotients) >= max_terms:
            break
        rest = 1 / frac_part
        if cutoff is not None and len(quotients) >= 2:
            p, q = _convergents(quotients)[-1]
            if abs(value - Fraction(p, q)) < cutoff:
                break

    # canonical form: a terminating expansion never ends in 1 (fold into the
    # previous quotient) unless it is the whole number itself
    if exact_end and len(quotients) > 1 and quotients[-1] == 1:
        quotients.pop()
        quotients[-1] += 1

    return CFExpansion(tuple(quotients), tuple(_convergents(quotients)), exact_end)


@dataclass(frozen=True)
class TildePair:
    """Numerator and denominator of the reduced form of 2p/q."""

    p_tilde: int
    q_tilde: int


def tilde_pair(pq: Rational) -> TildePair:
    """Reduced fraction of 2p/q: (2p, q) for odd q, (p, q/2) for even q."""
    p, q = pq.num, pq.den
    if not 0 <= p < q:
        raise ValueError(f"need 0 <= p < q, got {pq}")
    if q % 2 == 1:
        return TildePair(2 * p, q)
    return TildePair(p, q // 2)


def classify_mod4(pq: Rational) -> Mod4Class:
    """Q013 iff q = 0,1,3 (mod 4); Q2 iff q = 2 (mod 4)."""
    return Mod4Class.Q2 if pq.den % 4 == 2 else Mod4Class.Q013


def _log_int(n: int) -> float:
    """Natural log of a positive integer of arbitrary size."""
    b = n.bit_length()
    if b <= 1000:
        return math.log(n)
    shift = b - 64
    return math.log(n >> shift) + shift * math.log(2)


def _log_fraction(f: Fraction) -> float:
    return _log_int(f.numerator) - _log_int(f.denominator)


@dataclass(frozen=True)
class GammaSequence:
    """Approximation exponents gamma_n with |x - p_n/q_n| = q_n^-gamma_n."""

    entries: tuple[tuple[int, int, float], ...]  # (n, q_n mod 4, gamma_n)
    gamma_limsup: float


def gamma_exponents(x: RealLike, depth: int) -> GammaSequence:
    """gamma_n over the first `depth` convergents of x, and the finite-depth
    limsup surrogate over denominators q_n = 0,1,3 (mod 4).

    The surrogate is the max over the last ceil(depth/2) qualifying entries;
    early convergents are excluded because they bias the estimate.  Exactly
    rational x whose expansion terminates within reach raises: gamma is
    undefined beyond the terminal convergent.
    """
    if depth < 2:
        raise ValueError("depth must be at least 2")
    cf = cf_expand(x, max_terms=depth + 1)
    if cf.exact and len(cf) <= depth + 1:
        raise ValueError(f"input is rational at depth {len(cf) - 1}: gamma undefined")
    value = _as_fraction(x)

    entries = []
    for n, (p, q) in enumerate(cf.convergents[:depth]):
        if q < 2:
            continue
        err = abs(value - Fraction(p, q))
        if err == 0:
            raise ValueError(f"input equals convergent {p}/{q}: gamma undefined")
        gamma_n = -_log_fraction(err) / _log_int(q)
        entries.append((n, q % 4, gamma_n))

    qualifying = [g for (_, r, g) in entries if r != 2]
    if not qualifying:
        raise ValueError("no convergents with q = 0,1,3 (mod 4) in range")
    window = max(1, math.ceil(depth / 2))
    return GammaSequence(tuple(entries), max(qualifying[-window:]))


@dataclass(frozen=True)
class BuiltIrrational:
    """Test point with prescribed approximation exponent beta."""

    value: Fraction  # deep convergent standing in for the irrational limit
    decimal: str  # 120 significant digits
    cf: CFExpansion


def build_irrational(beta: float, depth: int, guard_terms: int = 3) -> BuiltIrrational:
    """Number in (0,1) whose convergents satisfy |x - p_n/q_n| ~ q_n^-beta.

    Partial quotients follow a_{n+1} = max(1, round(q_n^(beta-2))), so the
    next convergent improves on q_n^2 by the prescribed factor.  The value
    returned is the convergent `guard_terms` levels beyond `depth`, exact as
    a Fraction; q_n is capped at 10^60.
    """
    if beta < 2:
        raise ValueError(f"beta must be >= 2, got {beta}")
    if depth < 1:
        raise ValueError("depth must be positive")
    quotients = [0, 1]
    p_prev, q_prev = 1, 0
    p, q = 0, 1
    for a in quotients[1:]:
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
    while len(quotients) < depth + 1 + guard_terms:
        a_next = max(1, round(q ** (beta - 2.0)))
        q_next = a_next * q + q_prev
        if q_next > Q_CAP:
            if len(quotients) < depth + 1:
                raise ValueError(
                    f"q_n exceeds {Q_CAP:.0e} at term {len(quotients)}; lower depth or beta"
                )
            break
        quotients.append(a_next)
        p, p_prev = a_next * p + p_prev, p
        q, q_prev = q_next, q

    value = Fraction(p, q)
    with localcontext() as ctx:
        ctx.prec = 120
        dec = Decimal(value.numerator) / Decimal(value.denominator)
    head = quotients[: depth + 1]
    cf = CFExpansion(tuple(head), tuple(_convergents(head)), False)
    return BuiltIrrational(value, str(dec), cf)


def totient(q: int) -> int:
    """Euler's totient by trial division up to sqrt(q)."""
    if q <= 0:
        raise ValueError("totient needs q >= 1")
    result = q
    n = q
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if n > 1:
        result -= result // n
    return result
