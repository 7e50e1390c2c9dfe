"""Numeric kernel for the geometric grids.

The rounding base is always a dyadic rational ``q = 1 + 2**-t``, so every
power ``q**j`` is exactly representable as an integer scaled by ``2**(t*j)``
and multiplying by ``q`` is a shift plus an add.  Two comparison regimes are
provided:

* exact integer arithmetic on the common-denominator representation, used
  when the grid is small enough for megabit-free numbers, and
* certified floating-point comparison (double, then 240-bit mpmath, then an
  exact integer fallback) for large grids, where literal dyadic values would
  run to millions of bits.

Both regimes decide every comparison exactly; the certified path merely
avoids building the exact representation unless the approximations cannot
separate the operands.  A sum of two or more powers of q can never equal a
single power (parity argument on the odd numerators), so the exact fallback
only ever breaks near-ties, not true ties.
"""
from __future__ import annotations

import math
from decimal import Decimal, localcontext, ROUND_CEILING, ROUND_FLOOR, ROUND_HALF_EVEN
from fractions import Fraction

import mpmath

from .errors import InvalidParameterError

try:  # pure optional speedup for the (practically unreachable) exact fallback
    from gmpy2 import mpz as _bigint
except Exception:  # pragma: no cover
    _bigint = int

_DOUBLE_MARGIN = 1e-9
_MP_PREC = 240
_MP_MARGIN = mpmath.mpf("1e-50")


def smallest_dyadic_exponent(eps: Fraction, power: int) -> int:
    """Smallest t >= 0 with (1 + 2**-t) ** power <= 1 + eps (exact check)."""
    if eps <= 0:
        raise InvalidParameterError(f"epsilon must be positive, got {eps}")
    if power < 1:
        raise InvalidParameterError(f"fineness power must be >= 1, got {power}")
    bound = 1 + eps
    t = 0
    while Fraction(2 ** t + 1, 2 ** t) ** power > bound:
        t += 1
    return t


def dyadic_base(t_exp: int) -> Fraction:
    return Fraction(2 ** t_exp + 1, 2 ** t_exp)


class _PowerLadder:
    """Incrementally extended table of exact powers of one dyadic base."""

    __slots__ = ("base", "pos", "neg")

    def __init__(self, t_exp: int):
        self.base = dyadic_base(t_exp)
        self.pos = [Fraction(1)]
        self.neg = [Fraction(1)]

    def get(self, exponent: int) -> Fraction:
        if exponent >= 0:
            lst, step = self.pos, self.base
        else:
            lst, step, exponent = self.neg, 1 / self.base, -exponent
        while len(lst) <= exponent:
            lst.append(lst[-1] * step)
        return lst[exponent]


_LADDERS: dict[int, _PowerLadder] = {}


def exact_base_power(t_exp: int, exponent: int) -> Fraction:
    """(1 + 2**-t_exp) ** exponent as an exact Fraction, cached per base."""
    ladder = _LADDERS.get(t_exp)
    if ladder is None:
        ladder = _LADDERS[t_exp] = _PowerLadder(t_exp)
    return ladder.get(exponent)


def floor_log_base(t_exp: int, arg) -> int:
    """Largest integer k (any sign) with (1 + 2**-t_exp) ** k <= arg.

    ``arg`` is any positive Fraction.  A high-precision estimate is always
    confirmed against exact powers, so ties (arg equal to a power) resolve
    exactly.
    """
    arg = Fraction(arg)
    if arg <= 0:
        raise InvalidParameterError(f"argument must be positive, got {arg}")
    with mpmath.workprec(max(200, t_exp + 80)):
        log_q = mpmath.log(mpmath.mpf(2 ** t_exp + 1)) - t_exp * mpmath.log(2)
        val = (mpmath.log(mpmath.mpf(arg.numerator))
               - mpmath.log(mpmath.mpf(arg.denominator))) / log_q
        k = int(mpmath.floor(val))
    while exact_base_power(t_exp, k) > arg:
        k -= 1
    while exact_base_power(t_exp, k + 1) <= arg:
        k += 1
    return k


def ceil_log_base(t_exp: int, arg: int) -> int:
    """ceil(log base (1 + 2**-t_exp) of arg) for an integer arg >= 1.

    Computed with 200-bit interval headroom; a power of the base can never
    equal an integer > 1 (odd numerator vs even scale), so the ceiling is
    well defined and the high-precision estimate is decisive.  An exact
    verification pass runs if the estimate lands suspiciously close to an
    integer.
    """
    if arg < 1:
        raise InvalidParameterError(f"argument must be >= 1, got {arg}")
    if arg == 1:
        return 0
    with mpmath.workprec(max(200, t_exp + 80)):
        log_q = mpmath.log(mpmath.mpf(2 ** t_exp + 1)) - t_exp * mpmath.log(2)
        val = mpmath.log(mpmath.mpf(arg)) / log_q
        nearest = mpmath.nint(val)
        if abs(val - nearest) < mpmath.mpf("1e-40"):
            # essentially never: decide exactly on both sides of the candidate
            cand = int(nearest)
            base = dyadic_base(t_exp)
            while base ** cand < arg:
                cand += 1
            while cand > 0 and base ** (cand - 1) >= arg:
                cand -= 1
            return cand
        return int(mpmath.ceil(val))


class ExactAccumulator:
    """Running sum of powers of q over the common denominator 2**(t*s_max).

    ``powers[j]`` holds the numerator of q**j; growing the table is one
    shift-and-add per level.  All comparisons are plain integer compares.
    """

    __slots__ = ("t_exp", "s_max", "powers", "total")

    def __init__(self, t_exp: int, s_max: int):
        self.t_exp = t_exp
        self.s_max = s_max
        self.powers = [1 << (t_exp * s_max)]
        self.total = 0

    def _power(self, j: int) -> int:
        powers = self.powers
        while len(powers) <= j:
            prev = powers[-1]
            powers.append(prev + (prev >> self.t_exp))
        return powers[j]

    def update(self, old_level: int | None, new_level: int) -> None:
        delta = self._power(new_level)
        if old_level is not None:
            delta -= self.powers[old_level]
        self.total += delta

    def max_crossed(self, j_ptr: int) -> int:
        """Largest j <= s_max whose threshold the sum has passed.

        Level j = 0 requires total >= 1; level j >= 1 requires
        total > q**(j-1).
        """
        j = j_ptr
        if j < 0:
            if self.total >= self.powers[0]:
                j = 0
            else:
                return j_ptr
        while j < self.s_max and self.total > self._power(j):
            j += 1
        return j


class CertifiedAccumulator:
    """Same contract as ExactAccumulator for grids too large for exact dyadics.

    State is just the multiset of current per-edge exponents.  Threshold
    queries go through a certified comparison: a quick double-precision
    filter with a proven error margin, an mpmath retry, and an exact integer
    last resort.
    """

    __slots__ = ("t_exp", "s_max", "counts", "k_max", "n_terms", "log2q")

    def __init__(self, t_exp: int, s_max: int):
        self.t_exp = t_exp
        self.s_max = s_max
        self.counts: dict[int, int] = {}
        self.k_max = -1
        self.n_terms = 0
        self.log2q = math.log2(1.0 + 2.0 ** -t_exp)

    def update(self, old_level: int | None, new_level: int) -> None:
        counts = self.counts
        if old_level is not None:
            left = counts[old_level] - 1
            if left:
                counts[old_level] = left
            else:
                del counts[old_level]
        else:
            self.n_terms += 1
        counts[new_level] = counts.get(new_level, 0) + 1
        if new_level > self.k_max:
            self.k_max = new_level

    # -- comparison core --

    def _double_sum(self) -> float:
        k_max = self.k_max
        lg = self.log2q
        total = 0.0
        for k, cnt in sorted(self.counts.items()):
            total += cnt * 2.0 ** ((k - k_max) * lg)
        return total

    def _sign_vs_power(self, c: int) -> int:
        """Sign of (sum of q**k over current levels) - q**c."""
        if self.n_terms == 0:
            return -1
        k_max = self.k_max
        if c < k_max:
            return 1
        if c == k_max:
            if self.n_terms == 1:
                return 0
            return 1
        # c > k_max: compare log2(S) with (c - k_max) * log2(q), S in [1, d]
        gap_bits = (c - k_max) * self.log2q
        if gap_bits > math.log2(self.n_terms) + 1e-6:
            return -1
        diff = math.log2(self._double_sum()) - gap_bits
        if abs(diff) > _DOUBLE_MARGIN:
            return 1 if diff > 0 else -1
        sign = self._sign_mpmath(c)
        if sign is not None:
            return sign
        return self._sign_exact(c)

    def _sign_mpmath(self, c: int) -> int | None:
        with mpmath.workprec(_MP_PREC):
            lg = mpmath.log(mpmath.mpf(2 ** self.t_exp + 1), 2) - self.t_exp
            k_max = self.k_max
            total = mpmath.mpf(0)
            for k, cnt in sorted(self.counts.items()):
                total += cnt * mpmath.power(2, (k - k_max) * lg)
            diff = mpmath.log(total, 2) - (c - k_max) * lg
            if abs(diff) > _MP_MARGIN:
                return 1 if diff > 0 else -1
        return None

    def _sign_exact(self, c: int) -> int:  # pragma: no cover - near-tie only
        base = min(min(self.counts), c)
        top = max(self.k_max, c)
        t = self.t_exp
        odd = _bigint(2 ** t + 1)
        lhs = _bigint(0)
        for k, cnt in self.counts.items():
            lhs += cnt * odd ** (k - base) << (t * (top - k))
        rhs = odd ** (c - base) << (t * (top - c))
        return (lhs > rhs) - (lhs < rhs)

    def max_crossed(self, j_ptr: int) -> int:
        if self.n_terms == 0:
            return j_ptr
        # estimate log_q(sum), then walk to the exact boundary
        est = self.k_max + math.log2(self._double_sum()) / self.log2q
        i = min(math.floor(est), self.s_max - 1)
        # largest i with q**i < sum  (never beyond s_max - 1: j is capped)
        if i >= 0 and self._sign_vs_power(i) <= 0:
            while i >= 0 and self._sign_vs_power(i) <= 0:
                i -= 1
        else:
            while i + 1 <= self.s_max - 1 and self._sign_vs_power(i + 1) > 0:
                i += 1
        j = i + 1
        return j if j > j_ptr else j_ptr


# thresholds for choosing the exact representation: bounded table height and
# bounded total memory for the power table (roughly t * s_max**2 / 16 bytes)
_EXACT_MAX_S = 8000
_EXACT_MAX_TS2 = 1_200_000_000


def make_accumulator(t_exp: int, s_max: int, mode: str = "auto"):
    if mode == "exact":
        return ExactAccumulator(t_exp, s_max)
    if mode == "certified":
        return CertifiedAccumulator(t_exp, s_max)
    if mode != "auto":
        raise InvalidParameterError(f"unknown accumulator mode {mode!r}")
    if s_max <= _EXACT_MAX_S and t_exp * s_max * s_max <= _EXACT_MAX_TS2:
        return ExactAccumulator(t_exp, s_max)
    return CertifiedAccumulator(t_exp, s_max)


# ---- decimal rendering ----

_ROUNDING = {
    "nearest": ROUND_HALF_EVEN,
    "floor": ROUND_FLOOR,
    "ceiling": ROUND_CEILING,
}


def fraction_to_decimal(value: Fraction, digits: int = 28, rounding: str = "nearest") -> str:
    """Decimal string with the given significant digits and rounding mode."""
    if value == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = _ROUNDING[rounding]
        out = Decimal(value.numerator) / Decimal(value.denominator)
    return format(out, "f")


_EXACT_RENDER_BITS = 40_000


def power_decimal(t_exp: int, exponent: int, scale: Fraction, rounding: str,
                  digits: int = 28) -> str:
    """Decimal rendering of scale * (1 + 2**-t_exp) ** exponent.

    Exact-then-round when the dyadic representation is modest; for huge
    exponents an mpmath evaluation with directed slack is used, widening by
    less than 1e-38 relative in the requested direction.
    """
    if t_exp * exponent <= _EXACT_RENDER_BITS:
        return fraction_to_decimal(scale * dyadic_base(t_exp) ** exponent,
                                   digits, rounding)
    with mpmath.workprec(max(200, digits * 4 + 80)):
        log2q = mpmath.log(mpmath.mpf(2 ** t_exp + 1), 2) - t_exp
        val = mpmath.power(2, exponent * log2q)
        val *= mpmath.mpf(scale.numerator) / scale.denominator
        slack = mpmath.mpf("1e-38")
        if rounding == "floor":
            val *= 1 - slack
        elif rounding == "ceiling":
            val *= 1 + slack
        return mpmath.nstr(val, digits, strip_zeros=True)
