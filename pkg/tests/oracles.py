"""Independent oracles used across the test suite.

These deliberately avoid the package's integer-sqrt route: floors of
n*sqrt2 and n/sqrt2 are bracketed with the decimal module at 80
significant digits (about 265 bits) under directed rounding, so any
floor they certify is unambiguous.
"""

from decimal import Context, Decimal, ROUND_CEILING, ROUND_FLOOR

_PREC = 80
_CTX_LO = Context(prec=_PREC, rounding=ROUND_FLOOR)
_CTX_HI = Context(prec=_PREC, rounding=ROUND_CEILING)
_SQRT2_LO = _CTX_LO.sqrt(Decimal(2))
_SQRT2_HI = _CTX_HI.sqrt(Decimal(2))


def floor_mul_sqrt2(n: int) -> int:
    """floor(n * sqrt2) certified by directed rounding."""
    lo = _CTX_LO.multiply(Decimal(n), _SQRT2_LO)
    hi = _CTX_HI.multiply(Decimal(n), _SQRT2_HI)
    f_lo, f_hi = int(lo), int(hi)
    assert f_lo == f_hi, f"ambiguous floor for {n}*sqrt2 at {_PREC} digits"
    return f_lo


def floor_div_sqrt2(n: int) -> int:
    """floor(n / sqrt2) certified by directed rounding."""
    lo = _CTX_LO.divide(Decimal(n), _SQRT2_HI)
    hi = _CTX_HI.divide(Decimal(n), _SQRT2_LO)
    f_lo, f_hi = int(lo), int(hi)
    assert f_lo == f_hi, f"ambiguous floor for {n}/sqrt2 at {_PREC} digits"
    return f_lo


def floor_sqrt(x: int) -> int:
    """floor(sqrt(x)) certified by directed rounding."""
    lo = _CTX_LO.sqrt(Decimal(x))
    hi = _CTX_HI.sqrt(Decimal(x))
    f_lo, f_hi = int(lo), int(hi)
    assert f_lo == f_hi, f"ambiguous sqrt floor for {x} at {_PREC} digits"
    return f_lo


def reference_step(n: int) -> int:
    """The map evaluated entirely through the decimal brackets."""
    return floor_div_sqrt2(n) if n % 2 == 0 else floor_mul_sqrt2(n)
