"""Rendering helpers: rationals, fixed-point decimals, polynomials, roots."""

from __future__ import annotations

from fractions import Fraction

from .qcore import QPoly

__all__ = ["frac_str", "decimal_str", "poly_text", "real_str", "pair_str"]


def frac_str(x: Fraction) -> str:
    """'p/r' (or plain 'p' for integers); the JSON wire form for rationals."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def decimal_str(x: Fraction, places: int = 12) -> str:
    """Fixed-point decimal string of an exact rational, round-half-even."""
    x = Fraction(x)
    scaled = x * 10**places
    i = round(scaled)  # Fraction.__round__ is exact and half-even
    sign = "-" if i < 0 else ""
    digits = str(abs(i)).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}" if places else f"{sign}{digits}"


def _term(coeff: Fraction, power: int) -> str:
    if power == 0:
        return frac_str(coeff)
    body = "x" if power == 1 else f"x^{power}"
    if coeff == 1:
        return body
    if coeff == -1:
        return f"-{body}"
    return f"{frac_str(coeff)}{body}"


def poly_text(p: QPoly) -> str:
    """Human form, highest power first, e.g. 'x^2 - 2x + 6/7'."""
    if p.is_zero:
        return "0"
    parts: list[str] = []
    for power in range(p.degree, -1, -1):
        c = p.coeff(power)
        if c == 0:
            continue
        piece = _term(c, power)
        if not parts:
            parts.append(piece)
        elif piece.startswith("-"):
            parts.append(f"- {piece[1:]}")
        else:
            parts.append(f"+ {piece}")
    return " ".join(parts)


def real_str(v: float, places: int = 4) -> str:
    """Rounded real, avoiding '-0.0000'."""
    s = f"{v:.{places}f}"
    if s == f"-{0:.{places}f}":
        s = f"{0:.{places}f}"
    return s


def pair_str(z: complex, places: int = 4) -> str:
    """'a+bi' / 'a-bi' with both parts rounded."""
    re = real_str(z.real, places)
    im = abs(z.imag)
    sign = "+" if z.imag >= 0 else "-"
    return f"{re}{sign}{im:.{places}f}i"
