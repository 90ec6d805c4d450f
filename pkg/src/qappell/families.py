"""q-Appell families: their numbers, polynomials, products and identities.

A family is determined by its number sequence A_0, A_1, ... (with the
normalization A_0 = 1 for the built-ins); the degree-n member is

    P_n(x) = sum_k C(n,k)_q A_k x^(n-k),

so P_n(0) = A_n and D_q P_n = [n]_q P_{n-1} holds for any number
sequence.  The companion beta sequence is the reciprocal of the numbers
under the q-binomial convolution; it drives the determinant construction
and the inversion identities.

Built-ins
---------
bernoulli       beta_m = 1/[m+1]_q, numbers by reciprocal
euler           beta_0 = 1, beta_m = 1/2, numbers by reciprocal
genocchi-det    beta_0 = 1, beta_m = 1/(2 [m+1]_q), numbers by reciprocal
genocchi-table  numbers taken from the published closed forms (n <= 4),
                beta by reciprocal

The two Genocchi variants intentionally disagree: the published
determinant recipe (genocchi-det) and the published number values
(genocchi-table) are not reciprocal to one another, and the generating
function 2t/(e_q(t)+1) has a vanishing constant term so it cannot be
inverted at all.  Both variants are kept so that every published table
can be reproduced and the inconsistency can be exhibited rather than
silently resolved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .qcore import QContext, QPoly, q_derive
from .series import ESeq, NonInvertibleError, convolve, reciprocal

__all__ = [
    "BUILTIN_NAMES",
    "GENOCCHI_TABLE_MAX_ORDER",
    "FamilySpec",
    "AppellFamily",
    "FamilyError",
    "resolve",
    "product_family",
    "pair_family",
    "iterate2",
    "iterate2_numbers",
    "umbral_compose",
    "apply_operator",
    "identity_residuals",
    "genocchi_table_numbers",
]

BUILTIN_NAMES = ("bernoulli", "euler", "genocchi-det", "genocchi-table")

DEFAULT_ORDER = 12

# The published closed forms for the table-Genocchi numbers stop at n=4.
GENOCCHI_TABLE_MAX_ORDER = 4


class FamilyError(ValueError):
    """A family spec cannot be resolved (unknown name, bad order, ...)."""


@dataclass(frozen=True)
class FamilySpec:
    """One of: a built-in name, a custom number sequence, a custom beta."""

    kind: str  # "builtin" | "numbers" | "beta"
    name: str = ""
    seq: Optional[ESeq] = None

    @staticmethod
    def builtin(name: str) -> "FamilySpec":
        key = name.strip().lower().replace("_", "-")
        if key not in BUILTIN_NAMES:
            raise FamilyError(
                f"unknown family {name!r}; choose from {', '.join(BUILTIN_NAMES)}"
            )
        return FamilySpec("builtin", name=key)

    @staticmethod
    def from_numbers(seq: ESeq) -> "FamilySpec":
        return FamilySpec("numbers", seq=seq)

    @staticmethod
    def from_beta(seq: ESeq) -> "FamilySpec":
        return FamilySpec("beta", seq=seq)

    @property
    def label(self) -> str:
        if self.kind == "builtin":
            return self.name
        return f"custom-{self.kind}"


class AppellFamily:
    """A resolved family: context, order, numbers, beta and a label."""

    __slots__ = ("ctx", "order", "numbers", "beta", "label", "_polys")

    def __init__(self, ctx: QContext, numbers: ESeq, beta: ESeq, label: str):
        if numbers.ctx.q != ctx.q or beta.ctx.q != ctx.q:
            raise FamilyError("numbers/beta context does not match the family context")
        if numbers.order != beta.order:
            raise FamilyError("numbers and beta must share one truncation order")
        self.ctx = ctx
        self.order = numbers.order
        self.numbers = numbers
        self.beta = beta
        self.label = label
        self._polys: dict[int, QPoly] = {}

    def __repr__(self) -> str:
        return f"AppellFamily({self.label}, q={self.ctx.q}, order={self.order})"

    def number(self, n: int) -> Fraction:
        """A_n, the value of the degree-n member at x = 0."""
        if n > self.order:
            raise FamilyError(f"n={n} exceeds the truncation order {self.order}")
        return self.numbers[n]

    def poly(self, n: int) -> QPoly:
        """The degree-n member P_n(x) = sum_k C(n,k)_q A_k x^(n-k)."""
        if n > self.order:
            raise FamilyError(f"n={n} exceeds the truncation order {self.order}")
        got = self._polys.get(n)
        if got is None:
            coeffs = [Fraction(0)] * (n + 1)
            for k in range(n + 1):
                coeffs[n - k] = self.ctx.q_binomial(n, k) * self.numbers[k]
            got = QPoly(coeffs)
            self._polys[n] = got
        return got

    def polys(self, upto: int) -> list[QPoly]:
        return [self.poly(n) for n in range(upto + 1)]

    def eval_at_zero(self, n: int) -> Fraction:
        """P_n(0); equals number(n) by construction, kept as a cross-check."""
        return self.poly(n)(0)


def _beta_bernoulli(ctx: QContext, order: int) -> ESeq:
    return ESeq(ctx, [1 / ctx.q_number(m + 1) for m in range(order + 1)])


def _beta_euler(ctx: QContext, order: int) -> ESeq:
    return ESeq(ctx, [Fraction(1)] + [Fraction(1, 2)] * order)


def _beta_genocchi_det(ctx: QContext, order: int) -> ESeq:
    return ESeq(
        ctx,
        [Fraction(1)] + [1 / (2 * ctx.q_number(m + 1)) for m in range(1, order + 1)],
    )


def genocchi_table_numbers(ctx: QContext, order: int = GENOCCHI_TABLE_MAX_ORDER) -> ESeq:
    """The published closed-form Genocchi numbers, evaluated exactly at q.

    Only n = 0..4 were ever published, so the order is capped at 4.
    """
    if order > GENOCCHI_TABLE_MAX_ORDER:
        raise FamilyError(
            f"genocchi-table numbers are only known up to n={GENOCCHI_TABLE_MAX_ORDER};"
            f" requested order {order}"
        )
    q = ctx.q
    g0 = Fraction(1)
    g1 = q / (1 + q)
    g2 = -(q**3 + 3 * q**2 + 4 * q + 3) / ((1 + q) * (1 + q + q**2))
    g3 = (2 * q**3 + q**2) / (1 + q) ** 2
    g4 = (
        ((2 * q**3 + q**2) / (1 + q) ** 2
         + (q**3 + 3 * q**2 + 4 * q + 3) / ((1 + q) * (1 + q + q**2)))
        / (1 + q**2)
        - q / (q + 1)
        - 1 / ctx.q_number(5)
        - 1
    )
    return ESeq(ctx, (g0, g1, g2, g3, g4)[: order + 1])


def resolve(spec: FamilySpec, ctx: QContext, order: int = DEFAULT_ORDER) -> AppellFamily:
    """Build the numbers/beta pair an order-N family needs from its spec."""
    if order < 0:
        raise FamilyError(f"order must be >= 0, got {order}")
    if spec.kind == "builtin":
        if spec.name == "bernoulli":
            beta = _beta_bernoulli(ctx, order)
            return AppellFamily(ctx, reciprocal(beta), beta, spec.name)
        if spec.name == "euler":
            beta = _beta_euler(ctx, order)
            return AppellFamily(ctx, reciprocal(beta), beta, spec.name)
        if spec.name == "genocchi-det":
            beta = _beta_genocchi_det(ctx, order)
            return AppellFamily(ctx, reciprocal(beta), beta, spec.name)
        if spec.name == "genocchi-table":
            numbers = genocchi_table_numbers(ctx, order)
            return AppellFamily(ctx, numbers, reciprocal(numbers), spec.name)
        raise FamilyError(f"unknown builtin {spec.name!r}")

    seq = spec.seq
    if seq is None:
        raise FamilyError("custom family spec carries no sequence")
    if seq.ctx.q != ctx.q:
        raise FamilyError("custom sequence was built for a different q")
    if seq.order < order:
        raise FamilyError(
            f"custom sequence has order {seq.order}, cannot resolve order {order}"
        )
    seq = seq.truncated(order)
    if spec.kind == "numbers":
        try:
            return AppellFamily(ctx, seq, reciprocal(seq), spec.label)
        except NonInvertibleError as exc:
            raise FamilyError(f"number sequence is not invertible: {exc}") from exc
    if spec.kind == "beta":
        try:
            return AppellFamily(ctx, reciprocal(seq), seq, spec.label)
        except NonInvertibleError as exc:
            raise FamilyError(f"beta sequence is not invertible: {exc}") from exc
    raise FamilyError(f"unknown spec kind {spec.kind!r}")


def product_family(a: AppellFamily, b: AppellFamily) -> AppellFamily:
    """The family generated by the product of two determining functions.

    Its numbers are the convolution of the factors' numbers, and its beta
    is the convolution of the factors' betas (reciprocals multiply).
    """
    return AppellFamily(
        a.ctx,
        convolve(a.numbers, b.numbers),
        convolve(a.beta, b.beta),
        f"{a.label}*{b.label}",
    )


def pair_family(
    spec_i: FamilySpec, spec_ii: FamilySpec, ctx: QContext, order: int = DEFAULT_ORDER
) -> AppellFamily:
    """Resolve both specs and form their product family."""
    return product_family(resolve(spec_i, ctx, order), resolve(spec_ii, ctx, order))


def iterate2(
    spec_i: FamilySpec, spec_ii: FamilySpec, ctx: QContext, order: int, n: int
) -> QPoly:
    """Degree-n member of the 2-iterated family, by the direct double sum

        sum_k C(n,k)_q A^I_k P^II_{n-k}(x),

    where the first spec contributes numbers and the second polynomials.
    """
    if n > order:
        raise FamilyError(f"n={n} exceeds the truncation order {order}")
    fam_i = resolve(spec_i, ctx, order)
    fam_ii = resolve(spec_ii, ctx, order)
    acc = QPoly.zero()
    for k in range(n + 1):
        acc = acc + ctx.q_binomial(n, k) * fam_i.numbers[k] * fam_ii.poly(n - k)
    return acc


def iterate2_numbers(
    spec_i: FamilySpec, spec_ii: FamilySpec, ctx: QContext, order: int, n: int
) -> Fraction:
    """The 2-iterated number sum_k C(n,k)_q A^I_k A^II_{n-k}."""
    if n > order:
        raise FamilyError(f"n={n} exceeds the truncation order {order}")
    fam_i = resolve(spec_i, ctx, order)
    fam_ii = resolve(spec_ii, ctx, order)
    s = Fraction(0)
    for k in range(n + 1):
        s += ctx.q_binomial(n, k) * fam_i.numbers[k] * fam_ii.numbers[n - k]
    return s


def umbral_compose(
    polys_a: Sequence[QPoly], polys_b: Sequence[QPoly], n: int
) -> QPoly:
    """Substitute the second sequence for the monomial basis of the first:

        (A o B)_n(x) = sum_k a_{n,k} B_k(x),

    where a_{n,k} is the x^k coefficient of A_n(x).
    """
    a_n = polys_a[n]
    acc = QPoly.zero()
    for k in range(a_n.degree + 1):
        c = a_n.coeff(k)
        if c != 0:
            acc = acc + c * polys_b[k]
    return acc


def apply_operator(coeffs: ESeq, p: QPoly) -> QPoly:
    """Apply sum_k (c_k/[k]_q!) D_q^k to p; the sum stops at deg p."""
    ctx = coeffs.ctx
    if not p.is_zero and coeffs.order < p.degree:
        raise ValueError(
            f"operator coefficients stop at order {coeffs.order}, "
            f"polynomial has degree {p.degree}"
        )
    acc = QPoly.zero()
    d = p
    k = 0
    while not d.is_zero:
        acc = acc + (coeffs[k] / ctx.q_factorial(k)) * d
        d = q_derive(d, ctx)
        k += 1
    return acc


def identity_residuals(fam: AppellFamily, n: int) -> tuple[QPoly, QPoly]:
    """Left-minus-right residuals of the two inversion identities:

        x^n    - sum_k C(n,k)_q beta_{n-k} P_k(x)
        P_n(x) - sum_k C(n,k)_q beta_{n-k} P2_k(x)

    with P2 the 2-iterated (self-product) family.  Both must vanish; n=0
    is a zero residual by convention.
    """
    if n == 0:
        return QPoly.zero(), QPoly.zero()
    if n > fam.order:
        raise FamilyError(f"n={n} exceeds the truncation order {fam.order}")
    ctx = fam.ctx
    squared = product_family(fam, fam)
    first = QPoly.monomial(n)
    second = fam.poly(n)
    for k in range(n + 1):
        w = ctx.q_binomial(n, k) * fam.beta[n - k]
        first = first - w * fam.poly(k)
        second = second - w * squared.poly(k)
    return first, second
