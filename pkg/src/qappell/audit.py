"""Cross-checks of the engine against the bundled published reference tables.

The package ships a verbatim transcription of the published value tables
for the plain, 2-iterated and mixed families (``data/printed_tables.json``),
together with a registry of known misprints in them.  ``run_verify`` first
executes the exact property suite (ladder, reciprocal orthogonality,
cross-method equality, the inversion identities, commutativity, Vieta and
zero-count checks) and then compares engine output against the printed
values.  Each comparison gets one of three statuses:

    match                 equal (exactly for rationals, within 5e-5 for
                          printed 4-decimal zeros)
    paper-typo-suspected  differs, and the difference is in the misprint
                          registry; both values are reported
    mismatch              unexpected divergence, treated as an engine bug

Property failures and mismatches fail the report; suspected misprints do
not, they are its point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .determinant import det_appell_poly, det_pair_poly
from .families import (
    AppellFamily,
    FamilySpec,
    GENOCCHI_TABLE_MAX_ORDER,
    apply_operator,
    genocchi_table_numbers,
    identity_residuals,
    iterate2,
    product_family,
    resolve,
    umbral_compose,
)
from .fmt import decimal_str, frac_str, pair_str, poly_text, real_str
from .qcore import QContext, QPoly, q_derive
from .roots import RootSet, find_roots, vieta_residuals
from .series import convolve, shift_up, unit

__all__ = [
    "CheckRecord",
    "PropertyRecord",
    "VerifyReport",
    "run_verify",
    "load_fixture",
    "printed_number",
    "printed_family_poly",
]

ZERO_MATCH_TOL = 5e-5
VIETA_TOL = 1e-9

_PLAIN_KEYS = ("bernoulli", "euler", "genocchi")
_FAMILY_ORDER = (
    "bernoulli2",
    "euler2",
    "genocchi2",
    "bernoulli_euler",
    "bernoulli_genocchi",
    "euler_genocchi",
)
_BUILTINS = ("bernoulli", "euler", "genocchi-det", "genocchi-table")


def load_fixture() -> dict:
    """The bundled printed-table transcription."""
    text = (
        resources.files("qappell")
        .joinpath("data/printed_tables.json")
        .read_text(encoding="utf-8")
    )
    return json.loads(text)


# ---------------------------------------------------------------------------
# printed closed forms (functions of q, transcribed verbatim)
# ---------------------------------------------------------------------------


def printed_number(ctx: QContext, family: str, n: int) -> Fraction:
    """The published closed-form number, evaluated exactly at ctx.q."""
    q = ctx.q
    qn = ctx.q_number
    if family == "bernoulli":
        forms = (
            Fraction(1),
            -1 / (1 + q),
            q**2 / ctx.q_factorial(3),
            (1 - q) * q**3 / (qn(2) * qn(4)),
            q**4 * (1 - q**2 - 2 * q**3 - q**4 + q**6) / (qn(2) ** 2 * qn(3) * qn(5)),
        )
    elif family == "euler":
        forms = (
            Fraction(1),
            Fraction(-1, 2),
            (q - 1) / 4,
            (-1 + 2 * q + 2 * q**2 - q**3) / 8,
            (q - 1) * ctx.q_factorial(3) * (q**2 - 4 * q + 1) / 16,
        )
    elif family == "genocchi":
        return genocchi_table_numbers(ctx)[n]
    else:
        raise ValueError(f"no published numbers for {family!r}")
    return forms[n]


def printed_family_poly(ctx: QContext, family: str, n: int) -> QPoly:
    """The published degree-n polynomial (coefficients as printed).

    The Genocchi row reproduces two misprints on purpose: the degree-3
    constant lacks a square in its denominator and the degree-4
    x coefficient carries exponent 4 instead of 2.
    """
    q = ctx.q
    qn = ctx.q_number
    g = genocchi_table_numbers(ctx)
    if family == "bernoulli":
        rows = {
            0: [Fraction(1)],
            1: [1, -1 / (1 + q)],
            2: [1, -qn(2) / (1 + q), q**2 / (qn(3) * qn(2))],
            3: [1, -qn(3) / (1 + q), q**2 / qn(2), (1 - q) * q**3 / (qn(2) * qn(4))],
            4: [
                1,
                -qn(4) / (1 + q),
                qn(4) * q**2 / qn(2) ** 2,
                (1 - q) * q**3 / qn(2),
                printed_number(ctx, "bernoulli", 4),
            ],
        }
    elif family == "euler":
        e3 = -1 + 2 * q + 2 * q**2 - q**3
        rows = {
            0: [Fraction(1)],
            1: [1, Fraction(-1, 2)],
            2: [1, -qn(2) / 2, (q - 1) / 4],
            3: [1, -qn(3) / 2, qn(3) * (q - 1) / 4, e3 / 8],
            4: [
                1,
                -qn(4) / 2,
                qn(4) * qn(3) * (q - 1) / (4 * qn(2)),
                qn(4) * e3 / 8,
                printed_number(ctx, "euler", 4),
            ],
        }
    elif family == "genocchi":
        big = q**3 + 3 * q**2 + 4 * q + 3
        rows = {
            0: [Fraction(1)],
            1: [1, q / (1 + q)],
            2: [1, q, g[2]],
            3: [1, qn(3) * q / (1 + q), -big / (1 + q), (2 * q**3 + q**2) / (1 + q)],
            4: [
                1,
                qn(4) * q / (1 + q),
                -qn(4) * qn(3) * big / (qn(2) * (1 + q) * (1 + q + q**2)),
                qn(4) * (2 * q**3 + q**4) / (1 + q) ** 2,
                g[4],
            ],
        }
    else:
        raise ValueError(f"no published polynomials for {family!r}")
    coeffs = rows[n]
    return QPoly(list(reversed([Fraction(c) for c in coeffs])))


# ---------------------------------------------------------------------------
# report data model
# ---------------------------------------------------------------------------


@dataclass
class CheckRecord:
    check_id: str
    subject: str
    printed: str
    computed: str
    status: str  # "match" | "paper-typo-suspected" | "mismatch"
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "id": self.check_id,
            "subject": self.subject,
            "printed": self.printed,
            "computed": self.computed,
            "status": self.status,
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class PropertyRecord:
    prop_id: str
    ok: bool
    detail: str

    def to_json(self) -> dict:
        return {"id": self.prop_id, "ok": self.ok, "detail": self.detail}


@dataclass
class VerifyReport:
    q: Fraction
    order: int
    properties: list[PropertyRecord] = field(default_factory=list)
    checks: list[CheckRecord] = field(default_factory=list)
    exhibits: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    def counts(self) -> dict:
        c = {"match": 0, "paper-typo-suspected": 0, "mismatch": 0}
        for rec in self.checks:
            c[rec.status] += 1
        return c

    @property
    def properties_ok(self) -> bool:
        return all(p.ok for p in self.properties)

    @property
    def exit_code(self) -> int:
        if not self.properties_ok:
            return 1
        if self.counts()["mismatch"]:
            return 1
        return 0

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "q": frac_str(self.q),
            "order": self.order,
            "properties": [p.to_json() for p in self.properties],
            "checks": [c.to_json() for c in self.checks],
            "exhibits": list(self.exhibits),
            "skipped": list(self.skipped),
            "summary": {
                **self.counts(),
                "properties_ok": self.properties_ok,
                "exit_code": self.exit_code,
            },
        }

    def to_text(self) -> str:
        lines = [f"verification report  (q = {frac_str(self.q)}, order = {self.order})", ""]
        lines.append("properties:")
        for p in self.properties:
            mark = "ok" if p.ok else "FAIL"
            lines.append(f"  [{mark}] {p.prop_id}: {p.detail}")
        lines.append("")
        lines.append("reference-table checks:")
        for c in self.checks:
            lines.append(f"  [{c.status}] {c.check_id}")
            lines.append(f"      subject:  {c.subject}")
            lines.append(f"      printed:  {c.printed}")
            lines.append(f"      computed: {c.computed}")
            if c.note:
                lines.append(f"      note:     {c.note}")
        if self.skipped:
            lines.append("")
            lines.append("skipped:")
            for s in self.skipped:
                lines.append(f"  - {s}")
        if self.exhibits:
            lines.append("")
            lines.append("exhibits:")
            for e in self.exhibits:
                lines.append(f"  - {e}")
        counts = self.counts()
        lines.append("")
        lines.append(
            "summary: {match} match, {typo} paper-typo-suspected, {mismatch} mismatch; "
            "properties {p}".format(
                match=counts["match"],
                typo=counts["paper-typo-suspected"],
                mismatch=counts["mismatch"],
                p="ok" if self.properties_ok else "FAILED",
            )
        )
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# property suite
# ---------------------------------------------------------------------------


def _order_cap(name: str, requested: int) -> int:
    if name == "genocchi-table":
        return min(requested, GENOCCHI_TABLE_MAX_ORDER)
    return requested


def _ladder_ok(polys: list[QPoly], ctx: QContext) -> bool:
    return all(
        q_derive(polys[n], ctx) == ctx.q_number(n) * polys[n - 1]
        for n in range(1, len(polys))
    )


def run_properties(ctx: QContext, order: int) -> list[PropertyRecord]:
    """The exact whole-pipeline checks; every one must pass."""
    records: list[PropertyRecord] = []
    singles = {
        name: resolve(FamilySpec.builtin(name), ctx, _order_cap(name, order))
        for name in _BUILTINS
    }

    # reciprocal orthogonality: numbers * beta = 1
    ok = True
    for name, fam in singles.items():
        if convolve(fam.numbers, fam.beta) != unit(ctx, fam.order):
            ok = False
    records.append(
        PropertyRecord(
            "reciprocal-orthogonality",
            ok,
            "numbers convolved with beta give the unit sequence, all built-ins",
        )
    )

    # ladder, series route, singles and all ordered pairs
    ok = True
    pair_fams: dict[tuple[str, str], AppellFamily] = {}
    for name, fam in singles.items():
        if not _ladder_ok(fam.polys(fam.order), ctx):
            ok = False
    for a in _BUILTINS:
        for b in _BUILTINS:
            cap = min(_order_cap(a, order), _order_cap(b, order))
            pf = product_family(
                resolve(FamilySpec.builtin(a), ctx, cap),
                resolve(FamilySpec.builtin(b), ctx, cap),
            )
            pair_fams[(a, b)] = pf
            if not _ladder_ok(pf.polys(cap), ctx):
                ok = False
    records.append(
        PropertyRecord(
            "ladder-series",
            ok,
            "D_q P_n = [n]_q P_(n-1) for built-ins and all ordered pairs (series route)",
        )
    )

    # ladder, determinant route
    ok = True
    for name, fam in singles.items():
        det_polys = [det_appell_poly(fam, n) for n in range(fam.order + 1)]
        if not _ladder_ok(det_polys, ctx):
            ok = False
    for (a, b), pf in pair_fams.items():
        fa = resolve(FamilySpec.builtin(a), ctx, pf.order)
        fb = resolve(FamilySpec.builtin(b), ctx, pf.order)
        det_polys = [det_pair_poly(fa, fb, n) for n in range(pf.order + 1)]
        if not _ladder_ok(det_polys, ctx):
            ok = False
    records.append(
        PropertyRecord(
            "ladder-determinant",
            ok,
            "the same ladder along determinant-constructed sequences",
        )
    )

    # cross-method equality: series, determinant, operator (and umbral on pairs)
    ok = True
    for name, fam in singles.items():
        for n in range(fam.order + 1):
            series = fam.poly(n)
            det = det_appell_poly(fam, n)
            oper = apply_operator(fam.numbers, QPoly.monomial(n))
            if not series == det == oper:
                ok = False
    for (a, b), pf in pair_fams.items():
        fa = resolve(FamilySpec.builtin(a), ctx, pf.order)
        fb = resolve(FamilySpec.builtin(b), ctx, pf.order)
        for n in range(pf.order + 1):
            series = iterate2(
                FamilySpec.builtin(a), FamilySpec.builtin(b), ctx, pf.order, n
            )
            det = det_pair_poly(fa, fb, n)
            oper = apply_operator(fa.numbers, fb.poly(n))
            umb = umbral_compose(fa.polys(n), fb.polys(n), n)
            if not series == det == oper == umb == pf.poly(n):
                ok = False
    records.append(
        PropertyRecord(
            "cross-method",
            ok,
            "series, determinant, operator and umbral routes agree exactly",
        )
    )

    # inversion identities
    ok = True
    for name in ("bernoulli", "euler", "genocchi-det", "genocchi-table"):
        fam = singles[name]
        for n in range(1, min(6, fam.order) + 1):
            r1, r2 = identity_residuals(fam, n)
            if not (r1.is_zero and r2.is_zero):
                ok = False
    records.append(
        PropertyRecord(
            "inversion-identities",
            ok,
            "monomial and 2-iterated inversion identities have zero residuals",
        )
    )

    # commutativity of the pair construction
    ok = True
    for a in _BUILTINS:
        for b in _BUILTINS:
            cap = pair_fams[(a, b)].order
            for n in range(cap + 1):
                p_ab = iterate2(
                    FamilySpec.builtin(a), FamilySpec.builtin(b), ctx, cap, n
                )
                p_ba = iterate2(
                    FamilySpec.builtin(b), FamilySpec.builtin(a), ctx, cap, n
                )
                if p_ab != p_ba:
                    ok = False
    records.append(
        PropertyRecord(
            "commutativity",
            ok,
            "the two factor orders give identical polynomials for every pair",
        )
    )
    return records


# ---------------------------------------------------------------------------
# table audits
# ---------------------------------------------------------------------------


def _check(
    checks: list[CheckRecord],
    registry: dict,
    check_id: str,
    subject: str,
    printed: str,
    computed: str,
    equal: bool,
    extra_note: str = "",
) -> None:
    if equal:
        status, note = "match", ""
    elif check_id in registry:
        status, note = "paper-typo-suspected", registry[check_id]
    else:
        status, note = "mismatch", "unexpected divergence; suspect an engine bug"
    if extra_note:
        note = f"{note}; {extra_note}" if note else extra_note
    checks.append(CheckRecord(check_id, subject, printed, computed, status, note))


def _audit_numbers(ctx: QContext, registry: dict, checks: list[CheckRecord]) -> None:
    fams = {
        "bernoulli": resolve(FamilySpec.builtin("bernoulli"), ctx, 4),
        "euler": resolve(FamilySpec.builtin("euler"), ctx, 4),
        "genocchi": resolve(FamilySpec.builtin("genocchi-table"), ctx, 4),
    }
    for key in _PLAIN_KEYS:
        fam = fams[key]
        for n in range(5):
            want = printed_number(ctx, key, n)
            got = fam.number(n)
            _check(
                checks,
                registry,
                f"numbers:{key}:{n}",
                f"q-{key.capitalize()} number, n={n}",
                f"{frac_str(want)} = {decimal_str(want)}",
                f"{frac_str(got)} = {decimal_str(got)}",
                want == got,
            )


def _audit_family_polys(
    ctx: QContext, registry: dict, checks: list[CheckRecord]
) -> None:
    fams = {
        "bernoulli": resolve(FamilySpec.builtin("bernoulli"), ctx, 4),
        "euler": resolve(FamilySpec.builtin("euler"), ctx, 4),
        "genocchi": resolve(FamilySpec.builtin("genocchi-table"), ctx, 4),
    }
    for key in _PLAIN_KEYS:
        fam = fams[key]
        for n in range(5):
            want = printed_family_poly(ctx, key, n)
            got = fam.poly(n)
            _check(
                checks,
                registry,
                f"family-polys:{key}:{n}",
                f"q-{key.capitalize()} polynomial, degree {n}",
                poly_text(want),
                poly_text(got),
                want == got,
            )


def _fixture_poly(coeff_strings: list[str]) -> QPoly:
    return QPoly([Fraction(c) for c in reversed(coeff_strings)])


def _pair_families(ctx: QContext, fixture: dict) -> dict[str, AppellFamily]:
    out = {}
    for key in _FAMILY_ORDER:
        a, b = fixture["families"][key]["pair"]
        out[key] = product_family(
            resolve(FamilySpec.builtin(a), ctx, 4),
            resolve(FamilySpec.builtin(b), ctx, 4),
        )
    return out


def _audit_iterated_polys(
    ctx: QContext, fixture: dict, registry: dict, checks: list[CheckRecord]
) -> None:
    fams = _pair_families(ctx, fixture)
    for key in _FAMILY_ORDER:
        display = fixture["families"][key]["display"]
        for n_str, coeffs in fixture["iterated_polys"][key].items():
            n = int(n_str)
            want = _fixture_poly(coeffs)
            got = fams[key].poly(n)
            _check(
                checks,
                registry,
                f"iterated-polys:{key}:{n}",
                f"{display} polynomial, degree {n}",
                poly_text(want),
                poly_text(got),
                want == got,
            )


def _zeros_match(
    computed: RootSet,
    printed_reals: list[float],
    printed_pairs: list[complex],
    tol: float = ZERO_MATCH_TOL,
) -> bool:
    if len(computed.real_roots) != len(printed_reals):
        return False
    if len(computed.complex_pairs) != len(printed_pairs):
        return False
    for got, want in zip(computed.real_roots, sorted(printed_reals)):
        if abs(got - want) > tol:
            return False
    uppers = sorted((u for u, _ in computed.complex_pairs), key=lambda w: w.real)
    for got, want in zip(uppers, sorted(printed_pairs, key=lambda w: w.real)):
        if abs(got.real - want.real) > tol or abs(got.imag - want.imag) > tol:
            return False
    return True


def _render_rootset(rs: RootSet) -> str:
    parts = []
    if rs.real_roots:
        parts.append("real " + ", ".join(real_str(r) for r in rs.real_roots))
    if rs.complex_pairs:
        parts.append(
            "complex " + ", ".join(pair_str(u) for u, _ in rs.complex_pairs)
        )
    return "; ".join(parts) if parts else "none"


def _audit_zeros(
    ctx: QContext,
    fixture: dict,
    registry: dict,
    checks: list[CheckRecord],
    properties: list[PropertyRecord],
) -> None:
    fams = _pair_families(ctx, fixture)
    worst_vieta = 0.0
    counts_ok = True
    for key in _FAMILY_ORDER:
        display = fixture["families"][key]["display"]
        real_rows = fixture["real_zeros"][key]
        pair_rows = fixture["complex_zeros"].get(key, {})
        for n_str in sorted(real_rows, key=int):
            n = int(n_str)
            poly = fams[key].poly(n)
            rs = find_roots(poly)
            vs, vp = vieta_residuals(poly, rs.roots)
            worst_vieta = max(worst_vieta, vs, vp)
            nreal, ncomplex = rs.counts()
            if nreal + ncomplex != rs.degree:
                counts_ok = False

            printed_reals = [float(s) for s in real_rows[n_str]]
            printed_entries = [
                complex(float(re), float(im)) for re, im in pair_rows.get(n_str, [])
            ]
            printed_uppers = [w for w in printed_entries if w.imag > 0]

            row_misprinted = f"iterated-polys:{key}:{n}" in registry
            extra = ""
            if row_misprinted:
                printed_poly = _fixture_poly(fixture["iterated_polys"][key][n_str])
                extra = (
                    "zeros of the misprinted row itself: "
                    + _render_rootset(find_roots(printed_poly))
                )

            equal = _zeros_match(rs, printed_reals, printed_uppers)
            printed_text = "real " + ", ".join(real_rows[n_str])
            if printed_entries:
                printed_text += "; complex " + ", ".join(
                    pair_str(w) for w in printed_entries
                )
            _check(
                checks,
                registry,
                f"zeros:{key}:{n}",
                f"{display} zeros (real and complex), degree {n}",
                printed_text,
                _render_rootset(rs),
                equal,
                extra_note=extra if not equal else "",
            )
    properties.append(
        PropertyRecord(
            "vieta",
            worst_vieta < VIETA_TOL,
            f"sum/product residuals below {VIETA_TOL:.0e} (worst {worst_vieta:.2e})",
        )
    )
    properties.append(
        PropertyRecord(
            "zero-count",
            counts_ok,
            "real plus complex zero counts equal the degree for every set",
        )
    )


def _exhibits(ctx: QContext) -> list[str]:
    out: list[str] = []
    gt = genocchi_table_numbers(ctx)
    gd = resolve(FamilySpec.builtin("genocchi-det"), ctx, 4)
    out.append(
        "three inequivalent q-Genocchi readings: published numbers "
        f"({', '.join(frac_str(c) for c in gt)}); determinant-recipe numbers "
        f"({', '.join(frac_str(gd.number(n)) for n in range(5))}); the "
        "generating-function form 2t/(e_q(t)+1) has constant term 0 and is "
        "not invertible"
    )
    eul = resolve(FamilySpec.builtin("euler"), ctx, 4)
    shifted = shift_up(eul.numbers)
    out.append(
        "expansion of 2t/(e_q(t)+1) via t * (2/(e_q(t)+1)): coefficients "
        f"{', '.join(frac_str(c) for c in shifted)} (leading 0, so no "
        "reciprocal exists)"
    )
    gtab = resolve(FamilySpec.builtin("genocchi-table"), ctx, 4)
    bern = resolve(FamilySpec.builtin("bernoulli"), ctx, 4)
    recipes = (
        ("2-iterated q-Genocchi", gd, gtab, product_family(gtab, gtab)),
        ("q-Bernoulli-Genocchi", gd, bern, product_family(gtab, bern)),
        ("q-Euler-Genocchi", gd, eul, product_family(gtab, eul)),
    )
    for label, beta_fam, basis_fam, table_route in recipes:
        for n in (1, 2):
            det_route = det_pair_poly(beta_fam, basis_fam, n)
            out.append(
                f"{label}, degree {n}: determinant recipe with the "
                f"1/(2[i+1]_q) beta gives {poly_text(det_route)}; the "
                f"published-number route gives {poly_text(table_route.poly(n))}"
            )
    return out


def run_verify(q: Fraction, order: int = 8) -> VerifyReport:
    """Property suite plus reference-table audit at the given q."""
    ctx = QContext(q)
    fixture = load_fixture()
    registry = dict(fixture["known_misprints"])
    report = VerifyReport(q=ctx.q, order=order)
    report.properties = run_properties(ctx, order)
    _audit_numbers(ctx, registry, report.checks)
    _audit_family_polys(ctx, registry, report.checks)
    if ctx.q == Fraction(1, 2):
        _audit_iterated_polys(ctx, fixture, registry, report.checks)
        _audit_zeros(ctx, fixture, registry, report.checks, report.properties)
    else:
        report.skipped.append(
            "iterated-polynomial and zero tables were published for q = 1/2 "
            f"only; skipped at q = {frac_str(ctx.q)}"
        )
    report.exhibits = _exhibits(ctx)
    return report
