import json
from fractions import Fraction as F

import pytest

from qappell import QContext, resolve
from qappell.audit import (
    load_fixture,
    printed_family_poly,
    printed_number,
    run_properties,
    run_verify,
)
from qappell.families import FamilySpec

EXPECTED_TYPO_IDS = {
    "family-polys:genocchi:3",
    "family-polys:genocchi:4",
    "iterated-polys:euler2:2",
    "iterated-polys:euler2:4",
    "iterated-polys:genocchi2:3",
    "iterated-polys:bernoulli_euler:2",
    "iterated-polys:bernoulli_euler:4",
    "iterated-polys:bernoulli_genocchi:3",
    "iterated-polys:bernoulli_genocchi:4",
    "iterated-polys:euler_genocchi:3",
    "iterated-polys:euler_genocchi:4",
    "zeros:euler2:2",
    "zeros:euler2:3",
    "zeros:euler2:4",
    "zeros:genocchi2:3",
    "zeros:genocchi2:4",
    "zeros:bernoulli_euler:2",
    "zeros:bernoulli_euler:4",
    "zeros:bernoulli_genocchi:3",
    "zeros:bernoulli_genocchi:4",
    "zeros:euler_genocchi:3",
    "zeros:euler_genocchi:4",
}


@pytest.fixture(scope="module")
def report_half():
    return run_verify(F(1, 2), order=8)


class TestFixture:
    def test_loads_with_schema(self):
        fx = load_fixture()
        assert fx["schema"] == 1
        assert set(fx["iterated_polys"]) == set(fx["families"])

    def test_registry_ids_all_exercised(self, report_half):
        seen = {c.check_id for c in report_half.checks}
        registry = set(load_fixture()["known_misprints"])
        assert registry <= seen


class TestPrintedForms:
    @pytest.mark.parametrize("qs", ["1/2", "1/3", "3/4"])
    def test_number_closed_forms_match_engine(self, qs):
        ctx = QContext(qs)
        for key, name in (("bernoulli", "bernoulli"), ("euler", "euler")):
            fam = resolve(FamilySpec.builtin(name), ctx, 4)
            for n in range(5):
                assert printed_number(ctx, key, n) == fam.number(n)

    @pytest.mark.parametrize("qs", ["1/2", "2/5"])
    def test_family_poly_misprints_localized(self, qs):
        ctx = QContext(qs)
        for key, name in (
            ("bernoulli", "bernoulli"),
            ("euler", "euler"),
            ("genocchi", "genocchi-table"),
        ):
            fam = resolve(FamilySpec.builtin(name), ctx, 4)
            for n in range(5):
                printed = printed_family_poly(ctx, key, n)
                if key == "genocchi" and n in (3, 4):
                    assert printed != fam.poly(n)
                else:
                    assert printed == fam.poly(n)


class TestProperties:
    def test_all_pass_at_several_q(self):
        for qs in ("1/2", "1/3", "3/4"):
            for rec in run_properties(QContext(qs), order=6):
                assert rec.ok, rec.prop_id


class TestReport:
    def test_exit_code_and_counts(self, report_half):
        assert report_half.exit_code == 0
        counts = report_half.counts()
        assert counts["mismatch"] == 0
        assert counts["paper-typo-suspected"] == len(EXPECTED_TYPO_IDS)

    def test_every_typo_is_expected(self, report_half):
        typo_ids = {
            c.check_id
            for c in report_half.checks
            if c.status == "paper-typo-suspected"
        }
        assert typo_ids == EXPECTED_TYPO_IDS

    def test_matching_rows_include_required_ones(self, report_half):
        by_id = {c.check_id: c for c in report_half.checks}
        for must_match in (
            "iterated-polys:bernoulli2:0",
            "iterated-polys:bernoulli2:1",
            "iterated-polys:bernoulli2:2",
            "iterated-polys:bernoulli2:3",
            "iterated-polys:bernoulli2:4",
            "iterated-polys:euler2:1",
            "iterated-polys:genocchi2:1",
            "iterated-polys:bernoulli_euler:1",
            "iterated-polys:bernoulli_genocchi:1",
            "iterated-polys:euler_genocchi:1",
            "zeros:bernoulli2:4",
            "zeros:bernoulli_euler:3",
        ):
            assert by_id[must_match].status == "match", must_match

    def test_typo_rows_carry_both_values(self, report_half):
        by_id = {c.check_id: c for c in report_half.checks}
        rec = by_id["iterated-polys:euler2:2"]
        assert "- 1/16" in rec.printed
        assert "+ 1/8" in rec.computed
        assert rec.note

    def test_json_shape(self, report_half):
        payload = report_half.to_json_dict()
        assert payload["schema"] == 1
        assert payload["q"] == "1/2"
        assert payload["summary"]["exit_code"] == 0
        text = json.dumps(payload)
        assert json.loads(text) == payload

    def test_text_and_json_deterministic(self):
        a = run_verify(F(1, 2), order=6)
        b = run_verify(F(1, 2), order=6)
        assert a.to_text() == b.to_text()
        assert json.dumps(a.to_json_dict()) == json.dumps(b.to_json_dict())

    def test_other_q_skips_half_specific_tables(self):
        rep = run_verify(F(1, 3), order=6)
        assert rep.exit_code == 0
        assert any("q = 1/2" in s for s in rep.skipped)
        assert not any(c.check_id.startswith("iterated-polys") for c in rep.checks)

    def test_exhibits_mention_genocchi_variants(self, report_half):
        assert any("not invertible" in e for e in report_half.exhibits)
