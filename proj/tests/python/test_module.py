from fractions import Fraction
from math import comb

import pytest

duflo = pytest.importorskip("duflo")


def bernoulli_oracle(n):
    b = [Fraction(1)]
    for m in range(1, n + 1):
        b.append(-sum(comb(m + 1, k) * b[k] for k in range(m)) / (m + 1))
    return b


def test_bernoulli_matches_recurrence():
    assert duflo.bernoulli(10) == bernoulli_oracle(10)


def test_validate_and_cohomology():
    assert duflo.validate("sl2")["passed"]
    ce = duflo.ce_cohomology("so3")
    assert ce["passed"]
    assert ce["result"]["cohomology"] == {"0": 1, "1": 0, "2": 0, "3": 1}
    for n in range(1, 4):
        dims = duflo.ce_cohomology(f"abelian:{n}")["result"]["cohomology"]
        assert [dims[str(k)] for k in range(n + 1)] == [comb(n, k) for k in range(n + 1)]


def test_character_is_one_for_abelian():
    assert duflo.duflo_character("abelian:2", 6) == {(0, 0): Fraction(1)}


def test_sl2_character_low_order():
    # Tr Ad² = 8 y_h² + 8 y_e y_f for the Killing metric, and j^{1/2} = 1 + Tr Ad²/48 + …
    assert duflo.duflo_character("sl2", 2) == {
        (0, 0, 0): Fraction(1),
        (0, 1, 1): Fraction(1, 6),
        (2, 0, 0): Fraction(1, 6),
    }


def test_unknot_values():
    assert duflo.unknot("sl2", "one", 1) == [Fraction(1), Fraction(1, 8)]
    for n in range(1, 4):
        assert duflo.unknot(f"abelian:{n}", "one", 3) == [1, 0, 0, 0]
        assert duflo.unknot(f"abelian:{n}", "casimir^1", 2)[1] == 2 * n


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        duflo.unknot("sl2", "cubic")
    with pytest.raises(duflo.UsageError):
        duflo.run_suite({"algebra": "sl2", "checks": ["nope"]})
    with pytest.raises(ValueError):
        duflo.run_suite({"colour": "blue"})


def test_run_suite_round_trip():
    config = {"algebra": "sl2", "checks": ["character", "wilson"], "jets": 6, "h_order": 2}
    report, code = duflo.run_suite(config)
    again, _ = duflo.run_suite(config)
    assert code == 0
    assert report == again
    assert duflo.first_divergent_key(report, again) == ""
    assert "summary: pass" in duflo.render_text(report)
