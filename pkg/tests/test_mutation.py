"""The acceptance checks must notice a broken multiplication rule.

The mutant keeps e_i^2 = -1 but makes distinct basis vectors commute.  Then
each a^_i squares to +1, so every lifted generator is a scaled idempotent and
the braid relation survives by accident; the algebra, expansion, counting and
skeleton checks are the ones that must catch it.
"""

from __future__ import annotations

import pytest

from bruhatstrata import _pykernels, clifford, spinweyl, strata
from bruhatstrata.checks import CRITERIA, check_braid, run_criterion
from bruhatstrata.cli import main


def _clear_caches() -> None:
    for fn in (
        clifford.generator_ahat,
        clifford.generator_acute,
        clifford.pi_matrix,
        clifford.ahat_monomial,
        spinweyl.quat_elements,
        spinweyl._tilde_H,
        _pykernels._generator_tables,
    ):
        fn.cache_clear()
    strata._enum_cache.clear()


def _commuting_sign(a: int, b: int) -> int:
    return -1 if (a & b).bit_count() % 2 else 1


@pytest.fixture
def commuting_algebra(monkeypatch):
    _clear_caches()
    monkeypatch.setattr(clifford, "blade_product_sign", _commuting_sign)
    monkeypatch.setattr(_pykernels, "blade_product_sign", _commuting_sign)
    yield
    monkeypatch.undo()
    _clear_caches()


def test_mutant_breaks_generator_squares(commuting_algebra):
    g = clifford.generator_ahat(1, 2)
    assert g * g == clifford.CliffordElement.one(2)


def test_mutant_keeps_braid_relation(commuting_algebra):
    a, b = clifford.generator_acute(1, 2), clifford.generator_acute(2, 2)
    assert a * b * a == b * a * b
    check_braid("fast")


@pytest.mark.parametrize("number", [1, 3, 4, 5, 6, 8])
def test_criterion_reports_fail(commuting_algebra, number):
    outcome = run_criterion(CRITERIA[number - 1], "fast")
    assert outcome.criterion.number == number
    assert not outcome.passed
    assert outcome.line().startswith("[FAIL]")


def test_cli_check_exits_nonzero_on_mutant(commuting_algebra, capsys):
    assert main(["check", "--level", "fast"]) == 1
    out = capsys.readouterr().out
    assert "[FAIL]  1." in out
    assert not out.strip().endswith("11/11 criteria passed")


def test_caches_restored_after_mutation():
    g = clifford.generator_ahat(1, 2)
    assert g * g == -clifford.CliffordElement.one(2)
    assert run_criterion(CRITERIA[0], "fast").passed
