import math

import numpy as np
import pytest

from isocompare.errors import DomainError, ValidationError
from isocompare.football import (EULER_CHARACTERISTIC_SPHERE,
                                 GAUSS_BONNET_TOTAL, FootballSpec,
                                 alpha_as_written, alpha_oracle, alpha_result,
                                 cylinder_growth, epsilon0, oracle_path,
                                 ricci_odi_rhs, scalar_odi_rhs)
from isocompare.phase_plane import extremal_path

PI = math.pi


def football_family_value(eps: float) -> float:
    """Volume ratio of the best cone-point model at Ricci fraction eps.

    Maximizing vol = 2 pi^2 c^2 r^3 under R >= 6 (forces c^2 <= 1/(3 r^2 - 2))
    and Ric >= 2 eps (forces r = 1/sqrt(eps)) gives r^3/(3 r^2 - 2) V0, i.e.
    1 / ((3 - 2 eps) sqrt(eps)).
    """
    return 1.0 / ((3.0 - 2.0 * eps) * math.sqrt(eps))


def test_gauss_bonnet_constant_is_named():
    assert EULER_CHARACTERISTIC_SPHERE == 2
    assert GAUSS_BONNET_TOTAL == 2 * PI * EULER_CHARACTERISTIC_SPHERE
    assert GAUSS_BONNET_TOTAL == pytest.approx(4 * PI, rel=1e-15)


def test_football_spec_validation():
    FootballSpec(0.5)
    with pytest.raises(ValidationError):
        FootballSpec(0.0)
    with pytest.raises(ValidationError):
        FootballSpec(1.5)


def test_scalar_odi_rhs_values():
    assert scalar_odi_rhs(4 * PI, 0.0, 6.0) == pytest.approx(-1 / (2 * PI), rel=1e-14)
    assert scalar_odi_rhs(4 * PI, 0.0, 0.0) == pytest.approx(1 / (4 * PI), rel=1e-14)
    assert scalar_odi_rhs(1e9, 0.0, 6.0) == pytest.approx(0.0, abs=1e-8)
    assert scalar_odi_rhs(1e9, 0.0, 6.0) < 0.0
    with pytest.raises(DomainError):
        scalar_odi_rhs(0.0, 1.0)


def test_ricci_odi_rhs_values():
    assert ricci_odi_rhs(4 * PI, 0.0, 1.0) == pytest.approx(-1 / (2 * PI), rel=1e-14)
    assert ricci_odi_rhs(4 * PI, 0.0, 0.5) == pytest.approx(-1 / (4 * PI), rel=1e-14)
    assert ricci_odi_rhs(1.0, 2.0, 1.0) == -4.0
    with pytest.raises(DomainError):
        ricci_odi_rhs(-1.0, 0.0, 1.0)


def test_rhs_agree_at_sphere_equator():
    # normalization consistency: both bounds coincide on the round sphere
    assert scalar_odi_rhs(4 * PI, 0.0) == pytest.approx(
        ricci_odi_rhs(4 * PI, 0.0, 1.0), rel=1e-14)


def test_alpha_oracle_at_one():
    assert alpha_oracle(1.0).alpha_oracle == pytest.approx(1.0, abs=1e-6)


def test_alpha_oracle_at_half():
    # consistent with the proven threshold bound eps0 <= 1/2
    assert alpha_oracle(0.5).alpha_oracle == pytest.approx(1.0, abs=1e-6)


def test_alpha_oracle_small_eps_exceeds_one():
    r = alpha_oracle(0.05)
    assert r.alpha_oracle > 1.0
    assert r.alpha_oracle >= football_family_value(0.05) - 1e-9


def test_alpha_oracle_dominates_football_family():
    for eps in (0.05, 0.1, 0.13, 0.3, 0.7):
        r = alpha_oracle(eps)
        assert r.alpha_oracle >= max(1.0, football_family_value(eps)) - 1e-9


def test_alpha_oracle_never_below_one():
    for eps in (0.07, 0.2, 0.45, 0.8, 1.0):
        assert alpha_oracle(eps).alpha_oracle >= 1.0 - 1e-9


def test_alpha_oracle_nonincreasing():
    grid = np.linspace(0.04, 1.0, 64)
    values = [alpha_oracle(float(e)).alpha_oracle for e in grid]
    diffs = np.diff(values)
    assert np.max(diffs) <= 1e-9


def test_oracle_path_matches_extremal_at_one():
    oracle = oracle_path(1.0)
    reference = extremal_path(3, 2.0, 0.0, samples=oracle.x.size)
    assert np.max(np.abs(oracle.x - reference.x)) <= 1e-8
    assert np.max(np.abs(oracle.y - reference.y)) <= 1e-8


def test_single_regime_switch_below_threshold():
    # below the threshold the maximizer is interior: ricci-active for small
    # areas, scalar-active for large, with exactly one switch
    for eps in (0.05, 0.1, 0.13):
        r = alpha_oracle(eps)
        assert r.switch_x > 0
        assert r.rhs_sign_changes == 1


def test_no_switch_above_threshold():
    # above the threshold the supremum sits at the round sphere
    for eps in (0.2, 0.5, 1.0):
        r = alpha_oracle(eps)
        assert r.switch_x == pytest.approx(0.0, abs=1e-9)
        assert r.z_argmax == pytest.approx(4 * PI, rel=1e-12)


def test_alpha_continuity_at_football_end():
    # at z = 4 pi/(3 - 2 eps) the construction degenerates to the pure
    # cone-point path, whose value is the closed-form family value
    from isocompare.football import _half_volume, _z_bracket
    for eps in (0.05, 0.3, 0.6):
        z_lo, _ = _z_bracket(eps)
        got = _half_volume(z_lo, eps) / PI ** 2
        assert got == pytest.approx(football_family_value(eps), rel=1e-6)


def test_alpha_as_written_records_violations():
    r = alpha_as_written(0.5)
    assert r.domain_violations
    assert math.isnan(r.alpha_as_written)
    # the verbatim switch exceeds the termination for every z in the bracket
    assert any("exceeds termination" in v for v in r.domain_violations)


def test_alpha_as_written_radicand_at_endpoint():
    # at z = 4 pi the second radicand at x = z^(3/2) is
    # -18 (1-eps) y(z)^(-1/3) <= 0: recorded, not fatal
    eps = 0.5
    y_sw = (4 * PI) ** (0.5 * (4 * PI - eps)) / (2 * (1 - eps))
    radicand = 36 * PI - 18 * (1 - eps) * y_sw ** (-1 / 3) - 9 * (4 * PI)
    assert radicand <= 0
    r = alpha_as_written(eps)
    assert r.domain_violations


def test_alpha_as_written_degenerate_near_one():
    r = alpha_as_written(1.0)
    assert r.degenerate_formula
    assert math.isnan(r.alpha_as_written)


def test_alpha_result_discrepancy_reported():
    for eps in (0.1, 0.3, 0.5):
        r = alpha_result(eps)
        assert r.alpha_oracle >= 1.0 - 1e-9
        # the verbatim formula never evaluates cleanly; the audit trail
        # must say so rather than silently passing
        assert (not math.isnan(r.discrepancy)) or r.domain_violations


def test_epsilon0_oracle_bracket():
    bracket = epsilon0("oracle", tol=5e-4)
    assert not bracket.no_root
    assert bracket.hi - bracket.lo <= 5e-4
    assert 0.10 < bracket.lo < bracket.hi < 0.20
    assert bracket.hi <= 0.5


def test_epsilon0_as_written_no_root():
    bracket = epsilon0("as-written", tol=5e-4)
    assert bracket.no_root


def test_epsilon0_unknown_method():
    with pytest.raises(ValidationError):
        epsilon0("guess")


def test_cylinder_growth_values():
    rows = cylinder_growth([10.0, 100.0, 1000.0])
    assert [r.volume for r in rows] == pytest.approx(
        [40 * PI, 400 * PI, 4000 * PI], rel=1e-10)
    for row in rows:
        assert row.ric_inf == pytest.approx(0.0, abs=1e-12)
        assert row.scalar_inf == pytest.approx(2.0, rel=1e-12)
        # Ric_inf = 0 < eps * 2 for every positive eps: hypothesis violated
        assert row.ric_inf < 0.05 * 2.0


def test_cylinder_growth_validation():
    with pytest.raises(ValidationError):
        cylinder_growth([10.0, 5.0])
    with pytest.raises(ValidationError):
        cylinder_growth([-1.0, 2.0])
