import math

import pytest

from dsc.core.enums import Verdict
from dsc.core.errors import ConfigError, SymbolClassError
from dsc.operators import (
    RatioProfile,
    RegionGrid,
    boundedness_profile,
    combine_verdicts,
    compactness_ratio,
    default_boundary_schedule,
    line_verdict,
)
from dsc.zeros import AffineMap, MobiusMap, PeriodicSymbol

AFFINE = PeriodicSymbol(AffineMap(1.5, 0.5))
MOBIUS = PeriodicSymbol(MobiusMap(1.0))


@pytest.mark.parametrize(
    "ratios, verdict",
    [
        ([1.0, 1.0, 1.0, 0.01], Verdict.VANISHING),
        ([0.0, 0.0, 0.0], Verdict.VANISHING),
        ([1.0, 1.0, 3.0, 5.0], Verdict.GROWING),
        ([1.0, 1.2, 0.9, 1.1], Verdict.BOUNDED),
        ([1.0, math.nan, 1.0], Verdict.INCONCLUSIVE),
        ([1.0], Verdict.INCONCLUSIVE),
    ],
)
def test_line_verdict(ratios, verdict):
    assert line_verdict(ratios) == verdict


def test_combine_verdicts():
    assert combine_verdicts([Verdict.VANISHING, Verdict.BOUNDED]) == Verdict.BOUNDED
    assert combine_verdicts([Verdict.GROWING, Verdict.BOUNDED]) == Verdict.GROWING
    assert combine_verdicts([Verdict.GROWING, Verdict.INCONCLUSIVE]) == Verdict.INCONCLUSIVE
    assert combine_verdicts([Verdict.VANISHING]) == Verdict.VANISHING


def test_default_boundary_schedule():
    schedule = default_boundary_schedule(MOBIUS)
    assert schedule[0] == pytest.approx(0.25)
    assert schedule[-1] == pytest.approx(1e-3)
    assert all(b < a for a, b in zip(schedule, schedule[1:]))


def test_compactness_for_affine_symbol_vanishes():
    profile = compactness_ratio(AFFINE, 0.0)
    assert profile.verdict == Verdict.VANISHING
    assert profile.sup == 0.0
    assert profile.lines == 3


def test_compactness_for_mobius_symbol_is_bounded():
    profile = compactness_ratio(MOBIUS, 0.0, imag_offsets=(0.0,))
    assert profile.verdict == Verdict.BOUNDED
    # log((1/2 + x) / (1/2 - x)) / x decreases to 4
    assert profile.ratios[-1] == pytest.approx(4.0, rel=1e-3)
    frame = profile.to_frame()
    assert list(frame.columns) == ["a", "exponent", "w_re", "w_im", "ratio", "verdict"]
    assert frame["verdict"].iloc[-1] == "bounded"
    assert len(frame) == len(profile.ratios) + 1


def test_compactness_rejects_bad_input():
    with pytest.raises(ConfigError):
        compactness_ratio(MOBIUS, -0.5)
    with pytest.raises(ConfigError):
        compactness_ratio(MOBIUS, 0.0, boundary_schedule=[0.1, 0.2])
    with pytest.raises(SymbolClassError):
        compactness_ratio(PeriodicSymbol(AffineMap(0.0, 1.0)), 0.0)


def test_boundedness_profile_for_mobius_symbol():
    profile = boundedness_profile(MOBIUS, 0.5, 0.25)
    assert profile.verdict == Verdict.BOUNDED
    assert 0 < profile.sup < math.inf
    assert all(abs(w - 1.0) > 0.25 for w in profile.boundary_points)
    with pytest.raises(ConfigError):
        boundedness_profile(MOBIUS, 1.0, 0.25)
    with pytest.raises(ConfigError):
        boundedness_profile(MOBIUS, 0.5, 0.0)


def test_region_grid():
    with pytest.raises(ConfigError):
        RegionGrid(x_min=1e-4)
    grid = RegionGrid(n_x=3, n_im=3, extra_im=(10.0,)).refined()
    x, im = grid.lines(1 + 2j)
    assert x.size == 5
    assert im.tolist() == pytest.approx([-2.0, 0.0, 2.0, 4.0, 6.0, 10.0])


def test_ratio_profile_validation():
    with pytest.raises(ValueError):
        RatioProfile(0.0, 1.0, (1 + 0j,), (), Verdict.BOUNDED)
    with pytest.raises(ValueError):
        RatioProfile(0.0, 1.0, (1 + 0j,), (-1.0,), Verdict.BOUNDED)
