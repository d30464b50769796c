from pathlib import Path

import numpy as np
import pytest

from xyopt.constants import DEFAULT_GRID_N, DEFAULT_OUTPUT_DIR
from xyopt.exceptions import ConfigError, DomainError
from xyopt.models import (
    CheckResult,
    ConfusionTable,
    GroundState,
    OrbitWord,
    PotentialSpec,
    RunConfig,
    SubactionGrid,
    WordVerdict,
)


def test_potential_spec_defaults():
    spec = PotentialSpec()
    assert spec.poly == ()
    assert spec.abs_weight == 0.0
    assert spec.wells == ()
    assert spec.name == "custom"
    assert spec.is_smooth
    assert spec.lipschitz_bound > 0


def test_potential_spec_merges_duplicate_terms():
    spec = PotentialSpec(poly=((2, 0, 1.0), (2, 0, 0.5), (1, 1, 0.0)))
    assert spec.poly == ((2, 0, 1.5),)


def test_potential_spec_sorts_wells():
    spec = PotentialSpec(wells=((0.7, 0.9), (0.1, 0.3)), well_weight=1.0)
    assert spec.wells == ((0.1, 0.3), (0.7, 0.9))
    assert spec.well_offset(0.5) == pytest.approx(0.2)
    assert spec.well_offset(0.05) == pytest.approx(-0.05)
    assert spec.well_value(0.2) == 0.0


@pytest.mark.parametrize(
    "kwargs",
    [
        {"abs_weight": -0.5},
        {"sqrt_weight": float("nan")},
        {"well_weight": 1.0},
        {"wells": ((0.1, 0.4), (0.3, 0.6)), "well_weight": 1.0},
        {"wells": ((0.5, 1.2),)},
        {"poly": ((-1, 0, 1.0),)},
        {"poly": ((1, 0),)},
    ],
)
def test_potential_spec_rejects_invalid_fields(kwargs):
    with pytest.raises(ConfigError):
        PotentialSpec(**kwargs)


def test_potential_spec_rho_coefficients():
    # (x - y)^2 + 0.5 (x - y)
    rho = PotentialSpec(
        poly=((2, 0, 1.0), (1, 1, -2.0), (0, 2, 1.0), (1, 0, 0.5), (0, 1, -0.5))
    )
    assert rho.rho_coefficients() == pytest.approx((0.0, 0.5, 1.0))
    assert PotentialSpec(poly=((2, 0, 1.0),)).rho_coefficients() is None


def test_potential_spec_json_roundtrip_keeps_equality():
    spec = PotentialSpec(poly=((2, 0, 1.0),), sqrt_weight=0.25, name="demo")
    document = spec.__json__()
    assert document["name"] == "demo"
    assert PotentialSpec.from_dict(document) == spec


def test_potential_spec_from_dict_rejects_unknown_keys():
    with pytest.raises(ConfigError):
        PotentialSpec.from_dict({"poly": [], "temperature": 3})
    with pytest.raises(ConfigError):
        PotentialSpec.from_dict(["poly"])


def test_ground_state_membership():
    gs = GroundState(
        alpha=0.0, components=((0.1, 0.3), (0.5, 0.5)), tolerance=1e-8, grid_n=64
    )
    assert gs.component_index(0.2) == 0
    assert gs.component_index(0.5) == 1
    assert gs.component_index(0.4) is None
    assert gs.is_point_component(1)
    assert not gs.is_point_component(0)
    distances = gs.distance_to_minimizers(np.array([0.0, 0.2, 0.45, 1.0]))
    assert distances == pytest.approx([0.1, 0.0, 0.05, 0.5])


def test_ground_state_from_dict():
    data = {"alpha": 1, "components": [[0, 1]], "tolerance": 1e-8, "grid_n": 32}
    gs = GroundState.from_dict(data)
    assert gs.components == ((0.0, 1.0),)
    assert gs.__json__()["components"] == [[0.0, 1.0]]


def test_ground_state_without_components():
    gs = GroundState(alpha=0.0, components=(), tolerance=1e-8, grid_n=16)
    assert not gs.contains(0.0)
    assert np.isinf(gs.distance_to_minimizers(0.5))


def test_orbit_word_shift_and_expand():
    w = OrbitWord((0.9, 0.5), (0.0, 1.0))
    assert w.expand(6) == [0.9, 0.5, 0.0, 1.0, 0.0, 1.0]
    assert w.shift(1) == OrbitWord((0.5,), (0.0, 1.0))
    assert w.shift(3) == OrbitWord((), (1.0, 0.0))
    assert w.period == 2
    assert not w.is_eventually_fixed
    assert w.tail_symbol is None


def test_orbit_word_canonical_form():
    w = OrbitWord((0.3, 0.0, 0.0), (0.0, 0.0))
    canonical = w.canonical()
    assert canonical.symbols == (0.3,)
    assert canonical.tail == (0.0,)
    assert w.is_eventually_fixed
    assert w.tail_symbol == 0.0
    assert w.same_point(OrbitWord((0.3,), (0.0,)))
    assert OrbitWord.constant(0.4).same_point(OrbitWord((), (0.4,)))


def test_orbit_word_rotates_tail_into_prefix():
    # 0.2 (0.8 0.2)^inf is the point (0.2 0.8)^inf
    assert OrbitWord((0.2,), (0.8, 0.2)).same_point(OrbitWord((), (0.2, 0.8)))


def test_orbit_word_string_and_json():
    assert str(OrbitWord.constant(0.0)) == "0 (0)^inf"
    assert str(OrbitWord((), (0.2, 0.8))) == "(0.2 0.8)^inf"
    assert OrbitWord((1.0,), (0.0,)).__json__() == {"symbols": [1.0], "tail": 0.0}
    assert OrbitWord.from_dict({"tail": [0.2, 0.8]}).tail == (0.2, 0.8)


@pytest.mark.parametrize(
    "symbols, tail",
    [
        ((1.5,), (0.0,)),
        ((), ()),
        ((0.1,), (-0.2,)),
        (("a",), (0.0,)),
        ((True,), (0.0,)),
    ],
)
def test_orbit_word_rejects_bad_symbols(symbols, tail):
    with pytest.raises(DomainError):
        OrbitWord(symbols, tail)


def test_orbit_word_from_dict_requires_a_tail():
    with pytest.raises(ConfigError):
        OrbitWord.from_dict({"symbols": [0.1]})
    with pytest.raises(ConfigError):
        OrbitWord.from_dict({"symbols": [2.0], "tail": 0.0})


def test_subaction_grid_interpolation():
    grid = np.linspace(0.0, 1.0, 5)
    sub = SubactionGrid(
        grid=grid,
        v=grid * 2,
        anchor=0,
        calibration_residual=0.0,
        subaction_defect=0.0,
        calibration_gap=np.zeros(5),
        alpha=0.0,
    )
    assert sub.value_at(0.125) == pytest.approx(0.25)
    assert sub.value_at(np.array([0.0, 1.0])) == pytest.approx([0.0, 2.0])
    assert sub.node_value(0.49) == pytest.approx(1.0)


def test_run_config_defaults():
    config = RunConfig()
    assert config.grid_n == DEFAULT_GRID_N
    assert config.output_dir == Path(DEFAULT_OUTPUT_DIR)
    assert config.eps_class is None
    assert config.words is None


def test_run_config_requires_a_potential():
    with pytest.raises(ConfigError):
        RunConfig().validate()
    assert RunConfig(potential="two-well").validate().potential == "two-well"


@pytest.mark.parametrize(
    "overrides",
    [
        {"grid_n": 8},
        {"grid_n": 64.0},
        {"quad_n": 1},
        {"max_iters": 0},
        {"seed": "zero"},
        {"spacing": 0},
        {"refine_tol": -1e-8},
        {"tol_subaction": "small"},
        {"eps_class": 0.0},
    ],
)
def test_run_config_validation(overrides):
    config = RunConfig(potential="two-well").merged(overrides)
    with pytest.raises(ConfigError):
        config.validate()


def test_run_config_merged_skips_none_and_unknown_keys():
    config = RunConfig(potential="two-well", grid_n=64)
    merged = config.merged({"grid_n": None, "spacing": 0.1, "mode": "analyze"})
    assert merged.grid_n == 64
    assert merged.spacing == 0.1
    assert config.spacing != 0.1


def test_run_config_from_dict():
    config = RunConfig.from_dict(
        {
            "potential": "rho-quadratic",
            "grid-n": 32,
            "tolerances": {"refine-tol": 1e-9, "eps_class": "auto"},
            "out": "results",
        }
    )
    assert config.grid_n == 32
    assert config.refine_tol == 1e-9
    assert config.eps_class is None
    assert config.output_dir == Path("results")
    assert config.__json__()["tolerances"]["refine_tol"] == 1e-9


@pytest.mark.parametrize(
    "data",
    [
        ["potential"],
        {"colour": "blue"},
        {"tolerances": [1e-9]},
        {"tolerances": {"abs_tol": 1e-9}},
    ],
)
def test_run_config_from_dict_rejects(data):
    with pytest.raises(ConfigError):
        RunConfig.from_dict(data)


def test_check_result_relations():
    assert CheckResult("a", 0.5, 1.0).passed
    assert CheckResult("a", 0.5, 1.0).margin == pytest.approx(0.5)
    assert not CheckResult("b", 0.5, 1.0, ">=").passed
    assert CheckResult("c", 1.0, 1.0, ">=").passed
    assert not CheckResult("d", 0.0, 0.0, ">").passed
    assert CheckResult("e", 2.0, 1.0, ">").margin == pytest.approx(1.0)
    assert CheckResult("f", 0.1, 0.2).__json__()["passed"] is True
    with pytest.raises(ValueError):
        CheckResult("g", 0.0, 0.0, "==")


def test_confusion_table_counts():
    table = ConfusionTable()
    table.add(WordVerdict("0 (0)^inf", True, True, 0.0, (0, 1)))
    table.add(WordVerdict("1 (1)^inf", False, False, 3.0, (0, 4)))
    table.add(WordVerdict("(0 1)^inf", False, True, 0.0, None))
    assert table.count(True, True) == 1
    assert table.count(False, True) == 1
    assert table.disagreements == 1
    document = table.__json__()
    assert document["false_true"] == 1
    assert document["verdicts"][2]["worst_pair"] is None
    assert document["verdicts"][0]["agrees"] is True
