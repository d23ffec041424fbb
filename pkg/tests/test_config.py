import numpy as np
import pytest

from adaptive_leg.config import ConfigError, parse_config
from adaptive_leg.control import ControlLawMode
from adaptive_leg.simrunner import ExperimentConfig


def test_empty_is_defaults():
    cfg = parse_config("")
    default = ExperimentConfig()
    assert cfg.nominal_params == default.nominal_params
    assert cfg.true_params == cfg.nominal_params
    assert cfg.adaptation_on
    assert cfg.mode is ControlLawMode.STANDARD
    np.testing.assert_array_equal(cfg.q_start, default.q_start)
    assert cfg.rls.initial_cov_scale == 1e3


def test_full_config():
    cfg = parse_config("""
[robot.nominal]
mass_upper = 2.0
com_lower = 0.25

[robot.true]
com_upper = 0.24

[gains]
kp = [100, 110, 120, 130]
kd = 25

[trajectory]
q_start = [0, 0.4, 0, 1.5]
q_end = [0.1, 0.5, 0, 1.6]
duration = 3
waypoints = [[0, 0.6, 0.1, 1.2]]
interpolation = "linear"

[rls]
enabled = false
initial_theta = [1, 1, 1, 1, 2]
initial_cov_scale = 1e6
forgetting = 0.99

[sim]
control_period = 0.02
plant_substep = 0.001
accel_source = "finite_difference"
noise_std = 1e-4
seed = 9
mode = "paper-literal"
""")
    assert cfg.nominal_params.mass_upper == 2.0
    assert cfg.true_params.mass_upper == 2.0
    assert cfg.true_params.com_lower == 0.25
    assert cfg.true_params.com_upper == 0.24
    np.testing.assert_array_equal(np.diag(cfg.gains.kp), [100, 110, 120, 130])
    np.testing.assert_array_equal(np.diag(cfg.gains.kd), [25] * 4)
    assert cfg.duration == 3.0 and cfg.interpolation == "linear"
    assert len(cfg.waypoints) == 1
    assert not cfg.adaptation_on
    assert cfg.rls.forgetting == 0.99
    assert cfg.substeps == 20 and cfg.seed == 9
    assert cfg.mode is ControlLawMode.PAPER_LITERAL


def test_random_waypoints_centred_on_start():
    cfg = parse_config("[trajectory]\nrandom_waypoints = 3\nwaypoint_seed = 4\nwaypoint_amplitude = 0.1\n")
    assert len(cfg.waypoints) == 3
    for w in cfg.waypoints:
        assert np.all(np.abs(w - cfg.q_start) <= 0.1)


@pytest.mark.parametrize("text,needle", [
    ("[robot.nominal]\ngravity = -1\n", "line 2.*gravity"),
    ("[sim]\nfoo = 1\n", "line 2.*foo"),
    ("[robots]\n", "robots"),
    ("[robot.fake]\nx = 1\n", "robot.fake"),
    ("[sim]\ncontrol_period = 0.01\nplant_substep = 0.003\n", "line 3.*plant_substep"),
    ("[sim]\nmode = \"fast\"\n", "mode"),
    ("[sim]\nseed = 1.5\n", "seed"),
    ("[gains]\nkp = [1, 2]\n", "kp"),
    ("[gains]\nkd = -3\n", "kd"),
    ("[rls]\nforgetting = 2\n", "forgetting"),
    ("[rls]\nenabled = 1\n", "enabled"),
    ("[trajectory]\nduration = \"long\"\n", "duration"),
    ("[trajectory]\ninterpolation = \"cubic\"\n", "interpolation"),
    ("[robot.true]\ncom_upper = 0.9\n", "com_upper"),
    ("[robot.nominal]\nmass_upper = true\n", "mass_upper"),
    ("[sim\n", "malformed"),
])
def test_errors_name_key(text, needle):
    with pytest.raises(ConfigError, match=needle):
        parse_config(text)
