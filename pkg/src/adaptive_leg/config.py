"""TOML experiment configuration.

Every key is optional; omitted keys take the library defaults. Unknown
sections or keys are rejected so that a misspelt parameter cannot silently
fall back to its default.

Example::

    [robot.nominal]
    com_upper = 0.2

    [robot.true]          # plant; any key not given here copies nominal
    com_upper = 0.24

    [gains]
    kp = 100              # scalar or list of four diagonal entries
    kd = [20, 20, 20, 20]

    [trajectory]
    q_start = [0.0, 0.5, 0.0, 1.6]
    q_end = [0.15, 0.65, -0.15, 1.75]
    duration = 2.0
    waypoints = []        # explicit intermediate knots
    random_waypoints = 0  # or draw this many around q_start
    waypoint_seed = 0
    waypoint_amplitude = 0.8
    interpolation = "quintic"

    [rls]
    enabled = true
    initial_theta = [1, 1, 1, 1, 1]
    initial_cov_scale = 1000.0
    forgetting = 1.0

    [sim]
    control_period = 0.01
    plant_substep = 0.0001
    accel_source = "plant_exact"
    noise_std = 0.0
    seed = 0
    mode = "standard"
"""

import re
from dataclasses import fields, replace

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .control import ControlLawMode, Gains, excitation_waypoints
from .estimator import RlsConfig
from .kincore import RobotParams
from .simrunner import ExperimentConfig

ROBOT_KEYS = tuple(f.name for f in fields(RobotParams))
SECTIONS = {
    "robot.nominal": ROBOT_KEYS,
    "robot.true": ROBOT_KEYS,
    "gains": ("kp", "kd"),
    "trajectory": ("q_start", "q_end", "duration", "waypoints", "random_waypoints",
                   "waypoint_seed", "waypoint_amplitude", "interpolation"),
    "rls": ("enabled", "initial_theta", "initial_cov_scale", "forgetting"),
    "sim": ("control_period", "plant_substep", "accel_source", "noise_std", "seed", "mode"),
}


class ConfigError(ValueError):
    pass


_HEADER = re.compile(r"^\s*\[\s*([^\[\]]+?)\s*\]")
_KEY = re.compile(r"^\s*([A-Za-z0-9_\-]+)\s*=")


def _key_line(text, section, key):
    """1-based line of ``key`` inside ``[section]``, or None."""
    current = ""
    for n, line in enumerate(text.splitlines(), 1):
        h = _HEADER.match(line)
        if h:
            current = re.sub(r"\s*\.\s*", ".", h.group(1))
            continue
        m = _KEY.match(line)
        if m and m.group(1) == key and current == section:
            return n
    return None


def _section_line(text, section):
    for n, line in enumerate(text.splitlines(), 1):
        h = _HEADER.match(line)
        if h and re.sub(r"\s*\.\s*", ".", h.group(1)) == section:
            return n
    return None


class _Reader:
    def __init__(self, text, data):
        self.text = text
        self.data = data

    def error(self, section, key, message):
        line = _key_line(self.text, section, key) if key else _section_line(self.text, section)
        where = f"line {line}: " if line else ""
        name = f"[{section}] {key}" if key else f"[{section}]"
        return ConfigError(f"{where}{name}: {message}")

    def table(self, section):
        node = self.data
        for part in section.split("."):
            node = node.get(part, {})
            if not isinstance(node, dict):
                raise self.error(section, None, "must be a table")
        return node

    def number(self, section, key, value, integer=False):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise self.error(section, key, f"expected a number, got {value!r}")
        if integer and not isinstance(value, int):
            raise self.error(section, key, f"expected an integer, got {value!r}")
        return value

    def vector(self, section, key, value, n):
        if not isinstance(value, list) or len(value) != n:
            raise self.error(section, key, f"expected a list of {n} numbers")
        return [float(self.number(section, key, v)) for v in value]

    def string(self, section, key, value):
        if not isinstance(value, str):
            raise self.error(section, key, f"expected a string, got {value!r}")
        return value

    def blame(self, section, keys, exc):
        """Re-raise a validation error against the key its message names."""
        msg = str(exc)
        first = msg.split(" ", 1)[0]
        key = first if first in keys else None
        return self.error(section, key, msg)


def _check_structure(reader):
    data = reader.data
    for top, value in data.items():
        if top == "robot":
            if not isinstance(value, dict):
                raise reader.error("robot", None, "must be a table")
            for sub in value:
                if f"robot.{sub}" not in SECTIONS:
                    raise reader.error(f"robot.{sub}", None, "unknown section")
        elif top not in SECTIONS:
            raise reader.error(top, None, "unknown section")
    for section, allowed in SECTIONS.items():
        for key in reader.table(section):
            if key not in allowed:
                raise reader.error(section, key, f"unknown key {key!r}")


def _robot(reader, section, base):
    table = reader.table(section)
    values = {k: reader.number(section, k, v) for k, v in table.items()}
    try:
        return replace(base, **values)
    except ValueError as exc:
        raise reader.blame(section, ROBOT_KEYS, exc) from None


def _gain(reader, key, value):
    if isinstance(value, list):
        return reader.vector("gains", key, value, 4)
    return float(reader.number("gains", key, value))


def parse_config(text):
    """Parse TOML text into an ExperimentConfig. Raises ConfigError."""
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    r = _Reader(text, data)
    _check_structure(r)

    nominal = _robot(r, "robot.nominal", RobotParams())
    true = _robot(r, "robot.true", nominal)

    g = r.table("gains")
    try:
        gains = Gains.diagonal(_gain(r, "kp", g.get("kp", 100.0)), _gain(r, "kd", g.get("kd", 20.0)))
    except ValueError as exc:
        raise r.blame("gains", ("kp", "kd"), exc) from None

    kw = {}
    tr = r.table("trajectory")
    for key in ("q_start", "q_end"):
        if key in tr:
            kw[key] = r.vector("trajectory", key, tr[key], 4)
    if "duration" in tr:
        kw["duration"] = float(r.number("trajectory", "duration", tr["duration"]))
    if "interpolation" in tr:
        kw["interpolation"] = r.string("trajectory", "interpolation", tr["interpolation"])
    waypoints = tr.get("waypoints", [])
    if not isinstance(waypoints, list):
        raise r.error("trajectory", "waypoints", "expected a list of 4-vectors")
    waypoints = [r.vector("trajectory", "waypoints", w, 4) for w in waypoints]
    count = r.number("trajectory", "random_waypoints", tr.get("random_waypoints", 0), integer=True)
    if count < 0:
        raise r.error("trajectory", "random_waypoints", f"must be >= 0, got {count}")
    if count:
        if waypoints:
            raise r.error("trajectory", "random_waypoints", "cannot be combined with explicit waypoints")
        seed = r.number("trajectory", "waypoint_seed", tr.get("waypoint_seed", 0), integer=True)
        amp = float(r.number("trajectory", "waypoint_amplitude", tr.get("waypoint_amplitude", 0.8)))
        if not amp >= 0:
            raise r.error("trajectory", "waypoint_amplitude", f"must be >= 0, got {amp}")
        center = kw.get("q_start", ExperimentConfig().q_start)
        waypoints = excitation_waypoints(seed, count, amp, center)
    kw["waypoints"] = tuple(waypoints)

    rl = r.table("rls")
    enabled = rl.get("enabled", True)
    if not isinstance(enabled, bool):
        raise r.error("rls", "enabled", f"expected true or false, got {enabled!r}")
    rls_kw = {}
    if "initial_theta" in rl:
        rls_kw["initial_theta"] = r.vector("rls", "initial_theta", rl["initial_theta"], 5)
    for key in ("initial_cov_scale", "forgetting"):
        if key in rl:
            rls_kw[key] = float(r.number("rls", key, rl[key]))
    try:
        rls = RlsConfig(**rls_kw)
    except ValueError as exc:
        raise r.blame("rls", SECTIONS["rls"], exc) from None

    sim = r.table("sim")
    for key in ("control_period", "plant_substep", "noise_std"):
        if key in sim:
            kw[key] = float(r.number("sim", key, sim[key]))
    if "seed" in sim:
        kw["seed"] = r.number("sim", "seed", sim["seed"], integer=True)
    if "accel_source" in sim:
        kw["accel_source"] = r.string("sim", "accel_source", sim["accel_source"])
    mode = ControlLawMode.STANDARD
    if "mode" in sim:
        try:
            mode = ControlLawMode.parse(r.string("sim", "mode", sim["mode"]))
        except ValueError:
            raise r.error("sim", "mode", f"expected 'standard' or 'paper-literal', got {sim['mode']!r}") from None

    try:
        return ExperimentConfig(nominal_params=nominal, true_params=true, gains=gains, mode=mode,
                                rls=rls, adaptation_on=enabled, **kw)
    except ValueError as exc:
        msg = str(exc)
        first = msg.split(" ", 1)[0]
        for section in ("sim", "trajectory"):
            if first in SECTIONS[section]:
                raise r.error(section, first, msg) from None
        if first.startswith("waypoints"):
            raise r.error("trajectory", "waypoints", msg) from None
        raise ConfigError(msg) from None


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
