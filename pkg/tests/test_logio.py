import io

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from adaptive_leg.logio import COLUMNS, LogFormatError, columns_to_records, fmt, read_log, write_log
from adaptive_leg.simrunner import ExperimentConfig, run_experiment


def test_header_exact():
    assert ",".join(COLUMNS) == ("t,q0,q1,q2,q3,qd0,qd1,qd2,qd3,qdd0,qdd1,qdd2,qdd3,qref0,qref1,qref2,qref3,"
                                 "tau0,tau1,tau2,tau3,th0,th1,th2,th3,th4,theta_err_sq,frozen")


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_text_roundtrip(x):
    assert float(fmt(x)) == x


def test_log_roundtrip_exact():
    records = run_experiment(ExperimentConfig(duration=0.2, plant_substep=1e-3, noise_std=1e-3))
    buf = io.StringIO()
    write_log(records, buf)
    back = columns_to_records(read_log(io.StringIO(buf.getvalue())))
    assert len(back) == len(records)
    for a, b in zip(records, back):
        assert a.t == b.t and a.theta_error_sq == b.theta_error_sq
        for field in ("q", "qd", "qdd", "q_ref", "tau", "theta_hat"):
            np.testing.assert_array_equal(getattr(a, field), getattr(b, field))
        assert a.estimator_frozen == b.estimator_frozen
    again = io.StringIO()
    write_log(back, again)
    assert again.getvalue() == buf.getvalue()


def test_missing_column_named():
    text = ",".join(c for c in COLUMNS if c != "tau2") + "\n"
    with pytest.raises(LogFormatError, match="tau2"):
        read_log(io.StringIO(text))


def test_empty_and_ragged():
    with pytest.raises(LogFormatError):
        read_log(io.StringIO(""))
    text = ",".join(COLUMNS) + "\n1,2,3\n"
    with pytest.raises(LogFormatError, match="line 2"):
        read_log(io.StringIO(text))


def test_bad_number():
    row = ["0"] * len(COLUMNS)
    row[3] = "abc"
    text = ",".join(COLUMNS) + "\n" + ",".join(row) + "\n"
    with pytest.raises(LogFormatError, match="q2"):
        read_log(io.StringIO(text))
