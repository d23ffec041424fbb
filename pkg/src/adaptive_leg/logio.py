"""CSV serialization of experiment logs.

Floats are written with 17 significant digits, which round-trips every
IEEE double, so a log read back compares equal to the one written.
"""

import csv
import math

import numpy as np

from .simrunner import LogRecord


def _names(prefix, n):
    return [f"{prefix}{i}" for i in range(n)]


COLUMNS = (["t"] + _names("q", 4) + _names("qd", 4) + _names("qdd", 4) + _names("qref", 4)
           + _names("tau", 4) + _names("th", 5) + ["theta_err_sq", "frozen"])

# column prefix -> LogRecord field
_VECTORS = (("q", "q"), ("qd", "qd"), ("qdd", "qdd"), ("qref", "q_ref"), ("tau", "tau"),
            ("th", "theta_hat"))


class LogFormatError(ValueError):
    """The CSV does not follow the log schema."""


def fmt(x):
    x = float(x)
    if math.isnan(x):
        return "nan"
    return format(x, ".17g")


def record_row(rec):
    row = [fmt(rec.t)]
    for _, attr in _VECTORS:
        row.extend(fmt(v) for v in getattr(rec, attr))
    row.append(fmt(rec.theta_error_sq))
    row.append("1" if rec.estimator_frozen else "0")
    return row


def write_log(records, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(COLUMNS)
    for rec in records:
        writer.writerow(record_row(rec))


def save_log(records, path):
    with open(path, "w", newline="") as fh:
        write_log(records, fh)


def read_log(stream, required=COLUMNS):
    """Parse a log into a dict of float columns.

    Raises LogFormatError naming the first required column that is missing,
    or the line of the first malformed row.
    """
    reader = csv.reader(stream)
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise LogFormatError("empty log: missing header row") from None
    missing = [c for c in required if c not in header]
    if missing:
        raise LogFormatError(f"missing column {missing[0]!r}")
    index = {name: header.index(name) for name in required}
    cols = {name: [] for name in required}
    for row in reader:
        if not row:
            continue
        if len(row) != len(header):
            raise LogFormatError(f"line {reader.line_num}: expected {len(header)} fields, got {len(row)}")
        for name, i in index.items():
            try:
                cols[name].append(float(row[i]))
            except ValueError:
                raise LogFormatError(f"line {reader.line_num}: bad value {row[i]!r} in column {name!r}") from None
    return {name: np.array(v) for name, v in cols.items()}


def load_log(path, required=COLUMNS):
    with open(path, newline="") as fh:
        return read_log(fh, required)


def columns_to_records(cols):
    """Rebuild LogRecords from a full-schema column dict.

    The log holds no reference velocity or acceleration, so those come back
    as NaN.
    """
    n = len(cols["t"])
    nan4 = np.full(4, np.nan)
    out = []
    for k in range(n):
        vec = {attr: np.array([cols[f"{p}{i}"][k] for i in range(5 if p == "th" else 4)])
               for p, attr in _VECTORS}
        out.append(LogRecord(t=cols["t"][k], q=vec["q"], qd=vec["qd"], qdd=vec["qdd"],
                             q_ref=vec["q_ref"], qd_ref=nan4.copy(), qdd_ref=nan4.copy(),
                             tau=vec["tau"], theta_hat=vec["theta_hat"],
                             theta_error_sq=cols["theta_err_sq"][k],
                             estimator_frozen=bool(cols["frozen"][k])))
    return out
