"""Affine communication cost model and its calibration.

A single transfer of `msg_size` MB, of which a fraction `tau` actually
crosses the network, costs ``t_s + t_w * msg_size * tau`` seconds: a
size-independent startup term plus a size-proportional term. The
coefficients are fitted from ping-pong style measurements by ordinary
least squares. One parameter set is used for every process pair; the
simulator accepts per-link overrides as an extension point.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path


class CalibrationError(ValueError):
    """Calibration input cannot determine the two coefficients."""


@dataclass(frozen=True)
class CommParams:
    """Affine cost coefficients: t_s in seconds, t_w in seconds per MB."""

    t_s: float
    t_w: float

    def __post_init__(self) -> None:
        if self.t_s < 0:
            raise ValueError(f"t_s must be >= 0, got {self.t_s}")
        if self.t_w <= 0:
            raise ValueError(f"t_w must be > 0, got {self.t_w}")


#: Coefficients measured on the reference platform.
REFERENCE_COMM = CommParams(t_s=5.39e-3, t_w=3.35e-2)


@dataclass(frozen=True)
class CalibrationSample:
    """One ping-pong measurement: message size (MB) and elapsed time (s)."""

    msg_size: float
    elapsed: float

    def __post_init__(self) -> None:
        if self.msg_size <= 0:
            raise ValueError(f"msg_size must be > 0, got {self.msg_size}")
        if self.elapsed <= 0:
            raise ValueError(f"elapsed must be > 0, got {self.elapsed}")


def transfer_time(params: CommParams, msg_size: float, tau: float) -> float:
    """Cost of one shuffle transfer of `msg_size` MB at shuffle fraction `tau`."""
    if msg_size < 0:
        raise ValueError(f"msg_size must be >= 0, got {msg_size}")
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must be in [0, 1], got {tau}")
    return params.t_s + params.t_w * (msg_size * tau)


@dataclass(frozen=True)
class CalibrationResult:
    """Fitted coefficients plus a residual report.

    `t_s` is clamped at zero (a negative fitted intercept is physically
    meaningless under noise); the raw value is kept in `raw_t_s` and a
    warning is recorded. A non-positive fitted slope marks the whole
    calibration invalid rather than raising.
    """

    t_s: float
    t_w: float
    raw_t_s: float
    residuals: tuple[float, ...]
    rmse: float
    valid: bool
    warnings: tuple[str, ...]

    @property
    def params(self) -> CommParams:
        if not self.valid:
            raise CalibrationError(
                f"calibration is invalid (fitted t_w={self.t_w!r}): " + "; ".join(self.warnings)
            )
        return CommParams(self.t_s, self.t_w)


def fit_comm_params(samples: list[CalibrationSample]) -> CalibrationResult:
    """Ordinary least squares fit of elapsed = t_s + t_w * msg_size."""
    if len(samples) < 2:
        raise CalibrationError(
            f"need at least 2 samples to fit two coefficients, got {len(samples)}"
        )
    xs = [s.msg_size for s in samples]
    ys = [s.elapsed for s in samples]
    n = len(xs)
    x_bar = sum(xs) / n
    y_bar = sum(ys) / n
    sxx = sum((x - x_bar) ** 2 for x in xs)
    if sxx == 0.0:
        raise CalibrationError(
            f"all {n} samples share msg_size={xs[0]}; the system is singular"
        )
    sxy = sum((x - x_bar) * (y - y_bar) for x, y in zip(xs, ys))

    t_w = sxy / sxx
    raw_t_s = y_bar - t_w * x_bar

    warnings: list[str] = []
    t_s = raw_t_s
    if raw_t_s < 0.0:
        t_s = 0.0
        warnings.append(f"fitted t_s={raw_t_s:.6g} s is negative; clamped to 0")
    valid = t_w > 0.0
    if not valid:
        warnings.append(f"fitted t_w={t_w:.6g} s/MB is not positive; calibration invalid")

    residuals = tuple(y - (t_s + t_w * x) for x, y in zip(xs, ys))
    rmse = math.sqrt(sum(r * r for r in residuals) / n)
    return CalibrationResult(
        t_s=t_s,
        t_w=t_w,
        raw_t_s=raw_t_s,
        residuals=residuals,
        rmse=rmse,
        valid=valid,
        warnings=tuple(warnings),
    )


SAMPLES_CSV_HEADER = ("msg_size_mb", "elapsed_s")


def read_samples_csv(path: str | Path) -> list[CalibrationSample]:
    """Load calibration samples from a CSV file with header msg_size_mb,elapsed_s."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CalibrationError(f"{path}: empty samples file") from None
        if tuple(h.strip() for h in header) != SAMPLES_CSV_HEADER:
            raise CalibrationError(
                f"{path}: expected header {','.join(SAMPLES_CSV_HEADER)!r}, "
                f"got {','.join(header)!r}"
            )
        samples = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise CalibrationError(f"{path}:{lineno}: expected 2 fields, got {len(row)}")
            try:
                samples.append(CalibrationSample(float(row[0]), float(row[1])))
            except ValueError as exc:
                raise CalibrationError(f"{path}:{lineno}: {exc}") from None
    return samples
