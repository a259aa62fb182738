"""Nontrivial zeta zeros on the critical line, located through sign changes of Xi.

Xi(t) = xi(1/2 + i t) is real for real t, so every simple zero on the
critical line is a sign change that bisection can bracket and refine.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass
from pathlib import Path

from .complex_special import xi_completed, zeta

ZEROS_ENV_VAR = "HP_ZEROS_PATH"
DEFAULT_ZEROS_PATH = Path(__file__).with_name("data") / "zeros.csv"


class BracketError(ValueError):
    """The bracket does not enclose a sign change of Xi."""


@dataclass(frozen=True)
class ZetaZero:
    index: int
    gamma: float
    residual: float

    @property
    def rho(self) -> complex:
        return complex(0.5, self.gamma)


def xi_critical(t: float) -> float:
    """Xi(t), the completed zeta function on the critical line."""
    return xi_completed(complex(0.5, t)).real


def zeta_residual(gamma: float) -> float:
    return abs(zeta(complex(0.5, gamma)))


def refine_zero(bracket_lo: float, bracket_hi: float, tol: float = 1e-10, index: int = 0) -> ZetaZero:
    """Bisect a sign change of Xi in ``[bracket_lo, bracket_hi]`` down to width ``tol``."""
    lo, hi = float(bracket_lo), float(bracket_hi)
    f_lo, f_hi = xi_critical(lo), xi_critical(hi)
    if f_lo == 0.0:
        return ZetaZero(index, lo, zeta_residual(lo))
    if f_hi == 0.0:
        return ZetaZero(index, hi, zeta_residual(hi))
    if f_lo * f_hi > 0:
        raise BracketError(f"Xi has no sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = xi_critical(mid)
        if f_mid == 0.0:
            lo = hi = mid
            break
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    g = 0.5 * (lo + hi)
    return ZetaZero(index, g, zeta_residual(g))


def scan_sign_changes(t_max: float, step: float = 0.05, t_min: float = 0.0) -> list[tuple[float, float]]:
    """Brackets ``(t, t + step)`` on which Xi changes sign."""
    n = int(math.floor((t_max - t_min) / step))
    brackets = []
    prev_t, prev_v = t_min, xi_critical(t_min)
    for k in range(1, n + 1):
        t = t_min + k * step
        v = xi_critical(t)
        if prev_v * v < 0:
            brackets.append((prev_t, t))
        prev_t, prev_v = t, v
    return brackets


def compute_zeros(count: int, t_max: float = 240.0, step: float = 0.05, tol: float = 1e-12) -> list[ZetaZero]:
    """Self-certified zeros: scan for sign changes, then bisect each bracket."""
    zeros = []
    for i, (lo, hi) in enumerate(scan_sign_changes(t_max, step), start=1):
        zeros.append(refine_zero(lo, hi, tol, index=i))
        if len(zeros) == count:
            break
    if len(zeros) < count:
        raise ValueError(f"only {len(zeros)} sign changes below t = {t_max}")
    return zeros


def zeros_path() -> Path:
    override = os.environ.get(ZEROS_ENV_VAR)
    return Path(override) if override else DEFAULT_ZEROS_PATH


def read_zero_table(path: Path | None = None) -> list[tuple[int, float]]:
    path = zeros_path() if path is None else Path(path)
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != ["index", "gamma"]:
            raise ValueError(f"{path}: expected header 'index,gamma', got {reader.fieldnames}")
        return [(int(row["index"]), float(row["gamma"])) for row in reader]


def write_zero_table(zeros: list[ZetaZero], path: Path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write("index,gamma\n")
        for z in zeros:
            fh.write(f"{z.index},{z.gamma:.12g}\n")


def load_zeros(count: int, path: Path | None = None) -> list[ZetaZero]:
    """First ``count`` zeros of the embedded table, residuals recomputed on load."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    if count == 0:
        return []
    table = read_zero_table(path)
    if count > len(table):
        raise IndexError(f"requested {count} zeros, table holds {len(table)}")
    return [ZetaZero(i, g, zeta_residual(g)) for i, g in table[:count]]


def verify_zero(z: ZetaZero, tol: float) -> bool:
    return zeta_residual(z.gamma) < tol


def zero(index: int) -> ZetaZero:
    """The ``index``-th tabulated zero (1-based)."""
    if index < 1:
        raise IndexError("zero indices start at 1")
    return load_zeros(index)[index - 1]
