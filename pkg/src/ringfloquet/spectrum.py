"""Floquet weights C_r and the quasi-energy sideband spectrum.

The weight of sideband r is the double Bessel sum

    C_r = sum_s (-1)^r J_{r+2s}(alpha) J_s(beta),

which is also the Fourier coefficient (1/2pi) int exp(-i(alpha sin t + beta sin 2t)) e^{-irt} dt.
Full tables go through the FFT of that signal (``oracle.coefficients_dft``);
the series is kept for single-r queries and as the validator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .errors import (
    DegenerateError,
    DomainError,
    InconsistencyError,
    TruncationError,
    VerificationError,
)
from .model import ModeParams, energy_shifted
from .specfun import jn_array, order_below

SERIES_TOL = 1e-12
SPOT_CHECKS = 16
SPOT_CHECK_TOL = 1e-10
# window adequacy: the edge weights of a full table stay below this
EDGE_TOL = 1e-12


def window_halfwidth(alpha: float, beta: float) -> int:
    """Half-width r_max of the symmetric index window [-r_max, r_max].

    The signal's instantaneous frequency never exceeds |alpha| + 2 beta; the
    cube-root terms cover the Airy transition region past that edge.
    """
    a = abs(alpha)
    return math.ceil(a + 2.0 * beta + 10.0 * ((a + 1.0) ** (1 / 3) + (2.0 * beta + 1.0) ** (1 / 3)) + 32)


@dataclass(frozen=True)
class WeightTable:
    """C_r on a set of indices ``r`` (ascending).

    Full tables cover the symmetric window -r_max..r_max; series tables hold
    only the indices that were asked for.
    """

    alpha: float
    beta: float
    r: np.ndarray
    weights: np.ndarray
    method: str  # "series", "closed_n0" or "dft"
    truncation_tol: float = 0.0
    s_max_used: int = 0
    params: ModeParams | None = field(default=None, compare=False)

    @property
    def r_min(self) -> int:
        return int(self.r[0])

    @property
    def r_max(self) -> int:
        return int(self.r[-1])

    @property
    def is_window(self) -> bool:
        return self.method != "series" and self.r_min == -self.r_max and len(self.r) == 2 * self.r_max + 1

    def weight(self, r: int) -> float:
        """C_r; zero outside a full window, KeyError for a missing series index."""
        if self.is_window:
            if abs(r) > self.r_max:
                return 0.0
            return float(self.weights[r + self.r_max])
        idx = np.searchsorted(self.r, r)
        if idx >= len(self.r) or self.r[idx] != r:
            raise KeyError(r)
        return float(self.weights[idx])

    def parseval_sum(self) -> float:
        return float(np.dot(self.weights, self.weights))

    def edge_magnitude(self) -> float:
        return float(max(abs(self.weights[0]), abs(self.weights[-1])))

    def with_weights(self, weights: np.ndarray) -> "WeightTable":
        return WeightTable(
            self.alpha, self.beta, self.r, weights, self.method,
            self.truncation_tol, self.s_max_used, self.params,
        )


def _alpha_beta(params) -> tuple[float, float]:
    if isinstance(params, ModeParams):
        return params.alpha, params.beta
    alpha, beta = params
    return float(alpha), float(beta)


def _window_table(alpha, beta, weights, method, params=None, **kw) -> WeightTable:
    r_max = (len(weights) - 1) // 2
    r = np.arange(-r_max, r_max + 1)
    weights.setflags(write=False)
    return WeightTable(alpha, beta, r, weights, method, params=params, **kw)


def _suffix_abs_sum(v: np.ndarray) -> np.ndarray:
    out = np.zeros(v.size + 1)
    out[:-1] = np.cumsum(np.abs(v)[::-1])[::-1]
    return out


def coefficients_series(params, r_values, tol: float = SERIES_TOL) -> WeightTable:
    """C_r for the requested indices by direct summation over s.

    The pair s = +-m is added at step m until the increment drops below
    ``tol``. A small increment alone is not trusted (pairs can cancel
    exactly, e.g. at r = 0), so summation also waits until the neglected tail,
    bounded by suffix sums of |J_s(beta)| or |J_k(alpha)|, is below ``tol``.

    Args:
        params: a :class:`ModeParams` or an ``(alpha, beta)`` pair.
        r_values: iterable of integer sideband indices.
        tol: stopping threshold on the partial-sum change.

    Raises:
        TruncationError: no convergence before the s cap.
    """
    if not tol > 0:
        raise DomainError("tol must be > 0")
    alpha, beta = _alpha_beta(params)
    if beta < 0:
        raise DomainError("beta must be >= 0")
    r_arr = np.unique(np.asarray(list(r_values), dtype=np.int64))
    if r_arr.size == 0:
        raise DomainError("no r values requested")
    a = abs(alpha)
    # past this order the whole |J_s(beta)| tail is far below tol
    s_cap = 1 if beta == 0 else order_below(beta, math.log(tol * 1e-3)) + 1
    # the |J_k(alpha)| suffix sums only bound the tail if ja runs past its decay
    a_len = int(np.abs(r_arr).max()) + 2 * s_cap + 1
    if a > 0:
        a_len = max(a_len, order_below(a, math.log(tol * 1e-3)) + 1)
    ja = jn_array(a, a_len).values
    jb = jn_array(beta, s_cap + 1).values
    tail_a = _suffix_abs_sum(ja)
    tail_b = _suffix_abs_sum(jb)
    out = np.empty(r_arr.size)
    s_used = 0
    for i, r in enumerate(r_arr.tolist()):
        value, m, prev, ok = kernels.series_coefficient(ja, alpha < 0, jb, tail_a, tail_b, r, s_cap, tol)
        if not ok:
            raise TruncationError(
                f"C_{r} series did not settle below {tol} within |s| <= {s_cap}",
                last_partials=(prev, value),
            )
        out[i] = value
        s_used = max(s_used, m)
    out.setflags(write=False)
    return WeightTable(
        alpha, beta, r_arr, out, "series", truncation_tol=tol, s_max_used=s_used,
        params=params if isinstance(params, ModeParams) else None,
    )


def last_above(values: np.ndarray, level: float) -> int:
    """Largest index with |value| > level, or -1."""
    idx = np.nonzero(np.abs(values) > level)[0]
    return int(idx[-1]) if idx.size else -1


def quiet_edge(rim: np.ndarray, start: int, level: float, run: int = 16) -> int:
    """First index >= ``start`` that opens ``run`` consecutive entries with |rim| <= level.

    Returns ``rim.size`` when there is no such run. Isolated roundoff spikes
    further out do not move the edge.
    """
    loud = np.concatenate(([0], np.cumsum(np.abs(rim[start:]) > level)))
    count = loud[run:] - loud[:-run]
    idx = np.nonzero(count == 0)[0]
    return start + int(idx[0]) if idx.size else rim.size


def coefficients_n0(beta: float, params: ModeParams | None = None) -> WeightTable:
    """Closed form for the n = 0 mode: C_r = (-1)^(r/2) J_{r/2}(beta), zero for odd r.

    The window is the usual half-width, widened when the Airy tail of
    J_m(beta) past m = beta still exceeds the edge tolerance there.
    """
    if beta < 0:
        raise DomainError("beta must be >= 0")
    m_hi = window_halfwidth(0.0, beta) // 2
    if beta > 0:
        m_hi = max(m_hi, order_below(beta, math.log(EDGE_TOL * 1e-4)) + 1)
    j_all = jn_array(beta, m_hi).values
    r_max = max(window_halfwidth(0.0, beta), 2 * (last_above(j_all, 0.5 * EDGE_TOL) + 1))
    m_max = r_max // 2
    j = np.zeros(m_max + 1)
    j[: min(m_max, m_hi) + 1] = j_all[: m_max + 1]
    signs = np.where(np.arange(m_max + 1) % 2 == 0, 1.0, -1.0)
    weights = np.zeros(2 * r_max + 1)
    centre = r_max
    # r = 2m >= 0 carries (-1)^m J_m; r = -2m carries J_m
    weights[centre::2][: m_max + 1] = signs * j
    weights[centre::-2][: m_max + 1] = j
    return _window_table(0.0, float(beta), weights, "closed_n0", params=params)


def coefficients_full(
    params,
    *,
    oversample: int = 4,
    spot_checks: int = SPOT_CHECKS,
    seed: int = 0,
) -> WeightTable:
    """Full window of C_r for a mode.

    n = 0 (or alpha = 0) uses the closed form; everything else is the FFT
    route, spot-checked against the series at ``spot_checks`` random indices.

    Raises:
        ResourceError: FFT length above the cap.
        VerificationError: FFT and series disagree by more than 1e-10.
    """
    from .oracle import coefficients_dft

    alpha, beta = _alpha_beta(params)
    mp = params if isinstance(params, ModeParams) else None
    if alpha == 0.0 or (mp is not None and mp.n == 0):
        return coefficients_n0(beta, params=mp)
    table = coefficients_dft(alpha, beta, oversample)
    if spot_checks > 0:
        rng = np.random.default_rng(seed)
        k = min(spot_checks, len(table.r))
        picks = rng.choice(table.r, size=k, replace=False)
        check = coefficients_series((alpha, beta), picks)
        got = np.array([table.weight(int(r)) for r in check.r])
        err = float(np.max(np.abs(got - check.weights)))
        if err > SPOT_CHECK_TOL:
            raise VerificationError(f"FFT and series weights differ by {err:.3g} at alpha={alpha}, beta={beta}")
    return WeightTable(
        table.alpha, table.beta, table.r, table.weights, "dft",
        table.truncation_tol, table.s_max_used, params=mp,
    )


@dataclass(frozen=True)
class PeakInfo:
    """Dominant positive sideband.

    ``baseline`` is the median |C_r| over 0 < r < r_peak/2 (zeros skipped);
    ``envelope`` is the largest |C_r| over the same range, i.e. the level the
    oscillating background reaches on a plot.
    """

    r_peak: int
    weight_at_peak: float
    baseline: float
    contrast: float
    envelope: float
    envelope_contrast: float


def find_peak(table: WeightTable) -> PeakInfo:
    """Positive index of largest |C_r| (smallest r on ties).

    Raises:
        DegenerateError: no nonzero weight at r > 0.
    """
    pos = table.r > 0
    mags = np.abs(table.weights[pos])
    if mags.size == 0 or not np.any(mags > 0):
        raise DegenerateError("no nonzero weight at positive r")
    i = int(np.argmax(mags))
    r_peak = int(table.r[pos][i])
    w = float(table.weights[pos][i])
    below = (table.r > 0) & (table.r < r_peak / 2) & (table.weights != 0)
    background = np.abs(table.weights[below])
    if background.size:
        baseline = float(np.median(background))
        envelope = float(background.max())
        contrast = abs(w) / baseline
        envelope_contrast = abs(w) / envelope
    else:
        baseline = envelope = contrast = envelope_contrast = math.nan
    return PeakInfo(r_peak, w, baseline, contrast, envelope, envelope_contrast)


@dataclass(frozen=True)
class QuasiEnergySpectrum:
    """Sideband lines E'_n + r hbar omega with weights C_r.

    Lines are stored column-wise; ``peak_indices`` is (-r_peak, +r_peak), or
    (0, 0) when there is no sideband structure at all.
    """

    n: int
    alpha: float
    beta: float
    r: np.ndarray
    energies: np.ndarray
    weights: np.ndarray
    base_energy: float
    hbar_omega: float
    peak_indices: tuple[int, int]
    peak_weight: float = math.nan

    @property
    def r_peak(self) -> int:
        return self.peak_indices[1]

    def lines(self):
        for r, e, w in zip(self.r.tolist(), self.energies.tolist(), self.weights.tolist()):
            yield r, e, w

    def dominant(self) -> np.ndarray:
        """Mask of the lines sitting at +-r_peak."""
        if self.r_peak == 0:
            return np.zeros(self.r.shape, dtype=bool)
        return np.abs(self.r) == self.r_peak

    def to_dict(self) -> dict:
        dom = self.dominant().tolist()
        return {
            "n": self.n,
            "alpha": self.alpha,
            "beta": self.beta,
            "base_energy_J": self.base_energy,
            "hbar_omega_J": self.hbar_omega,
            "r_peak": self.r_peak,
            "lines": [
                {"r": r, "energy_J": e, "weight": w, "dominant": d}
                for (r, e, w), d in zip(self.lines(), dom)
            ],
        }


def sidebands(table: WeightTable, weight_floor: float = 0.0) -> QuasiEnergySpectrum:
    """Lines with |C_r| >= ``weight_floor`` at energies E'_n + r hbar omega."""
    if weight_floor < 0:
        raise DomainError("weight_floor must be >= 0")
    p = table.params
    if p is None:
        raise DomainError("table carries no ModeParams; energies are undefined")
    base = energy_shifted(p.n, p.flux_ratio, p.energy_scale)
    keep = np.abs(table.weights) >= weight_floor
    r = table.r[keep]
    try:
        peak = find_peak(table)
        r_peak, w_peak = peak.r_peak, peak.weight_at_peak
    except DegenerateError:
        r_peak, w_peak = 0, float(table.weight(0)) if table.is_window else math.nan
    return QuasiEnergySpectrum(
        n=p.n,
        alpha=table.alpha,
        beta=table.beta,
        r=r,
        energies=base + r * p.hbar_omega,
        weights=table.weights[keep],
        base_energy=base,
        hbar_omega=p.hbar_omega,
        peak_indices=(-r_peak, r_peak),
        peak_weight=w_peak,
    )


@dataclass(frozen=True)
class Level:
    n: int
    r: int
    energy: float

    @property
    def label(self) -> str:
        sign = "+" if self.r >= 0 else "-"
        return f"E{self.n}' {sign} {abs(self.r)} hw"


@dataclass(frozen=True)
class Transition:
    lower: Level
    upper: Level
    gap: float
    delta_l: int
    kind: str  # "allowed" (delta l = +-1) or "suppressed" (delta l = 0)


@dataclass(frozen=True)
class TransitionDiagram:
    levels: tuple[Level, ...]
    transitions: tuple[Transition, ...]
    crossing: bool  # E1' - r1 hw lies below E0' + r0 hw
    lower_gap: float  # |(E1' - r1 hw) - (E0' - r0 hw)|

    def to_dict(self) -> dict:
        return {
            "levels": [{"n": lv.n, "r": lv.r, "energy_J": lv.energy, "label": lv.label} for lv in self.levels],
            "transitions": [
                {"from": t.lower.label, "to": t.upper.label, "gap_J": t.gap, "delta_l": t.delta_l, "kind": t.kind}
                for t in self.transitions
            ],
            "crossing": self.crossing,
            "lower_gap_J": self.lower_gap,
        }


def level_diagram(spec0: QuasiEnergySpectrum, spec1: QuasiEnergySpectrum) -> TransitionDiagram:
    """Dominant +-r_peak sidebands of n = 0 and n = 1 and the transitions between them."""
    if spec0.n != 0 or spec1.n != 1:
        raise DomainError(f"expected n = 0 and n = 1 spectra, got n = {spec0.n} and {spec1.n}")
    if not math.isclose(spec0.hbar_omega, spec1.hbar_omega, rel_tol=1e-12):
        raise InconsistencyError(
            f"spectra were built at different drive quanta ({spec0.hbar_omega} vs {spec1.hbar_omega})"
        )
    hw = spec0.hbar_omega
    levels = []
    for spec in (spec0, spec1):
        rp = spec.r_peak
        for r in ((-rp, rp) if rp else (0,)):
            levels.append(Level(spec.n, r, spec.base_energy + r * hw))
    levels.sort(key=lambda lv: (lv.energy, lv.n))
    transitions = []
    for i, lo in enumerate(levels):
        for hi in levels[i + 1:]:
            dl = hi.n - lo.n
            transitions.append(
                Transition(lo, hi, hi.energy - lo.energy, dl, "allowed" if abs(dl) == 1 else "suppressed")
            )
    r0, r1 = spec0.r_peak, spec1.r_peak
    crossing = spec1.base_energy - r1 * hw < spec0.base_energy + r0 * hw
    lower_gap = abs((spec1.base_energy - r1 * hw) - (spec0.base_energy - r0 * hw))
    return TransitionDiagram(tuple(levels), tuple(transitions), bool(crossing), lower_gap)
