"""Parameterized curve families used by the synthetic chart generator.

Twenty families, four per category (sinusoidal, logistic, power-law,
damped, exponential). Every family is a function of normalized position
t in [0, 1]; the renderer rescales the raw values into a vertical band
of the plot, so only the *shape* matters here. Parameter ranges are part
of the family definition and samples are always drawn inside them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

CATEGORIES = ("sinusoidal", "logistic", "power_law", "damped", "exponential")

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class Family:
    family_id: str
    category: str
    # (param name, low, high) — inclusive sampling ranges
    params: tuple[tuple[str, float, float], ...]
    fn: Callable[[np.ndarray, dict[str, float]], np.ndarray]

    def evaluate(self, t: np.ndarray, params: dict[str, float]) -> np.ndarray:
        return self.fn(np.asarray(t, dtype=np.float64), params)

    def sample_params(self, rng: np.random.Generator) -> dict[str, float]:
        return {name: float(rng.uniform(lo, hi)) for name, lo, hi in self.params}


def _sine(t, p):
    return np.sin(TWO_PI * p["freq"] * t + p["phase"])


def _sum_of_sines(t, p):
    return np.sin(TWO_PI * p["freq1"] * t + p["phase"]) + p["amp2"] * np.sin(
        TWO_PI * p["freq2"] * t
    )


def _chirp(t, p):
    return np.sin(TWO_PI * (p["freq0"] * t + 0.5 * p["sweep"] * t * t))


def _sine_trend(t, p):
    return np.sin(TWO_PI * p["freq"] * t + p["phase"]) + p["slope"] * t


def _logistic(t, p):
    return 1.0 / (1.0 + np.exp(-p["rate"] * (t - p["mid"])))


def _logistic_fall(t, p):
    return 1.0 / (1.0 + np.exp(p["rate"] * (t - p["mid"])))


def _gen_logistic(t, p):
    return (1.0 / (1.0 + np.exp(-p["rate"] * (t - p["mid"])))) ** p["shape"]


def _tanh_step(t, p):
    return 0.5 * (1.0 + np.tanh(p["rate"] * (t - p["mid"])))


def _power_frac(t, p):
    return np.power(t, p["exponent"])


def _power_super(t, p):
    return np.power(t, p["exponent"])


def _rational_sat(t, p):
    return t / (t + p["knee"])


def _sqrt_shift(t, p):
    return np.sqrt(t + p["offset"])


def _damped_sine(t, p):
    return np.exp(-p["decay"] * t) * np.sin(TWO_PI * p["freq"] * t + p["phase"])


def _damped_step(t, p):
    k = p["rate"]
    return 1.0 - (1.0 + k * t) * np.exp(-k * t)


def _damped_sum(t, p):
    return np.exp(-p["decay"] * t) * (
        np.sin(TWO_PI * p["freq1"] * t) + 0.5 * np.sin(TWO_PI * p["freq2"] * t)
    )


def _damped_saw(t, p):
    # first three harmonics of a sawtooth, exponentially damped
    f = p["freq"]
    saw = sum(np.sin(TWO_PI * n * f * t) / n for n in (1, 2, 3))
    return np.exp(-p["decay"] * t) * saw


def _exp_growth(t, p):
    return np.exp(p["rate"] * t)


def _exp_decay(t, p):
    return np.exp(-p["rate"] * t)


def _exp_minus_linear(t, p):
    return np.exp(p["rate"] * t) - p["slope"] * t


def _double_exp(t, p):
    return np.exp(-p["rate1"] * t) - np.exp(-p["rate2"] * t)


FAMILIES: dict[str, Family] = {
    f.family_id: f
    for f in [
        Family("sine", "sinusoidal", (("freq", 0.5, 3.0), ("phase", 0.0, TWO_PI)), _sine),
        Family(
            "sum_of_sines",
            "sinusoidal",
            (("freq1", 0.5, 2.0), ("freq2", 2.0, 5.0), ("amp2", 0.2, 0.8), ("phase", 0.0, TWO_PI)),
            _sum_of_sines,
        ),
        Family("chirp", "sinusoidal", (("freq0", 0.5, 1.5), ("sweep", 1.0, 4.0)), _chirp),
        Family(
            "sine_trend",
            "sinusoidal",
            (("freq", 1.0, 4.0), ("phase", 0.0, TWO_PI), ("slope", 2.0, 6.0)),
            _sine_trend,
        ),
        Family("logistic", "logistic", (("rate", 6.0, 20.0), ("mid", 0.3, 0.7)), _logistic),
        Family("logistic_fall", "logistic", (("rate", 6.0, 20.0), ("mid", 0.3, 0.7)), _logistic_fall),
        Family(
            "gen_logistic",
            "logistic",
            (("rate", 6.0, 20.0), ("mid", 0.3, 0.7), ("shape", 0.3, 3.0)),
            _gen_logistic,
        ),
        Family("tanh_step", "logistic", (("rate", 4.0, 12.0), ("mid", 0.3, 0.7)), _tanh_step),
        Family("power_frac", "power_law", (("exponent", 0.2, 0.9),), _power_frac),
        Family("power_super", "power_law", (("exponent", 1.3, 4.0),), _power_super),
        Family("rational_sat", "power_law", (("knee", 0.05, 0.5),), _rational_sat),
        Family("sqrt_shift", "power_law", (("offset", 0.01, 0.3),), _sqrt_shift),
        Family(
            "damped_sine",
            "damped",
            (("decay", 1.5, 5.0), ("freq", 2.0, 6.0), ("phase", 0.0, TWO_PI)),
            _damped_sine,
        ),
        Family("damped_step", "damped", (("rate", 4.0, 15.0),), _damped_step),
        Family(
            "damped_sum",
            "damped",
            (("decay", 1.0, 4.0), ("freq1", 1.5, 3.5), ("freq2", 4.0, 8.0)),
            _damped_sum,
        ),
        Family("damped_saw", "damped", (("decay", 1.0, 4.0), ("freq", 1.0, 3.0)), _damped_saw),
        Family("exp_growth", "exponential", (("rate", 1.0, 4.0),), _exp_growth),
        Family("exp_decay", "exponential", (("rate", 1.0, 4.0),), _exp_decay),
        Family(
            "exp_minus_linear",
            "exponential",
            (("rate", 1.0, 2.5), ("slope", 2.0, 8.0)),
            _exp_minus_linear,
        ),
        Family(
            "double_exp", "exponential", (("rate1", 1.0, 3.0), ("rate2", 6.0, 20.0)), _double_exp
        ),
    ]
}

FAMILY_IDS = tuple(FAMILIES)


def family_by_id(family_id: str) -> Family:
    try:
        return FAMILIES[family_id]
    except KeyError:
        raise KeyError(f"unknown curve family: {family_id!r}") from None
