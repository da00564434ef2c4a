"""Trace-based probabilistic programming: sample/score kernel and samplers.

A *model* is a plain callable taking a :class:`Tracer` and returning a
value.  Every random choice goes through the tracer, which reads a uniform
draw in [0, 1] from the current :class:`Trace` at a site address (or
generates and records one when the site is new).  Given a fixed trace a
model is deterministic, which is what lets Metropolis-Hastings move
between executions by perturbing draws.

Addresses are tuples of integers: the position of the draw within the
enclosing :meth:`Tracer.scope` blocks.  Scoping keeps addresses stable
when an earlier branch draws more or fewer values.
"""

from __future__ import annotations

import contextlib
import logging
import math
from dataclasses import dataclass
from statistics import NormalDist
from typing import Any, Callable, Generic, Iterator, Mapping, Optional, Sequence, TextIO, TypeVar

import numpy as np

__all__ = [
    "Address",
    "Trace",
    "Tracer",
    "Model",
    "Execution",
    "InferenceError",
    "EmptyOptions",
    "BadSigma",
    "ScoreOfNegative",
    "MissingSite",
    "ZeroInitialWeight",
    "NotHardConditioned",
    "normal_pdf",
    "inverse_normal_cdf",
    "execute",
    "run_weighted",
    "sample_prior",
    "rejection_sample",
    "metropolis_hastings",
]

log = logging.getLogger(__name__)

T = TypeVar("T")
Address = tuple[int, ...]

_STD_NORMAL = NormalDist()
# keeps inverse-CDF arguments strictly inside (0, 1)
_U_MIN = 5e-324
_U_MAX = 1.0 - 2.0**-53
_SEED_LIMIT = 2**64


class InferenceError(RuntimeError):
    pass


class EmptyOptions(ValueError):
    pass


class BadSigma(ValueError):
    pass


class ScoreOfNegative(ValueError):
    pass


class MissingSite(InferenceError):
    def __init__(self, address: Address):
        self.address = address
        super().__init__(f"trace has no draw for site {address} and no generator was supplied")


class ZeroInitialWeight(InferenceError):
    def __init__(self, attempts: int):
        self.attempts = attempts
        super().__init__(f"no prior trace with non-zero weight after {attempts} attempts")


class NotHardConditioned(InferenceError):
    pass


class Trace(Mapping[Address, float]):
    """Site address -> uniform draw in [0, 1]."""

    __slots__ = ("_values",)

    def __init__(self, values: Optional[Mapping[Address, float]] = None):
        self._values: dict[Address, float] = {}
        if values:
            for address, u in values.items():
                self[address] = u

    def __getitem__(self, address: Address) -> float:
        return self._values[address]

    def __setitem__(self, address: Address, u: float) -> None:
        u = float(u)
        if not 0.0 <= u <= 1.0:
            raise ValueError(f"trace draws must lie in [0, 1], got {u!r} at {address}")
        self._values[tuple(address)] = u

    def __iter__(self) -> Iterator[Address]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def copy(self) -> Trace:
        new = Trace.__new__(Trace)
        new._values = dict(self._values)
        return new

    def __repr__(self) -> str:
        return f"Trace({self._values!r})"


def normal_pdf(mu: float, sigma: float, x: float) -> float:
    if not sigma > 0:
        raise BadSigma(f"sigma must be positive, got {sigma!r}")
    z = (x - mu) / sigma
    return math.exp(-0.5 * z * z) / (sigma * math.sqrt(2.0 * math.pi))


def inverse_normal_cdf(u: float) -> float:
    """Standard normal quantile (Wichura's AS241, via :mod:`statistics`)."""
    return _STD_NORMAL.inv_cdf(min(_U_MAX, max(_U_MIN, u)))


class Tracer:
    """Handle a model uses to draw randomness and weight its execution."""

    def __init__(self, trace: Trace, rng: Optional[np.random.Generator] = None):
        self.trace = trace
        self.rng = rng
        self.log_weight = 0.0
        self.visited: list[Address] = []
        self._prefix: tuple[int, ...] = ()
        self._counters = [0]

    def _next_address(self) -> Address:
        k = self._counters[-1]
        self._counters[-1] = k + 1
        return self._prefix + (k,)

    @contextlib.contextmanager
    def scope(self, key: int):
        """Nest subsequent draws under ``key``."""
        saved = self._prefix
        self._prefix = saved + (int(key),)
        self._counters.append(0)
        try:
            yield self
        finally:
            self._counters.pop()
            self._prefix = saved

    def uniform(self) -> float:
        address = self._next_address()
        values = self.trace._values
        if address in values:
            u = values[address]
        elif self.rng is not None:
            u = float(self.rng.random())
            values[address] = u
        else:
            raise MissingSite(address)
        self.visited.append(address)
        return u

    def uniform_discrete(self, options: Sequence[T]) -> T:
        n = len(options)
        if n == 0:
            raise EmptyOptions("uniform_discrete needs at least one option")
        return options[min(int(self.uniform() * n), n - 1)]

    def bernoulli(self, p: float) -> bool:
        return self.uniform() < p

    def normal(self, mu: float, sigma: float) -> float:
        if not sigma > 0:
            raise BadSigma(f"sigma must be positive, got {sigma!r}")
        return mu + sigma * inverse_normal_cdf(self.uniform())

    def score(self, weight: float) -> None:
        if weight < 0 or math.isnan(weight):
            raise ScoreOfNegative(f"score argument must be >= 0, got {weight!r}")
        self.log_weight += math.log(weight) if weight > 0 else -math.inf

    def condition(self, ok: bool) -> None:
        """Hard constraint: a score of exactly 1 or 0."""
        if not ok:
            self.log_weight = -math.inf


Model = Callable[[Tracer], T]


@dataclass(frozen=True)
class Execution(Generic[T]):
    value: T
    log_weight: float
    visited: tuple[Address, ...]
    trace: Trace


def execute(model: Model, trace: Trace, rng: Optional[np.random.Generator] = None) -> Execution:
    """Run ``model`` against ``trace``; new sites are drawn from ``rng`` and recorded."""
    tracer = Tracer(trace, rng)
    value = model(tracer)
    return Execution(value, tracer.log_weight, tuple(tracer.visited), trace)


def run_weighted(model: Model, trace: Trace, rng: Optional[np.random.Generator] = None) -> tuple[Any, float]:
    """``(value, log_weight)`` of one execution."""
    ex = execute(model, trace, rng)
    return ex.value, ex.log_weight


def _rng(seed: int) -> np.random.Generator:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or not 0 <= seed < _SEED_LIMIT:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return np.random.default_rng(int(seed))


def sample_prior(model: Model, n: int, seed: int) -> list:
    """``n`` values from fresh traces, ignoring scores."""
    rng = _rng(seed)
    return [execute(model, Trace(), rng).value for _ in range(n)]


def rejection_sample(
    model: Model,
    n: int,
    seed: int,
    max_attempts: Optional[int] = None,
    progress: Optional[Callable[[int, int], None]] = None,
    progress_every: int = 10_000,
) -> list:
    """Collect ``n`` executions that pass every ``condition``.

    The model's total score must be exactly 0 or 1 on every execution.
    ``progress(accepted, attempts)`` is called every ``progress_every``
    attempts; progress is also logged at INFO level.
    """
    rng = _rng(seed)
    accepted: list = []
    attempts = 0
    while len(accepted) < n:
        if max_attempts is not None and attempts >= max_attempts:
            raise InferenceError(f"only {len(accepted)} of {n} samples accepted after {attempts} attempts")
        ex = execute(model, Trace(), rng)
        attempts += 1
        if ex.log_weight == 0.0:
            accepted.append(ex.value)
        elif ex.log_weight != -math.inf:
            raise NotHardConditioned(f"rejection sampling needs weights of 0 or 1, got exp({ex.log_weight})")
        if attempts % progress_every == 0:
            log.info("rejection sampling: %d/%d accepted after %d attempts", len(accepted), n, attempts)
            if progress is not None:
                progress(len(accepted), attempts)
    return accepted


def metropolis_hastings(
    model: Model,
    jitter: float,
    n: int,
    burn_in: int,
    seed: int,
    diagnostics: Optional[TextIO] = None,
    max_init_attempts: int = 1000,
) -> list[tuple[Any, float]]:
    """Trace Metropolis-Hastings.

    Each step copies the current trace and redraws every visited site
    independently with probability ``jitter`` (one site, chosen uniformly,
    when none is picked).  The proposal is accepted with probability
    ``min(1, w'/w)``.  Sites the proposal does not visit stay in the trace.
    Returns the ``n`` states after ``burn_in`` steps, each as
    ``(value, log_weight)``.

    ``diagnostics`` receives one ``step<TAB>accepted<TAB>log_weight`` line
    per step.
    """
    if not 0 < jitter <= 1:
        raise ValueError(f"jitter must lie in (0, 1], got {jitter!r}")
    if n < 0 or burn_in < 0:
        raise ValueError("n and burn_in must be non-negative")
    rng = _rng(seed)

    current = None
    for _ in range(max_init_attempts):
        ex = execute(model, Trace(), rng)
        if ex.log_weight > -math.inf:
            current = ex
            break
    if current is None:
        raise ZeroInitialWeight(max_init_attempts)

    out: list[tuple[Any, float]] = []
    for step in range(burn_in + n):
        sites = current.visited
        accepted = False
        if sites:
            proposal = current.trace.copy()
            chosen = rng.random(len(sites)) < jitter
            if not chosen.any():
                chosen[rng.integers(len(sites))] = True
            fresh = rng.random(int(chosen.sum()))
            for site, u in zip((s for s, c in zip(sites, chosen) if c), fresh):
                proposal._values[site] = float(u)
            candidate = execute(model, proposal, rng)
            log_alpha = candidate.log_weight - current.log_weight
            u = rng.random()
            if log_alpha >= 0 or u < math.exp(log_alpha):
                current = candidate
                accepted = True
        if diagnostics is not None:
            diagnostics.write(f"{step}\t{int(accepted)}\t{current.log_weight!r}\n")
        if step >= burn_in:
            out.append((current.value, current.log_weight))
    return out
