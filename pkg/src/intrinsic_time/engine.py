"""Streaming detection of directional-change and overshoot events.

A runner watches one price stream at one threshold. While the market
trends, the runner tracks the trend extremum; once the price retraces
from that extremum by the threshold, a directional-change (DC) event
fires and the trend flips. After a DC, every further threshold-sized
advance of the new trend fires an overshoot (OS) event. The resulting
event sequence is the intrinsic-time representation of the series at
that threshold: it ticks fast in active markets and slows down in
quiet ones.

Two move conventions are supported. ``RELATIVE`` measures moves as
(to - from) / from; ``LOG_RETURN`` uses ln(to / from), which makes up
and down moves symmetric and the event sequence invariant under price
rescaling.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, NamedTuple, Union

import numpy as np

from .errors import (
    ConfigurationError,
    ConsistencyError,
    DomainError,
    EmptyInputError,
    OrderingError,
)

try:
    from numba import njit
except ImportError:  # degraded but functional without numba
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


# Threshold comparisons allow this relative slack so that moves that are
# exactly one threshold in real arithmetic (e.g. 99 -> 98.01 at 1%) still
# register despite binary rounding of the decimal inputs.
BOUNDARY_TOLERANCE = 1e-12


class Mode(Enum):
    """Trend direction of a runner."""

    UP = 1
    DOWN = -1

    @property
    def flipped(self) -> "Mode":
        return Mode.DOWN if self is Mode.UP else Mode.UP


class EventKind(Enum):
    DIRECTIONAL_CHANGE = "DC"
    OVERSHOOT = "OS"


class MoveConvention(Enum):
    RELATIVE = "relative"
    LOG_RETURN = "log"


class Tick(NamedTuple):
    """One price observation: integer nanoseconds since epoch, positive price."""

    timestamp: int
    price: float


@dataclass(frozen=True)
class TickSeries:
    """Column-oriented tick buffer: int64 nanosecond timestamps, float64 prices.

    Validates on construction: equal lengths, strictly positive prices,
    non-decreasing timestamps. Iterating yields ``Tick`` tuples.
    """

    timestamps: np.ndarray
    prices: np.ndarray

    def __post_init__(self):
        ts = np.ascontiguousarray(self.timestamps, dtype=np.int64)
        px = np.ascontiguousarray(self.prices, dtype=np.float64)
        if ts.ndim != 1 or px.ndim != 1 or ts.shape != px.shape:
            raise DomainError("timestamps and prices must be 1-d arrays of equal length")
        if px.size and not bool(np.all(px > 0.0)):
            bad = int(np.argmax(~(px > 0.0)))
            raise DomainError(f"non-positive price {px[bad]!r} at position {bad}")
        if ts.size > 1 and bool(np.any(np.diff(ts) < 0)):
            bad = int(np.argmax(np.diff(ts) < 0)) + 1
            raise OrderingError(f"timestamp decreases at position {bad}")
        object.__setattr__(self, "timestamps", ts)
        object.__setattr__(self, "prices", px)

    def __len__(self) -> int:
        return int(self.timestamps.size)

    def __iter__(self) -> Iterator[Tick]:
        for t, p in zip(self.timestamps.tolist(), self.prices.tolist()):
            yield Tick(t, p)

    def __getitem__(self, i: int) -> Tick:
        return Tick(int(self.timestamps[i]), float(self.prices[i]))

    @property
    def span_ns(self) -> int:
        """Time covered by the series, 0 for fewer than two ticks."""
        if len(self) < 2:
            return 0
        return int(self.timestamps[-1] - self.timestamps[0])


TickInput = Union[TickSeries, Iterable]


def as_tick_series(ticks: TickInput) -> TickSeries:
    """Coerce a TickSeries, an iterable of Tick, or (timestamp, price) pairs."""
    if isinstance(ticks, TickSeries):
        return ticks
    data = list(ticks)
    ts = np.array([int(t[0]) for t in data], dtype=np.int64)
    px = np.array([float(t[1]) for t in data], dtype=np.float64)
    return TickSeries(ts, px)


@dataclass(frozen=True)
class ThresholdConfig:
    """One intrinsic-time scale: threshold fraction plus move convention."""

    delta: float
    move_convention: MoveConvention = MoveConvention.RELATIVE

    def __post_init__(self):
        if not (0.0 < self.delta < 1.0):
            raise ConfigurationError(f"delta must be in (0, 1), got {self.delta!r}")
        if not isinstance(self.move_convention, MoveConvention):
            raise ConfigurationError(f"unknown move convention {self.move_convention!r}")


@dataclass(frozen=True)
class IntrinsicEvent:
    """One tick of intrinsic time.

    ``price`` and ``timestamp`` come from the tick that triggered the
    event; ``clock_index`` is the event's position in the runner's
    output, starting at 0.
    """

    kind: EventKind
    direction: Mode
    timestamp: int
    price: float
    delta: float
    clock_index: int


@dataclass
class RunnerState:
    """Mutable per-threshold state machine state.

    ``os_reference_price`` is the base of the overshoot grid: after a DC
    it starts at the confirmation price and advances by exactly one
    threshold step per emitted overshoot. ``dc_confirm_price`` is unset
    until the first DC; no overshoot can fire before it.
    """

    mode: Mode
    extremum_price: float
    os_reference_price: float
    dc_count_since_init: int = 0
    intrinsic_clock: int = 0
    dc_confirm_price: float | None = None
    last_timestamp: int = 0


def relative_move(from_price: float, to_price: float,
                  convention: MoveConvention = MoveConvention.RELATIVE) -> float:
    """Signed fractional move from one price to another.

    RELATIVE returns (to - from) / from, LOG_RETURN returns ln(to / from).
    """
    if not (from_price > 0.0) or not (to_price > 0.0):
        raise DomainError(
            f"prices must be positive, got {from_price!r} -> {to_price!r}")
    if convention is MoveConvention.LOG_RETURN:
        return float(np.log(to_price / from_price))
    return (to_price - from_price) / from_price


def new_runner(config: ThresholdConfig, initial_tick: Tick,
               initial_mode: Mode = Mode.UP) -> RunnerState:
    """Fresh runner state anchored at the first tick."""
    ts, price = int(initial_tick[0]), float(initial_tick[1])
    if not (price > 0.0):
        raise DomainError(f"initial price must be positive, got {price!r}")
    return RunnerState(
        mode=initial_mode,
        extremum_price=price,
        os_reference_price=price,
        dc_count_since_init=0,
        intrinsic_clock=0,
        dc_confirm_price=None,
        last_timestamp=ts,
    )


def step(state: RunnerState, tick: Tick,
         config: ThresholdConfig) -> tuple[RunnerState, list[IntrinsicEvent]]:
    """Advance the runner by one tick; mutates and returns the state.

    In UP mode: a higher tick extends the trend, updating the extremum
    and emitting one overshoot per full threshold increment the price
    has crossed on the overshoot grid (only after the first DC). A tick
    that retraces at least one threshold from the extremum emits exactly
    one DC, flips the mode, and re-anchors extremum, overshoot reference
    and confirmation price at the tick price. DOWN mode is the mirror
    image. Gap ticks may emit several overshoots but never more than
    one DC.
    """
    ts, price = int(tick[0]), float(tick[1])
    if not (price > 0.0):
        raise DomainError(f"price must be positive, got {price!r}")
    if ts < state.last_timestamp:
        raise OrderingError(
            f"timestamp {ts} precedes previous tick at {state.last_timestamp}")
    state.last_timestamp = ts

    delta = config.delta
    guard = delta * (1.0 - BOUNDARY_TOLERANCE)
    use_log = config.move_convention is MoveConvention.LOG_RETURN
    if use_log:
        up_factor = float(np.exp(delta))
        down_factor = float(np.exp(-delta))
    else:
        up_factor = 1.0 + delta
        down_factor = 1.0 - delta

    def move(base: float) -> float:
        return float(np.log(price / base)) if use_log else (price - base) / base

    events: list[IntrinsicEvent] = []

    def emit(kind: EventKind, direction: Mode) -> None:
        events.append(IntrinsicEvent(kind, direction, ts, price, delta,
                                     state.intrinsic_clock))
        state.intrinsic_clock += 1

    if state.mode is Mode.UP:
        if price > state.extremum_price:
            state.extremum_price = price
            if state.dc_confirm_price is not None:
                while move(state.os_reference_price) >= guard:
                    emit(EventKind.OVERSHOOT, Mode.UP)
                    state.os_reference_price *= up_factor
        elif move(state.extremum_price) <= -guard:
            emit(EventKind.DIRECTIONAL_CHANGE, Mode.DOWN)
            state.mode = Mode.DOWN
            state.extremum_price = price
            state.os_reference_price = price
            state.dc_confirm_price = price
            state.dc_count_since_init += 1
    else:
        if price < state.extremum_price:
            state.extremum_price = price
            if state.dc_confirm_price is not None:
                while move(state.os_reference_price) <= -guard:
                    emit(EventKind.OVERSHOOT, Mode.DOWN)
                    state.os_reference_price *= down_factor
        elif move(state.extremum_price) >= guard:
            emit(EventKind.DIRECTIONAL_CHANGE, Mode.UP)
            state.mode = Mode.UP
            state.extremum_price = price
            state.os_reference_price = price
            state.dc_confirm_price = price
            state.dc_count_since_init += 1

    return state, events


@njit(cache=True, nogil=True)
def _scan_kernel(ts, px, delta, use_log, mode, out_kind, out_dir, out_ts,
                 out_px, out_idx):  # pragma: no cover - exercised via process
    """Single-pass event scan over tick arrays.

    Writes events into the out arrays while capacity lasts and returns
    the total event count, so a caller can re-run with exact capacity.
    Must mirror ``step`` exactly, operation by operation: the
    fold-equivalence tests rely on bit-identical floating point.
    """
    n = px.shape[0]
    cap = out_kind.shape[0]
    ext = px[0]
    ref = px[0]
    confirmed = False
    guard = delta * (1.0 - BOUNDARY_TOLERANCE)
    if use_log:
        up_factor = np.exp(delta)
        down_factor = np.exp(-delta)
    else:
        up_factor = 1.0 + delta
        down_factor = 1.0 - delta
    m = 0
    for i in range(1, n):
        p = px[i]
        t = ts[i]
        if mode == 1:
            if p > ext:
                ext = p
                if confirmed:
                    if use_log:
                        while np.log(p / ref) >= guard:
                            if m < cap:
                                out_kind[m] = 1
                                out_dir[m] = 1
                                out_ts[m] = t
                                out_px[m] = p
                                out_idx[m] = i
                            m += 1
                            ref = ref * up_factor
                    else:
                        while (p - ref) / ref >= guard:
                            if m < cap:
                                out_kind[m] = 1
                                out_dir[m] = 1
                                out_ts[m] = t
                                out_px[m] = p
                                out_idx[m] = i
                            m += 1
                            ref = ref * up_factor
            else:
                mv = np.log(p / ext) if use_log else (p - ext) / ext
                if mv <= -guard:
                    if m < cap:
                        out_kind[m] = 0
                        out_dir[m] = -1
                        out_ts[m] = t
                        out_px[m] = p
                        out_idx[m] = i
                    m += 1
                    mode = -1
                    ext = p
                    ref = p
                    confirmed = True
        else:
            if p < ext:
                ext = p
                if confirmed:
                    if use_log:
                        while np.log(p / ref) <= -guard:
                            if m < cap:
                                out_kind[m] = 1
                                out_dir[m] = -1
                                out_ts[m] = t
                                out_px[m] = p
                                out_idx[m] = i
                            m += 1
                            ref = ref * down_factor
                    else:
                        while (p - ref) / ref <= -guard:
                            if m < cap:
                                out_kind[m] = 1
                                out_dir[m] = -1
                                out_ts[m] = t
                                out_px[m] = p
                                out_idx[m] = i
                            m += 1
                            ref = ref * down_factor
            else:
                mv = np.log(p / ext) if use_log else (p - ext) / ext
                if mv >= guard:
                    if m < cap:
                        out_kind[m] = 0
                        out_dir[m] = 1
                        out_ts[m] = t
                        out_px[m] = p
                        out_idx[m] = i
                    m += 1
                    mode = 1
                    ext = p
                    ref = p
                    confirmed = True
    return m


@dataclass(frozen=True)
class EventArrays:
    """Column-oriented event buffer, the fast-path twin of IntrinsicEvent lists.

    kinds: 0 = directional change, 1 = overshoot. directions: +1 up, -1
    down. ``tick_indices`` locates each event's triggering tick in the
    source series; clock indices are implicit (array position).
    """

    kinds: np.ndarray
    directions: np.ndarray
    timestamps: np.ndarray
    prices: np.ndarray
    tick_indices: np.ndarray

    def __len__(self) -> int:
        return int(self.kinds.size)

    @property
    def n_dc(self) -> int:
        return int(np.count_nonzero(self.kinds == 0))

    @property
    def n_os(self) -> int:
        return int(np.count_nonzero(self.kinds == 1))


def process_arrays(ticks: TickInput, config: ThresholdConfig,
                   initial_mode: Mode = Mode.UP) -> EventArrays:
    """Run the event scan and return events as arrays (no object churn)."""
    series = as_tick_series(ticks)
    if len(series) == 0:
        raise EmptyInputError("cannot process an empty tick sequence")
    use_log = config.move_convention is MoveConvention.LOG_RETURN
    mode_code = initial_mode.value
    cap = 1024
    while True:
        out_kind = np.empty(cap, dtype=np.int8)
        out_dir = np.empty(cap, dtype=np.int8)
        out_ts = np.empty(cap, dtype=np.int64)
        out_px = np.empty(cap, dtype=np.float64)
        out_idx = np.empty(cap, dtype=np.int64)
        m = _scan_kernel(series.timestamps, series.prices, config.delta,
                         use_log, mode_code, out_kind,
                         out_dir, out_ts, out_px, out_idx)
        if m <= cap:
            return EventArrays(out_kind[:m].copy(), out_dir[:m].copy(),
                               out_ts[:m].copy(), out_px[:m].copy(),
                               out_idx[:m].copy())
        cap = m


def events_from_arrays(arrays: EventArrays, delta: float) -> list[IntrinsicEvent]:
    """Materialize IntrinsicEvent objects from an array buffer."""
    kinds = arrays.kinds.tolist()
    dirs = arrays.directions.tolist()
    tss = arrays.timestamps.tolist()
    pxs = arrays.prices.tolist()
    return [
        IntrinsicEvent(
            EventKind.DIRECTIONAL_CHANGE if k == 0 else EventKind.OVERSHOOT,
            Mode.UP if d == 1 else Mode.DOWN,
            t, p, delta, i,
        )
        for i, (k, d, t, p) in enumerate(zip(kinds, dirs, tss, pxs))
    ]


def process(ticks: TickInput, config: ThresholdConfig,
            initial_mode: Mode = Mode.UP) -> list[IntrinsicEvent]:
    """Transform a whole tick sequence into its intrinsic-time events.

    Equivalent to folding ``step`` over the sequence after ``new_runner``
    on the first tick, but runs as a compiled single pass with constant
    state. Raises EmptyInputError on an empty sequence; a single tick
    yields no events.
    """
    arrays = process_arrays(ticks, config, initial_mode)
    return events_from_arrays(arrays, config.delta)


def _segment_overshoots(series: TickSeries, arrays: EventArrays,
                        convention: MoveConvention) -> np.ndarray:
    """Overshoot length of every completed DC-to-DC segment.

    A segment's length is the absolute move from the DC confirmation
    price to the most extreme price the trend reached before the next
    DC. The trailing unfinished trend contributes nothing.
    """
    dc_mask = arrays.kinds == 0
    dc_idx = arrays.tick_indices[dc_mask]
    dc_px = arrays.prices[dc_mask]
    dc_dir = arrays.directions[dc_mask]
    if dc_idx.size < 2:
        return np.empty(0, dtype=np.float64)
    # reduceat segment k covers ticks [dc_idx[k], dc_idx[k+1]); the next
    # DC's trigger tick can never extend the previous trend's extremum,
    # so the half-open window is exact.
    highs = np.maximum.reduceat(series.prices, dc_idx)[:-1]
    lows = np.minimum.reduceat(series.prices, dc_idx)[:-1]
    ext = np.where(dc_dir[:-1] == 1, highs, lows)
    base = dc_px[:-1]
    if convention is MoveConvention.LOG_RETURN:
        return np.abs(np.log(ext / base))
    return np.abs((ext - base) / base)


def overshoot_lengths(events: list[IntrinsicEvent], ticks: TickInput,
                      config: ThresholdConfig) -> np.ndarray:
    """Per-segment overshoot lengths for events produced from these ticks.

    Returns one non-negative fraction per completed DC-to-DC segment, in
    order; fewer than two DCs give an empty array. The events must have
    been produced by ``process`` on ``ticks`` with ``config``; a
    mismatch raises ConsistencyError.
    """
    for ev in events:
        if ev.delta != config.delta:
            raise ConsistencyError(
                f"event delta {ev.delta!r} does not match config delta {config.delta!r}")
    dc_events = [ev for ev in events if ev.kind is EventKind.DIRECTIONAL_CHANGE]
    if len(dc_events) < 2:
        return np.empty(0, dtype=np.float64)
    series = as_tick_series(ticks)
    # Before the first DC the runner must have been in the opposite mode,
    # so the scan can be replayed without knowing the original initial mode.
    initial_mode = dc_events[0].direction.flipped
    arrays = process_arrays(series, config, initial_mode)
    dc_mask = arrays.kinds == 0
    if (arrays.n_dc != len(dc_events)
            or not np.array_equal(arrays.prices[dc_mask],
                                  np.array([ev.price for ev in dc_events]))
            or not np.array_equal(arrays.timestamps[dc_mask],
                                  np.array([ev.timestamp for ev in dc_events]))):
        raise ConsistencyError("events do not correspond to the given ticks and config")
    return _segment_overshoots(series, arrays, config.move_convention)
