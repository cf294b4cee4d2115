import time
from typing import Dict, List

import numpy as np


class PerfSample:
    def __init__(self, perf_tracker: "PerfMonitor"):
        self.perf_tracker = perf_tracker
        self.start_time = None

    def __enter__(self):
        self.start_time = time.monotonic_ns()
        return self

    def __exit__(self, exception_type, exception_value, exception_traceback):
        self.perf_tracker.samples.append(time.monotonic_ns() - self.start_time)


class PerfMonitor:
    """Collects durations of one phase, such as loading a backend or slicing a diagram.

    Example:
        tracker = PerfMonitor("evaluate")
        for levels in choices:
            with tracker.sample():
                diagram.evaluate(backend, levels)

        print(tracker.summary_str())
    """

    def __init__(self, name: str):
        self.name = name
        self.samples: List[int] = []

    def sample(self) -> PerfSample:
        """Returns a context manager that records the duration of the block it wraps."""
        return PerfSample(self)

    def summary_str(self) -> str:
        if not self.samples:
            return f"{self.name}: N=0"
        durations_ns = np.array(self.samples)
        return (
            f"{self.name}: N={len(durations_ns)} | "
            + f"Total={format_duration(durations_ns.sum())} | "
            + f"Median={format_duration(np.median(durations_ns))} | "
            + f"P90={format_duration(np.percentile(durations_ns, 90))} | "
            + f"Max={format_duration(np.max(durations_ns))}"
        )


class PhaseTimings:
    """One PerfMonitor per named phase, reported in first-use order."""

    def __init__(self):
        self.monitors: Dict[str, PerfMonitor] = {}

    def phase(self, name: str) -> PerfSample:
        if name not in self.monitors:
            self.monitors[name] = PerfMonitor(name)
        return self.monitors[name].sample()

    def summaries(self) -> List[str]:
        return [monitor.summary_str() for monitor in self.monitors.values()]


def format_duration(duration_ns: float) -> str:
    units = [
        ("ns", 1),
        ("μs", 1000),
        ("ms", 1000_000),
        ("s", 1000_000_000),
        ("min", 60 * 1000_000_000),
    ]
    for unit, divisor in reversed(units):
        if duration_ns >= divisor:
            return f"{duration_ns / divisor:.2f} {unit}"
    return f"{duration_ns:.2f} ns"
