from __future__ import annotations

import functools
import json
import logging
import os
import threading
import time
from typing import Callable, Dict, List, ParamSpec, TypeVar

P = ParamSpec("P")
R = TypeVar("R")

_logger = logging.getLogger("profiler")


def _now_ms() -> float:
    return time.perf_counter() * 1000.0


# -------- Aggregator ----------
class _Stats:
    __slots__ = ("count", "sum_ms", "max_ms", "_samples", "_lock")

    def __init__(self) -> None:
        self.count = 0
        self.sum_ms = 0.0
        self.max_ms = 0.0
        self._samples: List[float] = []
        self._lock = threading.Lock()

    def add(self, ms: float) -> None:
        with self._lock:
            self.count += 1
            self.sum_ms += ms
            if ms > self.max_ms:
                self.max_ms = ms
            buf = self._samples
            if len(buf) < 2048:
                buf.append(ms)
            else:
                buf[self.count % 2048] = ms

    def quantiles(self) -> tuple[float, float]:
        with self._lock:
            s = sorted(self._samples)
        if not s:
            return (0.0, 0.0)

        def _q(p: float) -> float:
            k = max(0, min(len(s) - 1, int(round(p * (len(s) - 1)))))
            return s[k]

        return (_q(0.50), _q(0.95))


_AGG: Dict[str, _Stats] = {}
_AGG_LOCK = threading.Lock()


def _agg_add(label: str, ms: float) -> None:
    with _AGG_LOCK:
        st = _AGG.get(label)
        if st is None:
            st = _Stats()
            _AGG[label] = st
    st.add(ms)


def snapshot() -> Dict[str, Dict[str, float]]:
    """Per-label timing summary, sorted by label."""
    with _AGG_LOCK:
        items = sorted(_AGG.items())
    out: Dict[str, Dict[str, float]] = {}
    for name, st in items:
        p50, p95 = st.quantiles()
        out[name] = {
            "count": float(st.count),
            "total_ms": round(st.sum_ms, 3),
            "p50_ms": round(p50, 3),
            "p95_ms": round(p95, 3),
            "max_ms": round(st.max_ms, 3),
        }
    return out


def reset() -> None:
    with _AGG_LOCK:
        _AGG.clear()


def profiled(name: str | None = None) -> Callable[[Callable[P, R]], Callable[P, R]]:
    """
    Decorator: records wall-time per label and logs it at DEBUG. When
    PROFILE_LOG=1 the log line is a JSON payload.
    """

    def deco(fn: Callable[P, R]) -> Callable[P, R]:
        label = name or f"{fn.__module__}.{fn.__qualname__}"

        @functools.wraps(fn)
        def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
            t0 = _now_ms()
            try:
                return fn(*args, **kwargs)
            finally:
                ms = round(_now_ms() - t0, 3)
                _agg_add(label, ms)
                if _logger.isEnabledFor(logging.DEBUG):
                    if os.getenv("PROFILE_LOG", "0") == "1":
                        payload = {
                            "event": "profile",
                            "name": label,
                            "ms": ms,
                            "thread": threading.current_thread().name,
                        }
                        _logger.debug(json.dumps(payload, ensure_ascii=False))
                    else:
                        _logger.debug("[PROFILE] %s: %.3f ms", label, ms)

        return wrapper

    return deco
