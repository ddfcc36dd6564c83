"""Visit-count ledgers: local times xi(x, n) and restricted maxima.

The starting site S_0 is never recorded; counts begin with the first step.
An optional subset restriction filters recording at ingest time, which is
what keeps long-path experiments in bounded memory.
"""

from __future__ import annotations

import io

import numpy as np

from .subsets import SubsetSpec

EMPTY_RESULT = (None, 0)


class LocalTimeLedger:
    """Map site -> visit count, optionally restricted to a subset."""

    def __init__(self, d: int, restriction: SubsetSpec | None = None):
        if restriction is not None and restriction.dim not in (None, d):
            raise ValueError(
                f"restriction dimension {restriction.dim} != ledger dimension {d}")
        self.d = d
        self.restriction = restriction
        self.counts: dict[tuple[int, ...], int] = {}
        self.total_recorded = 0

    def record(self, site) -> int:
        """Record one visit; returns the new count, or 0 if filtered out."""
        if self.restriction is not None and not self.restriction.contains(site):
            return 0
        key = tuple(int(v) for v in site)
        c = self.counts.get(key, 0) + 1
        self.counts[key] = c
        self.total_recorded += 1
        return c

    def record_path(self, positions: np.ndarray) -> None:
        """Record positions[1:] of an (n+1, d) path array (S_0 excluded)."""
        pos = positions[1:]
        if self.restriction is not None:
            pos = pos[self.restriction.contains_many(pos)]
        if len(pos) == 0:
            return
        sites, counts = np.unique(pos, axis=0, return_counts=True)
        for row, c in zip(sites, counts):
            key = tuple(int(v) for v in row)
            self.counts[key] = self.counts.get(key, 0) + int(c)
        self.total_recorded += int(counts.sum())

    def local_time(self, site) -> int:
        return self.counts.get(tuple(int(v) for v in site), 0)

    def max_local_time(self):
        """(site, count) attaining the max; lexicographically smallest site
        on ties; EMPTY_RESULT for an empty ledger."""
        if not self.counts:
            return EMPTY_RESULT
        best = max(self.counts.values())
        site = min(k for k, v in self.counts.items() if v == best)
        return site, best

    def merge(self, other: "LocalTimeLedger", mode: str = "sum") -> None:
        """Aggregate a finished ledger into this one (pointwise sum or max)."""
        if other.d != self.d:
            raise ValueError("ledger dimensions differ")
        if mode == "sum":
            for k, v in other.counts.items():
                self.counts[k] = self.counts.get(k, 0) + v
            self.total_recorded += other.total_recorded
        elif mode == "max":
            for k, v in other.counts.items():
                if v > self.counts.get(k, 0):
                    self.counts[k] = v
            self.total_recorded = sum(self.counts.values())
        else:
            raise ValueError(f"unknown merge mode {mode!r}")

    def to_csv(self, fileobj=None) -> str | None:
        """Dump rows ``x1,...,xd,count`` sorted lexicographically."""
        out = fileobj if fileobj is not None else io.StringIO()
        for key in sorted(self.counts):
            out.write(",".join(str(v) for v in key) + f",{self.counts[key]}\n")
        if fileobj is None:
            return out.getvalue()
        return None
