"""Exact per-bit multiplicity model used to cross-check the filter.

Instead of single bits, every data position keeps an integer count of how
many set-events hit it. A region is collided iff some set-event landed on a
position whose count was already positive.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .filters import FilterParams, RemoveOutcome
from .hashing import Element, index_set


@dataclass
class OracleModel:
    params: FilterParams
    counters: list[int]
    marked: list[bool]
    element_indices: list[list[int]] = field(default_factory=list)

    def is_deletable(self, position: int) -> bool:
        """Whether the ``position``-th inserted element could be removed."""
        w = self.params.cell_width
        return any(
            self.counters[i] >= 1 and not self.marked[i // w]
            for i in self.element_indices[position]
        )

    def outcomes(self) -> list[RemoveOutcome]:
        return [
            RemoveOutcome.DELETED if self.is_deletable(j) else RemoveOutcome.NOT_DELETABLE
            for j in range(len(self.element_indices))
        ]

    def data_bits(self) -> list[bool]:
        return [c > 0 for c in self.counters]


def reference_oracle(params: FilterParams, elements: list[Element]) -> OracleModel:
    counters = [0] * params.m_prime
    marked = [False] * params.r
    w = params.cell_width
    per_element = []
    for element in elements:
        idx = index_set(element, params.seed, params.m_prime, params.k)
        per_element.append(idx)
        for i in idx:
            if counters[i] > 0:
                marked[i // w] = True
            counters[i] += 1
    return OracleModel(params=params, counters=counters, marked=marked, element_indices=per_element)
