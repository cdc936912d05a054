"""Post-selected no-bunching states and their assembly from matchings.

A no-bunching outcome places exactly one particle at each detector, so the
detectors' internal states form an N-character string over {u, d} (position
j-1 holds detector X_j). Each perfect matching contributes the product of
its edge weights to the string determined by its edge colors; matchings
landing on the same string add coherently.

Sign convention for fermions: output creation operators are ordered by
detector index, so a matching with assignment permutation σ picks up the
parity of σ. Bosonic contributions are always +1, which reproduces the
plus/minus pair of the two-particle beam-splitter state.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .errors import DimensionMismatch, InvalidMatching, TooLarge, ZeroState
from .graphs import PerfectMatching, enumerate_pms
from .model import Color, NetworkSpec, Statistics, to_adjacency, to_bipartite

ORACLE_LIMIT = 10


@dataclass(frozen=True)
class NoBunchState:
    """Map from detector-state strings to complex amplitudes.

    ``postselect_probability`` is populated by normalize(); for a state
    assembled from a unitary strict-mode network it equals the probability
    of the no-bunching post-selection succeeding.
    """

    n: int
    amplitudes: Mapping[str, complex]
    normalized: bool = False
    postselect_probability: float | None = None

    def __post_init__(self):
        for ket in self.amplitudes:
            if len(ket) != self.n or not set(ket) <= {"u", "d"}:
                raise ValueError(f"bad ket {ket!r} for n={self.n}")

    def amplitude(self, ket: str) -> complex:
        return self.amplitudes.get(ket, 0j)

    def norm_squared(self) -> float:
        return sum(abs(v) ** 2 for v in self.amplitudes.values())

    def sorted_terms(self) -> list[tuple[str, complex]]:
        return sorted(self.amplitudes.items())


def ket_glyphs(ket: str) -> str:
    """Human form of a machine ket string: 'ud' → '↑↓'."""
    return "".join(Color(ch).glyph for ch in ket)


def _sign(assignment: tuple[int, ...], statistics: Statistics) -> int:
    if statistics is Statistics.BOSON:
        return 1
    inv = 0
    for i in range(len(assignment)):
        for k in range(i + 1, len(assignment)):
            if assignment[i] > assignment[k]:
                inv += 1
    return -1 if inv % 2 else 1


def assemble_state(pms: list[PerfectMatching], spec: NetworkSpec) -> NoBunchState:
    """Sum the matching contributions into an unnormalized state.

    Contributions are accumulated in lexicographic matching order so the
    floating-point result is reproducible. Exactly cancelled strings are
    dropped.
    """
    edge_map = spec.transition_map()
    amplitudes: dict[str, complex] = {}
    for pm in sorted(pms, key=lambda p: p.assignment):
        if sorted(pm.assignment) != list(range(1, spec.n + 1)):
            raise InvalidMatching(f"assignment {pm.assignment} is not a bijection")
        ket = ["" for _ in range(spec.n)]
        weight = complex(1.0)
        for a, j in enumerate(pm.assignment, start=1):
            t = edge_map.get((a, j))
            if t is None:
                raise InvalidMatching(f"matching pair ({a}, {j}) is not a network edge")
            ket[j - 1] = t.color.value
            weight *= t.amplitude
        key = "".join(ket)
        amplitudes[key] = amplitudes.get(key, 0j) + _sign(pm.assignment, spec.statistics) * weight
    amplitudes = {k: v for k, v in amplitudes.items() if v != 0}
    return NoBunchState(spec.n, amplitudes)


def assemble_network_state(spec: NetworkSpec) -> NoBunchState:
    """Full pipeline: enumerate matchings of ``spec`` and assemble them."""
    bip = to_bipartite(to_adjacency(spec))
    return assemble_state(enumerate_pms(bip), spec)


def oracle_state(spec: NetworkSpec) -> NoBunchState:
    """Brute-force reference: sum over all n! detector assignments.

    Deliberately ignorant of the cycle machinery: it walks
    itertools.permutations and keeps those whose every pair is a network
    edge, so it can vouch for the matching-based assembly.
    """
    if spec.n > ORACLE_LIMIT:
        raise TooLarge(spec.n, ORACLE_LIMIT)
    edge_map = spec.transition_map()
    amplitudes: dict[str, complex] = {}
    for perm in itertools.permutations(range(1, spec.n + 1)):
        ket = ["" for _ in range(spec.n)]
        weight = complex(1.0)
        for a, j in enumerate(perm, start=1):
            t = edge_map.get((a, j))
            if t is None:
                break
            ket[j - 1] = t.color.value
            weight *= t.amplitude
        else:
            key = "".join(ket)
            amplitudes[key] = amplitudes.get(key, 0j) + _sign(perm, spec.statistics) * weight
    amplitudes = {k: v for k, v in amplitudes.items() if v != 0}
    return NoBunchState(spec.n, amplitudes)


def normalize(state: NoBunchState, zero_tol: float = 1e-12) -> NoBunchState:
    """Scale to unit norm; record the input's squared norm.

    Raises ZeroState when the input has (numerically) no weight, i.e. no
    matching exists or all contributions cancelled.
    """
    norm_sq = state.norm_squared()
    if norm_sq <= zero_tol**2:
        raise ZeroState("state has zero norm (no matchings or exact cancellation)")
    scale = norm_sq**-0.5
    return NoBunchState(
        state.n,
        {k: v * scale for k, v in state.amplitudes.items()},
        normalized=True,
        postselect_probability=norm_sq,
    )


def state_equiv(s1: NoBunchState, s2: NoBunchState, tol: float = 1e-9) -> bool:
    """True iff the normalized states agree up to a global phase."""
    if s1.n != s2.n:
        raise DimensionMismatch(f"states on {s1.n} and {s2.n} detectors")
    if not (s1.normalized and s2.normalized):
        raise ValueError("state_equiv compares normalized states")
    overlap = sum(
        s1.amplitude(k).conjugate() * s2.amplitude(k)
        for k in set(s1.amplitudes) | set(s2.amplitudes)
    )
    return abs(abs(overlap) - 1.0) <= tol


def max_amplitude_difference(s1: NoBunchState, s2: NoBunchState) -> float:
    """Largest entrywise |amplitude difference| between two states."""
    if s1.n != s2.n:
        raise DimensionMismatch(f"states on {s1.n} and {s2.n} detectors")
    keys = set(s1.amplitudes) | set(s2.amplitudes)
    if not keys:
        return 0.0
    return max(abs(s1.amplitude(k) - s2.amplitude(k)) for k in keys)
