"""Crofton-type estimation of intrinsic volumes over subspace sequences.

For a polytope K and subspaces L drawn from G(n, k), the running mean of
f(L) = vol(K | L_perp) converges to the invariant integral; scaling by the
Crofton constant c_{k,n} turns that integral into the intrinsic volume
V_{n-k}(K).  Three sampling modes are compared: Haar-random subspaces, the
quasi-random construction, and the quasi-random construction without the
cumulative-product step.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .geometry import (
    Polytope,
    crofton_constant,
    cube_mean_projection_length_4d,
    hull_measure,
    simplex_mean_projection_area,
)
from .orthogonal import (
    OrthoSequence,
    OrthoSequenceSpec,
    default_ortho_spec,
    random_ortho_batch,
)

MODES = ("random", "qmc", "qmc-noveech")


@dataclass
class ExperimentSpec:
    """Everything needed to reproduce one estimation run bit for bit.

    `seed` drives the random mode; `permutation_seed` the scrambling of the
    quasi modes.  `sequence` overrides the default level layout (its veech
    flag must agree with `mode`).  `trace_points` are the sample counts at
    which the running mean is recorded; they default to (N,).
    """

    polytope: Polytope
    n: int
    k: int
    N: int
    mode: str = "qmc"
    seed: int = 0
    permutation_seed: int = 0
    sequence: OrthoSequenceSpec | None = None
    trace_points: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not 1 <= self.k <= self.n - 1:
            raise ValueError(f"need 1 <= k <= n-1, got n={self.n}, k={self.k}")
        if not 1 <= self.n - self.k <= 3:
            raise ValueError(
                f"projection dimension n-k must be 1..3, got {self.n - self.k}"
            )
        if self.polytope.n != self.n:
            raise ValueError(
                f"polytope lives in R^{self.polytope.n}, experiment in R^{self.n}"
            )
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        self.trace_points = tuple(self.trace_points) or (self.N,)
        if list(self.trace_points) != sorted(set(self.trace_points)):
            raise ValueError("trace points must be strictly increasing")
        if self.trace_points[0] < 1 or self.trace_points[-1] > self.N:
            raise ValueError("trace points must lie in 1..N")
        if self.sequence is not None:
            if self.sequence.n != self.n:
                raise ValueError("sequence spec dimension does not match n")
            if self.mode == "random":
                raise ValueError("a sequence spec is meaningless in random mode")
            if self.sequence.veech != (self.mode == "qmc"):
                raise ValueError(
                    f"sequence veech={self.sequence.veech} conflicts with mode {self.mode!r}"
                )

    def ortho_spec(self) -> OrthoSequenceSpec:
        if self.sequence is not None:
            return self.sequence
        return default_ortho_spec(
            self.n, permutation_seed=self.permutation_seed, veech=self.mode == "qmc"
        )


@dataclass
class ConvergenceTrace:
    """Running means of the projection volume at the requested counts."""

    spec: ExperimentSpec
    points: tuple[tuple[int, float], ...]
    final: float
    intrinsic: float
    repair_count: int = 0

    def value_at(self, m: int) -> float:
        for mm, val in self.points:
            if mm == m:
                return val
        raise KeyError(f"no trace point at m={m}")


def run(spec: ExperimentSpec) -> ConvergenceTrace:
    """Estimate the subspace average of the projection volume.

    Evaluations are accumulated with compensated summation in index order,
    so the trace is a pure function of the spec.
    """
    verts = spec.polytope.vertices
    k = spec.k
    seq: OrthoSequence | None = None
    if spec.mode == "random":
        rng = np.random.default_rng(spec.seed)
        frames = random_ortho_batch(spec.n, spec.N, rng)
        bases = (frames[m, :, k:] for m in range(spec.N))
    else:
        seq = OrthoSequence(spec.ortho_spec())
        bases = (seq._level(spec.n, m)[:, k:] for m in range(1, spec.N + 1))
    trace_set = set(spec.trace_points)
    points: list[tuple[int, float]] = []
    total = 0.0
    comp = 0.0
    for m, basis in enumerate(bases, start=1):
        f = hull_measure(verts @ basis)
        y = f - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if m in trace_set:
            points.append((m, total / m))
    final = points[-1][1] if points and points[-1][0] == spec.N else total / spec.N
    c = crofton_constant(spec.n, spec.k)
    return ConvergenceTrace(
        spec=spec,
        points=tuple(points),
        final=final,
        intrinsic=c * final,
        repair_count=seq.repair_count if seq is not None else 0,
    )


def intrinsic_volume(trace: ConvergenceTrace, n: int, k: int) -> float:
    """Scale a finished trace into the intrinsic volume V_{n-k} estimate."""
    if (n, k) != (trace.spec.n, trace.spec.k):
        raise ValueError(
            f"trace was computed for (n, k)=({trace.spec.n}, {trace.spec.k}), "
            f"asked for ({n}, {k})"
        )
    return crofton_constant(n, k) * trace.final


@dataclass
class ComparisonReport:
    """Per-mode running means on a common grid of counts, with absolute
    errors against a reference value."""

    polytope_label: str
    n: int
    k: int
    reference: float
    trace_points: tuple[int, ...]
    values: dict[str, dict[int, float]]
    errors: dict[str, dict[int, float]]

    def rows(self):
        """(mode, m, value, error) rows in a stable order."""
        for mode in self.values:
            for m in self.trace_points:
                yield mode, m, self.values[mode][m], self.errors[mode][m]

    def to_dict(self) -> dict:
        return {
            "polytope": self.polytope_label,
            "n": self.n,
            "k": self.k,
            "reference": self.reference,
            "trace_points": list(self.trace_points),
            "values": {mode: {str(m): v for m, v in vals.items()} for mode, vals in self.values.items()},
            "errors": {mode: {str(m): v for m, v in errs.items()} for mode, errs in self.errors.items()},
        }


def compare(specs: list[ExperimentSpec], reference: float) -> ComparisonReport:
    """Run several modes on the same body and tabulate against a reference."""
    if not specs:
        raise ValueError("need at least one experiment spec")
    first = specs[0]
    for s in specs[1:]:
        if (s.n, s.k) != (first.n, first.k):
            raise ValueError("all experiments must share (n, k)")
        if s.polytope.label != first.polytope.label or not np.array_equal(
            s.polytope.vertices, first.polytope.vertices
        ):
            raise ValueError("all experiments must share the polytope")
    common = set(specs[0].trace_points)
    for s in specs[1:]:
        common &= set(s.trace_points)
    if not common:
        raise ValueError("experiments share no trace points")
    grid = tuple(sorted(common))
    values: dict[str, dict[int, float]] = {}
    errors: dict[str, dict[int, float]] = {}
    for s in specs:
        trace = run(s)
        vals = {m: trace.value_at(m) for m in grid}
        values[s.mode] = vals
        errors[s.mode] = {m: abs(v - reference) for m, v in vals.items()}
    return ComparisonReport(
        polytope_label=first.polytope.label,
        n=first.n,
        k=first.k,
        reference=reference,
        trace_points=grid,
        values=values,
        errors=errors,
    )


def _load_oracles() -> dict:
    text = resources.files("udortho").joinpath("_oracles.json").read_text(encoding="utf-8")
    return json.loads(text)


def reference_value(label: str, n: int, k: int) -> float:
    """Ground truth for the error columns: analytic where a closed form
    exists, otherwise a frozen high-N random-baseline average."""
    if label == "3-cube" and n == 3:
        return 1.5
    if label == "4-cube" and (n, k) == (4, 3):
        return cube_mean_projection_length_4d()
    if label == "3-simplex" and (n, k) == (3, 1):
        return simplex_mean_projection_area()
    oracles = _load_oracles()
    key = f"{label}:{n}:{k}"
    if key in oracles:
        return float(oracles[key]["value"])
    raise KeyError(f"no reference value for {key}")
