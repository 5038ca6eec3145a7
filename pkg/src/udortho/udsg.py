"""Veech's uniformly-distributed-sequence generator from Champernowne digits.

Champernowne's constant 0.123456789101112... is normal in base 10.  Record
the positions q_1 < q_2 < ... where a chosen digit occurs, take the gaps
r_1 = q_1 - 1, r_m = q_m - q_{m-1}, and the cumulative products
w_m = z_{r_1} z_{r_2} ... z_{r_m} equidistribute in any compact group,
provided the source sequence (z_j) is not trapped in a proper closed
subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count, islice
from typing import Callable, Iterator, TypeVar

T = TypeVar("T")


@dataclass(frozen=True)
class GeneratorSpec:
    """Occurrence interval [t/b, (t+1)/b) encoded by its digit t.

    Digit-aligned intervals have length exactly 1/b, the minimum the
    generator theorem requires, and make the membership test a single
    digit comparison.
    """

    target_digit: int = 5
    base: int = 10

    def __post_init__(self) -> None:
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        if not 0 <= self.target_digit < self.base:
            raise ValueError(
                f"target_digit must be in 0..{self.base - 1}, got {self.target_digit}"
            )


def champernowne_digit(i: int) -> int:
    """The i-th decimal digit (1-based) of 0.123456789101112...

    Works by arithmetic over the digit blocks contributed by the k-digit
    integers (9 * k * 10^(k-1) digits each), so any position is reachable
    without materializing the expansion.
    """
    if i < 1:
        raise ValueError(f"position must be >= 1, got {i}")
    k = 1
    rem = i
    while rem > 9 * k * 10 ** (k - 1):
        rem -= 9 * k * 10 ** (k - 1)
        k += 1
    number = 10 ** (k - 1) + (rem - 1) // k
    offset = (rem - 1) % k
    return (number // 10 ** (k - 1 - offset)) % 10


def champernowne_digits() -> Iterator[int]:
    """Digits of Champernowne's constant in order, from position 1."""
    for n in count(1):
        for ch in str(n):
            yield int(ch)


def occurrence_stream(spec: GeneratorSpec = GeneratorSpec()) -> Iterator[int]:
    """Positions q (1-based, increasing) whose digit equals the target."""
    if spec.base != 10:
        raise ValueError("only the base-10 Champernowne digit source is available")
    target = spec.target_digit
    for pos, digit in enumerate(champernowne_digits(), start=1):
        if digit == target:
            yield pos


def occurrence_positions(spec: GeneratorSpec, count: int) -> list[int]:
    """First `count` occurrence positions q_1 < q_2 < ..."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    return list(islice(occurrence_stream(spec), count))


def r_stream(spec: GeneratorSpec = GeneratorSpec()) -> Iterator[int]:
    """Gap sequence r_1 = q_1 - 1, r_m = q_m - q_{m-1}.

    An occurrence at position 1 (possible only for target digit 1) is
    dropped: it would give r_1 = 0, which is not a valid 1-based index
    into the generated sequence.
    """
    prev = None
    for q in occurrence_stream(spec):
        if prev is None:
            if q == 1:
                continue
            yield q - 1
        else:
            yield q - prev
        prev = q


def r_sequence(spec: GeneratorSpec, count: int) -> list[int]:
    """First `count` gaps of the occurrence sequence."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    return list(islice(r_stream(spec), count))


def generated(
    z: Callable[[int], T],
    *,
    mul: Callable[[T, T], T],
    identity: T,
    spec: GeneratorSpec = GeneratorSpec(),
) -> Iterator[T]:
    """Stream w_1, w_2, ... with w_m = w_{m-1} * z(r_m), starting from identity.

    `z` is indexed 1-based; `mul` must be associative.
    """
    w = identity
    for r in r_stream(spec):
        w = mul(w, z(r))
        yield w


def generate(
    z: Callable[[int], T],
    m: int,
    *,
    mul: Callable[[T, T], T],
    identity: T,
    spec: GeneratorSpec = GeneratorSpec(),
) -> T:
    """The m-th product z(r_1) * z(r_2) * ... * z(r_m), recomputed from scratch."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    w = identity
    for r in islice(r_stream(spec), m):
        w = mul(w, z(r))
    return w
