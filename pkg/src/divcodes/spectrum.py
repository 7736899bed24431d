"""Weight distributions, divisibility, MacWilliams transform and Pless power moments.

All counts are Python integers; nothing here touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .code import DEFAULT_CAP, LinearCode, dual, is_full_length, iter_codeword_blocks
from .errors import BadParameters, EnumerationTooLarge, NonIntegerResult, NotBinary, NotFullLength, ParseError


@dataclass(frozen=True)
class WeightDistribution:
    """Counts ``A[i]`` of weight-i words of an [n, k]_q code, i = 0..n."""

    n: int
    q: int
    k: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.n + 1:
            raise ValueError(f"need {self.n + 1} counts, got {len(self.counts)}")

    @property
    def A(self) -> tuple[int, ...]:
        return self.counts

    def __getitem__(self, i: int) -> int:
        return self.counts[i] if 0 <= i <= self.n else 0

    def __iter__(self):
        return iter(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def is_valid(self) -> bool:
        return self.counts[0] == 1 and all(a >= 0 for a in self.counts) and self.total == self.q**self.k

    def support(self) -> tuple[int, ...]:
        """Weights that actually occur."""
        return tuple(i for i, a in enumerate(self.counts) if a)

    def sparse(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, a) for i, a in enumerate(self.counts) if a)

    def format(self) -> str:
        return " ".join(f"{i}:{a}" for i, a in self.sparse())

    def divisor(self) -> int:
        """Largest Δ dividing every occurring weight; 0 for the zero code."""
        return math.gcd(*(i for i in self.support() if i)) if any(self.counts[1:]) else 0


@dataclass(frozen=True)
class DualDistribution(WeightDistribution):
    """Weight distribution of the dual code; ``B`` is an alias for ``counts``."""

    @property
    def B(self) -> tuple[int, ...]:
        return self.counts


def parse_distribution(text: str, n: int, q: int, k: int) -> WeightDistribution:
    counts = [0] * (n + 1)
    for token in text.split():
        try:
            i, a = (int(x) for x in token.split(":"))
        except ValueError as exc:
            raise ParseError(f"bad entry {token!r}") from exc
        if not 0 <= i <= n:
            raise ParseError(f"weight {i} outside 0..{n}")
        counts[i] = a
    return WeightDistribution(n, q, k, tuple(counts))


def scan(C: LinearCode, collect_weight: int | None = None, cap: int = DEFAULT_CAP):
    """One pass over all codewords.

    Returns the weight distribution and, if ``collect_weight`` is given, an
    array holding every codeword of that weight.
    """
    hist = np.zeros(C.n + 1, dtype=np.int64)
    found = []
    for block in iter_codeword_blocks(C, cap):
        w = np.count_nonzero(block, axis=1)
        hist += np.bincount(w, minlength=C.n + 1)
        if collect_weight is not None:
            found.append(block[w == collect_weight])
    wd = WeightDistribution(C.n, C.q, C.k, tuple(int(a) for a in hist))
    if collect_weight is None:
        return wd, None
    words = np.concatenate(found) if found else np.zeros((0, C.n), dtype=np.uint8)
    return wd, words


def weight_distribution(C: LinearCode, cap: int = DEFAULT_CAP) -> WeightDistribution:
    """Exact weight distribution, via the dual and MacWilliams when that side is smaller."""
    if C.q**C.k <= cap:
        return scan(C, cap=cap)[0]
    if C.q ** (C.n - C.k) <= cap:
        B = scan(dual(C), cap=cap)[0]
        A = macwilliams(B)
        return WeightDistribution(A.n, A.q, A.k, A.counts)
    raise EnumerationTooLarge(f"both {C!r} and its dual exceed the enumeration cap {cap}")


def is_divisible(C: LinearCode | WeightDistribution, delta: int, cap: int = DEFAULT_CAP) -> bool:
    if delta < 1:
        raise ValueError("Δ must be a positive integer")
    wd = C if isinstance(C, WeightDistribution) else weight_distribution(C, cap)
    return all(a == 0 for i, a in enumerate(wd.counts) if i % delta)


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_pow(base: list[int], e: int) -> list[int]:
    out = [1]
    for _ in range(e):
        out = _poly_mul(out, base)
    return out


def macwilliams(A: WeightDistribution | Sequence[int], k: int | None = None, q: int | None = None) -> DualDistribution:
    """Dual weight distribution from ``W(x + (q-1)y, x - y) / q^k``.

    The homogeneous enumerator is handled with x = 1: the word weight i
    contributes ``A_i (1 + (q-1)y)^(n-i) (1 - y)^i``.
    """
    if isinstance(A, WeightDistribution):
        counts = list(A.counts)
        k = A.k if k is None else k
        q = A.q if q is None else q
    else:
        counts = [int(a) for a in A]
    if k is None or q is None:
        raise ValueError("k and q are required for a bare count vector")
    n = len(counts) - 1
    total = [0] * (n + 1)
    for i, a in enumerate(counts):
        if a:
            term = _poly_mul(_poly_pow([1, q - 1], n - i), _poly_pow([1, -1], i))
            for j, c in enumerate(term):
                total[j] += a * c
    scale = q**k
    if any(t % scale for t in total):
        raise NonIntegerResult("transform is not integral; input is not a weight distribution of an [n, k] code")
    return DualDistribution(n, q, n - k, tuple(t // scale for t in total))


@dataclass(frozen=True)
class PlessReport:
    n: int
    k: int
    B2: int
    B3: int
    moments: tuple[tuple[int, int, int], ...]  # (order, lhs, rhs)

    @property
    def ok(self) -> bool:
        return all(lhs == rhs for _, lhs, rhs in self.moments)


def pless_moments_check(
    C: LinearCode,
    dual_distribution: WeightDistribution | None = None,
    cap: int = DEFAULT_CAP,
) -> PlessReport:
    """Evaluate the first four power moments of a full-length binary code.

    Moments are returned as (order, left side, right side); B_2 and B_3 come
    from ``dual_distribution`` when supplied, otherwise from MacWilliams.
    """
    if C.q != 2:
        raise NotBinary("power moments are implemented for binary codes")
    if not is_full_length(C):
        raise NotFullLength("power moments assume a full-length code")
    A = weight_distribution(C, cap)
    B = dual_distribution if dual_distribution is not None else macwilliams(A)
    n, k = C.n, C.k
    B2, B3 = B[2], B[3]

    def moment(t):
        return sum(i**t * a for i, a in enumerate(A.counts) if i)

    # right sides are multiplied out to stay integral for small k
    rows = (
        (1, moment(0), 2**k - 1),
        (2, 2 * moment(1), 2**k * n),
        (3, 4 * moment(2), 2**k * (n * (n + 1) + 2 * B2)),
        (4, 8 * moment(3), 2**k * (n * n * (n + 3) + 6 * n * B2 - 6 * B3)),
    )
    return PlessReport(n, k, B2, B3, rows)


def closed_form_wd(family, q: int, k: int, m: int = 1) -> WeightDistribution:
    """Weight distribution of the m-fold repeated family code, without enumeration."""
    from .catalog import Family

    family = Family(family)
    if m < 1 or q < 2:
        raise BadParameters("need m >= 1 and q >= 2")
    if family is Family.SIM:
        if k < 1:
            raise BadParameters("simplex codes need k >= 1")
        n = (q**k - 1) // (q - 1)
        base = {0: 1, q ** (k - 1): q**k - 1}
    elif family is Family.RM:
        if k < 2:
            raise BadParameters("Reed-Muller codes need k >= 2")
        n = q ** (k - 1)
        base = {0: 1}
        base[(q - 1) * q ** (k - 2)] = base.get((q - 1) * q ** (k - 2), 0) + q**k - q
        base[q ** (k - 1)] = base.get(q ** (k - 1), 0) + q - 1
    else:
        if k < 1:
            raise BadParameters("parity check codes need k >= 1")
        n = k + 1
        base = {}
        for i in range(n + 1):
            a = math.comb(n, i) * ((q - 1) ** i + (q - 1) * (-1) ** i)
            if a:
                base[i] = a // q
    counts = [0] * (m * n + 1)
    for w, a in base.items():
        counts[m * w] += a
    return WeightDistribution(m * n, q, k, tuple(counts))
