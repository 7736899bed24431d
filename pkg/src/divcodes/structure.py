"""Indecomposability, block decomposition, repetition extraction, weight spans,
support intersections of weight-Δ words, and a brute-force isomorphism test
for tiny codes.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .catalog import _code_from_columns, fingerprint
from .code import (
    DEFAULT_CAP,
    LinearCode,
    codeword_array,
    column_multiset,
    format_matrix,
    from_matrix,
    rref,
    repetition,
    zero_positions,
)
from .errors import EnumerationTooLarge, FieldMismatch, InstanceTooLarge, LemmaViolation, NotRepetition
from .field import FieldSpec, normalize_columns
from .spectrum import scan, weight_distribution


def _row_components(C: LinearCode) -> list[list[int]]:
    """Rows of the systematic generator, grouped by shared nonzero non-pivot columns."""
    parent = list(range(C.k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pivots = set(C.pivots)
    for j in range(C.n):
        if j in pivots:
            continue
        rows = np.flatnonzero(C.gen[:, j])
        for r in rows[1:]:
            a, b = find(int(rows[0])), find(int(r))
            if a != b:
                parent[b] = a
    groups: dict[int, list[int]] = {}
    for r in range(C.k):
        groups.setdefault(find(r), []).append(r)
    return list(groups.values())


def is_indecomposable(C: LinearCode) -> bool:
    """Graph test on the non-identity part of the systematic generator matrix.

    Zero codes and one-dimensional codes are indecomposable.
    """
    if C.k <= 1:
        return True
    return len(_row_components(C)) == 1


@dataclass(frozen=True)
class Block:
    positions: tuple[int, ...]
    code: LinearCode


@dataclass(frozen=True)
class Decomposition:
    """Finest splitting of a code into full-length indecomposable blocks plus zero positions."""

    n: int
    field: FieldSpec
    blocks: tuple[Block, ...]
    zero_positions: tuple[int, ...]

    def reassemble(self) -> LinearCode:
        k = sum(b.code.k for b in self.blocks)
        G = np.zeros((k, self.n), dtype=np.uint8)
        row = 0
        for b in self.blocks:
            G[row : row + b.code.k, list(b.positions)] = b.code.gen
            row += b.code.k
        return from_matrix(self.field, G)

    def format(self) -> str:
        lines = [f"zeros: {' '.join(str(j + 1) for j in self.zero_positions)}".rstrip()]
        for i, b in enumerate(self.blocks, 1):
            lines.append(f"block {i} [{b.code.n},{b.code.k}]: {' '.join(str(j + 1) for j in b.positions)}")
        return "\n".join(lines) + "\n"

    def write(self, directory) -> list[str]:
        """Write ``blocks.txt`` and one matrix file per block; returns the paths written."""
        os.makedirs(directory, exist_ok=True)
        paths = [os.path.join(directory, "blocks.txt")]
        with open(paths[0], "w") as fh:
            fh.write(self.format())
        for i, b in enumerate(self.blocks, 1):
            path = os.path.join(directory, f"block_{i:02d}.txt")
            with open(path, "w") as fh:
                fh.write(format_matrix(b.code, comment=f"positions {' '.join(str(j + 1) for j in b.positions)}"))
            paths.append(path)
        return paths


def decompose(C: LinearCode) -> Decomposition:
    zeros = tuple(zero_positions(C))
    blocks = []
    for rows in _row_components(C):
        sub = C.gen[rows]
        cols = [j for j in range(C.n) if sub[:, j].any()]
        # rows of an RREF matrix restricted to their own support stay in RREF
        code = LinearCode(C.field, len(cols), sub[:, cols], [cols.index(C.pivots[r]) for r in rows])
        blocks.append(Block(tuple(cols), code))
    blocks.sort(key=lambda b: b.positions[0])
    return Decomposition(C.n, C.field, tuple(blocks), zeros)


def extract_repetition(C: LinearCode, m: int) -> LinearCode:
    """A full-length code D with m·D isomorphic to C up to zero positions."""
    if m < 1:
        raise ValueError("repetition factor must be >= 1")
    cm = column_multiset(C)
    if any(mult % m for _, mult in cm.points):
        raise NotRepetition(f"some column multiplicity of {C!r} is not divisible by {m}")
    cols = [p for p, mult in cm.points for _ in range(mult // m)]
    if not cols:
        return from_matrix(C.field, np.zeros((0, 0), dtype=np.uint8))
    D = _code_from_columns(C.field, C.k, cols)
    if fingerprint(repetition(D, m)) != fingerprint(C):
        raise NotRepetition("reconstructed repetition does not match the code")
    return D


def span_of(words: np.ndarray, F: FieldSpec, n: int, max_rank: int | None = None, batch: int = 1024) -> LinearCode:
    """Subspace spanned by the rows of ``words``, reduced batch by batch."""
    basis = np.zeros((0, n), dtype=np.uint8)
    for start in range(0, len(words), batch):
        basis, _ = rref(np.concatenate([basis, words[start : start + batch]]), F)
        if max_rank is not None and len(basis) == max_rank:
            break
    return from_matrix(F, basis)


def weight_span(C: LinearCode, delta: int, cap: int = DEFAULT_CAP) -> LinearCode:
    """Subcode spanned by all codewords of weight Δ."""
    _, words = scan(C, collect_weight=delta, cap=cap)
    return span_of(words, C.field, C.n, max_rank=C.k)


# ---------------------------------------------------------------------------
# support intersections


@dataclass(frozen=True)
class IntersectionReport:
    case: str  # "equivalent", "proper" or "disjoint"
    b: int
    agreements: dict = field(hash=False, compare=True)  # λ -> #{i : c'_i = λ c_i}


def intersection_report(c, c2, delta: int, F: FieldSpec) -> IntersectionReport:
    """Place two weight-Δ words of a Δ-divisible code in one of the three possible cases.

    Raises :class:`LemmaViolation` when none applies, which means the ambient
    code was not Δ-divisible.
    """
    u = np.asarray(getattr(c, "coords", c), dtype=np.uint8)
    v = np.asarray(getattr(c2, "coords", c2), dtype=np.uint8)
    if np.count_nonzero(u) != delta or np.count_nonzero(v) != delta:
        raise ValueError("both words must have weight Δ")
    both = (u != 0) & (v != 0)
    b = int(both.sum())
    agree = {lam: int(np.count_nonzero(both & (v == F.mul_table[lam][u]))) for lam in F.nonzero}
    q = F.q
    if b == delta and delta in agree.values():
        return IntersectionReport("equivalent", b, agree)
    if b == 0:
        return IntersectionReport("disjoint", b, agree)
    if b * q == (q - 1) * delta and all(a * q == delta for a in agree.values()):
        return IntersectionReport("proper", b, agree)
    raise LemmaViolation(f"intersection b={b}, agreements {agree} fit no case for Δ={delta}")


@dataclass(frozen=True)
class IntersectionCensus:
    """Counts over all unordered pairs of distinct weight-Δ words."""

    words: int
    counts: dict  # case -> number of pairs
    proper_b: tuple[int, ...]  # distinct b values seen in the proper case


def _leading_one(words: np.ndarray) -> np.ndarray:
    """Mask of rows whose first nonzero entry is 1 (one representative per scalar class)."""
    nz = words != 0
    first = np.argmax(nz, axis=1)
    return nz.any(axis=1) & (words[np.arange(len(words)), first] == 1)


def intersection_census(words: np.ndarray, delta: int, F: FieldSpec, chunk: int = 1024) -> IntersectionCensus:
    """Vectorised :func:`intersection_report` over every pair of rows in ``words``.

    ``words`` must be closed under nonzero scalars (all weight-Δ words of a
    code are). Scaling one word only permutes the agreement counts, so pairing
    one representative per scalar class with every word covers all pairs.
    Products run in float64, which is exact at these sizes.
    """
    W = len(words)
    q = F.q
    if W and np.any(np.count_nonzero(words, axis=1) != delta):
        raise ValueError("all words must have weight Δ")
    reps = np.flatnonzero(_leading_one(words))
    if len(reps) * (q - 1) != W:
        raise ValueError("word list is not closed under nonzero scalars")
    S = (words != 0).astype(np.float64)
    # one-hot blocks per nonzero value, side by side
    V = np.concatenate([(words == v) for v in F.nonzero], axis=1).astype(np.float64) if q > 2 else None
    counts = np.zeros(3, dtype=np.int64)  # equivalent, proper, disjoint (ordered rep/word pairs)
    proper_b: set[int] = set()
    for start in range(0, len(reps), chunk):
        rows = reps[start : start + chunk]
        b = np.rint(S[rows] @ S.T).astype(np.int64)
        if q == 2:
            agree = b[None]
        else:
            U = words[rows]
            agree = np.stack(
                [
                    np.rint(
                        np.concatenate([(F.mul_table[lam][U] == v) for v in F.nonzero], axis=1).astype(np.float64) @ V.T
                    ).astype(np.int64)
                    for lam in F.nonzero
                ]
            )
        # drop each representative paired with itself
        self_pair = np.zeros(b.shape, dtype=bool)
        self_pair[np.arange(len(rows)), rows] = True
        equivalent = (b == delta) & np.any(agree == delta, axis=0)
        disjoint = b == 0
        proper = (b * q == (q - 1) * delta) & np.all(agree * q == delta, axis=0)
        bad = ~(equivalent | disjoint | proper) & ~self_pair
        if bad.any():
            i, j = (int(x) for x in np.argwhere(bad)[0])
            raise LemmaViolation(
                f"pair ({int(rows[i])}, {j}) has b={int(b[i, j])}, agreements {agree[:, i, j].tolist()} for Δ={delta}"
            )
        counts += [
            np.count_nonzero(equivalent & ~self_pair),
            np.count_nonzero(proper & ~self_pair),
            np.count_nonzero(disjoint & ~self_pair),
        ]
        proper_b.update(int(x) for x in np.unique(b[proper & ~self_pair]))
    # each unordered pair {λu, v} is seen (q-1)/2 times per ordered representative pair
    total = [int(c) * (q - 1) // 2 for c in counts]
    return IntersectionCensus(W, dict(zip(("equivalent", "proper", "disjoint"), total)), tuple(sorted(proper_b)))


# ---------------------------------------------------------------------------
# residual divisibility

RESIDUAL_PAIR_CAP = 1 << 26


@dataclass(frozen=True)
class ResidualReport:
    divisor: int
    checked: int  # nonzero codewords c whose residual was tested
    violations: int  # pairs (x, c) with wt of x off supp(c) not divisible


def residual_divisibility(C: LinearCode, delta: int, cap: int = DEFAULT_CAP, chunk: int = 512) -> ResidualReport:
    """Test that every residual of C is Δ/gcd(q, Δ)-divisible.

    For codewords x and c the residual weight of x w.r.t. c is the number of
    positions where x is nonzero and c is zero, so the whole check is one
    integer matrix product (done in float64, exact at these sizes).
    """
    divisor = delta // math.gcd(C.q, delta)
    words = codeword_array(C, cap)
    N = len(words)
    if N * N > RESIDUAL_PAIR_CAP:
        raise EnumerationTooLarge(f"{N}^2 codeword pairs exceed the residual-check cap {RESIDUAL_PAIR_CAP}")
    Z = (words != 0).astype(np.float64)
    nonzero = np.flatnonzero(Z.any(axis=1))
    bad = 0
    for start in range(0, len(nonzero), chunk):
        cs = Z[nonzero[start : start + chunk]]
        R = np.rint(Z @ (1.0 - cs).T).astype(np.int64)
        bad += int(np.count_nonzero(R % divisor))
    return ResidualReport(divisor, len(nonzero), bad)


# ---------------------------------------------------------------------------
# exact isomorphism for tiny codes

TINY_BINARY_LENGTH = 10
TINY_LENGTH = 6
TINY_MAX_Q = 4


def _point_keys(M: np.ndarray, F: FieldSpec) -> np.ndarray:
    """Sorted integer keys of the normalised columns (zero columns key to 0)."""
    N = normalize_columns(M, F).astype(np.int64)
    weights = F.q ** np.arange(N.shape[0] - 1, -1, -1, dtype=np.int64)
    return np.sort(weights @ N)


def _matmul(M: np.ndarray, G: np.ndarray, F: FieldSpec) -> np.ndarray:
    if F.r == 1:
        return ((M.astype(np.int64) @ G.astype(np.int64)) % F.p).astype(np.uint8)
    out = np.zeros((M.shape[0], G.shape[1]), dtype=np.uint8)
    for i in range(M.shape[1]):
        out = F.vadd(out, F.mul_table[M[:, i][:, None], G[i][None, :]])
    return out


def tiny_isomorphism(C: LinearCode, D: LinearCode) -> bool:
    """Exact monomial-equivalence test for small codes.

    Every equivalence maps the pivot positions of C onto k positions of D; the
    search runs over those images with all column scalings, so it is exhaustive.
    """
    if C.field != D.field:
        raise FieldMismatch(f"{C.field} vs {D.field}")
    F = C.field
    limit = TINY_BINARY_LENGTH if F.q == 2 else (TINY_LENGTH if F.q <= TINY_MAX_Q else 0)
    if max(C.n, D.n) > limit:
        raise InstanceTooLarge(f"length {max(C.n, D.n)} exceeds the exhaustive-search limit {limit} for q={F.q}")
    if C.n != D.n or C.k != D.k:
        return False
    if C.k == 0:
        return True
    cmC, cmD = column_multiset(C), column_multiset(D)
    if cmC.profile != cmD.profile or cmC.zero_count != cmD.zero_count:
        return False
    if weight_distribution(C) != weight_distribution(D):
        return False
    target = _point_keys(D.gen, F)
    points = [np.array(p, dtype=np.uint8) for p, _ in cmD.points]
    k = C.k
    for images in itertools.permutations(points, k):
        base = np.stack(images, axis=1)
        if len(rref(base, F)[1]) < k:
            continue
        for scal in itertools.product(F.nonzero, repeat=k - 1):
            M = base.copy()
            for i, s in enumerate(scal, 1):
                M[:, i] = F.mul_table[s][M[:, i]]
            if np.array_equal(_point_keys(_matmul(M, C.gen, F), F), target):
                return True
    return False


def block_fingerprints(C: LinearCode) -> Counter:
    return Counter(fingerprint(b.code) for b in decompose(C).blocks)
