"""Linear codes over GF(q) and matrix-level constructions.

Positions are 0-based in the Python API and 1-based in every text format.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    BadPositions,
    EnumerationTooLarge,
    FieldMismatch,
    LengthMismatch,
    NotACodeword,
    ParseError,
)
from .field import FieldSpec, field_of_order, normalize_columns

DEFAULT_CAP = 1 << 24
_BLOCK_ROWS = 1 << 15
_DIGITS = "0123456789abcdef"


def rref(matrix, F: FieldSpec) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form over ``F``; zero rows are dropped.

    Returns the reduced matrix and its pivot columns.
    """
    M = np.array(matrix, dtype=np.uint8, copy=True)
    if M.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    nrows, n = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == nrows:
            break
        hits = np.flatnonzero(M[r:, c])
        if hits.size == 0:
            continue
        i = r + int(hits[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        if M[r, c] != 1:
            M[r] = F.mul_table[F.inv_table[M[r, c]]][M[r]]
        col = M[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            if F.p == 2 and F.r == 1:
                M[others] ^= M[r]
            else:
                factors = F.neg_table[col[others]]
                M[others] = F.vadd(M[others], F.mul_table[factors[:, None], M[r][None, :]])
        pivots.append(c)
        r += 1
    return M[:r], pivots


class LinearCode:
    """An [n, k]_q code stored by its generator matrix in reduced row-echelon form.

    Two instances compare equal exactly when they span the same subspace of GF(q)^n.
    Build instances with :func:`from_rows`.
    """

    __slots__ = ("field", "n", "gen", "pivots", "_hash")

    def __init__(self, field: FieldSpec, n: int, gen: np.ndarray, pivots: Sequence[int]):
        gen = np.asarray(gen, dtype=np.uint8).reshape(len(pivots), n)
        gen.setflags(write=False)
        self.field = field
        self.n = n
        self.gen = gen
        self.pivots = tuple(pivots)
        self._hash = None

    @property
    def k(self) -> int:
        return self.gen.shape[0]

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def size(self) -> int:
        return self.q**self.k

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (
            self.field == other.field
            and self.n == other.n
            and self.gen.shape == other.gen.shape
            and bool(np.array_equal(self.gen, other.gen))
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.n, self.gen.shape, self.gen.tobytes()))
        return self._hash

    def __repr__(self):
        return f"LinearCode([{self.n},{self.k}]_{self.q})"

    def __contains__(self, word) -> bool:
        return contains(self, word)


@dataclass(frozen=True)
class Codeword:
    coords: tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(1 for x in self.coords if x)

    @property
    def supp(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.coords) if x)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)


@dataclass(frozen=True)
class ProjectiveColumnMultiset:
    """Multiplicities of the projective points spanned by the generator columns.

    ``points`` is sorted by point, so equal multisets compare equal.
    """

    k: int
    points: tuple[tuple[tuple[int, ...], int], ...]
    zero_count: int

    @property
    def n(self) -> int:
        return self.n_eff + self.zero_count

    @property
    def n_eff(self) -> int:
        return sum(m for _, m in self.points)

    @property
    def profile(self) -> tuple[int, ...]:
        return tuple(sorted((m for _, m in self.points), reverse=True))

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.points)

    def multiplicity(self, point: Sequence[int]) -> int:
        return self.as_dict().get(tuple(point), 0)


def from_rows(field: FieldSpec, n: int, rows: Iterable[Sequence[int]]) -> LinearCode:
    """The code spanned by ``rows``; dependent rows are dropped."""
    rows = [list(r) for r in rows]
    for r in rows:
        if len(r) != n:
            raise LengthMismatch(f"row of length {len(r)} in a code of length {n}")
        if any(not 0 <= int(x) < field.q for x in r):
            raise ValueError(f"row entries must lie in 0..{field.q - 1}")
    M = np.array(rows, dtype=np.uint8).reshape(len(rows), n)
    gen, pivots = rref(M, field)
    return LinearCode(field, n, gen, pivots)


def from_matrix(field: FieldSpec, matrix) -> LinearCode:
    M = np.asarray(matrix, dtype=np.uint8)
    if M.ndim != 2:
        raise ValueError("expected a 2-d generator matrix")
    gen, pivots = rref(M, field)
    return LinearCode(field, M.shape[1], gen, pivots)


def zero_code(field: FieldSpec, n: int) -> LinearCode:
    return LinearCode(field, n, np.zeros((0, n), dtype=np.uint8), ())


def full_space(field: FieldSpec, n: int) -> LinearCode:
    return LinearCode(field, n, np.eye(n, dtype=np.uint8), range(n))


def encode(C: LinearCode, message: Sequence[int]) -> np.ndarray:
    """The codeword ``message @ gen`` over GF(q)."""
    F = C.field
    word = np.zeros(C.n, dtype=np.uint8)
    for coeff, row in zip(message, C.gen):
        if coeff:
            word = F.vadd(word, F.vscale(int(coeff), row))
    return word


def contains(C: LinearCode, word) -> bool:
    v = np.asarray(getattr(word, "coords", word), dtype=np.uint8)
    if v.shape != (C.n,):
        return False
    coeffs = [int(v[p]) for p in C.pivots]
    return bool(np.array_equal(encode(C, coeffs), v))


# ---------------------------------------------------------------------------
# enumeration


def check_cap(C: LinearCode, cap: int = DEFAULT_CAP) -> None:
    if C.q**C.k > cap:
        raise EnumerationTooLarge(f"{C!r} has {C.q}^{C.k} codewords, cap is {cap}")


def _span_table(rows: np.ndarray, F: FieldSpec) -> np.ndarray:
    """All q^t combinations of ``t`` rows; row 0 is the fastest-varying digit."""
    table = np.zeros((1, rows.shape[1]), dtype=np.uint8)
    for g in rows:
        table = np.concatenate([F.vadd(table, F.vscale(lam, g)[None, :]) for lam in range(F.q)])
    return table


def iter_codeword_blocks(C: LinearCode, cap: int = DEFAULT_CAP, block_rows: int = _BLOCK_ROWS) -> Iterator[np.ndarray]:
    """Yield every codeword exactly once, as row blocks of a uint8 array.

    Codeword ``sum_i m_i q^i`` (message index) is ``sum_i m_i gen[i]``, and
    blocks come in increasing message-index order.
    """
    check_cap(C, cap)
    F, q, k = C.field, C.q, C.k
    if k == 0:
        yield np.zeros((1, C.n), dtype=np.uint8)
        return
    t = 1
    while t < k and q ** (t + 1) <= block_rows:
        t += 1
    low = _span_table(C.gen[:t], F)
    high = C.gen[t:]
    for idx in range(q ** (k - t)):
        offset = np.zeros(C.n, dtype=np.uint8)
        rest = idx
        for g in high:
            digit, rest = rest % q, rest // q
            if digit:
                offset = F.vadd(offset, F.vscale(digit, g))
        yield F.vadd(low, offset[None, :]) if idx else low


def codeword_array(C: LinearCode, cap: int = DEFAULT_CAP) -> np.ndarray:
    """All codewords as a (q^k, n) array in message-index order."""
    return np.concatenate(list(iter_codeword_blocks(C, cap)))


def _gray_binary(C: LinearCode) -> Iterator[Codeword]:
    n = C.n
    rows = [sum(1 << j for j in np.flatnonzero(g)) for g in C.gen]
    word = 0
    yield Codeword((0,) * n)
    for i in range(1, 1 << C.k):
        word ^= rows[(i & -i).bit_length() - 1]
        yield Codeword(tuple((word >> j) & 1 for j in range(n)))


def enumerate_codewords(C: LinearCode, cap: int = DEFAULT_CAP) -> Iterator[Codeword]:
    """Stream each codeword once; binary codes are walked in Gray-code order."""
    check_cap(C, cap)
    if C.q == 2:
        yield from _gray_binary(C)
        return
    for block in iter_codeword_blocks(C, cap):
        for row in block:
            yield Codeword(tuple(int(x) for x in row))


# ---------------------------------------------------------------------------
# supports and restrictions


def support(words: Iterable) -> frozenset[int]:
    """Union of supports; the empty family has empty support."""
    out: set[int] = set()
    for w in words:
        coords = getattr(w, "coords", w)
        out.update(i for i, x in enumerate(coords) if x)
    return frozenset(out)


def zero_positions(C: LinearCode) -> list[int]:
    return [int(j) for j in np.flatnonzero(~C.gen.any(axis=0))] if C.k else list(range(C.n))


def effective_length(C: LinearCode) -> int:
    return C.n - len(zero_positions(C))


def is_full_length(C: LinearCode) -> bool:
    return not zero_positions(C)


def strip_zeros(C: LinearCode) -> tuple[LinearCode, int]:
    zeros = set(zero_positions(C))
    keep = [j for j in range(C.n) if j not in zeros]
    return puncture(C, keep), len(zeros)


def puncture(C: LinearCode, positions: Iterable[int]) -> LinearCode:
    """Restriction of every codeword to ``positions`` (taken in increasing order)."""
    idx = sorted(set(int(i) for i in positions))
    if idx and (idx[0] < 0 or idx[-1] >= C.n):
        raise BadPositions(f"positions must lie in 0..{C.n - 1}")
    return from_matrix(C.field, C.gen[:, idx])


def residual(C: LinearCode, word) -> LinearCode:
    """Puncture ``C`` at the support of one of its codewords."""
    coords = getattr(word, "coords", word)
    if not contains(C, coords):
        raise NotACodeword("word is not in the code")
    supp = {i for i, x in enumerate(coords) if x}
    return puncture(C, [j for j in range(C.n) if j not in supp])


def dual(C: LinearCode) -> LinearCode:
    F, n, k = C.field, C.n, C.k
    free = [j for j in range(n) if j not in set(C.pivots)]
    H = np.zeros((n - k, n), dtype=np.uint8)
    for row, j in enumerate(free):
        H[row, j] = 1
        for i, p in enumerate(C.pivots):
            H[row, p] = F.neg_table[C.gen[i, j]]
    return from_matrix(F, H)


def direct_sum(C: LinearCode, D: LinearCode) -> LinearCode:
    if C.field != D.field:
        raise FieldMismatch(f"{C.field} vs {D.field}")
    G = np.zeros((C.k + D.k, C.n + D.n), dtype=np.uint8)
    G[: C.k, : C.n] = C.gen
    G[C.k :, C.n :] = D.gen
    return LinearCode(C.field, C.n + D.n, G, list(C.pivots) + [C.n + p for p in D.pivots])


def direct_sum_all(codes: Sequence[LinearCode], field: FieldSpec | None = None) -> LinearCode:
    if not codes:
        if field is None:
            raise ValueError("field required for an empty direct sum")
        return zero_code(field, 0)
    out = codes[0]
    for D in codes[1:]:
        out = direct_sum(out, D)
    return out


def repetition(C: LinearCode, m: int) -> LinearCode:
    """m-fold repetition: each codeword becomes (c|c|...|c)."""
    if m < 1:
        raise ValueError("repetition factor must be >= 1")
    return LinearCode(C.field, C.n * m, np.tile(C.gen, (1, m)), C.pivots)


def extend_zeros(C: LinearCode, z: int) -> LinearCode:
    return direct_sum(C, zero_code(C.field, z))


def permute(C: LinearCode, perm: Sequence[int]) -> LinearCode:
    """Code whose position ``j`` carries old position ``perm[j]``."""
    return from_matrix(C.field, C.gen[:, list(perm)])


def scale_positions(C: LinearCode, scalars: Sequence[int]) -> LinearCode:
    F = C.field
    G = np.stack([F.mul_table[int(s)][C.gen[:, j]] for j, s in enumerate(scalars)], axis=1) if C.n else C.gen
    return from_matrix(F, G.reshape(C.k, C.n))


# ---------------------------------------------------------------------------
# geometry of the columns


def column_multiset(C: LinearCode) -> ProjectiveColumnMultiset:
    cols = normalize_columns(C.gen, C.field)
    zero = int(np.count_nonzero(~C.gen.any(axis=0))) if C.k else C.n
    counts = Counter(tuple(int(x) for x in cols[:, j]) for j in range(C.n) if C.k and cols[:, j].any())
    return ProjectiveColumnMultiset(C.k, tuple(sorted(counts.items())), zero)


def max_multiplicity(C: LinearCode) -> int:
    """Largest class of mutually equivalent positions (zero positions form one class)."""
    cm = column_multiset(C)
    return max([m for _, m in cm.points] + [cm.zero_count])


def is_projective(C: LinearCode) -> bool:
    return is_full_length(C) and max_multiplicity(C) <= 1


# ---------------------------------------------------------------------------
# text format


def format_matrix(C: LinearCode, comment: str | None = None) -> str:
    if C.q > len(_DIGITS):
        raise ValueError("alphabet too large for the digit format")
    lines = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    lines.append(f"{C.q} {C.n} {C.k}")
    lines.extend("".join(_DIGITS[int(x)] for x in row) for row in C.gen)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> LinearCode:
    """Parse ``q n k`` followed by k digit rows; ``#`` lines are comments."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty matrix file")
    try:
        q, n, k = (int(t) for t in lines[0].split())
    except ValueError as exc:
        raise ParseError(f"bad header line {lines[0]!r}") from exc
    try:
        F = field_of_order(q)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    body = lines[1:]
    if len(body) != k:
        raise ParseError(f"header announces {k} rows, found {len(body)}")
    rows = []
    for ln in body:
        if len(ln) != n:
            raise ParseError(f"row {ln!r} does not have {n} entries")
        try:
            row = [int(ch, 16) for ch in ln]
        except ValueError as exc:
            raise ParseError(f"bad digit in row {ln!r}") from exc
        if any(x >= q for x in row):
            raise ParseError(f"row {ln!r} has entries outside 0..{q - 1}")
        rows.append(row)
    return from_rows(F, n, rows)


def read_matrix(path) -> LinearCode:
    with open(path) as fh:
        return parse_matrix(fh.read())


def write_matrix(C: LinearCode, path, comment: str | None = None) -> None:
    with open(path, "w") as fh:
        fh.write(format_matrix(C, comment))
