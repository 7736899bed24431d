"""Simplex, first order Reed-Muller and parity check codes, their repetitions,
and identification of indecomposable blocks against the admissible list for (q, Δ).
"""

from __future__ import annotations

import enum
import functools
import itertools
import re
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .code import (
    DEFAULT_CAP,
    LinearCode,
    column_multiset,
    from_matrix,
    is_full_length,
    rref,
    repetition,
)
from .errors import BadParameters, NotFullLength, NotInCatalog, ParseError
from .field import FieldSpec, field_of_order, projective_normalize
from .spectrum import scan


class Family(str, enum.Enum):
    SIM = "SIM"
    RM = "RM"
    PC = "PC"

    @property
    def rank(self) -> int:
        return ("SIM", "RM", "PC").index(self.value)

    def __str__(self):
        return self.value


_TAG_RE = re.compile(r"^\s*(\d+)\s*x\s*(SIM|RM|PC)\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")


@dataclass(frozen=True)
class FamilyTag:
    """``m x FAMILY(q,k)``: the m-fold repetition of a family code of dimension k."""

    family: Family
    q: int
    k: int
    m: int = 1

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.m < 1:
            raise BadParameters("repetition factor must be >= 1")
        minimum = 2 if self.family is Family.RM else 1
        if self.k < minimum:
            raise BadParameters(f"{self.family} needs k >= {minimum}")

    def __str__(self):
        return f"{self.m} x {self.family}({self.q},{self.k})"

    @property
    def sort_key(self):
        return (self.family.rank, self.q, self.k, self.m)

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    @property
    def base_length(self) -> int:
        q, k = self.q, self.k
        if self.family is Family.SIM:
            return (q**k - 1) // (q - 1)
        if self.family is Family.RM:
            return q ** (k - 1)
        return k + 1

    @property
    def n(self) -> int:
        return self.m * self.base_length

    @property
    def delta(self) -> int:
        """Largest Δ dividing all weights of the tagged code."""
        from .spectrum import closed_form_wd

        return closed_form_wd(self.family, self.q, self.k, self.m).divisor()

    def canonical(self) -> FamilyTag:
        """Representative under the small-parameter isomorphisms between the families."""
        f, q, k, m = self.family, self.q, self.k, self.m
        if f is Family.PC and k == 1:
            return FamilyTag(Family.SIM, q, 1, 2 * m)
        if f is Family.PC and q == 2 and k == 2:
            return FamilyTag(Family.SIM, 2, 2, m)
        if f is Family.PC and q == 2 and k == 3:
            return FamilyTag(Family.RM, 2, 3, m)
        if f is Family.PC and q == 3 and k == 2:
            return FamilyTag(Family.RM, 3, 2, m)
        return self

    def aliases(self) -> set[FamilyTag]:
        """Every tag naming a code isomorphic to this one."""
        canon = self.canonical()
        out = {canon}
        for other in _alias_candidates(canon.q, canon.m):
            if other.canonical() == canon:
                out.add(other)
        return out


def _alias_candidates(q: int, m: int) -> list[FamilyTag]:
    out = [FamilyTag(Family.PC, q, 2, m), FamilyTag(Family.PC, q, 3, m)]
    if m % 2 == 0:
        out.append(FamilyTag(Family.PC, q, 1, m // 2))
    return out


def parse_tag(text: str) -> FamilyTag:
    match = _TAG_RE.match(text)
    if not match:
        raise ParseError(f"bad family tag {text!r}")
    m, fam, q, k = match.groups()
    return FamilyTag(Family(fam), int(q), int(k), int(m))


# ---------------------------------------------------------------------------
# constructions


def _encode(v, q: int) -> int:
    return sum(int(x) * q**i for i, x in enumerate(reversed(v)))


def _code_from_columns(F: FieldSpec, k: int, columns) -> LinearCode:
    """Generator from columns sorted by the integer encoding of their projective points."""
    cols = sorted(columns, key=lambda c: _encode(projective_normalize(c, F), F.q))
    M = np.array(cols, dtype=np.uint8).T.reshape(k, len(cols))
    return from_matrix(F, M)


def _check(q: int, k: int, minimum: int) -> FieldSpec:
    if k < minimum:
        raise BadParameters(f"dimension {k} below {minimum}")
    try:
        return field_of_order(q)
    except ValueError as exc:
        raise BadParameters(str(exc)) from exc


@functools.lru_cache(maxsize=None)
def simplex(q: int, k: int) -> LinearCode:
    """[(q^k-1)/(q-1), k] code whose columns are all points of PG(k-1, q)."""
    F = _check(q, k, 1)
    points = {projective_normalize(v, F) for v in itertools.product(range(q), repeat=k) if any(v)}
    return _code_from_columns(F, k, points)


@functools.lru_cache(maxsize=None)
def reed_muller(q: int, k: int) -> LinearCode:
    """[q^(k-1), k] first order Reed-Muller code: all of GF(q)^(k-1) over an all-one row."""
    F = _check(q, k, 2)
    cols = [tuple(v) + (1,) for v in itertools.product(range(q), repeat=k - 1)]
    return _code_from_columns(F, k, cols)


@functools.lru_cache(maxsize=None)
def parity_check(q: int, k: int) -> LinearCode:
    """[k+1, k] code of words with coordinate sum zero."""
    F = _check(q, k, 1)
    minus_one = F.neg(1)
    cols = [tuple(int(i == j) for i in range(k)) for j in range(k)]
    cols.append((minus_one,) * k)
    return _code_from_columns(F, k, cols)


_BUILDERS = {Family.SIM: simplex, Family.RM: reed_muller, Family.PC: parity_check}


@functools.lru_cache(maxsize=4096)
def construct(tag: FamilyTag) -> LinearCode:
    return repetition(_BUILDERS[tag.family](tag.q, tag.k), tag.m)


# ---------------------------------------------------------------------------
# admissible constituents for (q, Δ)


def q_adic_valuation(delta: int, q: int) -> int:
    a = 0
    while delta % q ** (a + 1) == 0:
        a += 1
    return a


def is_admissible(tag: FamilyTag, q: int, delta: int) -> bool:
    """Whether ``tag`` is one of the indecomposable building blocks for (q, Δ)."""
    if tag.q != q or delta < 1:
        return False
    a = q_adic_valuation(delta, q)
    if tag.family is Family.SIM:
        return 1 <= tag.k <= a + 1 and tag.m * q ** (tag.k - 1) == delta
    if q != 2:
        return False
    if tag.family is Family.RM:
        return 3 <= tag.k <= a + 2 and tag.m * 2 ** (tag.k - 2) == delta
    return a >= 1 and tag.k >= 4 and 2 * tag.m == delta


@dataclass(frozen=True)
class Catalog:
    """Admissible constituents for (q, Δ).

    The binary parity check series is unbounded in k; iterating a catalog is
    lazy, and :meth:`tags` materialises it up to a length or dimension bound.
    """

    q: int
    delta: int
    a: int
    finite: tuple[FamilyTag, ...]
    pc_m: int | None

    def __iter__(self) -> Iterator[FamilyTag]:
        yield from self.finite
        if self.pc_m is not None:
            for k in itertools.count(4):
                yield FamilyTag(Family.PC, 2, k, self.pc_m)

    def __contains__(self, tag: FamilyTag) -> bool:
        return is_admissible(tag, self.q, self.delta)

    @property
    def is_finite(self) -> bool:
        return self.pc_m is None

    def tags(self, max_length: int | None = None, max_pc_dim: int | None = None) -> list[FamilyTag]:
        out = [t for t in self.finite if max_length is None or t.n <= max_length]
        if self.pc_m is None:
            return out
        if max_length is None and max_pc_dim is None:
            raise ValueError("the parity check series is infinite; give max_length or max_pc_dim")
        k = 4
        while (max_length is None or self.pc_m * (k + 1) <= max_length) and (max_pc_dim is None or k <= max_pc_dim):
            out.append(FamilyTag(Family.PC, 2, k, self.pc_m))
            k += 1
        return out


def catalog_for(q: int, delta: int) -> Catalog:
    if delta < 1:
        raise BadParameters("Δ must be a positive integer")
    a = q_adic_valuation(delta, q)
    finite = [FamilyTag(Family.SIM, q, k, delta // q ** (k - 1)) for k in range(1, a + 2)]
    pc_m = None
    if q == 2:
        finite += [FamilyTag(Family.RM, 2, k, delta // 2 ** (k - 2)) for k in range(3, a + 3)]
        if a >= 1:
            pc_m = delta // 2
    return Catalog(q, delta, a, tuple(finite), pc_m)


# ---------------------------------------------------------------------------
# fingerprints and identification


@dataclass(frozen=True)
class Fingerprint:
    """Isomorphism invariants of a code, blind to zero positions."""

    q: int
    k: int
    n_eff: int
    distribution: tuple[tuple[int, int], ...]
    profile: tuple[int, ...]
    min_weight_span: int


def fingerprint(C: LinearCode, cap: int = DEFAULT_CAP) -> Fingerprint:
    wd, _ = scan(C, cap=cap)
    weights = [i for i in wd.support() if i]
    span = 0
    if weights:
        _, words = scan(C, collect_weight=weights[0], cap=cap)
        span = len(rref(words, C.field)[1])
    cm = column_multiset(C)
    return Fingerprint(C.q, C.k, cm.n_eff, wd.sparse(), cm.profile, span)


@functools.lru_cache(maxsize=4096)
def tag_fingerprint(tag: FamilyTag) -> Fingerprint:
    return fingerprint(construct(tag))


def _rank(vectors, F: FieldSpec) -> int:
    if not vectors:
        return 0
    return len(rref(np.array(vectors, dtype=np.uint8), F)[1])


def columns_match(tag: FamilyTag, C: LinearCode) -> bool:
    """Check the projective column multiset of ``C`` against the family's geometry."""
    cm = column_multiset(C)
    if cm.zero_count or cm.k != tag.k:
        return False
    mults = {m for _, m in cm.points}
    if mults != {tag.m}:
        return False
    points = [p for p, _ in cm.points]
    q, k, F = tag.q, tag.k, C.field
    if tag.family is Family.SIM:
        return len(points) == (q**k - 1) // (q - 1)
    if tag.family is Family.RM:
        if len(points) != q ** (k - 1) or _rank(points, F) != k:
            return False
        # the points avoid some hyperplane: a codeword of full weight exists
        wd, _ = scan(C)
        return wd[C.n] > 0
    if len(points) != k + 1:
        return False
    return all(_rank(points[:i] + points[i + 1 :], F) == k for i in range(k + 1))


def identify(C: LinearCode, q: int, delta: int, cap: int = DEFAULT_CAP) -> FamilyTag:
    """The admissible tag for (q, Δ) isomorphic to the indecomposable full-length code ``C``."""
    if not is_full_length(C):
        raise NotFullLength("identify expects a full-length code")
    if C.q != q:
        raise NotInCatalog(f"code is over GF({C.q}), not GF({q})")
    fp = fingerprint(C, cap)
    for tag in catalog_for(q, delta).tags(max_length=C.n):
        if tag.n != C.n or tag.k != C.k:
            continue
        if tag_fingerprint(tag) == fp and columns_match(tag, C):
            return tag
    raise NotInCatalog(f"no admissible constituent for q={q}, Δ={delta} matches {C!r}")
