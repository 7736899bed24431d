"""Classification of Δ-divisible codes spanned by weight-Δ words.

Pipeline: check divisibility, take the span of the weight-Δ words, split it
into indecomposable blocks, and identify each block in the admissible list.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .catalog import FamilyTag, construct, fingerprint, identify, is_admissible, parse_tag
from .code import DEFAULT_CAP, LinearCode, direct_sum_all, extend_zeros
from .errors import DivCodesError, NotDivisible, ParseError
from .spectrum import is_divisible, scan, weight_distribution
from .structure import decompose, span_of, tiny_isomorphism, TINY_BINARY_LENGTH, TINY_LENGTH, TINY_MAX_Q

admissibility_check = is_admissible


@dataclass(frozen=True)
class ClassificationCertificate:
    """Direct-sum description of a code: constituents, zero positions, and the
    dimension left over outside the weight-Δ span."""

    q: int
    delta: int
    constituents: tuple[FamilyTag, ...]
    zero_count: int
    leftover_dim: int = 0

    def __post_init__(self):
        object.__setattr__(self, "constituents", tuple(sorted(self.constituents)))

    @property
    def length(self) -> int:
        return sum(t.n for t in self.constituents) + self.zero_count

    @property
    def dimension(self) -> int:
        return sum(t.k for t in self.constituents)

    @property
    def spanned(self) -> bool:
        return self.leftover_dim == 0

    def multiset(self) -> Counter:
        return Counter(t.canonical() for t in self.constituents)

    def reconstruct(self, field=None) -> LinearCode:
        codes = [construct(t) for t in self.constituents]
        if not codes:
            from .field import field_of_order

            field = field or field_of_order(self.q)
        body = direct_sum_all(codes, field)
        return extend_zeros(body, self.zero_count)

    def format(self) -> str:
        lines = [str(t) for t in self.constituents]
        lines.append(f"zeros: {self.zero_count}")
        lines.append(f"leftover_dim: {self.leftover_dim}")
        return "\n".join(lines) + "\n"


def parse_certificate(text: str, q: int | None = None, delta: int | None = None) -> ClassificationCertificate:
    tags, zeros, leftover = [], None, 0
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("zeros:"):
            zeros = int(line.split(":", 1)[1])
        elif line.startswith("leftover_dim:"):
            leftover = int(line.split(":", 1)[1])
        else:
            tags.append(parse_tag(line))
    if zeros is None:
        raise ParseError("certificate lacks a 'zeros:' line")
    if q is None:
        if not tags:
            raise ParseError("q cannot be inferred from an empty certificate")
        q = tags[0].q
    if delta is None:
        raise ParseError("Δ is not part of the certificate text and must be supplied")
    return ClassificationCertificate(q, delta, tuple(tags), zeros, leftover)


def classify(C: LinearCode, delta: int, cap: int = DEFAULT_CAP) -> ClassificationCertificate:
    """Certificate for ``C`` with respect to Δ.

    If ``C`` is not spanned by its weight-Δ words, the certificate describes
    that span and ``leftover_dim`` records the missing dimension.
    """
    if delta < 1:
        raise ValueError("Δ must be a positive integer")
    wd, words = scan(C, collect_weight=delta, cap=cap)
    if not is_divisible(wd, delta):
        bad = next(i for i, a in enumerate(wd.counts) if a and i % delta)
        raise NotDivisible(f"{C!r} has {wd[bad]} codewords of weight {bad}, not divisible by {delta}")
    span = span_of(words, C.field, C.n, max_rank=C.k)
    dec = decompose(span)
    tags = tuple(identify(b.code, C.q, delta, cap) for b in dec.blocks)
    return ClassificationCertificate(C.q, delta, tags, len(dec.zero_positions), C.k - span.k)


def _tiny(C: LinearCode) -> bool:
    if C.q == 2:
        return C.n <= TINY_BINARY_LENGTH
    return C.q <= TINY_MAX_Q and C.n <= TINY_LENGTH


def verify_certificate(C: LinearCode, cert: ClassificationCertificate, cap: int = DEFAULT_CAP) -> bool:
    """Rebuild the certified direct sum and compare it with ``C`` (or its weight-Δ span).

    Compares length, dimension and weight distribution exactly, then the
    multisets of block fingerprints, then exact isomorphism for every block
    small enough for :func:`tiny_isomorphism`.
    """
    try:
        if cert.q != C.q or cert.length != C.n:
            return False
        if not all(is_admissible(t, cert.q, cert.delta) for t in cert.constituents):
            return False
        wd, words = scan(C, collect_weight=cert.delta, cap=cap)
        if not is_divisible(wd, cert.delta):
            return False
        target = C
        if cert.leftover_dim:
            target = span_of(words, C.field, C.n, max_rank=C.k)
        if C.k - target.k != cert.leftover_dim:
            return False
        recon = cert.reconstruct(C.field)
        if (recon.n, recon.k) != (target.n, target.k):
            return False
        if weight_distribution(recon, cap) != weight_distribution(target, cap):
            return False
        mine, theirs = decompose(target), decompose(recon)
        if len(mine.zero_positions) != len(theirs.zero_positions):
            return False
        fp_mine = [fingerprint(b.code) for b in mine.blocks]
        fp_theirs = [fingerprint(b.code) for b in theirs.blocks]
        if Counter(fp_mine) != Counter(fp_theirs):
            return False
        pool = list(zip(fp_theirs, (b.code for b in theirs.blocks)))
        for fp, block in zip(fp_mine, (b.code for b in mine.blocks)):
            idx = next(i for i, (f, _) in enumerate(pool) if f == fp)
            _, other = pool.pop(idx)
            if _tiny(block) and not tiny_isomorphism(block, other):
                return False
        return True
    except DivCodesError:
        return False
