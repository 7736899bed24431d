"""Projective binary Δ-divisible codes of length 4Δ, Δ = 2^a.

Covers the weight distribution forced on such codes when they contain the
all-one word, the case table for the weight-Δ span, and the two codes of
maximal dimension 2a + 4.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from typing import Callable

from .catalog import Family, FamilyTag, catalog_for, construct, fingerprint
from .code import LinearCode, contains, direct_sum, dual, enumerate_codewords, from_rows, is_projective, repetition
from .errors import BadParameters
from .spectrum import WeightDistribution, closed_form_wd, is_divisible, weight_distribution
from .structure import weight_span


def lemma41_distribution(a: int, k: int) -> WeightDistribution:
    """Weight distribution of a projective Δ-divisible [4Δ, k]_2 code containing the all-one word."""
    if a < 0 or k < a + 3:
        raise BadParameters("need a >= 0 and k >= a + 3")
    delta = 2**a
    counts = [0] * (4 * delta + 1)
    counts[0] = 1
    counts[delta] = counts[3 * delta] = 2 ** (k - a - 1) - 4
    counts[2 * delta] = 2**k - 2 ** (k - a) + 6
    counts[4 * delta] = 1
    return WeightDistribution(4 * delta, 2, k, tuple(counts))


# ---------------------------------------------------------------------------
# case table


@dataclass(frozen=True)
class _Row:
    number: int
    label: str
    pattern: tuple  # (family, k or parameter name)
    a_delta: Callable[[dict], int]
    a_delta_text: str
    k_text: str = "-"
    condition: str = ""


_ROWS = (
    _Row(1, "0", (), lambda p: 0, "0", "a+3"),
    _Row(2, "(Δ/2)·PC(7)", (("PC", 7),), lambda p: 28, "28", "a+6"),
    _Row(3, "(Δ/2)·PC(6)", (("PC", 6),), lambda p: 21, "21"),
    _Row(4, "(Δ/2)·PC(5)", (("PC", 5),), lambda p: 15, "15"),
    _Row(5, "(Δ/2)·PC(5) ⊕ Δ·Sim(1)", (("PC", 5), ("SIM", 1)), lambda p: 16, "16"),
    _Row(6, "(Δ/2)·PC(4)", (("PC", 4),), lambda p: 10, "10"),
    _Row(7, "(Δ/2)·PC(4) ⊕ Δ·Sim(1)", (("PC", 4), ("SIM", 1)), lambda p: 11, "11"),
    _Row(8, "(Δ/2)·PC(4) ⊕ (Δ/2)·Sim(2)", (("PC", 4), ("SIM", 2)), lambda p: 13, "13"),
    _Row(9, "RM(k1)", (("RM", "k1"),), lambda p: 2 ** p["k1"] - 2, "2^k1-2"),
    _Row(10, "RM(k1) ⊕ Sim(k2)", (("RM", "k1"), ("SIM", "k2")), lambda p: 2 ** p["k1"] + 2 ** p["k2"] - 3, "2^k1+2^k2-3"),
    _Row(
        11,
        "RM(k1) ⊕ RM(k2)",
        (("RM", "k1"), ("RM", "k2")),
        lambda p: 2 ** p["k1"] + 2 ** p["k2"] - 4,
        "2^k1+2^k2-4",
        "a+2+k1",
        "k1 = k2",
    ),
    _Row(12, "RM(k1) ⊕ Δ·Sim(1) ⊕ Δ·Sim(1)", (("RM", "k1"), ("SIM", 1), ("SIM", 1)), lambda p: 2 ** p["k1"], "2^k1"),
    _Row(13, "Sim(k1)", (("SIM", "k1"),), lambda p: 2 ** p["k1"] - 1, "2^k1-1"),
    _Row(
        14,
        "Sim(k1) ⊕ Sim(k2)",
        (("SIM", "k1"), ("SIM", "k2")),
        lambda p: 2 ** p["k1"] + 2 ** p["k2"] - 2,
        "2^k1+2^k2-2",
        "a+4",
        "{k1,k2} = {1,2}",
    ),
    _Row(15, "Sim(k1) ⊕ Δ·Sim(1) ⊕ Δ·Sim(1)", (("SIM", "k1"), ("SIM", 1), ("SIM", 1)), lambda p: 2 ** p["k1"] + 1, "2^k1+1"),
    _Row(16, "(Δ/2)·Sim(2) ⊕ (Δ/2)·Sim(2) ⊕ Δ·Sim(1)", (("SIM", 2), ("SIM", 2), ("SIM", 1)), lambda p: 7, "7"),
    _Row(17, "Δ·Sim(1) ⊕ Δ·Sim(1) ⊕ Δ·Sim(1) ⊕ Δ·Sim(1)", (("SIM", 1),) * 4, lambda p: 4, "4", "a+4"),
)


def _bind(pattern, items) -> dict | None:
    """Smallest parameter binding matching ``items`` (a tuple of (family, k)) to ``pattern``."""
    if len(pattern) != len(items):
        return None
    found = []
    for perm in itertools.permutations(items):
        params: dict = {}
        for (fam, want), (got_fam, got_k) in zip(pattern, perm):
            if fam != got_fam:
                break
            if isinstance(want, str):
                if params.setdefault(want, got_k) != got_k:
                    break
            elif want != got_k:
                break
        else:
            found.append(tuple(sorted(params.items())))
    return dict(min(found)) if found else None


@dataclass(frozen=True)
class FourDeltaInstance:
    constituents: tuple[FamilyTag, ...]
    params: tuple[tuple[str, int], ...]
    a_delta: int
    admissible: bool
    k: int | None


@dataclass(frozen=True)
class FourDeltaCase:
    row: int
    decomposition: str
    a_delta_text: str
    k_text: str
    condition: str
    instances: tuple[FourDeltaInstance, ...]

    @property
    def admissible(self) -> bool:
        return any(i.admissible for i in self.instances)

    @property
    def a_delta_values(self) -> tuple[int, ...]:
        return tuple(sorted({i.a_delta for i in self.instances}))


def _is_power_of_two(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


def table1(a: int) -> list[FourDeltaCase]:
    """Enumerate all admissible direct sums with total effective length <= 4Δ and sort them into rows.

    Each combination of constituents must match exactly one row; A_Δ is
    computed from the constituents' weight distributions and checked against
    the row's formula.
    """
    if a < 1:
        raise BadParameters("need a >= 1")
    delta = 2**a
    budget = 4 * delta
    pool = catalog_for(2, delta).tags(max_length=budget)
    per_row: dict[int, list[FourDeltaInstance]] = {r.number: [] for r in _ROWS}
    for size in range(5):
        for combo in itertools.combinations_with_replacement(pool, size):
            if sum(t.n for t in combo) > budget:
                continue
            items = tuple((t.family.value, t.k) for t in combo)
            hits = [(r, p) for r in _ROWS if (p := _bind(r.pattern, items)) is not None]
            if len(hits) != 1:
                raise AssertionError(f"{[str(t) for t in combo]} matches {len(hits)} rows")
            row, params = hits[0]
            a_delta = sum(closed_form_wd(t.family, 2, t.k, t.m)[delta] for t in combo)
            if a_delta != row.a_delta(params):
                raise AssertionError(f"row {row.number}: A_Δ {a_delta} != formula {row.a_delta(params)}")
            ok = _is_power_of_two(a_delta + 4)
            k = a + 1 + (a_delta + 4).bit_length() - 1 if ok else None
            per_row[row.number].append(FourDeltaInstance(tuple(sorted(combo)), tuple(sorted(params.items())), a_delta, ok, k))
    return [
        FourDeltaCase(r.number, r.label, r.a_delta_text, r.k_text, r.condition, tuple(sorted(per_row[r.number], key=lambda i: i.params)))
        for r in _ROWS
    ]


def format_table1(cases: list[FourDeltaCase], fmt: str = "text") -> str:
    header = ("row", "decomposition", "A_delta", "k", "condition")
    rows = [(str(c.row), c.decomposition, c.a_delta_text, c.k_text, c.condition) for c in cases]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    widths = [max(len(r[i]) for r in rows + [header]) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in [header] + rows]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# maximal codes


def extension_word(choice: int) -> list[int]:
    """Weight-8 word taking one member of each repeated pair (j, j+8) of 2·PC(7); bit j picks j+8."""
    word = [0] * 16
    for j in range(8):
        word[j + 8 if (choice >> j) & 1 else j] = 1
    return word


def extended_pc7(choice: int = 0) -> LinearCode:
    base = repetition(construct(FamilyTag(Family.PC, 2, 7)), 2)
    return from_rows(base.field, 16, [*base.gen.tolist(), extension_word(choice)])


def build_maximal_codes(a: int) -> tuple[LinearCode, LinearCode | None]:
    """The [4Δ, 2a+4] projective Δ-divisible codes: RM(a+2) ⊕ RM(a+2), and for a = 2 also ⟨2·PC(7), c⟩."""
    if a < 2:
        raise BadParameters("need a >= 2")
    rm = construct(FamilyTag(Family.RM, 2, a + 2))
    first = direct_sum(rm, rm)
    second = extended_pc7(0) if a == 2 else None
    return first, second


@dataclass(frozen=True)
class MaximalReport:
    distributions: tuple[WeightDistribution, WeightDistribution]
    span_dims: tuple[int, int]
    projective: tuple[bool, bool]
    divisible: tuple[bool, bool]
    self_dual: tuple[bool, bool]
    outside_weights: tuple[int, ...]  # weights of C \ C' for the second code
    choices: int
    choice_fingerprints: int

    @property
    def non_isomorphic(self) -> bool:
        return self.span_dims[0] != self.span_dims[1]


def distinguish_maximal(a: int = 2) -> MaximalReport:
    if a != 2:
        raise BadParameters("the second maximal code only exists for a = 2")
    delta = 4
    codes = build_maximal_codes(a)
    spans = [weight_span(C, delta) for C in codes]
    second, span2 = codes[1], spans[1]
    outside = sorted({w.weight for w in enumerate_codewords(second) if not contains(span2, w.coords)})
    prints = {fingerprint(extended_pc7(choice)) for choice in range(256)}
    return MaximalReport(
        distributions=tuple(weight_distribution(C) for C in codes),
        span_dims=tuple(S.k for S in spans),
        projective=tuple(is_projective(C) for C in codes),
        divisible=tuple(is_divisible(C, delta) for C in codes),
        self_dual=tuple(dual(C) == C for C in codes),
        outside_weights=tuple(outside),
        choices=256,
        choice_fingerprints=len(prints),
    )
