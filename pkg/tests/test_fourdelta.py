import pytest

from divcodes.catalog import FamilyTag, construct
from divcodes.classify import classify
from divcodes.code import direct_sum, dual, is_projective
from divcodes.errors import BadParameters
from divcodes.fourdelta import (
    build_maximal_codes,
    distinguish_maximal,
    extended_pc7,
    extension_word,
    format_table1,
    lemma41_distribution,
    table1,
)
from divcodes.spectrum import is_divisible, weight_distribution
from divcodes.structure import weight_span

TABLE_A_DELTA = ("0", "28", "21", "15", "16", "10", "11", "13", "2^k1-2", "2^k1+2^k2-3", "2^k1+2^k2-4", "2^k1",
                 "2^k1-1", "2^k1+2^k2-2", "2^k1+1", "7", "4")


def test_lemma_distribution():
    wd = lemma41_distribution(2, 8)
    assert [wd[i] for i in (0, 4, 8, 12, 16)] == [1, 28, 198, 28, 1]
    wd = lemma41_distribution(2, 5)
    assert [wd[i] for i in (0, 4, 8, 12, 16)] == [1, 0, 30, 0, 1]
    with pytest.raises(BadParameters):
        lemma41_distribution(2, 4)


@pytest.mark.parametrize("a", range(1, 6))
def test_table_rows(a):
    cases = table1(a)
    assert [c.row for c in cases] == list(range(1, 18))
    assert tuple(c.a_delta_text for c in cases) == TABLE_A_DELTA
    assert all(c.instances for c in cases)
    fixed = {c.row: c.a_delta_values for c in cases if c.row not in range(9, 16)}
    assert fixed == {1: (0,), 2: (28,), 3: (21,), 4: (15,), 5: (16,), 6: (10,), 7: (11,), 8: (13,), 16: (7,), 17: (4,)}
    assert {c.row for c in cases if c.admissible} == {1, 2, 11, 14, 17}


@pytest.mark.parametrize("a", range(1, 6))
def test_admissible_instances(a):
    cases = {c.row: c for c in table1(a)}
    for inst in cases[11].instances:
        params = dict(inst.params)
        assert inst.admissible == (params["k1"] == params["k2"])
        if inst.admissible:
            assert inst.k == a + 2 + params["k1"]
    for inst in cases[14].instances:
        assert inst.admissible == (sorted(dict(inst.params).values()) == [1, 2])
        if inst.admissible:
            assert inst.k == a + 4
    assert [i.k for i in cases[1].instances] == [a + 3]
    assert [i.k for i in cases[2].instances] == [a + 6]
    assert [i.k for i in cases[17].instances] == [a + 4]


@pytest.mark.parametrize("a", range(2, 6))
def test_dimension_bound(a):
    for case in table1(a):
        for inst in case.instances:
            if inst.admissible:
                assert inst.k <= 2 * a + 4


def test_table_formats():
    text = format_table1(table1(2))
    assert text.splitlines()[0].split() == ["row", "decomposition", "A_delta", "k", "condition"]
    assert len(text.splitlines()) == 18
    csv = format_table1(table1(2), "csv")
    assert csv.splitlines()[3] == "3,(Δ/2)·PC(6),21,-,"
    with pytest.raises(BadParameters):
        table1(0)


def test_extension_words():
    assert extension_word(0) == [1] * 8 + [0] * 8
    assert extension_word(255) == [0] * 8 + [1] * 8
    for choice in (0, 17, 255):
        assert sum(extension_word(choice)) == 8


def test_maximal_codes_a2():
    first, second = build_maximal_codes(2)
    assert first == direct_sum(construct(FamilyTag("RM", 2, 4)), construct(FamilyTag("RM", 2, 4)))
    for C in (first, second):
        assert (C.n, C.k) == (16, 8)
        assert is_projective(C) and is_divisible(C, 4)
        assert weight_distribution(C).sparse() == ((0, 1), (4, 28), (8, 198), (12, 28), (16, 1))
        assert dual(C) == C
    assert classify(weight_span(first, 4), 4).multiset() == {FamilyTag("RM", 2, 4): 2}
    assert classify(weight_span(second, 4), 4).multiset() == {FamilyTag("PC", 2, 7, 2): 1}


def test_maximal_codes_a3():
    first, second = build_maximal_codes(3)
    assert second is None
    assert (first.n, first.k) == (32, 10)
    assert is_divisible(first, 8) and is_projective(first)
    with pytest.raises(BadParameters):
        build_maximal_codes(1)


def test_distinguish():
    report = distinguish_maximal(2)
    assert report.span_dims == (8, 7)
    assert report.non_isomorphic
    assert report.distributions[0] == report.distributions[1]
    assert report.outside_weights == (8,)
    assert report.self_dual == (True, True)
    assert (report.choices, report.choice_fingerprints) == (256, 1)
    with pytest.raises(BadParameters):
        distinguish_maximal(3)


def test_all_extensions_are_valid():
    for choice in (0, 1, 128, 255):
        C = extended_pc7(choice)
        assert C.k == 8 and is_divisible(C, 4) and is_projective(C)
