import itertools
import random

import pytest

from divcodes.catalog import FamilyTag, catalog_for, construct, fingerprint, parity_check, reed_muller, simplex
from divcodes.code import (
    direct_sum,
    direct_sum_all,
    enumerate_codewords,
    extend_zeros,
    from_rows,
    full_space,
    permute,
    read_matrix,
    repetition,
    zero_code,
)
from divcodes.errors import InstanceTooLarge, LemmaViolation, NotRepetition
from divcodes.field import field_of_order
from divcodes.spectrum import scan
from divcodes.structure import (
    block_fingerprints,
    decompose,
    extract_repetition,
    intersection_census,
    intersection_report,
    is_indecomposable,
    residual_divisibility,
    tiny_isomorphism,
    weight_span,
)
from divcodes.fourdelta import extended_pc7
from generators import shuffle_code
from oracles import codewords, random_rows, residual_weights_ok

GF2 = field_of_order(2)


def sample_sum(rng):
    C = extend_zeros(direct_sum(simplex(2, 3), construct(FamilyTag("PC", 2, 4, 2))), 2)
    return shuffle_code(C, rng)


def test_indecomposable_examples():
    assert is_indecomposable(simplex(2, 3))
    assert not is_indecomposable(reed_muller(2, 2))
    assert not is_indecomposable(direct_sum(simplex(2, 2), simplex(2, 2)))
    assert is_indecomposable(zero_code(GF2, 3))


def test_decompose_examples():
    assert len(decompose(simplex(3, 2)).blocks) == 1
    dec = decompose(sample_sum(random.Random(0)))
    assert len(dec.blocks) == 2 and len(dec.zero_positions) == 2
    assert sorted((b.code.n, b.code.k) for b in dec.blocks) == [(7, 3), (10, 4)]
    dec = decompose(full_space(GF2, 5))
    assert [b.code.k for b in dec.blocks] == [1] * 5


def test_decompose_refines_and_reassembles():
    rng = random.Random(3)
    for _ in range(30):
        C = shuffle_code(direct_sum_all([construct(t) for t in rng.sample(catalog_for(2, 2).tags(max_pc_dim=6), 2)]), rng)
        dec = decompose(C)
        assert dec.reassemble() == C
        assert all(is_indecomposable(b.code) for b in dec.blocks)
        positions = sorted(itertools.chain(dec.zero_positions, *(b.positions for b in dec.blocks)))
        assert positions == list(range(C.n))


def test_decompose_random_codes():
    rng = random.Random(4)
    for _ in range(40):
        q = rng.choice((2, 3))
        n = rng.randint(1, 9)
        C = from_rows(field_of_order(q), n, random_rows(rng, q, n, rng.randint(0, 4)))
        dec = decompose(C)
        assert dec.reassemble() == C
        assert all(is_indecomposable(b.code) for b in dec.blocks)


def test_decomposition_text_and_files(tmp_path):
    dec = decompose(extend_zeros(direct_sum(simplex(2, 2), simplex(2, 2)), 1))
    assert dec.format() == "zeros: 7\nblock 1 [3,2]: 1 2 3\nblock 2 [3,2]: 4 5 6\n"
    paths = dec.write(tmp_path)
    assert [p.rsplit("/", 1)[1] for p in paths] == ["blocks.txt", "block_01.txt", "block_02.txt"]
    assert read_matrix(paths[1]) == simplex(2, 2)


def test_extract_repetition():
    assert extract_repetition(repetition(simplex(2, 2), 3), 3) == simplex(2, 2)
    with pytest.raises(NotRepetition):
        extract_repetition(simplex(2, 3), 2)


def test_extract_repetition_factor_fifteen():
    rng = random.Random(15)
    for _ in range(5):
        n = rng.randint(2, 5)
        D = from_rows(GF2, n, random_rows(rng, 2, n, 2))
        C = repetition(D, 15)
        got = extract_repetition(shuffle_code(C, rng), 15)
        assert fingerprint(got) == fingerprint(D)


def test_extract_repetition_roundtrip_random():
    rng = random.Random(16)
    for _ in range(30):
        q = rng.choice((2, 3, 4))
        n = rng.randint(2, 6)
        D = from_rows(field_of_order(q), n, random_rows(rng, q, n, rng.randint(1, 3)))
        m = rng.randint(1, 4)
        assert fingerprint(extract_repetition(repetition(D, m), m)) == fingerprint(D)


def test_weight_span_examples():
    assert weight_span(simplex(2, 3), 4) == simplex(2, 3)
    assert weight_span(reed_muller(2, 4), 4) == reed_muller(2, 4)
    C = extended_pc7(0)
    S = weight_span(C, 4)
    assert S.k == 7
    assert fingerprint(S) == fingerprint(construct(FamilyTag("PC", 2, 7, 2)))


def test_intersection_report_examples():
    words = [c.coords for c in enumerate_codewords(simplex(2, 3)) if c.weight == 4]
    r = intersection_report(words[0], words[0], 4, GF2)
    assert (r.case, r.b) == ("equivalent", 4)
    for u, v in itertools.combinations(words, 2):
        r = intersection_report(u, v, 4, GF2)
        assert (r.case, r.b, r.agreements) == ("proper", 2, {1: 2})
    u = [1, 1, 0, 0, 0, 0]
    v = [0, 0, 0, 1, 1, 0]
    assert intersection_report(u, v, 2, GF2).case == "disjoint"


def test_intersection_report_ternary_proper():
    F = field_of_order(3)
    words = [c.coords for c in enumerate_codewords(simplex(3, 2)) if c.weight == 3]
    u = words[0]
    for v in words[1:]:
        r = intersection_report(u, v, 3, F)
        if r.case == "proper":
            assert r.b == 2 and r.agreements == {1: 1, 2: 1}
        else:
            assert r.case == "equivalent"


def test_intersection_violation():
    with pytest.raises(LemmaViolation):
        intersection_report([1, 1, 1, 1, 0, 0], [0, 1, 1, 1, 1, 0], 4, GF2)
    with pytest.raises(ValueError):
        intersection_report([1, 1, 1, 0], [0, 1, 1, 0], 2, GF2)


def test_census_matches_pairwise_reports():
    for tag in (FamilyTag("SIM", 3, 2), FamilyTag("SIM", 4, 2), FamilyTag("RM", 2, 4), FamilyTag("PC", 2, 4, 2)):
        C = construct(tag)
        delta = tag.delta
        _, words = scan(C, collect_weight=delta)
        census = intersection_census(words, delta, C.field)
        counts = {"equivalent": 0, "proper": 0, "disjoint": 0}
        for u, v in itertools.combinations(words.tolist(), 2):
            counts[intersection_report(u, v, delta, C.field).case] += 1
        assert census.counts == counts


def test_census_flags_non_divisible_codes():
    C = from_rows(GF2, 7, [[1, 1, 1, 1, 0, 0, 0], [0, 1, 1, 1, 1, 0, 0]])
    _, words = scan(C, collect_weight=4)
    with pytest.raises(LemmaViolation):
        intersection_census(words, 4, GF2)


@pytest.mark.parametrize("q,delta", [(2, 4), (2, 2), (3, 3), (3, 9), (4, 4), (2, 6)])
def test_residual_divisibility_against_oracle(q, delta):
    for tag in catalog_for(q, delta).tags(max_pc_dim=5):
        C = construct(tag)
        if q**C.k > 1 << 8:
            continue
        report = residual_divisibility(C, delta)
        assert report.violations == 0
        words = codewords(C.gen.tolist(), q)
        assert residual_weights_ok(words, report.divisor)


def test_residual_divisibility_detects_failures():
    C = from_rows(GF2, 4, [[1, 1, 0, 0], [0, 1, 1, 0]])
    assert residual_divisibility(C, 4).violations > 0


def test_tiny_isomorphism_examples():
    S = simplex(2, 3)
    assert tiny_isomorphism(S, permute(S, [6, 5, 4, 3, 2, 1, 0]))
    assert tiny_isomorphism(parity_check(2, 3), reed_muller(2, 3))
    seven = full_space(GF2, 7)
    assert not tiny_isomorphism(S, seven)
    assert not tiny_isomorphism(simplex(2, 2), parity_check(2, 3))


def test_tiny_isomorphism_uses_scalings():
    F = field_of_order(4)
    C = simplex(4, 2)
    scaled = from_rows(F, 5, [[F.mul(s, x) for s, x in zip((2, 3, 1, 2, 3), row)] for row in C.gen.tolist()])
    assert tiny_isomorphism(C, scaled)


def test_tiny_isomorphism_caps():
    with pytest.raises(InstanceTooLarge):
        tiny_isomorphism(parity_check(2, 10), parity_check(2, 10))
    with pytest.raises(InstanceTooLarge):
        tiny_isomorphism(simplex(5, 1), simplex(5, 1))
    with pytest.raises(InstanceTooLarge):
        tiny_isomorphism(parity_check(3, 6), parity_check(3, 6))


def test_tiny_isomorphism_properties():
    rng = random.Random(9)
    for _ in range(40):
        q = rng.choice((2, 3))
        n = rng.randint(2, 6)
        k = rng.randint(1, 3)
        F = field_of_order(q)
        C = from_rows(F, n, random_rows(rng, q, n, k))
        D = from_rows(F, n, random_rows(rng, q, n, k))
        assert tiny_isomorphism(C, C)
        assert tiny_isomorphism(C, shuffle_code(C, rng))
        same = tiny_isomorphism(C, D)
        assert same == tiny_isomorphism(D, C)
        if same:
            assert fingerprint(C) == fingerprint(D)


def test_block_fingerprints():
    C = direct_sum(simplex(2, 3), simplex(2, 3))
    fp = block_fingerprints(C)
    assert list(fp.values()) == [2]
