import pytest
from hypothesis import given, settings, strategies as st

from smlat.core import (Instance, Matching, blocking_pairs, diff_pq, dominates,
                        is_stable, join, meet, parse_instance, parse_matching,
                        serialize_instance)
from smlat.errors import NotAMatching, ParseError, SizeMismatch, ValidationError
from smlat.oracle import enumerate_stable_bruteforce

from conftest import identity_instance, make_random_instance


def test_parse_smallest_instance():
    inst = parse_instance("n 1\nw 1: 1\nf 1: 1\n")
    assert inst.n == 1
    assert inst.worker_prefs == ((1,),)


def test_parse_comments_and_blanks():
    text = "# header\nn 2\n\nw 1: 1 2  # inline\nw 2: 2 1\nf 1: 1 2\nf 2: 2 1\n"
    inst = parse_instance(text)
    assert inst.firm_prefs[1] == (2, 1)


def test_parse_rejects_duplicate_entry():
    text = "n 3\nw 1: 3 3 1\nw 2: 1 2 3\nw 3: 1 2 3\nf 1: 1 2 3\nf 2: 1 2 3\nf 3: 1 2 3\n"
    with pytest.raises(ValidationError, match="worker 1"):
        parse_instance(text)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError, match="line 1"):
        parse_instance("m 4\n")
    with pytest.raises(ParseError, match="line 3"):
        parse_instance("n 1\nw 1: 1\nf one: 1\n")
    with pytest.raises(ParseError, match="missing firm"):
        parse_instance("n 1\nw 1: 1\n")
    with pytest.raises(ParseError):
        parse_instance("")


def test_parse_rejects_out_of_range_ids():
    with pytest.raises(ParseError, match="out of range"):
        parse_instance("n 2\nw 3: 1 2\n")
    with pytest.raises(ValidationError, match="out of range"):
        parse_instance("n 2\nw 1: 1 5\nw 2: 1 2\nf 1: 1 2\nf 2: 1 2\n")


def test_serialize_parse_roundtrip(rng):
    for _ in range(20):
        inst = make_random_instance(rng.choice([1, 2, 3, 5, 8]), rng, name="x")
        again = parse_instance(serialize_instance(inst), name="x")
        assert again == inst


def test_matching_text_roundtrip():
    m = parse_matching("M: 3 1 2")
    assert str(m) == "M: 3 1 2"
    assert m.worker_of(3) == 1
    with pytest.raises(ParseError):
        parse_matching("3 1 2")
    with pytest.raises(ParseError):
        parse_matching("M: 1 1 2")


def test_blocking_pairs_pinned_values(pairs):
    a4, b4 = pairs["n4"]
    assert (4, 1) in blocking_pairs(b4, Matching([1, 2, 4, 3]))
    a5, b5 = pairs["n5-firms"]
    assert (5, 3) in blocking_pairs(b5, Matching([2, 1, 3, 4, 5]))


def test_da_output_has_no_blocking_pairs(rng):
    from smlat.da import worker_da
    for _ in range(10):
        inst = make_random_instance(rng.choice([2, 4, 6]), rng)
        assert blocking_pairs(inst, worker_da(inst)) == frozenset()


def test_is_stable_pinned(pairs):
    a4, b4 = pairs["n4"]
    assert is_stable(a4, Matching([1, 2, 3, 4]))
    assert is_stable(b4, Matching([1, 2, 3, 4]))
    assert not is_stable(b4, Matching([1, 2, 4, 3]))
    one = identity_instance(1)
    assert is_stable(one, Matching([1]))


def test_meet_join_pinned_n6(pairs):
    a6, b6 = pairs["n6"]
    m1, m2 = Matching([2, 1, 4, 3, 5, 6]), Matching([1, 2, 3, 4, 6, 5])
    assert meet(a6, m1, m2) == Matching([1, 2, 3, 4, 5, 6])
    assert join(a6, m1, m2) == Matching([2, 1, 4, 3, 6, 5])
    assert meet(b6, m1, m2) == Matching([2, 1, 3, 4, 5, 6])
    assert join(b6, m1, m2) == Matching([1, 2, 4, 3, 6, 5])
    assert meet(a6, m1, m1) == m1
    assert join(a6, m2, m2) == m2


def test_meet_join_error_on_wild_inputs():
    inst = identity_instance(3)
    m1 = Matching([2, 3, 1])
    m2 = Matching([3, 1, 2])
    # both workers 1 and 2 would grab their list-best among their options,
    # colliding; definable only on stable inputs
    with pytest.raises(NotAMatching):
        meet(inst, m1, m2)


def test_diff_pq_pinned(pairs):
    a4, b4 = pairs["n4"]
    d = diff_pq(a4, b4)
    assert (d.p, d.q) == (2, 2)
    assert d.changed_workers == frozenset({3, 4})
    a5b, b5b = pairs["n5-both"]
    d = diff_pq(a5b, b5b)
    assert (d.p, d.q) == (1, 1)
    assert diff_pq(a4, a4) == diff_pq(a4, a4)
    assert diff_pq(a4, a4).p == 0 and diff_pq(a4, a4).q == 0
    with pytest.raises(SizeMismatch):
        diff_pq(a4, a5b)


@st.composite
def instance_and_stable_pairs(draw):
    n = draw(st.integers(min_value=2, max_value=5))
    ids = list(range(1, n + 1))
    wp = [draw(st.permutations(ids)) for _ in range(n)]
    fp = [draw(st.permutations(ids)) for _ in range(n)]
    inst = Instance(wp, fp)
    stable = sorted(enumerate_stable_bruteforce(inst))
    i = draw(st.integers(min_value=0, max_value=len(stable) - 1))
    j = draw(st.integers(min_value=0, max_value=len(stable) - 1))
    k = draw(st.integers(min_value=0, max_value=len(stable) - 1))
    return inst, stable[i], stable[j], stable[k]


@settings(max_examples=60, deadline=None)
@given(instance_and_stable_pairs())
def test_lattice_laws_on_stable_matchings(data):
    inst, m1, m2, m3 = data
    mt, jn = meet(inst, m1, m2), join(inst, m1, m2)
    # closure
    assert is_stable(inst, mt) and is_stable(inst, jn)
    # commutativity
    assert mt == meet(inst, m2, m1) and jn == join(inst, m2, m1)
    # absorption
    assert join(inst, m1, meet(inst, m1, m2)) == m1
    assert meet(inst, m1, join(inst, m1, m2)) == m1
    # associativity and distributivity
    assert meet(inst, m1, meet(inst, m2, m3)) == meet(inst, meet(inst, m1, m2), m3)
    assert (meet(inst, m1, join(inst, m2, m3))
            == join(inst, meet(inst, m1, m2), meet(inst, m1, m3)))
    # dominance orientation: meet dominates both sides
    assert dominates(inst, mt, m1) and dominates(inst, m1, jn)


@settings(max_examples=40, deadline=None)
@given(instance_and_stable_pairs())
def test_meet_gives_each_firm_its_less_preferred_partner(data):
    inst, m1, m2, _ = data
    mt = meet(inst, m1, m2)
    for f in range(1, inst.n + 1):
        w1, w2 = m1.worker_of(f), m2.worker_of(f)
        worse = w2 if inst.firm_prefers(f, w1, w2) else w1
        assert mt.worker_of(f) == worse
