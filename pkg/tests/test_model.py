import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mtra.errors import (DomainError, DuplicateItemError, IncompleteRankingError,
                         MalformedPreferenceError, NonSquareError, UnknownItemError)
from mtra.fixtures import THREE, TWO, eg2_profile, eg3_profile, eg4_profile, ranking
from mtra.generators import random_instance, random_lexicographic, random_linear
from mtra.model import (Instance, LinearPreference, Profile, bundle_name,
                        enumerate_bundles, expand_lexicographic, lexicographic,
                        linear, recognize_lexicographic, upper_contour_set)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_bundles_are_type_major():
    assert [bundle_name(x) for x in enumerate_bundles(TWO)] == ["1_F1_B", "1_F2_B", "2_F1_B", "2_F2_B"]
    assert len(THREE.bundles) == 9
    assert THREE.bundles[0] == ("1_F", "1_B")


def test_default_agent_names():
    assert TWO.agents == ("1", "2")


def test_non_square_rejected():
    with pytest.raises(NonSquareError):
        Instance(("F", "B"), (("a", "b", "c"), ("x", "y")))


def test_agent_count_must_match():
    with pytest.raises(NonSquareError):
        Instance(("F",), (("a", "b"),), ("1", "2", "3"))


def test_duplicate_item_rejected():
    with pytest.raises(DuplicateItemError):
        Instance(("F", "B"), (("a", "b"), ("b", "c")))


def test_check_bundle():
    assert TWO.check_bundle(["1_F", "2_B"]) == ("1_F", "2_B")
    with pytest.raises(DomainError):
        TWO.check_bundle(("2_B", "1_F"))


def test_linear_rejects_incomplete_ranking():
    with pytest.raises(IncompleteRankingError):
        linear(TWO, [("1_F", "1_B"), ("1_F", "2_B")])


def test_linear_rejects_repeated_bundle():
    with pytest.raises(IncompleteRankingError):
        linear(TWO, [("1_F", "1_B")] * 4)


def test_linear_rejects_unknown_item():
    with pytest.raises(UnknownItemError):
        linear(TWO, [("1_F", "9_B"), ("1_F", "2_B"), ("2_F", "1_B"), ("2_F", "2_B")])


def test_linear_rejects_out_of_order_bundle():
    with pytest.raises(MalformedPreferenceError):
        linear(TWO, [("1_B", "1_F"), ("1_F", "2_B"), ("2_F", "1_B"), ("2_F", "2_B")])


def test_expand_eg3_agent3():
    prof = eg3_profile()
    r = [bundle_name(x) for x in expand_lexicographic(prof.prefs[2], THREE).ranking]
    assert r[:4] == ["1_F2_B", "2_F2_B", "3_F2_B", "1_F3_B"]
    assert r[-1] == "3_F1_B"


def test_recognize_eg2():
    prof = eg2_profile()
    assert recognize_lexicographic(prof.linear[0], TWO).importance == (0, 1)
    assert recognize_lexicographic(prof.linear[1], TWO).importance == (1, 0)


def test_eg4_rankings_are_not_lexicographic():
    prof = eg4_profile()
    assert recognize_lexicographic(prof.linear[0], TWO) is None
    assert recognize_lexicographic(prof.linear[1], TWO) is None


def test_single_type_rankings_are_lexicographic():
    inst = Instance(("F",), (("a", "b", "c"),))
    pref = linear(inst, [("c",), ("a",), ("b",)])
    assert recognize_lexicographic(pref, inst).orders == (("c", "a", "b"),)


def test_upper_contour_set():
    pref = ranking(TWO, "1_F1_B > 1_F2_B > 2_F2_B > 2_F1_B")
    assert upper_contour_set(pref, ("1_F", "2_B")) == {("1_F", "1_B"), ("1_F", "2_B")}
    with pytest.raises(DomainError):
        upper_contour_set(pref, ("x", "y"))


def test_lexicographic_builder_needs_every_type():
    with pytest.raises(MalformedPreferenceError):
        lexicographic(TWO, ["F", "B"], {"F": ["1_F", "2_F"]})


def test_lexicographic_builder_unknown_type():
    with pytest.raises(DomainError):
        lexicographic(TWO, ["F", "Z"], {"F": ["1_F", "2_F"], "B": ["1_B", "2_B"]})


def test_profile_replace_and_forms():
    prof = eg3_profile()
    assert prof.all_lexicographic
    lin = LinearPreference(prof.linear[0].ranking)
    swapped = prof.replace(0, lin)
    assert not swapped.all_lexicographic
    assert swapped.lexicographic_form(0) == prof.prefs[0]
    assert swapped.linear == prof.linear


def test_profile_length_must_match():
    with pytest.raises(MalformedPreferenceError):
        Profile(TWO, (ranking(TWO, "1_F1_B > 1_F2_B > 2_F2_B > 2_F1_B"),))


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_expand_then_recognize_round_trip(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, max_agents=3, max_types=3)
    pref = random_lexicographic(rng, inst)
    lin = expand_lexicographic(pref, inst)
    back = recognize_lexicographic(lin, inst)
    assert back is not None
    assert expand_lexicographic(back, inst) == lin
    # importance is only determined up to types with a single item
    if inst.num_agents > 1:
        assert back == pref


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_recognized_form_expands_back(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, max_agents=3, max_types=3)
    pref = random_linear(rng, inst)
    lex = recognize_lexicographic(pref, inst)
    if lex is not None:
        assert expand_lexicographic(lex, inst) == pref
