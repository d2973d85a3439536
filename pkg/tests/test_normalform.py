"""Normal-form conversion: state budget, structure, language preservation."""

import pytest

from outerfa import (
    NotApplicable,
    NotOuter,
    TwoWayAutomaton,
    accepts_oracle,
    all_words,
    alternating_accepts_oracle,
    check_normal_form,
    classify,
    normalize_oafa,
    normalize_onfa,
)
from outerfa.fixtures import P_A, build_e1, build_e2

E1 = build_e1()
E2 = build_e2()


def languages_equal(a, b, max_len, oracle=accepts_oracle):
    return all(oracle(a, w) == oracle(b, w) for w in all_words(a.alphabet, max_len))


def test_empty_accepting_set_collapses_to_two_states():
    machine = TwoWayAutomaton(["x", "y", "z"], "ab", {(0, "<"): [(1, 1)]}, 0, [])
    out = normalize_onfa(machine)
    assert out.n == 2
    assert not out.delta
    assert not any(accepts_oracle(out, w) for w in all_words("ab", 4))


def test_e1_stays_equivalent_and_in_form():
    out = normalize_onfa(E1)
    assert out.n <= 3 * E1.n
    assert check_normal_form(out).all_properties
    assert languages_equal(E1, out, 6)
    # the conversion can be applied again without losing the language
    again = normalize_onfa(out)
    assert again.n <= 3 * out.n
    assert languages_equal(out, again, 5)


def test_right_endmarker_choice_gets_rerouted():
    # four states, a branching decision at the right endmarker
    delta = {
        (0, "<"): [(1, 1)],
        (1, "a"): [(1, 1)],
        (1, ">"): [(2, -1), (3, -1)],
        (2, "a"): [(2, -1)],
        (2, "<"): [(3, 0)],
    }
    machine = TwoWayAutomaton(["s", "w", "b", "f"], "a", delta, 0, [3],
                              declared_flavor="onfa")
    out = normalize_onfa(machine)
    assert out.n <= 12
    assert check_normal_form(out).all_properties
    assert languages_equal(machine, out, 6)


def test_initial_state_accepting_collapses_to_accept_all():
    machine = TwoWayAutomaton(["i", "x"], "ab", {(0, "a"): [(1, 1)]}, 0, [0])
    out = normalize_onfa(machine)
    assert check_normal_form(out).all_properties
    assert all(accepts_oracle(out, w) for w in all_words("ab", 4))


def test_stationary_cycle_entry_becomes_undefined():
    # the a-row spins in place forever: dropping it preserves the language
    delta = {
        (0, "<"): [(1, 1)],
        (1, "a"): [(1, 0)],
        (1, ">"): [(2, -1)],
        (2, "<"): [(2, 0)],
    }
    machine = TwoWayAutomaton(["i", "m", "f"], "a", delta, 0, [2], declared_flavor="onfa")
    out = normalize_onfa(machine)
    assert check_normal_form(out).all_properties
    assert languages_equal(machine, out, 5)


def test_normalize_rejects_interior_choice():
    delta = {(0, "a"): [(0, 1), (1, 1)]}
    machine = TwoWayAutomaton(["p", "q"], "a", delta, 0, [1])
    with pytest.raises(NotOuter):
        normalize_onfa(machine)


def test_normalize_onfa_rejects_universal_states():
    with pytest.raises(NotApplicable):
        normalize_onfa(E2)


def test_check_normal_form_examples():
    report = check_normal_form(E1)
    assert report.all_properties
    assert report.bound_3n == 18
    # a stationary interior move breaks property 4
    delta = dict(E1.delta)
    delta[(P_A, "a")] = [(P_A, 0)]
    bent = TwoWayAutomaton(E1.state_names, E1.alphabet, delta, E1.initial, E1.accepting)
    assert not check_normal_form(bent).property4


def test_corpus_normalization(raw_corpus):
    for machine in raw_corpus[:40]:
        out = normalize_onfa(machine)
        assert out.n <= 3 * machine.n
        assert check_normal_form(out).all_properties
        assert languages_equal(machine, out, 5)


def test_oafa_normalization_e2():
    out = normalize_oafa(E2)
    assert out.n <= 18
    assert check_normal_form(out, alternating=True).all_properties
    assert languages_equal(E2, out, 5, oracle=alternating_accepts_oracle)


def test_oafa_empty_accepting_collapses():
    machine = TwoWayAutomaton(["x", "y"], "ab", {(0, "<"): [(1, 1)]}, 0, [],
                              universal=[0])
    out = normalize_oafa(machine)
    assert out.n == 2 and not out.delta


def test_oafa_normalization_agrees_with_plain_on_unpartitioned_input(raw_corpus):
    for machine in raw_corpus[:15]:
        plain = normalize_onfa(machine)
        alt = normalize_oafa(machine)
        assert all(
            accepts_oracle(plain, w) == alternating_accepts_oracle(alt, w)
            for w in all_words(machine.alphabet, 5)
        )


def test_oafa_corpus_normalization(raw_alt_corpus):
    for machine in raw_alt_corpus:
        out = normalize_oafa(machine)
        assert out.n <= 3 * machine.n
        assert check_normal_form(out, alternating=True).all_properties
        assert languages_equal(machine, out, 4, oracle=alternating_accepts_oracle)


def test_universal_choice_at_right_endmarker_keeps_quantifier(raw_alt_corpus):
    # a universal state branching at the right endmarker must still demand
    # both branches after the choice is rerouted to the left endmarker
    delta = {
        (0, "<"): [(1, 1)],
        (1, "a"): [(1, 1)],
        (1, ">"): [(2, -1), (3, -1)],
        (2, "a"): [(2, -1)],
        (2, "<"): [(4, 0)],
        (3, "a"): [(3, -1)],
    }
    machine = TwoWayAutomaton(["i", "u", "good", "bad", "f"], "a", delta, 0, [4],
                              universal=[1], declared_flavor="oafa")
    out = normalize_oafa(machine)
    assert check_normal_form(out, alternating=True).all_properties
    assert languages_equal(machine, out, 5, oracle=alternating_accepts_oracle)
    # sanity: the bad branch really kills every nonempty word
    assert not any(alternating_accepts_oracle(machine, w) for w in all_words("a", 4))
