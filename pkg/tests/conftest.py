"""Shared corpora of randomly generated machines.

Three families: raw outer-choice machines (arbitrary stationary moves and
endmarker choices, accepting sets sometimes empty), machines generated
directly in the strict normal form, and partitioned machines generated in
the relaxed normal form.  All generators are seeded, so every run of the
suite sees the same corpus.
"""

import random
import re

import pytest

from outerfa.core import LEFT, LEFT_ENDMARKER, RIGHT, RIGHT_ENDMARKER, STAY, TwoWayAutomaton
from outerfa.core import _normal_form_flags


def assert_dot_wellformed(text: str) -> None:
    """Minimal DOT grammar check: header, quoted ids, node/edge statements."""
    lines = text.strip().splitlines()
    assert lines[0] == "digraph segments {"
    assert lines[-1] == "}"
    quoted = r'"(?:[^"\\]|\\.)*"'
    node = re.compile(rf"^  {quoted} \[[a-z]+=[a-z]+(?:, [a-z]+=[a-z]+)*\];$")
    edge = re.compile(rf"^  {quoted} -> {quoted};$")
    attr = re.compile(r"^  [a-z]+=[A-Za-z]+;$")
    for line in lines[1:-1]:
        assert node.match(line) or edge.match(line) or attr.match(line), line


def random_onfa(seed: int, n_max: int = 5, alphabet: str = "ab") -> TwoWayAutomaton:
    """Outer-choice machine with unconstrained stationary moves and finals."""
    rng = random.Random(seed)
    n = rng.randint(2, n_max)
    delta = {}
    for q in range(n):
        for a in alphabet:
            if rng.random() < 0.7:
                delta[(q, a)] = [(rng.randrange(n), rng.choice((LEFT, STAY, RIGHT)))]
        left = set()
        for _ in range(rng.choice((0, 1, 1, 2))):
            left.add((rng.randrange(n), rng.choice((STAY, RIGHT))))
        if left:
            delta[(q, LEFT_ENDMARKER)] = sorted(left)
        right = set()
        for _ in range(rng.choice((0, 1, 1, 2))):
            right.add((rng.randrange(n), rng.choice((LEFT, STAY))))
        if right:
            delta[(q, RIGHT_ENDMARKER)] = sorted(right)
    accepting = [q for q in range(n) if rng.random() < 0.35]
    return TwoWayAutomaton(
        state_names=[f"q{i}" for i in range(n)],
        alphabet=alphabet,
        delta=delta,
        initial=0,
        accepting=accepting,
        declared_flavor="onfa",
    )


def random_oafa(seed: int, n_max: int = 4, alphabet: str = "ab") -> TwoWayAutomaton:
    """Outer-choice machine with a random universal set on top."""
    base = random_onfa(seed, n_max=n_max, alphabet=alphabet)
    rng = random.Random(seed ^ 0x5F5F)
    universal = [q for q in range(base.n) if rng.random() < 0.4]
    return TwoWayAutomaton(
        state_names=base.state_names,
        alphabet=base.alphabet,
        delta=base.delta,
        initial=base.initial,
        accepting=base.accepting,
        universal=universal,
        declared_flavor="oafa",
    )


def random_nf_onfa(seed: int, n_max: int = 5, alphabet: str = "ab") -> TwoWayAutomaton:
    """Machine generated directly in the strict normal form."""
    rng = random.Random(seed)
    n = rng.randint(2, n_max)
    q_final = n - 1
    delta = {}
    for q in range(n - 1):
        for a in alphabet:
            if rng.random() < 0.7:
                delta[(q, a)] = [(rng.randrange(n - 1), rng.choice((LEFT, RIGHT)))]
        left = set()
        for _ in range(rng.choice((0, 1, 1, 2))):
            left.add((rng.randrange(n - 1), RIGHT))
        if rng.random() < 0.35:
            left.add((q_final, STAY))
        if left:
            delta[(q, LEFT_ENDMARKER)] = sorted(left)
        if rng.random() < 0.6:
            delta[(q, RIGHT_ENDMARKER)] = [(rng.randrange(n - 1), LEFT)]
    machine = TwoWayAutomaton(
        state_names=[f"q{i}" for i in range(n)],
        alphabet=alphabet,
        delta=delta,
        initial=0,
        accepting=[q_final],
        declared_flavor="onfa",
    )
    assert all(_normal_form_flags(machine, alternating=False))
    return machine


def random_nf_oafa(seed: int, n_max: int = 4, alphabet: str = "ab") -> TwoWayAutomaton:
    """Partitioned machine generated directly in the relaxed normal form."""
    rng = random.Random(seed)
    n = rng.randint(2, n_max)
    q_final = n - 1
    delta = {}
    for q in range(n - 1):
        for a in alphabet:
            if rng.random() < 0.7:
                delta[(q, a)] = [(rng.randrange(n - 1), rng.choice((LEFT, RIGHT)))]
        left = set()
        for _ in range(rng.choice((0, 1, 2, 2))):
            if rng.random() < 0.3:
                left.add((rng.randrange(n), STAY))  # stationary at the left endmarker
            else:
                left.add((rng.randrange(n - 1), RIGHT))
        if left:
            delta[(q, LEFT_ENDMARKER)] = sorted(left)
        if rng.random() < 0.6:
            delta[(q, RIGHT_ENDMARKER)] = [(rng.randrange(n - 1), LEFT)]
    universal = [q for q in range(n - 1) if rng.random() < 0.4]
    machine = TwoWayAutomaton(
        state_names=[f"q{i}" for i in range(n)],
        alphabet=alphabet,
        delta=delta,
        initial=0,
        accepting=[q_final],
        universal=universal,
        declared_flavor="oafa",
    )
    assert all(_normal_form_flags(machine, alternating=True))
    return machine


def _has_mixed_language(machine: TwoWayAutomaton, oracle) -> bool:
    """Both an accepted and a rejected word among the short ones."""
    from outerfa.core import all_words

    seen = set()
    for word in all_words(machine.alphabet, 3):
        seen.add(oracle(machine, word))
        if len(seen) == 2:
            return True
    return False


def _filtered(generator, seeds, oracle, want: int) -> list[TwoWayAutomaton]:
    picked = []
    for seed in seeds:
        machine = generator(seed)
        if _has_mixed_language(machine, oracle):
            picked.append(machine)
            if len(picked) == want:
                return picked
    raise RuntimeError("seed range exhausted before the corpus filled up")


@pytest.fixture(scope="session")
def raw_corpus() -> list[TwoWayAutomaton]:
    """220 raw machines: mostly with mixed languages, a tail of degenerate ones."""
    from outerfa.core import accepts_oracle

    mixed = _filtered(random_onfa, range(10_000), accepts_oracle, 170)
    return mixed + [random_onfa(seed) for seed in range(50)]


@pytest.fixture(scope="session")
def raw_alt_corpus() -> list[TwoWayAutomaton]:
    from outerfa.core import alternating_accepts_oracle

    mixed = _filtered(random_oafa, range(1000, 9000), alternating_accepts_oracle, 30)
    return mixed + [random_oafa(seed) for seed in range(1000, 1010)]


@pytest.fixture(scope="session")
def nf_corpus() -> list[TwoWayAutomaton]:
    from outerfa.core import accepts_oracle

    mixed = _filtered(random_nf_onfa, range(2000, 9000), accepts_oracle, 54)
    return mixed + [random_nf_onfa(seed) for seed in range(2000, 2006)]


@pytest.fixture(scope="session")
def alt_nf_corpus() -> list[TwoWayAutomaton]:
    from outerfa.core import alternating_accepts_oracle

    mixed = _filtered(random_nf_oafa, range(3000, 9000), alternating_accepts_oracle, 34)
    return mixed + [random_nf_oafa(seed) for seed in range(3000, 3006)]
