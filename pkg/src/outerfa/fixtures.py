"""Small reference machines used across the test suite and the docs."""

from .core import LEFT, LEFT_ENDMARKER, RIGHT, RIGHT_ENDMARKER, STAY, TwoWayAutomaton

Q_I, P_A, P_B, R_A, R_B, Q_F = range(6)


def build_e1() -> TwoWayAutomaton:
    """Two-branch sweeper accepting a* | b*.

    From the left endmarker the machine launches either the a-branch or the
    b-branch; the chosen branch sweeps right over its letter, u-turns at the
    right endmarker, sweeps back, and accepts with a stationary move at the
    left endmarker.  Both branch states can also relaunch themselves from
    the left endmarker, so every state except the accepting one starts
    segments of its own.  The machine already has choices only at the left
    endmarker, a unique halting accepting state entered there by a
    stationary move, and no other stationary moves.
    """
    delta = {
        (Q_I, LEFT_ENDMARKER): [(P_A, RIGHT), (P_B, RIGHT)],
        (P_A, LEFT_ENDMARKER): [(P_A, RIGHT)],
        (P_A, "a"): [(P_A, RIGHT)],
        (P_A, RIGHT_ENDMARKER): [(R_A, LEFT)],
        (R_A, "a"): [(R_A, LEFT)],
        (R_A, LEFT_ENDMARKER): [(Q_F, STAY)],
        (P_B, LEFT_ENDMARKER): [(P_B, RIGHT)],
        (P_B, "b"): [(P_B, RIGHT)],
        (P_B, RIGHT_ENDMARKER): [(R_B, LEFT)],
        (R_B, "b"): [(R_B, LEFT)],
        (R_B, LEFT_ENDMARKER): [(Q_F, STAY)],
    }
    return TwoWayAutomaton(
        state_names=["qI", "pa", "pb", "ra", "rb", "qF"],
        alphabet="ab",
        delta=delta,
        initial=Q_I,
        accepting=[Q_F],
        declared_flavor="onfa",
    )


def build_e2() -> TwoWayAutomaton:
    """build_e1 with the launch choice made universal: accepts a* & b* = {empty word}."""
    e1 = build_e1()
    return TwoWayAutomaton(
        state_names=e1.state_names,
        alphabet=e1.alphabet,
        delta=e1.delta,
        initial=e1.initial,
        accepting=e1.accepting,
        universal=[Q_I],
        declared_flavor="oafa",
    )


def build_ea() -> TwoWayAutomaton:
    """The single-branch restriction of build_e1 to {qI, pa, ra, qF}: accepts a*."""
    qi, pa, ra, qf = range(4)
    delta = {
        (qi, LEFT_ENDMARKER): [(pa, RIGHT)],
        (pa, LEFT_ENDMARKER): [(pa, RIGHT)],
        (pa, "a"): [(pa, RIGHT)],
        (pa, RIGHT_ENDMARKER): [(ra, LEFT)],
        (ra, "a"): [(ra, LEFT)],
        (ra, LEFT_ENDMARKER): [(qf, STAY)],
    }
    return TwoWayAutomaton(
        state_names=["qI", "pa", "ra", "qF"],
        alphabet="a",
        delta=delta,
        initial=qi,
        accepting=[qf],
        declared_flavor="onfa",
    )


def build_trivial_empty(alphabet: str = "ab") -> TwoWayAutomaton:
    """Two states, no transitions: the empty language, already in normal form."""
    return TwoWayAutomaton(
        state_names=["qI", "qF"],
        alphabet=alphabet,
        delta={},
        initial=0,
        accepting=[1],
        declared_flavor="onfa",
    )


def build_trivial_all(alphabet: str = "ab") -> TwoWayAutomaton:
    """Two states accepting every word by one stationary move at the left endmarker."""
    return TwoWayAutomaton(
        state_names=["qI", "qF"],
        alphabet=alphabet,
        delta={(0, LEFT_ENDMARKER): [(1, STAY)]},
        initial=0,
        accepting=[1],
        declared_flavor="onfa",
    )
