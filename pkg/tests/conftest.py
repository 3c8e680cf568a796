from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from powdom.poset import build_poset
from powdom.valuation import SimpleValuation

settings.register_profile("default", deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def posets(draw, min_size=1, max_size=5):
    """Random finite posets on "0".."n-1"; only pairs i < j are drawn, so antisymmetry holds."""
    n = draw(st.integers(min_size, max_size))
    labels = [str(i) for i in range(n)]
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    bits = draw(st.lists(st.booleans(), min_size=len(slots), max_size=len(slots)))
    pairs = [(labels[i], labels[j]) for (i, j), b in zip(slots, bits) if b]
    return build_poset(labels, pairs, name=f"rand{n}")


def valuations(L, denom=4):
    """Valuations over ``L`` with weights in multiples of ``1/denom`` and mass at most one."""

    @st.composite
    def build(draw):
        counts = draw(st.lists(st.integers(0, denom), min_size=len(L), max_size=len(L)))
        total, weights = 0, []
        for x, c in zip(L.elements, counts):
            c = min(c, denom - total)
            total += c
            if c:
                weights.append((x, Fraction(c, denom)))
        return SimpleValuation(L, tuple(weights))

    return build()


@st.composite
def poset_with_valuations(draw, k=2, max_size=5, denom=4):
    L = draw(posets(max_size=max_size))
    return (L, *[draw(valuations(L, denom)) for _ in range(k)])


# PASS/FAIL lines of the acceptance criteria, echoed in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
