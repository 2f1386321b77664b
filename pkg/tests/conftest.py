from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from chanprob import Channel, Dist, Domain, Predicate, load_example

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def student():
    return load_example("student")


@pytest.fixture(scope="session")
def burglar():
    return load_example("burglar")


def F(s):
    return Fraction(s)


# -- hypothesis strategies ---------------------------------------------------------------

@st.composite
def domains(draw, name="A", max_size=4):
    n = draw(st.integers(1, max_size))
    return Domain(name, tuple(f"{name.lower()}{i}" for i in range(n)))


@st.composite
def dists(draw, space):
    raw = draw(st.lists(st.integers(0, 9), min_size=space.size, max_size=space.size))
    if not any(raw):
        raw[draw(st.integers(0, space.size - 1))] = 1
    total = sum(raw)
    return Dist(space, {e: Fraction(r, total) for e, r in zip(space.elements, raw) if r})


@st.composite
def predicates(draw, space):
    vals = draw(st.lists(st.integers(0, 4), min_size=space.size, max_size=space.size))
    return Predicate(space, [Fraction(v, 4) for v in vals])


@st.composite
def channels(draw, dom, cod):
    return Channel(dom, cod, [draw(dists(cod)) for _ in dom.elements])
