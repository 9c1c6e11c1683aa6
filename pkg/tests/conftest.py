import random

import pytest
from hypothesis import strategies as st

from posetvar import DimVector, build_poset

EXAMPLE1_ORDER = "1<3 1<4 1<5 2<4 2<5 3<6 3<7 4<6 4<7 5<7"


def rels(text):
    return [tuple(tok.split("<")) for tok in text.split()]


def vec(alpha0, labels, values):
    return DimVector(alpha0, dict(zip(labels, values)))


@pytest.fixture
def ex1():
    return build_poset(list("1234567"), rels(EXAMPLE1_ORDER))


@pytest.fixture
def ex1_alpha():
    return vec(8, "1234567", [1, 2, 2, 4, 5, 6, 7])


@pytest.fixture
def ex2():
    return build_poset(list("1234"), rels("1<3 1<4 2<3 2<4"))


@pytest.fixture
def ex2_enlarged():
    # element 5 sits below 1 and 2
    return build_poset(list("12345"), rels("1<3 1<4 2<3 2<4 5<1 5<2"))


@pytest.fixture
def ex3():
    return build_poset(list("123"), rels("1<3 2<3"))


def chain(*labels):
    return build_poset(labels, list(zip(labels, labels[1:])))


def antichain(*labels):
    return build_poset(labels, [])


def random_poset(rng: random.Random, max_size: int = 6, density: float = 0.4):
    """Random poset: relations only from lower to higher index, shuffled labels."""
    n = rng.randint(1, max_size)
    labels = [f"e{i}" for i in range(n)]
    relations = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    rng.shuffle(labels)
    return build_poset(labels, relations)


@st.composite
def posets(draw, min_size=0, max_size=6):
    n = draw(st.integers(min_size, max_size))
    labels = [f"p{i}" for i in range(n)]
    pairs = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    perm = draw(st.permutations(labels))
    return build_poset(perm, chosen)


@st.composite
def poset_and_vector(draw, min_size=1, max_size=6, lo=-5, hi=8):
    P = draw(posets(min_size, max_size))
    alpha0 = draw(st.integers(lo, hi))
    values = draw(st.lists(st.integers(lo, hi), min_size=len(P), max_size=len(P)))
    return P, DimVector(alpha0, dict(zip(P.labels, values)))
