"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from cliffpair.exact import frac
from cliffpair.multivec import Multivector

small = st.integers(-3, 3)


def multivectors(space, max_terms=6, max_degree=None):
    top = 1 << space.dim
    masks = st.integers(0, top - 1)
    if max_degree is not None:
        masks = masks.filter(lambda m: m.bit_count() <= max_degree)
    return st.dictionaries(masks, small, max_size=max_terms).map(
        lambda d: Multivector(space, {m: frac(c) for m, c in d.items()}))


def homogeneous(space, degree, max_terms=4):
    return multivectors(space, max_terms).map(lambda a: a.grade(degree))


def vectors(space):
    return st.lists(small, min_size=space.dim, max_size=space.dim).map(
        lambda cs: {i: frac(c) for i, c in enumerate(cs) if c})


def elements(idx):
    return st.lists(small, min_size=len(idx), max_size=len(idx)).map(
        lambda cs: {i: frac(c) for i, c in zip(idx, cs) if c})
