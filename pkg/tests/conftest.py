import pytest

from hayesdist.ffield import FieldSpec, Polynomial
from hayesdist.hayes import ClassGroup, HayesParams


@pytest.fixture(scope="session")
def fields():
    cache: dict[tuple[int, int], FieldSpec] = {}

    def get(p: int, a: int = 1) -> FieldSpec:
        if (p, a) not in cache:
            cache[(p, a)] = FieldSpec(p, a)
        return cache[(p, a)]

    return get


@pytest.fixture(scope="session")
def groups(fields):
    """Session cache of class groups keyed by (p, a, ell, Q text)."""
    cache: dict[tuple, ClassGroup] = {}

    def get(p: int, a: int, ell: int, q_text: str) -> ClassGroup:
        key = (p, a, ell, q_text)
        if key not in cache:
            spec = fields(p, a)
            cache[key] = ClassGroup(HayesParams(ell, Polynomial.from_text(spec, q_text)))
        return cache[key]

    return get
