from functools import lru_cache

import pytest

from mipkit.catalog import auxiliary_groups, corpus
from mipkit.families import FamilySpec, build_family
from mipkit.groups import abelian_group


@lru_cache(maxsize=None)
def corpus_groups():
    return {e.label: e.group for e in corpus()}


@lru_cache(maxsize=None)
def aux():
    return auxiliary_groups()


@lru_cache(maxsize=None)
def small_2_groups():
    """Groups of order 8 and 16 from several constructions (duplicates up to isomorphism allowed)."""
    out = {}
    for orders in ([8], [4, 2], [2, 2, 2], [16], [8, 2], [4, 4], [4, 2, 2], [2, 2, 2, 2]):
        out["C" + "xC".join(map(str, orders))] = abelian_group(orders)
    a = aux()
    for k in ("D8", "Q8", "C2xD8"):
        out[k] = a[k]
    for m, n in ((1, 2), (1, 3), (2, 2)):
        for kind in "DQS":
            spec = FamilySpec(kind, m, n)
            out[spec.name] = build_family(spec)
    return out


@pytest.fixture(scope="session")
def U():
    return corpus_groups()


@pytest.fixture(scope="session")
def aux_groups():
    return aux()


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
