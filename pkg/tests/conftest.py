from itertools import product

import pytest

from cayleyrep.groups import FiniteGroup, abelian_shapes


def factorizations(n, min_factor=2):
    """All ordered factor lists of n with factors >= 2 (e.g. 2x4 and 4x2 both appear)."""
    if n == 1:
        return [()]
    out = []
    for f in range(min_factor, n + 1):
        if n % f == 0:
            out.extend((f,) + rest for rest in factorizations(n // f))
    return out


def battery(max_order):
    """Every constructible group up to max_order, including non-normalised factor lists."""
    groups = []
    for n in range(2, max_order + 1):
        groups.extend(FiniteGroup.abelian(*f) for f in factorizations(n))
        if n % 2 == 0 and n >= 4:
            groups.extend(FiniteGroup.gendih(*f) for f in factorizations(n // 2))
    return groups


SMALL_GROUPS = battery(16)


@pytest.fixture(params=SMALL_GROUPS, ids=lambda G: G.label)
def small_group(request):
    return request.param


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
