"""Shared fixtures and independent brute-force oracles."""

import itertools

import pytest

from zcolor.diagram import Diagram
from zcolor.generate import standard_diagrams


@pytest.fixture(scope="session")
def corpus() -> dict:
    return standard_diagrams()


def brute_force_fox_count(diagram: Diagram, n: int) -> int:
    """Count colorings mod n by direct enumeration over arc classes.

    Independent of the matrix/SNF route: checks the crossing relation
    2*over = under_in + under_out (mod n) on every candidate map.
    """
    cls = diagram.arc_classes()
    reps = sorted(set(cls.values()))
    count = 0
    for values in itertools.product(range(n), repeat=len(reps)):
        val = dict(zip(reps, values))
        ok = True
        for x in diagram.crossings:
            over = val[cls[x.over_in]]
            if (2 * over - val[cls[x.under_in]] - val[cls[x.under_out]]) % n:
                ok = False
                break
        if ok:
            count += 1
    return count * n ** diagram.free_loops


def brute_force_integer_kernel_rank(diagram: Diagram, box: int = 3) -> int:
    """Rank proxy: spot that non-constant integer colorings exist (or not)
    by enumerating small integer colorings over arc classes."""
    cls = diagram.arc_classes()
    reps = sorted(set(cls.values()))
    non_constant = False
    for values in itertools.product(range(-box, box + 1), repeat=len(reps)):
        val = dict(zip(reps, values))
        ok = all(
            2 * val[cls[x.over_in]] == val[cls[x.under_in]] + val[cls[x.under_out]]
            for x in diagram.crossings
        )
        if ok and len(set(values)) > 1:
            non_constant = True
            break
    return 2 if non_constant else (1 if reps else 0)
