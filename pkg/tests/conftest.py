import itertools
import random
from fractions import Fraction

import pytest

from sparkforge.exactfield import CycloElement, cyclo_root_power

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    def record(criterion: str, passed: bool, detail: str = "") -> None:
        ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'} [{criterion}] {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def leibniz_det_monomial(xi_exps, t_exps, n):
    """Brute-force sum over permutations; returns {(t_degree, xi_power): integer}."""
    size = len(xi_exps)
    acc: dict[tuple[int, int], int] = {}
    for perm in itertools.permutations(range(size)):
        inv = sum(1 for i in range(size) for j in range(i + 1, size) if perm[i] > perm[j])
        a = sum(xi_exps[i][perm[i]] for i in range(size)) % n
        b = sum(t_exps[i][perm[i]] for i in range(size))
        acc[(b, a)] = acc.get((b, a), 0) + (-1) ** inv
    return acc


def random_cyclo(rng: random.Random, n: int, bound: int = 5, denominators: bool = True) -> CycloElement:
    coeffs = []
    for _ in range(n):
        num = rng.randint(-bound, bound)
        den = rng.randint(1, 3) if denominators else 1
        coeffs.append(Fraction(num, den))
    return CycloElement(n, coeffs)


def xi(n: int, e: int = 1) -> CycloElement:
    return cyclo_root_power(n, e)
