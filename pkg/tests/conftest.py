import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from symhier import DiffPoly, EvolutionEquation, SymPoly, u  # noqa: E402


@pytest.fixture
def kdv():
    return EvolutionEquation(3, u(0) * u(1))


@pytest.fixture
def burgers():
    return EvolutionEquation(2, u(0) * u(1))


@pytest.fixture
def psk():
    return EvolutionEquation(5, 5 * u(1) * u(3) + Fraction(5, 3) * u(1) ** 3)


def random_coef(rng):
    return Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 4))


def random_homogeneous(rng, degree, max_order, max_terms=4, min_order=0):
    """A random homogeneous differential polynomial, possibly zero."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        idx = [rng.randint(min_order, max_order) for _ in range(degree)]
        mono = {}
        for i in idx:
            mono[i] = mono.get(i, 0) + 1
        terms[tuple(sorted(mono.items()))] = random_coef(rng)
    return DiffPoly(terms)


def random_symmetric(rng, nvars, max_degree, max_terms=3):
    """A random symmetric polynomial, built as a sum of orbit sums."""
    from symhier.symbolic import _distinct_permutations

    out = SymPoly.zero(nvars)
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(0, max_degree)
        exps = [0] * nvars
        for _ in range(deg):
            exps[rng.randrange(nvars)] += 1
        c = random_coef(rng)
        out = out + SymPoly(nvars, {p: c for p in _distinct_permutations(tuple(sorted(exps)))})
    return out


@pytest.fixture
def rng():
    return random.Random(20261015)


# -- acceptance reporting ----------------------------------------------------

_criteria: dict[int, dict] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call" and not rep.failed:
        return
    n = marker.args[0]
    entry = _criteria.setdefault(n, {"title": marker.kwargs.get("title", ""), "ok": True, "tests": 0})
    if rep.when == "call":
        entry["tests"] += 1
    if rep.failed:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        e = _criteria[n]
        status = "PASS" if e["ok"] else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {e['title']} ({e['tests']} test{'' if e['tests'] == 1 else 's'})")
