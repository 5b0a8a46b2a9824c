import random
from fractions import Fraction
from math import gcd, lcm

import pytest
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp

from loomgen.poly import PureDifferenceBinomial

F = Fraction


def smith_membership(generators, d):
    """Exact Z-span membership test built on sympy's Smith decomposition.

    Independent of loomgen's Hermite normal form: with ``D = U G V``,
    ``w`` is an integer combination of the rows of ``G`` iff every entry of
    ``w V`` is divisible by the matching diagonal entry of ``D`` (and is
    zero past the rank).
    """
    gens = [list(g) for g in generators if any(g)]
    if not gens:
        return lambda w: not any(w)
    D, _, V = smith_normal_decomp(Matrix(gens))
    diag = [int(D[i, i]) if i < D.rows else 0 for i in range(d)]
    Vi = [[int(V[i, j]) for j in range(d)] for i in range(d)]

    def member(w):
        t = [sum(w[i] * Vi[i][j] for i in range(d)) for j in range(d)]
        return all((t[j] % diag[j] == 0) if diag[j] else t[j] == 0 for j in range(d))

    return member


def smith_saturation_multiplier(generators, d):
    """Smallest c >= 1 with c v in the Z-span of ``generators``, or None.

    Unbounded counterpart of the brute-force search over c: in Smith
    coordinates ``t = v V`` the vector lies in the rational span iff
    ``t_j = 0`` past the rank, and then the least multiplier is
    ``lcm(D_jj / gcd(D_jj, t_j))``.
    """
    gens = [list(g) for g in generators if any(g)]
    if not gens:
        return lambda v: None if any(v) else 1
    D, _, V = smith_normal_decomp(Matrix(gens))
    diag = [int(D[i, i]) if i < D.rows else 0 for i in range(d)]
    Vi = [[int(V[i, j]) for j in range(d)] for i in range(d)]

    def multiplier(v):
        t = [sum(v[i] * Vi[i][j] for i in range(d)) for j in range(d)]
        if any(t[j] for j in range(d) if diag[j] == 0):
            return None
        c = 1
        for j in range(d):
            if diag[j]:
                c = lcm(c, abs(diag[j]) // gcd(abs(diag[j]), t[j]))
        return c

    return multiplier


def random_binomial(rng: random.Random, d: int, max_exp: int = 4) -> PureDifferenceBinomial:
    while True:
        alpha = tuple(rng.randint(0, max_exp) for _ in range(d))
        beta = tuple(rng.randint(0, max_exp) for _ in range(d))
        if alpha == beta:
            continue
        lead = next(a - b for a, b in zip(alpha, beta) if a != b)
        return PureDifferenceBinomial(alpha, beta) if lead > 0 else PureDifferenceBinomial(beta, alpha)


def random_system(rng: random.Random, d: int, k: int):
    return [random_binomial(rng, d) for _ in range(k)]


def var_names(d):
    return tuple("xyzuvw"[:d]) if d <= 6 else tuple(f"x{i}" for i in range(d))


# One summary line per acceptance criterion.
_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    crit = getattr(report, "criterion", None)
    if crit is not None:
        prev = _criteria.get(crit, "PASS")
        _criteria[crit] = "PASS" if prev == "PASS" and report.outcome == "passed" else "FAIL"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        rep.criterion = (marker.args[0], marker.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (n, title), status in sorted(_criteria.items()):
        terminalreporter.write_line(f"criterion {n}: {status}  {title}")
