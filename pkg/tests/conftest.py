from functools import lru_cache

from rackenum.action import enumerate_order
from rackenum.perm import PermGroup, parse_cycles
from rackenum.subgroups import subgroups_up_to_conjugacy


@lru_cache(maxsize=None)
def catalog(n):
    return subgroups_up_to_conjugacy(n)


@lru_cache(maxsize=None)
def enumeration(n, kind, nonabelian_only=False):
    cat = catalog(n)
    if nonabelian_only:
        cat = [sc for sc in cat if not sc.is_abelian]
    return enumerate_order(n, kind, cat)


def group(n, *gens):
    return PermGroup(n, [parse_cycles(g, n) for g in gens])


def c6():
    return group(5, "(1,2)(3,4,5)")


def s3xs3():
    return group(7, "(1,2)", "(1,2,3)", "(4,5)", "(4,5,6)")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
