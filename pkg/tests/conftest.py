"""Shared fixtures and the acceptance-criteria summary block."""

import pytest

from absix import absolute_ic, builtin

CORPUS_NAMES = (
    "pn_minus_hyperplane",
    "gm",
    "smooth_divisor_ample",
    "points_in_proper",
    "low_dim_Z",
    "middle_dim_Z_selfint_zero",
    "middle_dim_Z_selfint_nonzero",
    "surface_resolution",
    "gm_times_a1",
)


@pytest.fixture(scope="session")
def corpus():
    """name -> atlas for every catalogue entry (default parameters)."""
    return {name: builtin(name) for name in CORPUS_NAMES}


@pytest.fixture(scope="session")
def corpus_results(corpus):
    """name -> (atlas, AbsicResult), computed once per session."""
    return {name: (a, absolute_ic(a)) for name, a in corpus.items()}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    rows = {}
    for status, label in (("failed", "FAIL"), ("error", "FAIL"), ("passed", "PASS")):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::" in nodeid:
                rows.setdefault(nodeid.split("::")[-1], label)
    if rows:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name in sorted(rows):
            terminalreporter.write_line(f"{rows[name]}  {name}")
