import pytest

from invgen.atlas import build_atlas


@pytest.fixture(scope="session")
def atlas15():
    return build_atlas(15)


@pytest.fixture(scope="session")
def atlas25():
    return build_atlas(25, stretch=True)


@pytest.fixture(scope="session")
def subgroup_oracle():
    from invgen.subgroups import all_solvable_subgroup_ct_sets

    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = {s.types for s in all_solvable_subgroup_ct_sets(n)}
        return cache[n]

    return get


# -- acceptance reporting -------------------------------------------------------

_acceptance_results = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when != "call" and not rep.failed:
        return
    key = marker.args[0]
    ok = rep.passed if rep.when == "call" else False
    prev = _acceptance_results.get(key, (marker.args[1], True))
    _acceptance_results[key] = (prev[0], prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_acceptance_results):
        title, ok = _acceptance_results[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key:>2}: {title}")
