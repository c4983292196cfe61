from functools import lru_cache

import pytest

from cisyz.files import bundled_examples, parse_spec, resolve_spec_path
from cisyz.resolve import resolve


@lru_cache(maxsize=None)
def load(name):
    spec = parse_spec(resolve_spec_path(name))
    ring, M = spec.build()
    return spec, ring, M


@lru_cache(maxsize=None)
def resolution(name, steps=12):
    _, _, M = load(name)
    return resolve(M, steps=steps)


@lru_cache(maxsize=None)
def analysis(name, steps=12):
    from cisyz.analysis import analyze

    _, _, M = load(name)
    return analyze(M, steps=steps, resolution=resolution(name, steps))


EXAMPLES = sorted(bundled_examples())


@pytest.fixture(params=EXAMPLES)
def example(request):
    return request.param


CRITERIA: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
