import functools

import pytest

from lusztigsp.ffield import FieldSpec
from lusztigsp.orbits import orbit_partition_oracle

# criterion number -> (ok, line); filled by test_acceptance, printed at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@functools.lru_cache(maxsize=None)
def cached_oracle(n, p):
    return orbit_partition_oracle(n, FieldSpec(p))


@pytest.fixture(params=[3, 5, 7, 11, 13])
def spec(request):
    return FieldSpec(request.param)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance")
    for k in sorted(ACCEPTANCE):
        tr.write_line(ACCEPTANCE[k][1])
    passed = sum(ok for ok, _ in ACCEPTANCE.values())
    tr.write_line(f"{passed}/{len(ACCEPTANCE)} criteria pass")
