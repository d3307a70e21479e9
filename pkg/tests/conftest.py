import numpy as np
import pytest
from hypothesis import strategies as st

from dowker_fca import FormalContext, running_example

# Filled by test_acceptance.py: criterion number -> (title, passed, seconds)
ACCEPTANCE_RESULTS: dict[int, tuple[str, bool, float]] = {}


@pytest.fixture
def rex():
    return running_example()


@st.composite
def contexts(draw, max_objects=6, max_attributes=6, total=False):
    n = draw(st.integers(1, max_objects))
    m = draw(st.integers(1, max_attributes))
    mat = draw(st.lists(st.lists(st.booleans(), min_size=m, max_size=m), min_size=n, max_size=n))
    if total:
        mat = [list(r) for r in mat]
        for g in range(n):
            if not any(mat[g]):
                mat[g][draw(st.integers(0, m - 1))] = True
        for j in range(m):
            if not any(mat[g][j] for g in range(n)):
                mat[draw(st.integers(0, n - 1))][j] = True
    return FormalContext.from_matrix(mat)


def seeded_contexts(seed, count, max_objects, max_attributes, total):
    from dowker_fca.verify import context_seed, random_context

    for i in range(count):
        rng = np.random.default_rng(context_seed(seed, i))
        yield random_context(rng, max_objects, max_attributes, total=total)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        title, ok, secs = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {k:2d}. {title} ({secs:.2f}s)")
