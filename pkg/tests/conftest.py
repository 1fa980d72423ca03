import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from gbraid.theory import NORMAL_PRESETS, builtin  # noqa: E402
from gbraid.word import BraidWord, letter  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def letters_for(theory, n):
    return [letter(theory, t, p, s) for t in theory.tag_names for p in range(1, n)
            for s in ((1,) if theory.involutive(t) else (1, -1))]


@st.composite
def words(draw, theory, min_n=2, max_n=5, max_len=10, n=None):
    if n is None:
        n = draw(st.integers(min_n, max_n))
    pool = letters_for(theory, n)
    lets = draw(st.lists(st.sampled_from(pool), max_size=max_len)) if pool else []
    return BraidWord(n, tuple(lets), theory)


@st.composite
def pure_words(draw, theory, max_n=4, half_len=4):
    """``u v u'``-style pure words: a word followed by a reduced word undoing its permutation."""
    from gbraid.word import invert, permutation, reduced_word

    w = draw(words(theory, 2, max_n, half_len))
    x = theory.default_dominant()
    fix = invert(reduced_word(permutation(w), theory, x))
    return BraidWord(w.strands, w.letters + fix.letters, theory)


@pytest.fixture(params=NORMAL_PRESETS)
def normal_theory(request):
    return builtin(request.param)


@pytest.fixture
def classical():
    return builtin("classical")


@pytest.fixture
def virtual():
    return builtin("virtual")


GENERIC_CONFIG = """
theory generic
tag x
tag a
tag b
tag c
tag d
dominates x x
dominates x a
dominates x b
dominates x c
dominates x d
"""


@pytest.fixture(scope="session")
def generic():
    """Four non-dominant tags under one dominant tag ``x``."""
    from gbraid.theory import load_theory

    return load_theory(GENERIC_CONFIG)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
