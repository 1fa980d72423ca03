import os
import subprocess
import sys

import pytest
from hypothesis import given

from conftest import words
from gbraid import _kernel_py
from gbraid.oracle import move_tables
from gbraid.theory import NORMAL_PRESETS, builtin

compiled = pytest.importorskip("gbraid._kernel")


@pytest.mark.parametrize("name", NORMAL_PRESETS)
def test_expand_agrees(name):
    th = builtin(name)

    @given(words(th, 2, 5, 8))
    def run(w):
        tb = move_tables(th, w.strands)
        state = tb.encode(w)
        for maxlen in (len(w), len(w) + 2):
            args = (state, maxlen, tb.S, tb.inv, tb.r3, tb.ins)
            assert compiled.expand(*args) == _kernel_py.expand(*args)

    run()


@pytest.mark.parametrize("name", ["classical", "virtual"])
def test_expand_layer_agrees(name):
    th = builtin(name)

    @given(words(th, 3, 4, 6), words(th, 3, 4, 6))
    def run(a, b):
        if a.strands != b.strands:
            return
        tb = move_tables(th, a.strands)
        sa, sb = tb.encode(a), tb.encode(b)
        maxlen = max(len(sa), len(sb)) + 2
        results = []
        for kern in (compiled, _kernel_py):
            mine, other = {sa: None}, {sb: None}
            out = kern.expand_layer([sa], mine, other, maxlen, tb.S, tb.inv, tb.r3, tb.ins, 10**6, 2)
            results.append((out, mine))
        assert results[0] == results[1]

    run()


def test_environment_forces_python():
    code = "from gbraid import oracle; print(oracle.KERNEL)"
    env = dict(os.environ, GBRAID_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    env.pop("GBRAID_PURE_PYTHON")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "compiled"
