import pytest
from hypothesis import given

from conftest import pure_words, words
from freegroup import generic_models, models_for
from gbraid.errors import NotPure
from gbraid.oracle import bfs_equivalent
from gbraid.quasitoric import (QuasitoricShape, identity_quasitoric, lambda_to_quasitoric, pure_to_quasitoric,
                               quasitoric_inverse, quasitoric_type, slide_to_full)
from gbraid.rewriter import replay_trace
from gbraid.schreier import entry_letters, lgen
from gbraid.theory import NORMAL_PRESETS, builtin
from gbraid.word import BraidWord, compose, invert, letter, parse_word, permutation, tag_exponents

FIG16 = "a4 x3 b2 x1 b4' c3 c2' a1 x4 b3 d2 a1'"


def shape(w):
    s = quasitoric_type(w)
    return None if s is None else (s.width, s.blocks)


def test_shape_examples(generic):
    assert shape(parse_word(FIG16, 5, generic)) == (5, 3)
    assert shape(BraidWord.empty(2, generic)) == (2, 0)
    assert shape(parse_word("a2 x1 b2 x1", 3, generic)) == (3, 2)
    assert shape(parse_word("x1 x2", 3, generic)) is None
    embedded = quasitoric_type(parse_word("a3 x2 a3 x2", 5, generic))
    assert embedded == QuasitoricShape(3, 2, (2, 4))
    assert str(embedded) == "(3,2)@[2,4]"


def test_identity_examples(generic):
    q, tr = identity_quasitoric(2, generic)
    assert str(q) == "x1 x1'"
    assert [m.fid for m in tr.steps] == ["r2del"]
    q, tr = identity_quasitoric(3, generic)
    assert str(q) == "x2 x1 x2 x1' x2' x1'"
    assert len(replay_trace(q, tr)) == 0


@pytest.mark.parametrize("name", NORMAL_PRESETS)
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_identity_shape_and_trace(name, n):
    q, tr = identity_quasitoric(n, builtin(name))
    assert shape(q) == (n, n)
    assert len(replay_trace(q, tr)) == 0


def test_slide_example(generic):
    w = parse_word("a1 x1", 3, generic)
    q, tr = slide_to_full(w, (1, 2))
    assert shape(q)[0] == 3
    assert permutation(q).is_identity()
    assert tag_exponents(q) == tag_exponents(w)
    assert replay_trace(q, tr) == w
    assert slide_to_full(BraidWord.empty(3, generic), (1, 2))[0] == BraidWord.empty(3, generic)
    with pytest.raises(NotPure):
        slide_to_full(parse_word("x1", 3, generic), (1, 2))


def test_lambda_examples(generic):
    def q(g, n, sign=1):
        out, tr = lambda_to_quasitoric(g, sign, n, generic)
        assert replay_trace(out, tr).letters == tuple(entry_letters(g, sign, generic, "x"))
        return str(out), shape(out)

    assert q(lgen("a", 1, 2, "x"), 2) == ("a1 x1", (2, 2))
    assert q(lgen("a", 1, 3, "x"), 3) == ("x2' a1 x2 x1 x2 x1'", (3, 3))
    assert q(lgen("x", 2, 1, "x"), 2) == ("x1 x1", (2, 2))


def every_gen(th, x, n):
    for t in th.tag_names:
        if t == x and th.involutive(x):
            continue
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                yield lgen(t, i, j, x)
                if t != x:
                    yield lgen(t, j, i, x)


@pytest.mark.parametrize("name", NORMAL_PRESETS)
def test_staircases_replay(name):
    th = builtin(name)
    x = th.default_dominant()
    for n in (2, 3, 4):
        for g in every_gen(th, x, n):
            for sign in (1, -1):
                out, tr = lambda_to_quasitoric(g, sign, n, th)
                assert shape(out) == (n, n)
                assert replay_trace(out, tr).letters == tuple(entry_letters(g, sign, th, x))


@pytest.mark.parametrize("name", ["classical", "virtual"])
def test_staircases_by_search(name):
    """Widths 2 and 3: the embedded staircase equals its generator by blind search."""
    th = builtin(name)
    x = th.default_dominant()
    for n in (2, 3):
        for g in every_gen(th, x, n):
            for sign in (1, -1):
                out, _ = lambda_to_quasitoric(g, sign, n, th)
                target = BraidWord(n, tuple(entry_letters(g, sign, th, x)), th)
                verdict = bfs_equivalent(out, target, 2, 10**6)
                assert verdict.equivalent, (g, sign, verdict)


def test_pure_examples(generic):
    q, tr = pure_to_quasitoric(parse_word("x1 x1", 2, generic))
    assert str(q) == "x1 x1"
    w = parse_word("x1 a1", 2, generic)
    q, tr = pure_to_quasitoric(w)
    assert shape(q) == (2, 2)
    assert tag_exponents(q) == tag_exponents(w)
    assert replay_trace(q, tr) == w
    with pytest.raises(NotPure):
        pure_to_quasitoric(parse_word("x1", 2, generic))


@pytest.mark.parametrize("name", NORMAL_PRESETS)
def test_pure_pipeline(name):
    th = builtin(name)
    models = models_for(th, th.default_dominant())

    @given(pure_words(th, max_n=4, half_len=4))
    def run(w):
        q, tr = pure_to_quasitoric(w)
        s = shape(q)
        assert s is not None and s[0] == w.strands
        assert s[1] % w.strands == 0 or w.strands == 1
        assert permutation(q).is_identity()
        assert tag_exponents(q) == tag_exponents(w)
        assert replay_trace(q, tr) == w
        for m in models:
            assert m.image(q.letters, w.strands) == m.image(w.letters, w.strands)

    run()


def test_pure_pipeline_generic(generic):
    models = generic_models(generic.tag_names, "x")[:2]

    @given(pure_words(generic, max_n=3, half_len=3))
    def run(w):
        q, tr = pure_to_quasitoric(w)
        assert replay_trace(q, tr) == w
        for m in models:
            assert m.image(q.letters, w.strands) == m.image(w.letters, w.strands)

    run()


def test_inverse_examples(generic):
    w = parse_word("a2 x1 b2 x1", 3, generic)
    q, tr = quasitoric_inverse(w)
    assert shape(q)[0] == 3
    assert replay_trace(q, tr) == invert(w)
    with pytest.raises(ValueError):
        quasitoric_inverse(parse_word("x1 x2", 3, generic))


@given(words(builtin("virtual"), 2, 3, 4))
def test_inverse_of_quasitoric(w):
    th = w.theory
    n = w.strands
    x = th.default_dominant()
    # one block per letter of w, padded with dominant letters
    letters = []
    for lt in w.letters:
        letters.extend(lt if p == lt.pos else letter(th, x, p) for p in range(n - 1, 0, -1))
    qw = BraidWord(n, tuple(letters), th)
    assert quasitoric_type(qw) is not None
    q, tr = quasitoric_inverse(qw)
    assert shape(q)[0] == n
    assert replay_trace(q, tr) == invert(qw)
    assert tag_exponents(compose(q, qw)) == {t: 0 for t in th.tag_names}

