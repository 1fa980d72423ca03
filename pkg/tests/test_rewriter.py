import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import words
from freegroup import generic_models, models_for
from gbraid.errors import MoveNotAllowed, OutputMismatch, PatternMismatch
from gbraid.quasitoric import identity_quasitoric
from gbraid.rewriter import (MoveInstance, RewriteTrace, apply_move, cancel_r2_pairs, format_trace, legal_moves,
                             parse_trace, replay_trace, reverse_steps, straighten)
from gbraid.theory import NORMAL_PRESETS, builtin
from gbraid.word import BraidWord, parse_word, permutation, tag_exponents

PRESETS = [builtin(n) for n in NORMAL_PRESETS]


def test_examples(generic):
    w = parse_word("x1 x1' a2", 3, generic)
    assert str(apply_move(w, MoveInstance.make("r2del", 0, t="x", i=1, s=1))) == "a2"
    w = parse_word("a1 b3", 4, generic)
    mv = MoveInstance.make("fc", 0, t="a", i=1, s=1, u="b", j=3, r=1)
    assert str(apply_move(w, mv)) == "b3 a1"
    w = parse_word("x1 x2 a1", 3, generic)
    mv = MoveInstance.make("mix3a", 0, x="x", a="a", i=1, e=1, d=1)
    assert str(apply_move(w, mv)) == "a2 x1 x2"
    assert str(apply_move(apply_move(w, mv), mv.inverse())) == "x1 x2 a1"


def test_pattern_mismatch(generic):
    w = parse_word("x1 a2", 3, generic)
    with pytest.raises(PatternMismatch):
        apply_move(w, MoveInstance.make("r2del", 0, t="x", i=1, s=1))
    with pytest.raises(PatternMismatch):
        apply_move(w, MoveInstance.make("fc", 0, t="x", i=1, s=1, u="a", j=2, r=1))


def test_twin_rejects_braid_relation():
    th = builtin("twin")
    w = parse_word("t1 t2 t1", 3, th)
    with pytest.raises(MoveNotAllowed):
        replay_trace(w, [MoveInstance.make("br", 0, x="t", i=1, e=1)])


def test_empty_trace():
    w = parse_word("r1 r2", 3, builtin("classical"))
    assert replay_trace(w, RewriteTrace((), w, w)) == w


def test_identity_trace_replays_to_empty():
    q, tr = identity_quasitoric(3, builtin("classical"))
    assert len(replay_trace(q, tr)) == 0


def test_wrong_claimed_output():
    th = builtin("classical")
    w = parse_word("r1 r1'", 2, th)
    bogus = RewriteTrace((MoveInstance.make("r2del", 0, t="r", i=1, s=1),), w, w)
    with pytest.raises(OutputMismatch):
        replay_trace(w, bogus)


def test_straighten_examples(generic):
    res = straighten(parse_word("x1 x1'", 2, generic), 1)
    assert res is not None
    out, tr = res
    assert len(out) == 0 and len(tr) == 1
    assert straighten(parse_word("a1 a1'", 2, generic), 1) is None
    q, _ = identity_quasitoric(4, generic)
    out, tr = straighten(q, 4)
    assert replay_trace(q, tr) == out
    assert all(lt.pos < 3 for lt in out.letters)


def test_cancel_examples(generic):
    def cancel(text, n):
        return str(cancel_r2_pairs(parse_word(text, n, generic))[0])

    assert cancel("a1 a1'", 2) == ""
    out, tr = cancel_r2_pairs(parse_word("a1 b2 b2' a1'", 3, generic))
    assert len(out) == 0 and len(tr) == 2
    assert cancel("a1 b1 a1'", 2) == "a1 b1 a1'"


@pytest.mark.parametrize("th", PRESETS, ids=NORMAL_PRESETS)
@given(data=st.data())
def test_every_move_preserves_invariants(th, data):
    w = data.draw(words(th, 2, 5, 9))
    x = th.default_dominant()
    models = models_for(th, x)
    before = [m.image(w.letters, w.strands) for m in models]
    for mv in legal_moves(w):
        out = apply_move(w, mv)
        assert permutation(out) == permutation(w)
        assert tag_exponents(out) == tag_exponents(w)
        assert [m.image(out.letters, w.strands) for m in models] == before
        assert apply_move(out, mv.inverse()) == w


@settings(max_examples=20)
@given(data=st.data())
def test_generic_moves_respect_models(data, generic):
    # the cabled model doubles the strands, so keep these words short
    w = data.draw(words(generic, 2, 4, 5))
    models = generic_models(generic.tag_names, "x")
    before = [m.image(w.letters, w.strands) for m in models]
    for mv in legal_moves(w, insertions=False):
        out = apply_move(w, mv)
        assert [m.image(out.letters, w.strands) for m in models] == before


@given(words(builtin("virtual"), 2, 4, 8))
def test_trace_text_round_trip(w):
    th = w.theory
    steps, cur = [], w
    for mv in list(legal_moves(w))[:5]:
        try:
            cur2 = apply_move(cur, mv)
        except PatternMismatch:
            continue
        steps.append(mv)
        cur = cur2
    tr = RewriteTrace(tuple(steps), cur, w)
    again = parse_trace(format_trace(tr), th)
    assert again.steps == tr.steps
    assert again.source == w
    assert replay_trace(again.source, again) == cur
    back = RewriteTrace(tuple(reverse_steps(steps)), w, cur)
    assert replay_trace(cur, back) == w
