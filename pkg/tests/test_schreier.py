from itertools import permutations

import pytest
from hypothesis import given

from conftest import pure_words
from freegroup import generic_models, models_for
from gbraid.errors import NotNormal
from gbraid.schreier import (conjugate_lambda, coset_rep, entry_letters, gen_letters, lambda_expand,
                             lgen, parse_lambda, pure_to_lambda, rep_for_permutation, rs_generator,
                             schreier_system)
from gbraid.theory import NORMAL_PRESETS, builtin
from gbraid.word import Letter, Permutation, format_letters, letter, parse_word, permutation, tag_exponents


def text(letters):
    return format_letters(letters)


def test_system_sizes():
    reps = schreier_system(2)
    assert [str(r.expand(builtin("classical"), "r")) for r in reps] == ["r1", ""]
    th = builtin("classical")
    three = [str(r.expand(th, "r")) for r in schreier_system(3)]
    assert len(three) == 6 and "r1 r2 r1" in three


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_system_is_a_transversal(n):
    th = builtin("classical")
    reps = schreier_system(n)
    perms = {permutation(r.expand(th, "r")) for r in reps}
    assert len(perms) == len(reps) == len(list(permutations(range(n))))
    for r in reps:
        w = r.expand(th, "r")
        assert len(w) == permutation(w).inversions()


def test_coset_rep_examples(generic):
    assert str(coset_rep(parse_word("x1 x1", 2, generic)).expand(generic, "x")) == ""
    assert str(coset_rep(parse_word("a1", 2, generic)).expand(generic, "x")) == "x1"
    assert str(coset_rep(parse_word("x1 x2 x1", 3, generic)).expand(generic, "x")) == "x1 x2 x1"
    with pytest.raises(NotNormal):
        coset_rep(parse_word("t1", 2, builtin("twin")))


def test_generator_words(generic):
    assert text(gen_letters(lgen("x", 2, 1, "x"), generic, "x")) == "x1 x1"
    assert text(gen_letters(lgen("a", 1, 3, "x"), generic, "x")) == "x2' a1 x1 x2"
    assert text(gen_letters(lgen("a", 2, 1, "x"), generic, "x")) == "x1 a1"
    assert text(entry_letters(lgen("a", 1, 2, "x"), -1, generic, "x")) == "x1' a1'"


def test_conjugation_examples(generic):
    a12 = lgen("a", 1, 2, "x")
    assert str(conjugate_lambda(a12, 1, 1, 1, 2, generic, "x")) == "xL[1,2]' aL[2,1] xL[1,2]"
    assert str(conjugate_lambda(lgen("a", 2, 4, "x"), 1, 2, 1, 4, generic, "x")) == "aL[3,4]"
    assert str(conjugate_lambda(lgen("a", 1, 4, "x"), 1, 2, 1, 4, generic, "x")) == "aL[1,4]"
    with pytest.raises(ValueError):
        conjugate_lambda(a12, 1, 2, 1, 2, generic, "x")


def test_rs_generator_examples(generic):
    e = rep_for_permutation(Permutation.identity(2))
    x1 = rep_for_permutation(Permutation((2, 1)))
    assert str(rs_generator(e, Letter("a", 1, 1), generic, "x")) == "aL[1,2] xL[1,2]'"
    assert str(rs_generator(e, Letter("x", 1, 1), generic, "x")) == ""
    assert str(rs_generator(x1, Letter("a", 1, 1), generic, "x")) == "aL[2,1]"


def test_pure_to_lambda_examples(generic):
    assert str(pure_to_lambda(parse_word("a1 x1", 2, generic))) == "aL[1,2]"
    assert str(pure_to_lambda(parse_word("x1 x1", 2, generic))) == "xL[1,2]"
    assert str(pure_to_lambda(parse_word("a1 a1'", 2, generic))) == ""


def test_lambda_text_round_trip(generic):
    lw = parse_lambda("aL[1,3] xL[1,2]' bL[3,1]", 3, generic, "x")
    assert str(parse_lambda(str(lw), 3, generic, "x")) == str(lw)


def all_gens(th, x, n):
    for t in th.tag_names:
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                yield lgen(t, i, j, x)
                if t != x:
                    yield lgen(t, j, i, x)


def model_check(th, x, models, n):
    """Every conjugation-table entry agrees with its defining word in every model."""
    for g in all_gens(th, x, n):
        if th.involutive(x) and g.tag == x:
            continue
        for sign in (1, -1):
            for k in range(1, n):
                for bs in (1, -1):
                    lhs = [letter(th, x, k, -bs)] + entry_letters(g, sign, th, x) + [letter(th, x, k, bs)]
                    rhs = lambda_expand(conjugate_lambda(g, sign, k, bs, n, th, x))
                    for m in models:
                        assert m.image(lhs, n) == m.image(rhs.letters, n), (g, sign, k, bs)


@pytest.mark.parametrize("name", NORMAL_PRESETS)
def test_conjugation_table_in_models(name):
    th = builtin(name)
    x = th.default_dominant()
    for n in (2, 3, 4):
        model_check(th, x, models_for(th, x), n)


def test_conjugation_table_generic(generic):
    model_check(generic, "x", generic_models(generic.tag_names, "x")[:2], 3)


@pytest.mark.parametrize("name", NORMAL_PRESETS)
def test_pure_to_lambda_models(name):
    th = builtin(name)
    x = th.default_dominant()
    models = models_for(th, x)

    @given(pure_words(th, max_n=4, half_len=4))
    def run(w):
        back = lambda_expand(pure_to_lambda(w))
        assert permutation(back).is_identity()
        assert tag_exponents(back) == tag_exponents(w)
        for m in models:
            assert m.image(back.letters, w.strands) == m.image(w.letters, w.strands)

    run()
