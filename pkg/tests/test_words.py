import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycspine.words import (
    CyclicPresentation,
    F,
    G,
    H,
    Word,
    build_family,
    cyclic_reduce,
    cyclic_word_normal_form,
    exponent_vector,
    free_reduce,
    parse_family,
    parse_word,
    presentations_equal,
    relators,
    rewrite_kernel,
    shift,
    shift_extension,
)


def W(text, rank):
    return parse_word(text, rank)


class TestParsing:
    def test_tokens_and_exponents(self):
        w = parse_word("x0 x1^3 x2^-1", 3)
        assert w.letters == ((0, 1), (1, 1), (1, 1), (1, 1), (2, -1))

    def test_empty_word(self):
        assert parse_word("1", 4).letters == ()

    def test_any_letter_prefix(self):
        assert parse_word("y2 t0^-2", 3).letters == ((2, 1), (0, -1), (0, -1))

    def test_bad_token(self):
        with pytest.raises(ValueError):
            parse_word("x", 3)

    def test_index_normalized_mod_rank(self):
        assert parse_word("x7", 3).letters == ((1, 1),)

    def test_json_round_trip(self):
        w = parse_word("x0 x2^-2 x1", 4)
        assert Word.from_json(w.to_json()) == w


class TestFreeReduction:
    def test_cancellation(self):
        assert free_reduce(W("x0 x1 x1^-1", 2)) == W("x0", 2)

    def test_empty(self):
        assert free_reduce(Word(3, ())) == Word(3, ())

    def test_already_reduced(self):
        w = W("x0 x1 x2^-1", 3)
        assert free_reduce(w) == w

    def test_cascading(self):
        assert free_reduce(W("x0 x1 x2 x2^-1 x1^-1 x0", 3)) == W("x0 x0", 3)


class TestCyclicReduction:
    def test_conjugation_strip(self):
        assert cyclic_reduce(W("x1^-1 x0 x1", 2)) == W("x0", 2)

    def test_free_then_cyclic(self):
        assert cyclic_reduce(W("x0 x1 x1^-1", 2)) == W("x0", 2)

    def test_fixed_point(self):
        assert cyclic_reduce(W("x0 x1", 2)) == W("x0 x1", 2)


class TestShift:
    def test_basic(self):
        assert shift(W("x0 x1 x2^-1", 6), 1) == W("x1 x2 x3^-1", 6)

    def test_full_period(self):
        w = W("x0 x1^2 x2^-1", 5)
        assert shift(w, 5) == w

    def test_wraparound(self):
        assert shift(W("x0 x1", 3), 2) == W("x2 x0", 3)


class TestRelators:
    def test_positive_family(self):
        p = build_family(H(2, 3))
        assert [r.to_text() for r in relators(p)] == ["x0 x1", "x1 x2", "x2 x0"]

    def test_rank_one(self):
        p = CyclicPresentation(1, W("x0 x0", 1))
        assert relators(p) == [p.defining_word]

    def test_fibonacci(self):
        p = build_family(F(1, 1, 4))
        assert [r.to_text() for r in relators(p)] == [
            "x0 x1 x2^-1",
            "x1 x2 x3^-1",
            "x2 x3 x0^-1",
            "x3 x0 x1^-1",
        ]


class TestExponentVector:
    def test_signed_counts(self):
        assert exponent_vector(W("x0 x1^3 x2^-1", 3)) == (1, 3, -1)

    def test_cancellation_invisible(self):
        assert exponent_vector(W("x0 x1 x1^-1", 2)) == (1, 0)

    def test_positive_family(self):
        p = build_family(H(3, 7))
        assert exponent_vector(p.defining_word) == (1, 1, 1, 0, 0, 0, 0)


class TestBuildFamily:
    def test_five_two_word(self):
        # (y0 y_f)(y_{2f+1} y_{3f+1} y_{4f+1} y_1 y_{f+1})(y_2 y_{2+f})^-1
        n, f = 12, 0
        p = build_family(G(5, 2, n, f))
        assert p.defining_word == W("x0 x0 x1 x1 x1 x1 x1 x2^-1 x2^-1", n)
        n, f = 10, 2
        p = build_family(G(5, 2, n, f))
        expected = W("x0 x2 x5 x7 x9 x1 x3 x4^-1 x2^-1", n)
        assert p.defining_word == expected

    def test_one_over_l(self):
        p = build_family(F(1, 3, 6))
        assert p.defining_word == W("x0^3 x1 x2^-3", 6)

    def test_trivial_group_family(self):
        p = build_family(H(1, 5))
        assert p.defining_word == W("x0", 5)

    def test_f_is_g_at_zero_offset(self):
        for k, l, n in [(1, 1, 4), (3, 2, 6), (5, 2, 10)]:
            assert build_family(F(k, l, n)) == build_family(G(k, l, n, 0))

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            parse_family("G:0,1,4,0")
        with pytest.raises(ValueError):
            parse_family("H:1,1")
        with pytest.raises(ValueError):
            parse_family("G:1,1,4,4")
        with pytest.raises(ValueError):
            parse_family("Q:1,2")

    def test_shorthand_round_trip(self):
        spec = parse_family("G:5,2,12,0")
        assert spec.shorthand() == "G:5,2,12,0"


class TestShiftExtension:
    def test_zero_offset(self):
        e = shift_extension(1, 1, 4, 0)
        assert e.relators[0] == W("t1^4", 2)
        assert e.relators[1] == W("x0 t1 x0 t1 x0^-1 t1^-2", 2)

    def test_twisted_exponent(self):
        e = shift_extension(2, 1, 4, 2)
        assert e.relators[1] == W("x0 t1 x0^2 t1^-3 x0^-1 t1^-2", 2)

    def test_retraction_kills_relator(self):
        for k, l, n, f in [(1, 1, 4, 0), (2, 1, 4, 2), (5, 2, 10, 4), (3, 4, 9, 3)]:
            e = shift_extension(k, l, n, f)
            rel = e.relators[1]
            xsum = sum(s for g, s in rel.letters if g == 0)
            tsum = sum(s for g, s in rel.letters if g == 1)
            assert (f * xsum + tsum) % n == 0


class TestRewriteKernel:
    def test_golden_fibonacci(self):
        p = rewrite_kernel(shift_extension(1, 1, 4, 0), 0)
        assert p.defining_word == W("x0 x1 x2^-1", 4)

    def test_golden_twisted(self):
        p = rewrite_kernel(shift_extension(2, 1, 4, 2), 2)
        assert p.defining_word == W("x0 x3 x1 x2^-1", 4)

    def test_rejects_missing_retraction(self):
        e = shift_extension(2, 1, 6, 0)
        with pytest.raises(ValueError):
            rewrite_kernel(e, 1)  # f*k = 2 != 0 mod 6

    def test_small_round_trip_grid(self):
        for k, l, n in [(1, 1, 6), (2, 1, 4), (3, 2, 6), (5, 2, 10), (2, 5, 8)]:
            for f in range(n):
                if (f * k) % n != 0:
                    continue
                got = rewrite_kernel(shift_extension(k, l, n, f), f)
                want = build_family(G(k, l, n, f))
                assert presentations_equal(got, want), (k, l, n, f)


class TestEquality:
    def test_cyclic_permutation(self):
        p = CyclicPresentation(4, W("x0 x1 x2^-1", 4))
        q = CyclicPresentation(4, W("x1 x2^-1 x0", 4))
        assert presentations_equal(p, q)

    def test_shift(self):
        p = CyclicPresentation(4, W("x0 x1 x2^-1", 4))
        q = CyclicPresentation(4, shift(p.defining_word, 3))
        assert presentations_equal(p, q)

    def test_distinct(self):
        p = CyclicPresentation(4, W("x0 x1 x2^-1", 4))
        q = CyclicPresentation(4, W("x0 x1 x2", 4))
        assert not presentations_equal(p, q)


# -- property tests ---------------------------------------------------------

letters = st.tuples(st.integers(0, 5), st.sampled_from([1, -1]))
word_strategy = st.builds(
    lambda ls: Word(6, tuple(ls)), st.lists(letters, max_size=24)
)


@given(word_strategy, st.integers(-12, 12), st.integers(-12, 12))
def test_shift_is_a_group_action(w, a, b):
    assert shift(shift(w, a), b) == shift(w, a + b)
    assert shift(w, w.rank) == w


@given(word_strategy)
def test_reductions_idempotent_and_shrinking(w):
    fr = free_reduce(w)
    assert free_reduce(fr) == fr
    assert len(fr) <= len(w)
    cr = cyclic_reduce(w)
    assert cyclic_reduce(cr) == cr
    assert len(cr) <= len(fr)
    assert fr.is_freely_reduced()
    assert cr.is_cyclically_reduced() or len(cr) <= 1


@given(word_strategy, st.integers(0, 5))
def test_exponent_vector_reduction_invariant_and_shift_equivariant(w, s):
    assert exponent_vector(free_reduce(w)) == exponent_vector(w)
    v = exponent_vector(w)
    shifted = exponent_vector(shift(w, s))
    assert shifted == tuple(v[(i - s) % w.rank] for i in range(w.rank))


@settings(max_examples=40)
@given(word_strategy, st.integers(0, 5), st.integers(0, 23))
def test_normal_form_invariant_under_symmetries(w, s, rot):
    if not w.letters:
        return
    r = rot % len(w.letters)
    rotated = Word(w.rank, w.letters[r:] + w.letters[:r])
    assert cyclic_word_normal_form(shift(rotated, s)) == cyclic_word_normal_form(w)
