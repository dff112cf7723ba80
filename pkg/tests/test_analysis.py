"""Three-block structure theory: growth steps, greedy words, boundary rules."""

import pytest
from fractions import Fraction
from hypothesis import given, settings

import helpers
from ulrich import analysis, core, families, search
from ulrich.analysis import PreUlrichTriple
from ulrich.core import FlagType


class TestTriples:
    def test_validation(self):
        with pytest.raises(ValueError, match="middle block"):
            PreUlrichTriple((3,), (), (-1,))
        with pytest.raises(ValueError, match="strictly decreasing"):
            PreUlrichTriple((), (2, 2), ())
        with pytest.raises(ValueError, match="exceed"):
            PreUlrichTriple((0,), (1,), ())
        with pytest.raises(ValueError, match="below"):
            PreUlrichTriple((), (1,), (2,))

    def test_meeting_times_and_dimension(self):
        T = PreUlrichTriple((4,), (3, 0), (-2,))
        assert T.dimension == 5
        assert sorted(analysis.meeting_times(T)) == [1, 2, 3, 4, 5]
        assert analysis.is_pre_ulrich(T)

    def test_parity_breaks_pre_ulrich(self):
        # A and C entries of different parity meet B at a half-integer time.
        assert not analysis.is_pre_ulrich(PreUlrichTriple((4,), (0,), (-3,)))

    def test_triple_of(self):
        P = core.parse_partition("8,6|5,0|-2")
        T = analysis.triple_of(P)
        assert (T.a, T.b, T.c) == ((8, 6), (5, 0), (-2,))
        assert T.as_partition() == P
        with pytest.raises(ValueError):
            analysis.triple_of(core.parse_partition("2|0"))


class TestGrowthSteps:
    def test_add_a_first_step(self):
        T = PreUlrichTriple((), (5, 0), ())
        step = analysis.add_a(T)
        assert (step.letter, step.time, step.value) == ("a", 1, 6)
        assert step.pre_ulrich and step.clashes == ()
        assert step.triple.a == (6,)

    def test_add_c_accounts_for_speed(self):
        # At time t0 the new c entry must sit t0 below b (speed 1) or 2*t0
        # below a (speed 2), whichever is lower.
        T = PreUlrichTriple((6,), (5, 0), ())
        step = analysis.add_c(T)
        assert step.time == 2
        assert step.value == min(6 - 4, 5 - 2, 0 - 2) == -2

    def test_clash_detection(self):
        # After growing one a over B = (2, 0), the forced c entry would meet
        # the a entry at the half-integral time 5/2.
        T = analysis.replay("a", (2, 0))
        step = analysis.add_c(T)
        assert not step.pre_ulrich
        assert Fraction(5, 2) in step.clashes

    def test_parity_detection(self):
        # A second a entry lands at the wrong parity: no time clash, but the
        # triple stops being pre-Ulrich.
        T = analysis.replay("a", (0,))
        step = analysis.add_a(T)
        assert not step.pre_ulrich and step.clashes == ()

    def test_replay_word_reconstructs_known(self):
        assert (analysis.replay("aca", (5, 0)).as_partition()
                == core.parse_partition("8,6|5,0|-2"))
        assert (analysis.replay("acca", (3, 0)).as_partition()
                == core.parse_partition("12,4|3,0|-2,-8"))
        assert (analysis.replay("acaca", (3, 0)).as_partition()
                == core.parse_partition("16,10,4|3,0|-2,-12"))

    def test_replay_rejects_bad_word(self):
        with pytest.raises(ValueError, match="parity"):
            analysis.replay("aa", (0,))
        with pytest.raises(ValueError, match="double-books"):
            analysis.replay("ac", (2, 0))

    def test_extend_requires_material(self):
        with pytest.raises(ValueError, match="letter"):
            analysis.replay("x", (0,))


class TestGreedyWord:
    @pytest.mark.parametrize("name,word", [
        ("221", "aca"), ("222", "acca"), ("322", "acaca")])
    def test_walkthrough_words(self, name, word):
        assert analysis.greedy_word(families.sporadic(name)).letters == word

    def test_greedy_needs_ulrich(self):
        with pytest.raises(ValueError, match="Ulrich"):
            analysis.greedy_word(core.parse_partition("6,1|0|-3"))

    @given(helpers.ulrich_members())
    @settings(max_examples=60)
    def test_roundtrip_on_families(self, P):
        if len(P.type.lengths) != 3 or not P.type.all_positive:
            return
        word = analysis.greedy_word(P).letters
        assert word.count("a") == P.type.lengths[0]
        assert word.count("c") == P.type.lengths[2]
        assert analysis.replay(word, P.blocks[1]).as_partition() == P

    def test_roundtrip_exhaustive_small(self):
        for ft in helpers.all_types(12, max_blocks=3, min_blocks=3):
            for P in search.baseline_oracle(ft):
                word = analysis.greedy_word(P).letters
                assert analysis.replay(word, P.blocks[1]).as_partition() == P


class TestSumset:
    def test_requires_singleton_middle(self):
        with pytest.raises(ValueError, match="singleton"):
            analysis.sumset_decompose(core.parse_partition("8,6|5,0|-2"))

    def test_known_decompositions(self):
        assert (analysis.sumset_decompose(families.two_one_k(0))
                == ((0, 4), (2,), 4))
        assert (analysis.sumset_decompose(families.two_one_k(1))
                == ((0, 16), (2, 6, 8, 10, 14), 16))

    def test_decomposes_iff_ulrich(self):
        """Over every (a,1,c) candidate in the window, sumset success is
        exactly the Ulrich property."""
        for ft in helpers.all_types(12, max_blocks=3, min_blocks=3):
            if ft.lengths[1] != 1:
                continue
            for blocks in search._window_candidates(ft):
                P = core.from_blocks(blocks)
                got = analysis.sumset_decompose(P) is not None
                assert got == bool(core.is_ulrich(P)), P

    def test_translation_invariant(self):
        P = families.two_one_k(1)
        assert (analysis.sumset_decompose(core.shift(P, 7))
                == analysis.sumset_decompose(P))


class TestBoundaryRules:
    def test_centered_dual_fixes_middle(self):
        P = families.sporadic("222")
        a_star, b, c_star = analysis.dual_blocks_centered(P)
        assert b == P.blocks[1]
        D = core.dual(P)
        # The centered dual is a translate of core.dual with blocks reversed.
        off = a_star[0] - D.blocks[0][0]
        assert a_star == tuple(x + off for x in D.blocks[0])
        assert c_star == tuple(x + off for x in D.blocks[2])

    def test_trapezoid_holds_on_families(self):
        for P in [families.sporadic("222"), families.sporadic("322"),
                  families.p_u(2), families.two_param(0, 1),
                  families.elongated_family(1, 2)]:
            quads = list(analysis.trapezoid_witnesses(P))
            assert all(analysis.trapezoid_check(P, *q) for q in quads)

    def test_trapezoid_validates_arguments(self):
        # For (12,4|3,0|-2,-8): A* = C + 13 = (11, 5), C* = A - 13 = (-1, -9).
        P = families.sporadic("222")
        with pytest.raises(ValueError, match="lie in A"):
            analysis.trapezoid_check(P, 999, 11, -2, -1)
        with pytest.raises(ValueError, match=r"lie in A\*"):
            analysis.trapezoid_check(P, 12, 10, -2, -1)
        with pytest.raises(ValueError, match="hypothesis"):
            analysis.trapezoid_check(P, 12, 11, -2, -9)

    def test_rules_hold_for_all_small_ulrich(self):
        for ft in helpers.all_types(12, max_blocks=3, min_blocks=3):
            for P in search.baseline_oracle(ft):
                assert analysis.rectangle_check(P)
                for quad in analysis.trapezoid_witnesses(P):
                    assert analysis.trapezoid_check(P, *quad)

    def test_trapezoid_fails_somewhere_off_ulrich(self):
        """The rules have teeth: some valid non-Ulrich partition violates
        the trapezoid conclusion, and another violates the rectangle rule."""
        trapezoid_broken = rectangle_broken = False
        for ft in helpers.all_types(10, max_blocks=3, min_blocks=3):
            for blocks in search._window_candidates(ft):
                P = core.from_blocks(blocks)
                if core.is_ulrich(P):
                    continue
                if not all(analysis.trapezoid_check(P, *q)
                           for q in analysis.trapezoid_witnesses(P)):
                    trapezoid_broken = True
                if not analysis.rectangle_check(P):
                    rectangle_broken = True
                if trapezoid_broken and rectangle_broken:
                    return
        assert trapezoid_broken and rectangle_broken
