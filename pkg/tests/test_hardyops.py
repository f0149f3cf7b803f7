import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hardyseq.hardyops import (
    ANTIGOP,
    ANTIGOP_SUP,
    DUAL_GOP,
    GOP,
    GOP_SUP,
    OperatorForm,
    RatioProblem,
    antigop_psum,
    apply_iterated,
    dual_problem,
    elementary_chain_check,
    form_by_name,
    gop_psum,
    lhs,
    ratio,
    rhs,
)
from hardyseq.seqcore import INF, Window

U11 = Window(0, (1.0, 1.0))
A11 = Window(0, (1.0, 1.0))


class TestApplyIterated:
    def test_gop_example(self):
        assert apply_iterated(U11, A11, GOP).values == (2.0, 2.0)

    def test_antigop_example(self):
        assert apply_iterated(U11, A11, ANTIGOP).values == (2.0, 1.0)

    def test_zero_input(self):
        z = Window(0, (0.0, 0.0))
        for form in (GOP, ANTIGOP, GOP_SUP, ANTIGOP_SUP, gop_psum(0.5)):
            assert apply_iterated(U11, z, form).values == (0.0, 0.0)

    def test_mismatched_windows(self):
        with pytest.raises(ValueError):
            apply_iterated(U11, Window(1, (1.0, 1.0)), GOP)

    def test_tail_outer_is_nonincreasing(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            n = int(rng.integers(1, 9))
            u = Window(0, tuple(rng.uniform(0, 4, n)))
            a = Window(0, tuple(rng.uniform(0, 4, n)))
            for form in (GOP, ANTIGOP, ANTIGOP_SUP, antigop_psum(0.5)):
                out = apply_iterated(u, a, form).values
                assert all(x >= y for x, y in zip(out, out[1:]))

    def test_sup_inner_forms(self):
        u = Window(0, (2.0, 1.0, 3.0))
        a = Window(0, (1.0, 4.0, 2.0))
        # entry_n = sup_{i>=n} u_i * sup_{k<=i} a_k
        got = apply_iterated(u, a, GOP_SUP).values
        expect = []
        for n in range(3):
            best = 0.0
            for i in range(n, 3):
                best = max(best, u.values[i] * max(a.values[: i + 1]))
            expect.append(best)
        assert got == tuple(expect)

    def test_psum_matches_direct_evaluation(self):
        rng = np.random.default_rng(5)
        p = 0.5
        for _ in range(30):
            n = int(rng.integers(1, 7))
            u = Window(0, tuple(rng.uniform(0.1, 4, n)))
            a = Window(0, tuple(rng.uniform(0.1, 4, n)))
            got = apply_iterated(u, a, antigop_psum(p)).values
            for k, val in enumerate(got):
                direct = max(
                    u.values[i] * sum(x**p for x in a.values[i:]) ** (1 / p)
                    for i in range(k, n)
                )
                assert val == pytest.approx(direct, rel=1e-12)


class TestSides:
    def test_lhs_example(self):
        prob = RatioProblem(U11, Window(0, (4.0, 1.0)), U11, 1.0, 1.0, GOP)
        assert lhs(prob, A11) == 4.0

    def test_lhs_zero_weight(self):
        prob = RatioProblem(U11, U11, Window(0, (0.0, 0.0)), 1.0, 1.0, GOP)
        assert lhs(prob, A11) == 0.0

    def test_rhs_examples(self):
        v = Window(0, (4.0, 1.0))
        assert rhs(v, 1.0, A11) == 5.0
        a = Window(0, (1.0, 2.0))
        assert rhs(v, 0.5, a) == pytest.approx((4 + math.sqrt(2)) ** 2, rel=1e-14)
        assert rhs(v, 1.0, Window(0, (0.0, 0.0))) == 0.0

    def test_ratio_example(self):
        prob = RatioProblem(U11, Window(0, (4.0, 1.0)), U11, 1.0, 1.0, GOP)
        assert ratio(prob, A11) == pytest.approx(4 / 5)

    def test_ratio_rejects_zero(self):
        prob = RatioProblem(U11, U11, U11, 1.0, 1.0, GOP)
        with pytest.raises(ValueError):
            ratio(prob, Window(0, (0.0, 0.0)))

    def test_ratio_scale_invariant_exact(self):
        prob = RatioProblem(U11, Window(0, (4.0, 1.0)), U11, 1.0, 1.0, GOP)
        base = ratio(prob, A11)
        for t in (0.5, 2.0, 128.0):
            assert ratio(prob, A11.scaled(t)) == pytest.approx(base, rel=1e-12)

    def test_q_infinity_weighted_sup(self):
        u = Window(0, (2.0, 1.0))
        prob = RatioProblem(u, U11, U11, 1.0, INF, ANTIGOP_SUP)
        a = Window(0, (0.0, 3.0))
        # entries: n=0: max over j of u_j * sup_{i>=j} a_i = 6; n=1: 3
        assert lhs(prob, a) == 6.0


class TestElementaryChain:
    def test_p_one_collapses(self):
        assert elementary_chain_check(A11, 1.0, 0) == (1.0, 2.0, 2.0)

    def test_single_spike_collapses(self):
        assert elementary_chain_check(Window(0, (2.0, 0.0)), 0.5, 0) == (2.0, 2.0, 2.0)

    def test_half_power_example(self):
        assert elementary_chain_check(A11, 0.5, 0) == (1.0, 2.0, 4.0)

    def test_p_above_one_rejected(self):
        with pytest.raises(ValueError):
            elementary_chain_check(A11, 1.5, 0)

    def test_index_outside_window(self):
        with pytest.raises(IndexError):
            elementary_chain_check(A11, 0.5, 7)

    @given(
        st.lists(st.floats(min_value=0, max_value=1e8), min_size=1, max_size=10),
        st.floats(min_value=0.01, max_value=1.0),
        st.data(),
    )
    def test_chain_ordering(self, vals, p, data):
        a = Window(0, tuple(vals))
        n = data.draw(st.integers(min_value=0, max_value=len(vals) - 1))
        s1, s2, s3 = elementary_chain_check(a, p, n)
        assert s1 <= s2 <= s3


class TestDuality:
    @pytest.mark.parametrize("form", [GOP, ANTIGOP, GOP_SUP, ANTIGOP_SUP])
    def test_dual_ratio_matches_on_reversed_candidates(self, form):
        rng = np.random.default_rng(11)
        for _ in range(40):
            n = int(rng.integers(1, 8))
            start = int(rng.integers(-3, 4))
            mk = lambda: Window(start, tuple(2.0 ** rng.uniform(-2, 2, n)))
            prob = RatioProblem(mk(), mk(), mk(), 1.5, 2.0, form)
            a = Window(start, tuple(rng.uniform(0.01, 3, n)))
            d = dual_problem(prob)
            assert ratio(d, a.reversed()) == pytest.approx(ratio(prob, a), rel=1e-12)

    def test_dual_of_gop_is_dual_gop(self):
        assert dual_problem(RatioProblem(U11, U11, U11, 1, 1, GOP)).form == DUAL_GOP


class TestMonotonicity:
    def test_lhs_nondecreasing_in_a_u_w(self):
        rng = np.random.default_rng(23)
        for _ in range(60):
            n = int(rng.integers(1, 8))
            u = Window(0, tuple(rng.uniform(0, 3, n)))
            v = Window(0, tuple(rng.uniform(0.1, 3, n)))
            w = Window(0, tuple(rng.uniform(0, 3, n)))
            a = Window(0, tuple(rng.uniform(0, 3, n)))
            form = [GOP, ANTIGOP, GOP_SUP, ANTIGOP_SUP][int(rng.integers(0, 4))]
            prob = RatioProblem(u, v, w, 0.7, 1.3, form)
            base = lhs(prob, a)
            k = int(rng.integers(0, n))
            bump = rng.uniform(0.1, 2.0)
            a2 = a.with_values([x + bump * (i == k) for i, x in enumerate(a.values)])
            u2 = u.with_values([x + bump * (i == k) for i, x in enumerate(u.values)])
            w2 = w.with_values([x + bump * (i == k) for i, x in enumerate(w.values)])
            assert lhs(prob, a2) >= base
            assert lhs(RatioProblem(u2, v, w, 0.7, 1.3, form), a) >= base
            assert lhs(RatioProblem(u, v, w2, 0.7, 1.3, form), a) >= base
            assert rhs(v, 0.7, a2) >= rhs(v, 0.7, a)


def test_form_by_name_round_trip():
    for name in ("gop", "antigop", "dual-gop", "dual-antigop", "gop-sup", "antigop-sup"):
        assert form_by_name(name).name == name
    assert form_by_name("gop-psum", r=0.5).inner_exponent == 0.5
    with pytest.raises(ValueError):
        form_by_name("nope")


def test_operator_form_validation():
    with pytest.raises(ValueError):
        OperatorForm("sideways", "sum", "left")
    with pytest.raises(ValueError):
        OperatorForm("tail", "sum", "up")
    with pytest.raises(ValueError):
        OperatorForm("tail", "psum", "left", -1.0)
