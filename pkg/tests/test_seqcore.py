import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hardyseq.seqcore import (
    INF,
    RegimeCase,
    Window,
    classify_regime,
    ext_div,
    ext_mul,
    ext_pow,
    ext_pow_array,
)


class TestExtArithmetic:
    def test_zero_to_negative_power_is_inf(self):
        assert ext_pow(0.0, -0.5) == INF

    def test_inf_to_negative_power_is_zero(self):
        assert ext_pow(INF, -2.0) == 0.0

    def test_identity_exponent(self):
        assert ext_pow(3.0, 1.0) == 3.0

    def test_zero_exponent_is_one_everywhere(self):
        assert ext_pow(0.0, 0.0) == 1.0
        assert ext_pow(INF, 0.0) == 1.0
        assert ext_pow(2.5, 0.0) == 1.0

    def test_zero_times_inf_is_zero(self):
        assert ext_mul(0.0, INF) == 0.0
        assert ext_mul(INF, 0.0) == 0.0

    def test_div_conventions(self):
        assert ext_div(1.0, 0.0) == INF
        assert ext_div(1.0, INF) == 0.0
        assert ext_div(0.0, 0.0) == 0.0
        assert ext_div(3.0, 3.0) == 1.0

    def test_negative_base_rejected(self):
        with pytest.raises(ValueError):
            ext_pow(-1.0, 2.0)

    @given(
        st.floats(min_value=1e-150, max_value=1e150),
        st.floats(min_value=-40, max_value=40).filter(lambda a: abs(a) > 1e-3),
    )
    def test_pow_round_trip(self, x, alpha):
        # stay clear of overflow/underflow, where the extended semantics
        # saturate at 0 and inf and the round trip cannot return
        if abs(alpha * math.log10(x)) > 290:
            return
        y = ext_pow(ext_pow(x, alpha), 1.0 / alpha)
        assert y == pytest.approx(x, rel=1e-12)

    def test_pow_saturates_instead_of_overflowing(self):
        assert ext_pow(1e200, 3.0) == INF
        assert ext_pow(1e200, -3.0) == 0.0

    def test_array_conventions_match_scalar(self):
        xs = np.array([0.0, 1.0, 2.0, INF])
        for alpha in (-1.5, -1.0, 0.0, 0.5, 2.0):
            out = ext_pow_array(xs, alpha)
            for x, y in zip(xs, out):
                assert y == ext_pow(float(x), alpha)


class TestRegime:
    @pytest.mark.parametrize(
        "p,q,case",
        [
            (2, 3, RegimeCase.I),
            (2, 2, RegimeCase.I),
            (3, 2, RegimeCase.II),
            (1, 1, RegimeCase.III),
            (0.5, 1, RegimeCase.III),
            (0.5, 0.5, RegimeCase.III),
            (1, 0.5, RegimeCase.IV),
            (0.5, 0.25, RegimeCase.IV),
        ],
    )
    def test_examples(self, p, q, case):
        assert classify_regime(p, q).case_id is case

    @pytest.mark.parametrize("p,q", [(0, 1), (1, 0), (-1, 2), (float("nan"), 1)])
    def test_invalid_parameters(self, p, q):
        with pytest.raises(ValueError):
            classify_regime(p, q)

    @given(
        st.floats(min_value=1e-3, max_value=1e3),
        st.floats(min_value=1e-3, max_value=1e3),
    )
    def test_total_and_disjoint(self, p, q):
        case = classify_regime(p, q).case_id
        memberships = [
            1 < p <= q,
            p > 1 and q < p,
            p <= 1 and p <= q,
            q < p <= 1,
        ]
        assert sum(memberships) == 1
        expected = [RegimeCase.I, RegimeCase.II, RegimeCase.III, RegimeCase.IV][
            memberships.index(True)
        ]
        assert case is expected


class TestWindow:
    def test_slice_example(self):
        w = Window(0, (1, 2, 3))
        assert w.slice(1, 2) == Window(1, (2, 3))

    def test_identity_slice(self):
        w = Window(-3, (5,))
        assert w.slice(-3, -3) == w

    def test_out_of_range_slice(self):
        with pytest.raises(IndexError):
            Window(0, (1, 2)).slice(0, 5)

    def test_negative_entry_rejected(self):
        with pytest.raises(ValueError):
            Window(0, (1.0, -0.5))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            Window(0, ())

    def test_equality_is_index_aware(self):
        assert Window(0, (1, 2)) != Window(1, (1, 2))
        assert Window(0, (1, 2)) == Window(0, (1.0, 2.0))

    def test_reversed(self):
        w = Window(2, (1, 2, 3))
        r = w.reversed()
        assert r.start == -4 and r.values == (3.0, 2.0, 1.0)
        assert r.reversed() == w

    def test_json_round_trip(self):
        w = Window(-2, (0.5, 0.0, 3.0))
        assert Window.from_json(json.loads(json.dumps(w.to_json()))) == w

    def test_json_accepts_inf_string(self):
        w = Window.from_json({"start": 0, "values": [1, "inf"]})
        assert w.values == (1.0, INF)
        assert not w.finite

    def test_value_at_and_contains(self):
        w = Window(-1, (4, 5))
        assert -1 in w and 0 in w and 1 not in w
        assert w.value_at(0) == 5.0
        with pytest.raises(IndexError):
            w.value_at(7)

    def test_require_finite(self):
        with pytest.raises(ValueError):
            Window(0, (1.0, INF)).require_finite("u")
