import pytest
from hypothesis import given, settings, strategies as st

from knotcert.braid import BraidWord, compose, inverse
from knotcert.dehornoy import (
    dehornoy_less,
    floor_exceeds_one,
    handle_reduce,
    sigma_classify,
)
from knotcert.errors import BraidError, BudgetExceededError


def words(max_strands=4, max_len=10):
    return st.integers(2, max_strands).flatmap(
        lambda n: st.lists(
            st.sampled_from([i for i in range(-(n - 1), n) if i != 0]),
            max_size=max_len,
        ).map(lambda ls: BraidWord(n, tuple(ls)))
    )


class TestReduction:
    def test_empty_is_trivial(self):
        cls = sigma_classify(BraidWord(3, ()))
        assert cls.verdict == "trivial"
        assert cls.main_index is None

    def test_free_cancellation(self):
        cls = sigma_classify(BraidWord(3, (1, -1, 2, -2)))
        assert cls.verdict == "trivial"

    def test_positive_word_is_fixed(self):
        b = BraidWord(4, (1, 2, 3, 1))
        assert handle_reduce(b) == b

    def test_main_index_sign(self):
        cls = sigma_classify(BraidWord(3, (-2, 1, 2)))
        assert cls.verdict == "sigma_positive"
        assert cls.main_index == 1

    def test_negative_classification(self):
        cls = sigma_classify(BraidWord(3, (2, -1, -2)))
        assert cls.verdict == "sigma_negative"
        assert cls.main_index == 1

    def test_handle_free_output(self):
        """No handle-free word contains a sigma_i handle at its main index."""
        reduced = handle_reduce(BraidWord(4, (1, 3, -2, -1, 2, -3, 1, -2)))
        w = reduced.letters
        for i in range(len(w)):
            for j in range(i + 1, len(w)):
                if w[j] == -w[i]:
                    inner = w[i + 1 : j]
                    assert any(abs(x) <= abs(w[i]) for x in inner)
                    break

    def test_sigma_positive_despite_leading_negative(self):
        # Starts with sigma_1^-1 yet the braid is sigma-positive.
        cls = sigma_classify(BraidWord(3, (-1, 2, 1)))
        assert cls.verdict == "sigma_positive"
        assert cls.main_index == 1
        cls_inv = sigma_classify(BraidWord(3, (-1, -2, 1)))
        assert cls_inv.verdict == "sigma_negative"

    def test_budget_error_carries_spent(self):
        with pytest.raises(BudgetExceededError) as err:
            floor_exceeds_one(2, step_budget=3)
        assert err.value.spent == 3


class TestOrderProperties:
    @settings(max_examples=80, deadline=None)
    @given(words())
    def test_trichotomy(self, b):
        """Exactly one of b trivial, b sigma-positive, b sigma-negative."""
        cls = sigma_classify(b)
        inv = sigma_classify(inverse(b))
        if cls.verdict == "trivial":
            assert inv.verdict == "trivial"
        elif cls.verdict == "sigma_positive":
            assert inv.verdict == "sigma_negative"
        else:
            assert inv.verdict == "sigma_positive"

    @settings(max_examples=50, deadline=None)
    @given(words(max_len=7), words(max_len=7), words(max_len=5))
    def test_left_invariance(self, a, b, c):
        a = BraidWord(4, a.letters)
        b = BraidWord(4, b.letters)
        c = BraidWord(4, c.letters)
        assert dehornoy_less(a, b) == dehornoy_less(compose(c, a), compose(c, b))

    @settings(max_examples=80, deadline=None)
    @given(words())
    def test_irreflexive(self, b):
        assert not dehornoy_less(b, b)

    def test_generator_order(self):
        one = BraidWord(3, (1,))
        two = BraidWord(3, (2,))
        assert dehornoy_less(two, one)
        assert not dehornoy_less(one, two)

    def test_strand_mismatch_rejected(self):
        with pytest.raises(BraidError):
            dehornoy_less(BraidWord(2, (1,)), BraidWord(3, (1,)))


class TestFloorCertificates:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_floor_exceeds_one(self, n):
        cert = floor_exceeds_one(n)
        assert cert.holds
        assert cert.witness.letters
        assert all(x > 0 for x in cert.witness.letters if abs(x) == cert.main_index)

    def test_witness_is_handle_free(self):
        cert = floor_exceeds_one(2)
        assert handle_reduce(cert.witness) == cert.witness

    def test_small_n_rejected(self):
        with pytest.raises(BraidError):
            floor_exceeds_one(1)

    def test_step_counts_are_stable(self):
        assert floor_exceeds_one(2).steps == 55
        assert floor_exceeds_one(3).steps == 197
