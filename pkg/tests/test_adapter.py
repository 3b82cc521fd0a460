"""Adapter: hidden-state interpolation, training, and code metrics."""

import numpy as np
import pytest
import torch

from dyadicmotion.adapter import (
    AdapterHead,
    FrozenSpeechEncoder,
    HiddenStates,
    group_3class,
    interpolate_hidden,
    macro_prf,
    train_adapter,
)
from dyadicmotion.errors import DomainError, ValidationError


class TestInterpolateHidden:
    def test_equal_rates_identity(self):
        h = HiddenStates(np.arange(12.0).reshape(4, 3), source_rate=12.5)
        out = interpolate_hidden(h, 12.5)
        np.testing.assert_array_equal(out.states, h.states)

    def test_halving_midpoints(self):
        h = HiddenStates(np.array([[0.0], [2.0], [4.0], [6.0]]), source_rate=4.0)
        np.testing.assert_allclose(interpolate_hidden(h, 2.0).states.ravel(), [1.0, 5.0])

    def test_double_then_halve_recovers_ramp(self):
        ramp = np.linspace(-3, 5, 16)[:, None] * np.array([1.0, -2.0])
        h = HiddenStates(ramp, source_rate=8.0)
        back = interpolate_hidden(interpolate_hidden(h, 16.0), 8.0)
        np.testing.assert_allclose(back.states, ramp, atol=1e-6)

    def test_zero_length_rejected(self):
        h = HiddenStates(np.zeros((2, 3)), source_rate=10.0)
        with pytest.raises(DomainError):
            interpolate_hidden(h, 0.01)


class TestAdapterForward:
    def test_output_length_and_finite(self):
        head = AdapterHead(d_model=16, vocab=5, stream="gesture", width=32)
        states = np.random.default_rng(0).normal(size=(9, 16))
        pred = head.predict(states, rate=2.0)
        assert pred.logits.shape == (9, 5)
        assert np.isfinite(pred.logits).all()
        assert pred.ids.shape == (9,)

    def test_frozen_speech_model_stays_frozen(self):
        encoder = FrozenSpeechEncoder(vocab_size=16, d_model=8, seed=0)
        head = AdapterHead(d_model=8, vocab=3, stream="gesture", width=16)
        states = encoder.hidden_states(np.arange(10) % 16).states
        pairs = [(states, np.zeros(10, dtype=int))]
        train_adapter(head, pairs, epochs=2, frozen_modules=(encoder,))
        assert all(not p.requires_grad for p in encoder.parameters())
        # gradient flows into the hidden states themselves, not the encoder
        x = torch.tensor(states, dtype=torch.float32, requires_grad=True)
        head(x).sum().backward()
        assert float(x.grad.abs().sum()) > 0

    def test_frozen_overlap_detected(self):
        head = AdapterHead(d_model=8, vocab=3, stream="gesture", width=16)
        with pytest.raises(ValidationError, match="frozen"):
            train_adapter(
                head,
                [(np.zeros((4, 8)), np.zeros(4, dtype=int))],
                epochs=1,
                frozen_modules=(head,),
            )


class TestTrainAdapter:
    def test_separable_fixture_accuracy(self):
        rng = np.random.default_rng(0)
        centers = rng.normal(size=(3, 12)) * 4.0
        states = np.concatenate([centers[i] + 0.2 * rng.normal(size=(60, 12)) for i in range(3)])
        labels = np.repeat(np.arange(3), 60)
        head = AdapterHead(d_model=12, vocab=3, stream="gesture", width=32)
        result = train_adapter(
            head, [(states, labels)], epochs=150, seed=0,
            val_pairs=[(states, labels)],
        )
        assert result.val_accuracy[-1] >= 0.95

    def test_single_class_collapse(self):
        rng = np.random.default_rng(1)
        states = rng.normal(size=(50, 8))
        labels = np.full(50, 2)
        head = AdapterHead(d_model=8, vocab=4, stream="gesture", width=16)
        result = train_adapter(
            head, [(states, labels)], epochs=120, seed=0, val_pairs=[(states, labels)]
        )
        assert result.val_accuracy[-1] == 1.0
        pred = head.predict(states, rate=1.0).ids
        # macro-F1 over {gold union pred} = single class at perfect recall
        _, _, f1 = macro_prf(pred, labels)
        assert f1 == 1.0

    def test_label_out_of_vocab(self):
        head = AdapterHead(d_model=4, vocab=2, stream="gesture", width=8)
        with pytest.raises(ValidationError):
            train_adapter(head, [(np.zeros((3, 4)), np.array([0, 1, 5]))], epochs=1)


class TestGroup3Class:
    @pytest.mark.parametrize("token,expected", [(0, 0), (3, 0), (4, 1), (7, 1), (8, 2), (11, 2), (5, 1)])
    def test_mapping(self, token, expected):
        assert group_3class(np.array([token]))[0] == expected

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            group_3class(np.array([12]))


class TestMacroPrf:
    def test_perfect(self):
        y = np.array([0, 1, 2, 1])
        assert macro_prf(y, y) == (1.0, 1.0, 1.0)

    def test_hand_confusion_matrix(self):
        gold = np.array(["A", "B", "A"])
        pred = np.array(["A", "A", "A"])
        p, r, f1 = macro_prf(pred, gold)
        assert p == pytest.approx(1 / 3)
        assert r == pytest.approx(1 / 2)
        assert f1 == pytest.approx(0.4)

    def test_null_excluded(self):
        gold = np.array([0, 0, 9, 1])
        pred = np.array([0, 9, 9, 1])
        with_null = macro_prf(pred, gold)
        without_null = macro_prf(pred, gold, exclude={9})
        assert with_null != without_null

    def test_relabeling_invariance(self):
        rng = np.random.default_rng(0)
        gold = rng.integers(0, 4, 200)
        pred = rng.integers(0, 4, 200)
        relabel = {0: 10, 1: 11, 2: 12, 3: 13}
        mapped = np.vectorize(relabel.get)
        assert macro_prf(pred, gold) == macro_prf(mapped(pred), mapped(gold))

    def test_order_invariance(self):
        rng = np.random.default_rng(1)
        gold = rng.integers(0, 3, 100)
        pred = rng.integers(0, 3, 100)
        perm = rng.permutation(100)
        assert macro_prf(pred, gold) == macro_prf(pred[perm], gold[perm])

    def test_empty_classes_rejected(self):
        with pytest.raises(DomainError):
            macro_prf(np.array([1, 1]), np.array([1, 1]), exclude={1})
