"""Cross-entropy training of adapter heads over frozen hidden states."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import torch
from torch import nn

from ..errors import ValidationError
from .metrics import macro_prf
from .model import AdapterHead


@dataclass
class AdapterTrainResult:
    losses: list[float] = field(default_factory=list)
    val_accuracy: list[float] = field(default_factory=list)
    val_macro_f1: list[float] = field(default_factory=list)


def train_adapter(
    head: AdapterHead,
    pairs: list[tuple[np.ndarray, np.ndarray]],  # (states (L, d), gold codes (L,))
    epochs: int = 30,
    lr: float = 1e-3,
    seed: int = 0,
    val_pairs: list[tuple[np.ndarray, np.ndarray]] | None = None,
    frozen_modules: tuple[nn.Module, ...] = (),
    null_id: int | None = None,
) -> AdapterTrainResult:
    """Minimize cross-entropy between gold codes and head predictions.

    ``frozen_modules`` (e.g. the speech encoder) are asserted disjoint
    from the optimizer's parameter set: the speech model never updates.
    ``null_id``, when given, is excluded from validation macro-F1.
    """
    if not pairs:
        raise ValidationError("train_adapter needs aligned (states, codes) pairs")
    xs, ys = [], []
    for states, codes in pairs:
        states = np.asarray(states)
        codes = np.asarray(codes)
        if states.shape[0] != codes.shape[0]:
            raise ValidationError("states and codes must align window-for-window")
        if codes.size and (codes.min() < 0 or codes.max() >= head.vocab):
            raise ValidationError(
                f"gold codes outside the vocabulary [0, {head.vocab})"
            )
        xs.append(states)
        ys.append(codes)
    x = torch.as_tensor(np.concatenate(xs), dtype=torch.float32)
    y = torch.as_tensor(np.concatenate(ys), dtype=torch.long)

    trainable = set(id(p) for p in head.parameters())
    for module in frozen_modules:
        overlap = [n for n, p in module.named_parameters() if id(p) in trainable]
        if overlap:
            raise ValidationError(f"frozen parameters leaked into the optimizer: {overlap}")

    torch.manual_seed(seed)
    optimizer = torch.optim.Adam(head.parameters(), lr=lr)
    loss_fn = nn.CrossEntropyLoss()
    result = AdapterTrainResult()
    head.train()
    for _ in range(epochs):
        logits = head(x)
        loss = loss_fn(logits, y)
        optimizer.zero_grad()
        loss.backward()
        optimizer.step()
        result.losses.append(float(loss.item()))
        if val_pairs:
            acc, f1 = _validate(head, val_pairs, null_id)
            result.val_accuracy.append(acc)
            result.val_macro_f1.append(f1)
    head.eval()
    return result


def _validate(head, val_pairs, null_id) -> tuple[float, float]:
    head.eval()
    with torch.no_grad():
        preds, golds = [], []
        for states, codes in val_pairs:
            x = torch.as_tensor(np.asarray(states), dtype=torch.float32)
            preds.append(head(x).argmax(dim=1).numpy())
            golds.append(np.asarray(codes))
    head.train()
    pred = np.concatenate(preds)
    gold = np.concatenate(golds)
    accuracy = float((pred == gold).mean()) if len(gold) else 0.0
    exclude = set() if null_id is None else {null_id}
    try:
        _, _, f1 = macro_prf(pred, gold, exclude=exclude)
    except ValidationError:
        f1 = 0.0
    return accuracy, f1
