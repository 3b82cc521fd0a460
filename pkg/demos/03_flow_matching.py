"""Flow-matching mechanics on a toy task.

Shows the interpolant identities, trains a tiny velocity model on a
64-dimensional toy distribution, and samples from it with the guided
Euler integrator. Loss should fall well below half its starting value
within the budgeted steps.
"""

import numpy as np
import torch

from dyadicmotion.conditioning import build_condition, batch_bundles, spec_for_mode
from dyadicmotion.features import SpeechTokenStream
from dyadicmotion.flowmatch import (
    FlowModel,
    FlowModelConfig,
    Schedule,
    TrainConfig,
    interpolant,
    sample_ode,
    target_velocity,
    train,
)

torch.set_num_threads(2)
torch.manual_seed(0)
rng = np.random.default_rng(0)

# the straight-line identity: x_1 = x_0 + v
x, eps = rng.normal(size=8), rng.normal(size=8)
assert np.allclose(interpolant(x, eps, 1.0), interpolant(x, eps, 0.0) + target_velocity(x, eps))
print("interpolant identity holds; sigma_min =", Schedule().sigma_min)

# toy task: 64-value windows whose motion is a signature of the speech
# tokens plus noise, so the conditional velocity field is learnable
vocab, n_frames, dim = 16, 16, 4  # 16 frames x 4 dims = 64 values per window
token_signature = rng.normal(size=(vocab, dim))
spec = spec_for_mode("dyadic", speech_vocab=vocab, speech_embed_dim=16)
config = FlowModelConfig(motion_dim=dim, cond=spec, layers=2, hidden_dim=32, ffn_dim=64, heads=4)
model = FlowModel(config)

examples = []
for _ in range(1000):
    a1 = SpeechTokenStream(rng.integers(0, vocab, 8), vocab)
    a2 = SpeechTokenStream(rng.integers(0, vocab, 8), vocab)
    bundle = build_condition(a1, a2, mode="dyadic", n_frames=n_frames)
    motion = token_signature[bundle.blocks["speech_a1"]]
    examples.append(((motion + 0.05 * rng.normal(size=motion.shape)).astype(np.float32), bundle))

result = train(model, examples, TrainConfig(steps=1200, batch_size=32, seed=0, log_every=400))
first = float(np.mean(result.losses[:25]))
last = float(np.mean(result.losses[-25:]))
print(f"loss: {first:.3f} -> {last:.3f} ({last / first:.1%} of start)")
assert last < 0.5 * first

bundle = examples[0][1]
cond = batch_bundles(spec, [bundle])
sample = sample_ode(model.velocity_closure(cond), (1, n_frames, dim), steps=100,
                    cfg_weight=1.5, generator=torch.Generator().manual_seed(1))
print("sampled window:", tuple(sample.shape), "std", float(sample.std()))
