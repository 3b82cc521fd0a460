"""Flow-matching core: schedule identities, loss, attention variants, sampler."""

import numpy as np
import pytest
import torch

from dyadicmotion.conditioning import (
    ConditionBundle,
    batch_bundles,
    build_condition,
    spec_for_mode,
)
from dyadicmotion.errors import DomainError, NumericError, ShapeError
from dyadicmotion.features import SpeechTokenStream
from dyadicmotion.flowmatch import (
    FlowModel,
    FlowModelConfig,
    Schedule,
    cfg_combine,
    cfm_loss,
    interpolant,
    load_checkpoint,
    sample_ode,
    save_checkpoint,
    target_velocity,
)

SIGMA = 1e-4


def tiny_model(attention="self", motion_dim=6, window=30, seed=7, dtype=torch.float64):
    spec = spec_for_mode("dyadic", speech_vocab=8, speech_embed_dim=8)
    config = FlowModelConfig(
        motion_dim=motion_dim, cond=spec, layers=2, hidden_dim=16, ffn_dim=32,
        heads=2, attention=attention, window=window,
    )
    model = FlowModel(config).to(dtype)
    gen = torch.Generator().manual_seed(seed)
    with torch.no_grad():
        for p in model.parameters():
            p.copy_(torch.randn(p.shape, generator=gen, dtype=dtype) * 0.3)
    return model


def tiny_bundles(n_frames=5, with_drops=False):
    a1 = SpeechTokenStream(np.arange(8) % 8, 8)
    a2 = SpeechTokenStream((np.arange(8) * 3) % 8, 8)
    full = build_condition(a1, a2, mode="dyadic", n_frames=n_frames)
    if not with_drops:
        return [full, full]
    drop1 = ConditionBundle(n_frames, dict(full.blocks), {"speech_a1": True, "speech_a2": False})
    drop2 = ConditionBundle(n_frames, dict(full.blocks), {"speech_a1": False, "speech_a2": True})
    return [full, drop1, drop2]


class TestSchedule:
    def test_t0_is_noise(self):
        x, eps = np.full(4, 3.0), np.full(4, -1.0)
        np.testing.assert_allclose(interpolant(x, eps, 0.0), eps)

    def test_t1_is_data_plus_sigma_noise(self):
        x, eps = np.full(4, 3.0), np.full(4, -1.0)
        np.testing.assert_allclose(interpolant(x, eps, 1.0), x + SIGMA * eps)

    def test_midpoint_scalar(self):
        assert interpolant(np.array(1.0), np.array(0.0), 0.5) == pytest.approx(0.5)

    def test_velocity_values(self):
        assert target_velocity(np.array(1.0), np.array(0.0)) == pytest.approx(1.0)
        assert target_velocity(np.array(0.0), np.array(1.0)) == pytest.approx(-0.9999)

    def test_t_outside_domain(self):
        with pytest.raises(DomainError):
            interpolant(np.zeros(2), np.zeros(2), 1.5)

    def test_velocity_matches_finite_difference(self):
        rng = np.random.default_rng(0)
        x, eps = rng.normal(size=50), rng.normal(size=50)
        h = 1e-6
        for t in (0.2, 0.5, 0.9):
            fd = (interpolant(x, eps, t + h) - interpolant(x, eps, t - h)) / (2 * h)
            np.testing.assert_allclose(fd, target_velocity(x, eps), atol=1e-5)

    def test_straight_line_identity(self):
        # x_t(1) = x_t(0) + v * 1 exactly
        rng = np.random.default_rng(1)
        x, eps = rng.normal(size=100), rng.normal(size=100)
        lhs = interpolant(x, eps, 1.0)
        rhs = interpolant(x, eps, 0.0) + target_velocity(x, eps)
        np.testing.assert_allclose(lhs, rhs, atol=1e-6)


class TestCfmLoss:
    def test_oracle_model_zero_loss(self):
        x = torch.randn(4, 5, 6, generator=torch.Generator().manual_seed(0), dtype=torch.float64)
        # replicate the internal draws to build a perfect velocity oracle
        gen = torch.Generator().manual_seed(99)
        t = torch.rand(4, generator=gen, dtype=torch.float64)
        eps = torch.randn(x.shape, generator=gen, dtype=torch.float64)
        target = x - (1 - SIGMA) * eps
        calls = {"i": 0}

        def oracle(x_t, t_in):
            calls["i"] += 1
            return target

        loss = cfm_loss(oracle, x, torch.Generator().manual_seed(99))
        assert float(loss) == pytest.approx(0.0, abs=1e-12)
        _ = t

    def test_zero_model_matches_monte_carlo(self):
        # E||x - (1 - sigma) eps||^2 per dim = 1 + (1 - sigma)^2 for unit
        # Gaussian data; measured against an independent Monte-Carlo estimate
        gen = torch.Generator().manual_seed(3)
        x = torch.randn(200, 50, 10, generator=gen, dtype=torch.float64)  # 1e5 scalars
        loss = cfm_loss(lambda x_t, t: torch.zeros_like(x_t), x, torch.Generator().manual_seed(17))
        rng = np.random.default_rng(11)
        mc = np.mean(
            (rng.normal(size=100_000) - (1 - SIGMA) * rng.normal(size=100_000)) ** 2
        )
        analytic = 1 + (1 - SIGMA) ** 2
        assert float(loss) == pytest.approx(analytic, rel=0.02)
        assert mc == pytest.approx(analytic, rel=0.02)

    def test_deterministic_given_generator(self):
        model = tiny_model()
        cond = batch_bundles(model.config.cond, tiny_bundles(), dtype=torch.float64)
        x = torch.randn(2, 5, 6, generator=torch.Generator().manual_seed(1), dtype=torch.float64)
        l1 = cfm_loss(model.velocity_closure(cond), x, torch.Generator().manual_seed(5))
        l2 = cfm_loss(model.velocity_closure(cond), x, torch.Generator().manual_seed(5))
        assert float(l1) == float(l2)

    def test_non_finite_reports_batch_index(self):
        def bad(x_t, t):
            out = torch.zeros_like(x_t)
            out[1] = float("nan")
            return out

        x = torch.randn(3, 4, 2, generator=torch.Generator().manual_seed(0))
        with pytest.raises(NumericError, match=r"\[1\]"):
            cfm_loss(bad, x, torch.Generator().manual_seed(0))

    def test_gradient_matches_finite_differences(self):
        # every parameter of the 2-layer toy config, central differences,
        # 64-bit, relative error < 1e-4
        model = tiny_model()
        cond = batch_bundles(
            model.config.cond, tiny_bundles(with_drops=True), dtype=torch.float64
        )
        x = torch.randn(3, 5, 6, generator=torch.Generator().manual_seed(2), dtype=torch.float64)

        def loss_fn():
            return cfm_loss(
                model.velocity_closure(cond), x, torch.Generator().manual_seed(123)
            )

        loss = loss_fn()
        model.zero_grad()
        loss.backward()
        grads = {name: p.grad.clone() for name, p in model.named_parameters()}
        assert all(g is not None for g in grads.values())

        eps = 1e-5
        worst = 0.0
        with torch.no_grad():
            for name, p in model.named_parameters():
                flat, gflat = p.view(-1), grads[name].view(-1)
                for i in range(flat.numel()):
                    orig = flat[i].item()
                    flat[i] = orig + eps
                    up = loss_fn().item()
                    flat[i] = orig - eps
                    down = loss_fn().item()
                    flat[i] = orig
                    fd = (up - down) / (2 * eps)
                    an = gflat[i].item()
                    rel = abs(fd - an) / max(abs(fd), abs(an), 1e-6)
                    worst = max(worst, rel)
        assert worst < 1e-4


class TestDit:
    @pytest.mark.parametrize("attention", ["self", "cross", "windowed_self", "windowed_cross"])
    def test_output_shape(self, attention):
        model = tiny_model(attention=attention, window=4)
        cond = batch_bundles(model.config.cond, tiny_bundles(8), dtype=torch.float64)
        x = torch.randn(2, 8, 6, dtype=torch.float64)
        v = model(x, torch.tensor([0.2, 0.8], dtype=torch.float64), cond)
        assert v.shape == x.shape

    def test_windowed_covering_window_equals_self(self):
        base = tiny_model(attention="self")
        wide = tiny_model(attention="windowed_self", window=64)
        wide.load_state_dict(base.state_dict())
        cond = batch_bundles(base.config.cond, tiny_bundles(12)[:1], dtype=torch.float64)
        x = torch.randn(1, 12, 6, dtype=torch.float64)
        t = torch.tensor([0.3], dtype=torch.float64)
        diff = (base(x, t, cond) - wide(x, t, cond)).abs().max()
        assert float(diff) < 1e-6

    def test_window_locality_and_equivariance(self):
        # two independent windows: swapping them (motion + conditions)
        # swaps the outputs exactly; perturbing one window leaves the other
        # window's output untouched
        model = tiny_model(attention="windowed_self", window=4)
        n = 8
        bundle = tiny_bundles(n)[0]
        cond = batch_bundles(model.config.cond, [bundle], dtype=torch.float64)
        x = torch.randn(1, n, 6, generator=torch.Generator().manual_seed(0), dtype=torch.float64)
        t = torch.tensor([0.5], dtype=torch.float64)
        out = model(x, t, cond)

        swap = np.r_[4:8, 0:4]
        bundle_swapped = ConditionBundle(
            n,
            {k: v[swap] for k, v in bundle.blocks.items()},
            dict(bundle.dropout_mask),
        )
        cond_swapped = batch_bundles(model.config.cond, [bundle_swapped], dtype=torch.float64)
        out_swapped = model(x[:, swap], t, cond_swapped)
        assert float((out_swapped - out[:, swap]).abs().max()) < 1e-10

        x2 = x.clone()
        x2[:, 4:] += 1.0
        out2 = model(x2, t, cond)
        assert float((out2[:, :4] - out[:, :4]).abs().max()) < 1e-10
        assert float((out2[:, 4:] - out[:, 4:]).abs().max()) > 1e-6

    def test_length_mismatch_raises(self):
        model = tiny_model()
        cond = batch_bundles(model.config.cond, tiny_bundles(5), dtype=torch.float64)
        with pytest.raises(ShapeError):
            model(torch.randn(2, 7, 6, dtype=torch.float64), torch.tensor([0.1, 0.1]), cond)


class TestCfg:
    def test_weight_one_returns_conditional(self):
        v_c, v_u = torch.randn(3, 4), torch.randn(3, 4)
        assert torch.equal(cfg_combine(v_c, v_u, 1.0), v_c)

    def test_equal_inputs_any_weight(self):
        v = torch.randn(2, 3)
        assert torch.allclose(cfg_combine(v, v, 7.3), v)

    def test_declared_formula(self):
        v_c = torch.ones(1)
        v_u = torch.zeros(1)
        assert float(cfg_combine(v_c, v_u, 1.5)) == pytest.approx(1.5)


class TestSampler:
    def test_constant_velocity_exact(self):
        c = 2.5
        eps = torch.randn(3, 10, 4, generator=torch.Generator().manual_seed(1), dtype=torch.float64)
        out = sample_ode(
            lambda x, t, unconditional=False: torch.full_like(x, c),
            eps.shape, steps=100, cfg_weight=1.0, x0=eps, dtype=torch.float64,
        )
        assert float((out - (eps + c)).abs().max()) < 1e-12

    def test_single_step_euler_jump(self):
        def vel(x, t, unconditional=False):
            return 2.0 * x

        eps = torch.randn(2, 3, 2, generator=torch.Generator().manual_seed(2), dtype=torch.float64)
        out = sample_ode(vel, eps.shape, steps=1, cfg_weight=1.0, x0=eps, dtype=torch.float64)
        torch.testing.assert_close(out, eps + 2.0 * eps)

    def test_linear_transport_endpoint(self):
        # straight-line (optimal linear map) flow between N(0,1) and
        # N(mu, s^2): Euler tracks the exact transport map
        mu, s = 1.7, 0.6

        def ot_velocity(x, t, unconditional=False):
            a = t[:, None, None]
            scale = (1.0 - a) + a * s
            return mu + (s - 1.0) * (x - a * mu) / scale

        eps = torch.randn(2000, 1, 1, generator=torch.Generator().manual_seed(0), dtype=torch.float64)
        out = sample_ode(ot_velocity, eps.shape, steps=100, cfg_weight=1.0, x0=eps, dtype=torch.float64)
        target = mu + s * eps
        assert float((out - target).abs().max()) < 1e-3

    def test_marginal_field_converges_first_order(self):
        # the sigma_min marginal field has curved trajectories; Euler error
        # halves as steps double
        mu, s, sigma = 1.0, 0.5, SIGMA

        def marginal_velocity(x, t, unconditional=False):
            a = t[:, None, None]
            b = 1.0 - (1.0 - sigma) * a
            var = a * a * s * s + b * b
            e_x = mu + (a * s * s / var) * (x - a * mu)
            e_eps = (b / var) * (x - a * mu)
            return e_x - (1.0 - sigma) * e_eps

        eps = torch.randn(500, 1, 1, generator=torch.Generator().manual_seed(3), dtype=torch.float64)
        target = mu + np.sqrt(s**2 + sigma**2) * eps
        errors = []
        for steps in (50, 100, 200):
            out = sample_ode(marginal_velocity, eps.shape, steps=steps, cfg_weight=1.0, x0=eps, dtype=torch.float64)
            errors.append(float((out - target).abs().max()))
        assert errors[0] > errors[1] > errors[2]
        assert errors[0] / errors[1] == pytest.approx(2.0, rel=0.2)

    def test_cfg_weight_one_skips_unconditional(self):
        calls = {"cond": 0, "uncond": 0}

        def vel(x, t, unconditional=False):
            calls["uncond" if unconditional else "cond"] += 1
            return torch.zeros_like(x)

        sample_ode(vel, (1, 4, 2), steps=7, cfg_weight=1.0,
                   generator=torch.Generator().manual_seed(0))
        assert calls == {"cond": 7, "uncond": 0}
        sample_ode(vel, (1, 4, 2), steps=7, cfg_weight=1.5,
                   generator=torch.Generator().manual_seed(0))
        assert calls == {"cond": 14, "uncond": 7}

    def test_deterministic_per_seed(self):
        model = tiny_model()
        cond = batch_bundles(model.config.cond, tiny_bundles(5)[:1], dtype=torch.float64)
        out1 = sample_ode(model.velocity_closure(cond), (1, 5, 6), steps=5,
                          generator=torch.Generator().manual_seed(4), dtype=torch.float64)
        out2 = sample_ode(model.velocity_closure(cond), (1, 5, 6), steps=5,
                          generator=torch.Generator().manual_seed(4), dtype=torch.float64)
        assert torch.equal(out1, out2)

    def test_non_finite_reports_step(self):
        def vel(x, t, unconditional=False):
            return x * float("inf")

        with pytest.raises(NumericError, match="step 0"):
            sample_ode(vel, (1, 2, 2), steps=3, cfg_weight=1.0,
                       generator=torch.Generator().manual_seed(0))


class TestCheckpoint:
    def test_bit_exact_roundtrip(self, tmp_path):
        model = tiny_model()
        config = model.config.to_dict()
        path = save_checkpoint(tmp_path / "m.ckpt", config, model.state_dict())
        loaded_config, state = load_checkpoint(path)
        assert loaded_config == config
        for name, tensor in model.state_dict().items():
            assert torch.equal(state[name], tensor), name

    def test_reload_same_eval_loss(self, tmp_path):
        model = tiny_model()
        cond = batch_bundles(model.config.cond, tiny_bundles(), dtype=torch.float64)
        x = torch.randn(2, 5, 6, generator=torch.Generator().manual_seed(9), dtype=torch.float64)
        loss_before = float(cfm_loss(model.velocity_closure(cond), x, torch.Generator().manual_seed(1)))

        save_checkpoint(tmp_path / "m.ckpt", model.config.to_dict(), model.state_dict())
        config_dict, state = load_checkpoint(tmp_path / "m.ckpt")
        clone = FlowModel(FlowModelConfig.from_dict(config_dict)).to(torch.float64)
        clone.load_state_dict(state)
        loss_after = float(cfm_loss(clone.velocity_closure(cond), x, torch.Generator().manual_seed(1)))
        assert loss_before == loss_after


class TestTrainingDeterminism:
    def test_same_seed_same_losses(self):
        from dyadicmotion.flowmatch import TrainConfig, train

        def fresh():
            m = tiny_model(dtype=torch.float32, seed=5)
            return m

        bundle = tiny_bundles(5)[0]
        rng = np.random.default_rng(0)
        examples = [(rng.normal(size=(5, 6)).astype(np.float32), bundle) for _ in range(8)]
        cfg = TrainConfig(steps=12, batch_size=4, seed=3, log_every=0)
        r1 = train(fresh(), list(examples), cfg)
        r2 = train(fresh(), list(examples), cfg)
        assert r1.losses == r2.losses
