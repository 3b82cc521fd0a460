"""Dyadic conversational motion: generation, controllability, and evaluation.

Subpackages:
    corpus       -- interaction data model, manifests, statistics, text analyses,
                    and a seeded synthetic dyadic corpus generator
    features     -- rotation encodings, smoothing, resampling, normalization,
                    and a lightweight upper-body skeleton
    flowmatch    -- flow-matching schedule/loss, DiT velocity network, ODE sampler
    conditioning -- monadic/dyadic/audiovisual condition stacks and cascades
    control      -- emotion/expressivity/gesture control signals and VQ codebook
    adapter      -- codebook prediction heads over frozen speech-model states
    metrics      -- Frechet distances, diversity, jerk smoothness, correlations
    humaneval    -- pairwise preference study backend and HTTP service
    experiments  -- training/evaluation harnesses wired by the CLI
"""

__version__ = "0.1.0"
