"""Build a synthetic dyadic corpus and inspect it.

Generates a small coupled corpus, prints the statistics tables, checks
participant-level split discipline, demonstrates the conservative QA
merge rule, and scores three text registers for readability and lexical
diversity.
"""

import tempfile

from dyadicmotion.corpus import (
    QA_CATEGORIES,
    QaFlagSet,
    SyntheticConfig,
    compute_stats,
    coupling_report,
    flesch_reading_ease,
    generate_synthetic_corpus,
    merge_qa_flags,
    mtld,
    validate_splits,
)
from dyadicmotion.corpus.textstats import split_words

with tempfile.TemporaryDirectory() as root:
    cfg = SyntheticConfig(dyads=8, interactions_per_dyad=3, duration_range_s=(8, 12),
                          coupling=0.9, test_fraction=0.25, dev_fraction=0.125)
    manifest = generate_synthetic_corpus(cfg, seed=7, out_dir=root)
    print(f"generated {len(manifest)} interactions, "
          f"{len(manifest.participant_ids())} participants")

    stats = compute_stats(manifest)
    print(f"hours: {stats.overall.hours:.3f}  sessions: {stats.overall.sessions}  "
          f"prompts: {stats.overall.prompts}")
    for (part, split), row in sorted(stats.by_part_split.items()):
        print(f"  {part}/{split}: {row.interactions} interactions")

    report = validate_splits(manifest)
    print("split check:", "PASS" if report.ok else f"{len(report.violations)} violations")

    coupling = coupling_report(manifest, root)
    print(f"listener coupling: MI {coupling.mutual_information_nats:.3f} nats, "
          f"nod delta {coupling.nod_delta:.4f} (p={coupling.p_value:.2g})")

# conservative QA merge: any sensitive "yes" from any source removes
def flags(source, sensitive="no", offensive="no"):
    answers = {c: "no" for c in QA_CATEGORIES}
    answers["sensitive_material"] = sensitive
    answers["offensive_material"] = offensive
    return QaFlagSet(source=source, flags=answers)

for sources in (
    [flags("human"), flags("text_llm"), flags("vlm")],
    [flags("human"), flags("vlm", sensitive="yes")],
    [flags("human", offensive="unsure")],
):
    decision = merge_qa_flags(sources)
    print("QA merge:", decision.decision, decision.rationale)

chat = "Yeah, I mean, we talked about it. It was good. You know how it goes. It was good."
print(f"FRES(chat) = {flesch_reading_ease(chat):.1f}")
print(f"MTLD(chat) = {mtld([w.lower() for w in split_words(chat)]):.1f}")
