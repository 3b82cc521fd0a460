"""Statistics tables: hand-built fixtures and additivity."""

from dyadicmotion.corpus import CorpusManifest, compute_stats

from test_corpus_records import make_record


def test_two_half_hour_interactions_are_one_hour():
    records = [make_record(i, duration_s=1800.0) for i in range(2)]
    stats = compute_stats(CorpusManifest(records=records))
    assert stats.overall.hours == 1.0
    assert stats.overall.interactions == 2


def test_fixture_table_exact():
    records = [
        make_record(0, duration_s=600, part="naturalistic", split="train",
                    relationship="friends", session_id="S0",
                    participant_a="P0", participant_b="P1", prompt_a="q1", prompt_b="q2"),
        make_record(1, duration_s=1200, part="naturalistic", split="train",
                    relationship="friends", session_id="S0",
                    participant_a="P0", participant_b="P1", prompt_a="q3", prompt_b="q4"),
        make_record(2, duration_s=900, part="naturalistic", split="test",
                    relationship="stranger", session_id="S1",
                    participant_a="P2", participant_b="P3", prompt_a="q1", prompt_b="q2"),
        make_record(3, duration_s=300, part="improvised", split="train",
                    relationship="romantic", session_id="S2",
                    participant_a="P4", participant_b="P5", prompt_a="q5", prompt_b="q6",
                    interaction_type="silent_charades"),
    ]
    stats = compute_stats(CorpusManifest(records=records))

    assert stats.overall.as_dict() == {
        "hours": round(3000 / 3600, 2),
        "interactions": 4,
        "sessions": 3,
        "participants": 6,
        "prompts": 6,
    }
    nat = stats.by_part["naturalistic"]
    assert (nat.interactions, nat.sessions, nat.participants) == (3, 2, 4)
    assert stats.by_part_split[("naturalistic", "train")].interactions == 2
    assert stats.by_relationship["friends"].interactions == 2
    assert stats.by_interaction_type["silent_charades"].interactions == 1
    # per-type rows carry the same five columns as the overall row
    assert set(stats.by_interaction_type["silent_charades"].as_dict()) == {
        "hours", "interactions", "sessions", "participants", "prompts",
    }


def test_additivity_over_disjoint_manifests():
    a = CorpusManifest(records=[
        make_record(0, duration_s=600, session_id="S0", participant_a="P0", participant_b="P1"),
        make_record(1, duration_s=900, session_id="S1", participant_a="P0", participant_b="P2"),
    ])
    b = CorpusManifest(records=[
        make_record(2, duration_s=300, session_id="S2", participant_a="P1", participant_b="P3"),
    ])
    merged = CorpusManifest(records=a.records + b.records)

    combined = compute_stats(a).merge(compute_stats(b))
    direct = compute_stats(merged)
    assert combined.overall.as_dict() == direct.overall.as_dict()
    assert {k: v.as_dict() for k, v in combined.by_part.items()} == {
        k: v.as_dict() for k, v in direct.by_part.items()
    }
    # participant counts deduplicate across the union (P0, P1 shared)
    assert direct.overall.participants == 4
