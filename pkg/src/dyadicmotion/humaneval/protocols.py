"""Rating protocols: questions, option labels, and flag categories.

Two pairwise protocols share the five-value preference scale
{-2, -1, 0, 1, 2} and a three-section structure (overall, listening,
speaking). The face protocol carries 11 questions, the body protocol 10.
Question and option texts live here as data; the browser client renders
versioned JSON exports of these tables rather than hardcoding strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ConfigError

PROTOCOL_IDS = ("face_dyadic", "body_dyadic")

SCALE_VALUES = (-2, -1, 0, 1, 2)

GENERIC_SCALE = (
    "Much prefer A",
    "Slightly prefer A",
    "Tie",
    "Slightly prefer B",
    "Much prefer B",
)

FLAG_CATEGORIES = (
    "Audio is distorted",
    "Audio is out of sync",
    "Audio is cut out",
    "Video freezes and/or skips",
    "Avatar displays gestures that could be interpreted as lewd/sexual",
    "Avatar shows violent gestures or actions",
    "Avatar uses hate symbols or gestures associated with harmful ideologies",
    "Other",
)

FLAG_NOTE_REQUIRED = "Other"


def _options(stem_a: str, stem_b: str, tie: str = "Tie") -> tuple[str, ...]:
    return (
        f"Candidate A {stem_a}",
        f"Candidate A {stem_b}",
        tie,
        f"Candidate B {stem_b}",
        f"Candidate B {stem_a}",
    )


@dataclass(frozen=True)
class Question:
    dimension_id: str
    section: str  # overall | listening | speaking
    text: str
    tooltip: str
    options: tuple[str, ...]

    def __post_init__(self):
        if len(self.options) != len(SCALE_VALUES):
            raise ConfigError(f"{self.dimension_id}: need 5 option labels")


@dataclass(frozen=True)
class Protocol:
    protocol_id: str
    questions: tuple[Question, ...]
    version: str = "1"

    def dimension_ids(self) -> tuple[str, ...]:
        return tuple(q.dimension_id for q in self.questions)

    def to_dict(self) -> dict:
        return {
            "protocol_id": self.protocol_id,
            "version": self.version,
            "scale_values": list(SCALE_VALUES),
            "flag_categories": list(FLAG_CATEGORIES),
            "flag_note_required": FLAG_NOTE_REQUIRED,
            "questions": [
                {
                    "dimension_id": q.dimension_id,
                    "section": q.section,
                    "text": q.text,
                    "tooltip": q.tooltip,
                    "options": list(q.options),
                }
                for q in self.questions
            ],
        }


_LIFELIKE_OPTIONS = _options("is much more lifelike", "is slightly more lifelike")
_INTENT_OPTIONS = _options(
    "appears to be much more intentional", "appears to be slightly more intentional"
)
_TURN_OPTIONS = _options(
    "appears to have much better turn-taking behavior",
    "appears to have slightly better turn-taking behavior",
)
_BETTER_OPTIONS = _options("appears to be much better", "appears to be slightly better")

BODY_PROTOCOL = Protocol(
    protocol_id="body_dyadic",
    questions=(
        Question(
            "lifelike",
            "overall",
            "Overall, which candidate's (A or B) visual behaviors are more lifelike?",
            "By “lifelike,” we mean that the Candidate behaves in a way that "
            "looks, acts, or seems very similar to something that's real and alive. "
            "Visual behaviors can also include non-verbal actions that we use to "
            "communicate and express ourselves through our body language.",
            _LIFELIKE_OPTIONS,
        ),
        Question(
            "clarity_of_intent",
            "overall",
            "Which candidate (A or B) most clearly demonstrates an intent with their "
            "visual behaviors?",
            "By “intent,” we mean visual behaviors that are deliberate, "
            "non-repetitive, and convey a specific thought, idea, or emotion.",
            _INTENT_OPTIONS,
        ),
        Question(
            "turn_taking",
            "overall",
            "Which candidate (A or B) appears to have better turn-taking behavior?",
            "By “turn-taking behavior,” we mean gestures to indicate the "
            "intent to speak (such as by raising a hand, palm-up, just before "
            "speaking) or an intent to prompt a response from the dialogue partner "
            "(such as by raising both arms towards the listener or by nodding their "
            "head toward the listener).",
            _TURN_OPTIONS,
        ),
        Question(
            "listening_attentive",
            "listening",
            "While listening, which Candidate displayed more attentive listening "
            "behavior?",
            "By “attentive” we mean behaviors like leaning forward, nodding "
            "or shaking their head in agreement, mirroring the hand or arm gestures "
            "of the Anchor, and visually indicating engagement and understanding.",
            GENERIC_SCALE,
        ),
        Question(
            "listening_believable",
            "listening",
            "While listening, which Candidate's behaviors were more physically "
            "believable?",
            "By “more physically believable” we mean that the motion of the "
            "Candidate is humanly possible and does not exhibit impossible movements "
            "that defy human physiology.",
            GENERIC_SCALE,
        ),
        Question(
            "listening_timing",
            "listening",
            "While listening, which Candidate's visual behaviors were better timed?",
            "By “better timed” we mean that the Candidate's listening "
            "movements and reactions are synchronized with the Anchor's speech.",
            GENERIC_SCALE,
        ),
        Question(
            "listening_appropriate",
            "listening",
            "While listening, which Candidate's behaviors where more appropriate to "
            "the discussed content?",
            "By “more appropriate to the content discussed” we mean that the "
            "Candidate's behaviors, such as head nods and body language, are "
            "consistent with the emotional tone and subject matter of the "
            "conversation.",
            GENERIC_SCALE,
        ),
        Question(
            "speaking_believable",
            "speaking",
            "While speaking, which Candidate's behaviors were more physically "
            "believable?",
            "By “more physically believable” we mean that the motion of the "
            "Candidate is humanly possible and does not exhibit impossible movements "
            "that defy human physiology.",
            GENERIC_SCALE,
        ),
        Question(
            "speaking_timing",
            "speaking",
            "While speaking, which Candidate's visual behaviors were better timed?",
            "By “better timed” we mean that the Candidate's speaking "
            "movements and gestures are synchronized with the Candidate's speech.",
            GENERIC_SCALE,
        ),
        Question(
            "speaking_appropriate",
            "speaking",
            "While speaking, which Candidate's behaviors were more appropriate to "
            "the content discussed?",
            "By “more appropriate to the content discussed” we mean that the "
            "Candidate's behaviors, such as head nods and body language, are "
            "consistent with the emotional tone and subject matter of the "
            "conversation.",
            GENERIC_SCALE,
        ),
    ),
)

FACE_PROTOCOL = Protocol(
    protocol_id="face_dyadic",
    questions=(
        Question(
            "lifelike",
            "overall",
            "Overall, which candidate (A or B) was more life-like?",
            "By “life-like,” we mean that the Candidate behaves in a way "
            "that looks, acts, or seems very similar to something that's real and "
            "alive. Visual behaviors can also include non-verbal actions and facial "
            "expressions that we use to communicate and express ourselves through "
            "our body language.",
            _LIFELIKE_OPTIONS,
        ),
        Question(
            "face_eye_lip",
            "overall",
            "Which candidate (A or B) had better facial expressions, eye movement, "
            "and lip movement?",
            "",
            _BETTER_OPTIONS,
        ),
        Question(
            "clarity_of_intent",
            "overall",
            "Which candidate (A or B) most clearly demonstrated intent with their "
            "facial expressions?",
            "By “intent,” we mean facial expressions and head gestures that "
            "are deliberate, non-repetitive, and convey a specific thought, idea, "
            "or emotion.",
            _INTENT_OPTIONS,
        ),
        Question(
            "turn_taking",
            "overall",
            "Which candidate (A or B) appears to have better turn-taking behavior?",
            "By “turn-taking behavior,” we refer to facial expressions and "
            "head gestures that signal the intention to speak or encourage a "
            "response from the dialogue partner. Examples of turn-taking behaviors "
            "are: a raised eyebrow, a subtle tilt of the head, slight opening of "
            "the mouth, a nod, and other nonverbal cues.",
            _TURN_OPTIONS,
        ),
        Question(
            "listening_attentive",
            "listening",
            "While listening, which Candidate displayed more attentive listening "
            "head gestures and facial expressions?",
            "By “attentive” we mean behaviors like leaning forward, nodding "
            "or shaking their head in agreement, visually indicating engagement and "
            "understanding.",
            GENERIC_SCALE,
        ),
        Question(
            "listening_believable",
            "listening",
            "While listening, which Candidate's facial expressions and head gestures "
            "were more physically believable?",
            "By “more physically believable” we mean that the facial "
            "expressions and gestures of the Candidate are humanly possible and do "
            "not exhibit impossible movements that defy human physiology.",
            GENERIC_SCALE,
        ),
        Question(
            "listening_timing",
            "listening",
            "While listening, which Candidate's facial expressions and head gestures "
            "were better timed?",
            "By “better timed” we mean that the Candidate's listening "
            "movements and reactions are synchronized with the Anchor's speech.",
            GENERIC_SCALE,
        ),
        Question(
            "listening_appropriate",
            "listening",
            "While listening, which Candidate's facial expressions and head gestures "
            "where more appropriate to the discussed content?",
            "By “more appropriate to the content discussed” we mean that the "
            "Candidate's behaviors, such as head nods and body language, are "
            "consistent with the emotional tone and subject matter of the "
            "conversation.",
            GENERIC_SCALE,
        ),
        Question(
            "speaking_believable",
            "speaking",
            "While speaking, which Candidate's facial expressions and head gestures "
            "were more physically believable?",
            "By “more physically believable” we mean that the head movements "
            "and facial expressions of the Candidate are humanly possible and do not "
            "exhibit impossible movements that defy human physiology.",
            GENERIC_SCALE,
        ),
        Question(
            "speaking_timing",
            "speaking",
            "While speaking, which Candidate's facial expressions and head gestures "
            "were better timed?",
            "By “better timed” we mean that the Candidate's speaking "
            "movements (head nods and facial gestures) are synchronized well with "
            "the Candidate's speech.",
            GENERIC_SCALE,
        ),
        Question(
            "speaking_appropriate",
            "speaking",
            "While speaking, which Candidate's facial expressions and head gestures "
            "were more appropriate to the content discussed?",
            "By “more appropriate to the content discussed” we mean that the "
            "Candidate's behaviors, such as head nods, facial expression, and body "
            "language, are consistent with the emotional tone and subject matter of "
            "the conversation.",
            GENERIC_SCALE,
        ),
    ),
)

PROTOCOLS: dict[str, Protocol] = {
    "body_dyadic": BODY_PROTOCOL,
    "face_dyadic": FACE_PROTOCOL,
}


def get_protocol(protocol_id: str) -> Protocol:
    try:
        return PROTOCOLS[protocol_id]
    except KeyError:
        raise ConfigError(f"unknown protocol {protocol_id!r}; have {PROTOCOL_IDS}")


def export_protocol_fixture(protocol_id: str, path: str | Path) -> Path:
    """Write the versioned protocol JSON consumed by the browser client."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(get_protocol(protocol_id).to_dict(), indent=2, ensure_ascii=False)
        + "\n",
        encoding="utf-8",
    )
    return path
