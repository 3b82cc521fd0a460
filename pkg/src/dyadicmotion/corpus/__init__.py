"""Corpus data model, manifests, statistics, text analyses, and synthesis."""

from .coupling import CouplingReport, coupling_report, load_features, plugin_mutual_information
from .featurefile import read_feature_file, write_feature_file
from .manifest import load_manifest, save_manifest
from .qa import FilterDecision, merge_qa_flags
from .records import (
    ANNOTATION_KINDS,
    IPC_OCTANTS,
    PARTS,
    QA_CATEGORIES,
    QA_SOURCES,
    RELATIONSHIPS,
    SPLITS,
    AnnotationRecord,
    CorpusManifest,
    InteractionRecord,
    ParticipantRecord,
    QaFlagSet,
)
from .splits import SplitReport, SplitViolation, validate_splits
from .stats import CorpusStats, StatsRow, compute_stats
from .synthetic import SyntheticConfig, generate_synthetic_corpus
from .textstats import count_syllables, flesch_reading_ease, mtld, text_report

__all__ = [
    "CouplingReport",
    "coupling_report",
    "load_features",
    "plugin_mutual_information",
    "read_feature_file",
    "write_feature_file",
    "load_manifest",
    "save_manifest",
    "FilterDecision",
    "merge_qa_flags",
    "ANNOTATION_KINDS",
    "IPC_OCTANTS",
    "PARTS",
    "QA_CATEGORIES",
    "QA_SOURCES",
    "RELATIONSHIPS",
    "SPLITS",
    "AnnotationRecord",
    "CorpusManifest",
    "InteractionRecord",
    "ParticipantRecord",
    "QaFlagSet",
    "SplitReport",
    "SplitViolation",
    "validate_splits",
    "CorpusStats",
    "StatsRow",
    "compute_stats",
    "SyntheticConfig",
    "generate_synthetic_corpus",
    "count_syllables",
    "flesch_reading_ease",
    "mtld",
    "text_report",
]
