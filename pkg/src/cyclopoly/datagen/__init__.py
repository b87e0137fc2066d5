from .billiard import BilliardConfig, gen_billiard, simulate_billiard
from .csvio import load_bundled, load_csv, write_csv
from .synthetic import StudyDatasetSpec, StudyKind, gen_study_dataset, gen_teaser

__all__ = [
    "BilliardConfig", "gen_billiard", "simulate_billiard",
    "load_bundled", "load_csv", "write_csv",
    "StudyDatasetSpec", "StudyKind", "gen_study_dataset", "gen_teaser",
]
