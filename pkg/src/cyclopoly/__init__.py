"""Cyclic polygon plots for n-dimensional data."""
from .model import (ClusterEvalReport, CyclicPolygon, DataError, Dataset, DataVector, GlyphLayout,
                    ScaleSpec, Scheme, Strategy, Transform, validate_dataset)
from .scheme import cyclic_shift, select, select_abbc, select_abcd

__version__ = "0.1.0"
