"""Variety presentations for the real and complex cases, witnesses, verification."""

from .io import (
    FormatError,
    read_json,
    variety_from_json,
    variety_to_json,
    witness_from_json,
    witness_to_json,
    write_json,
)
from .variety import (
    Coordinate,
    DimensionTooSmall,
    DiophantineInstance,
    NotIntegral,
    ReductionError,
    VarietyPresentation,
    build_complex_variety,
    build_real_variety,
    complex_layout,
    expected_counts,
)
from .verify import IncompleteWitness, VerificationReport, verify_witness
from .witness import (
    EmbeddingWitness,
    InvalidWitness,
    NonconstantTjViolation,
    NotASolution,
    ZeroComponent,
    complex_witness,
    real_witness,
)
