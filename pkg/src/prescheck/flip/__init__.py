"""Executable ingredients of the positive preservation theorem for flip-flat classes."""

from .constants import ConstantSchedule, theorem_constants
from .cover import CoverCertificate, bottleneck_cover, verify_cover
from .disjoint import DisjointVerdict, disjoint_extension_check
from .ef import GuardExceeded, mso_ef_equivalent, mso_type
from .flat import FlatWitness, flipflat_probe, verify_flat_witness
from .oracle import TypeOracle, exact_type_oracle, signature_type_oracle

__all__ = [
    "ConstantSchedule", "CoverCertificate", "DisjointVerdict", "FlatWitness", "GuardExceeded",
    "TypeOracle", "bottleneck_cover", "disjoint_extension_check", "exact_type_oracle",
    "flipflat_probe", "mso_ef_equivalent", "mso_type", "signature_type_oracle",
    "theorem_constants", "verify_cover", "verify_flat_witness",
]
