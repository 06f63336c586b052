"""Certificates for the nonexistence of generalized bent functions of type [n, 2p^e]."""

__version__ = "0.1.0"

from .arith import factor, is_prime, is_wieferich_base, mult_order, ord_prime_power, two_part
from .criterion import Certificate, classify_known, gbf_criterion, norm_criterion
from .cyclotomic import CyclotomicInt, SubfieldSpec, absolute_norm, delta_report, half_representation
from .gbf import GBFCandidate, exhaustive_search, fourier, is_gbf
from .relsearch import ClassGroupFixture, brute_oracle, load_fixture, max_np, parse_fixture, relation_solvable
from .scanner import ScanFilter, density, scan, smallest_certified, wieferich_scan

__all__ = [
    "Certificate",
    "ClassGroupFixture",
    "CyclotomicInt",
    "GBFCandidate",
    "ScanFilter",
    "SubfieldSpec",
    "absolute_norm",
    "brute_oracle",
    "classify_known",
    "delta_report",
    "density",
    "exhaustive_search",
    "factor",
    "fourier",
    "gbf_criterion",
    "half_representation",
    "is_gbf",
    "is_prime",
    "is_wieferich_base",
    "load_fixture",
    "max_np",
    "mult_order",
    "norm_criterion",
    "ord_prime_power",
    "parse_fixture",
    "relation_solvable",
    "scan",
    "smallest_certified",
    "two_part",
    "wieferich_scan",
]
