"""Prime covers for numbers that stay composite however many copies of a digit are appended."""

from digitcover.cover import (
    PANDIGITAL_POOL,
    CoherentSolution,
    CoverCertificate,
    CoverError,
    PrimeCover,
    find_coherent_covers,
    find_cover,
    verify_cover,
)
from digitcover.crt import CongruenceSystem, IncompatibleCongruences, ProgressionFamily, crt_combine
from digitcover.modular import ResidueClass, period, seed_residue_for_divisibility
from digitcover.primality import Verdict, is_probable_prime, lucas_n_plus_one_prove
from digitcover.search import (
    all_digit_seed_check,
    eliminate_below,
    pandigital_family,
    pandigital_verify,
    verify_seed_bounded,
)
from digitcover.sequence import SequenceSpec, append_digits, repunit

__version__ = "0.1.0"

__all__ = [
    "PANDIGITAL_POOL",
    "CoherentSolution",
    "CongruenceSystem",
    "CoverCertificate",
    "CoverError",
    "IncompatibleCongruences",
    "PrimeCover",
    "ProgressionFamily",
    "ResidueClass",
    "SequenceSpec",
    "Verdict",
    "all_digit_seed_check",
    "append_digits",
    "crt_combine",
    "eliminate_below",
    "find_coherent_covers",
    "find_cover",
    "is_probable_prime",
    "lucas_n_plus_one_prove",
    "pandigital_family",
    "pandigital_verify",
    "period",
    "repunit",
    "seed_residue_for_divisibility",
    "verify_cover",
    "verify_seed_bounded",
]
