"""Exact computations with diagonal braidings of Cartan type and their Nichols algebras."""

from .braiding import BraidingMatrix, CartanTypeResult, FLWitness, cartan_type
from .cartan import GeneralizedCartanMatrix
from .cyclotomic import CyclotomicInt, RootOfUnity
from .errors import (AmbiguousLogError, NotSymmetrizableError, PreconditionError,
                     RecognizerMismatch, ResourceGuardError)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousLogError", "BraidingMatrix", "CartanTypeResult", "CyclotomicInt", "FLWitness",
    "GeneralizedCartanMatrix", "NotSymmetrizableError", "PreconditionError",
    "RecognizerMismatch", "ResourceGuardError", "RootOfUnity", "cartan_type",
]
