"""Finite loops given by Cayley tables: Osborn identities, isotopy,
small-order enumeration and a cipher engine built on loop translations."""
from .loop import (FiniteLoop, LoopError, MalformedFile, NoIdentity, NotLatinSquare,
                   ldiv, left_inverse, load_loop, mul, parse_loop, rdiv, right_inverse,
                   serialize_loop)
from .mappings import (MappingWord, Permutation, evaluate, parse_word, theta,
                       translation, words_equal)
from .properties import PropertyReport, has_property, is_osborn
from .isotopy import (check_OS0_prime, check_OSI, is_g_loop, is_universal_osborn,
                      principal_isotope)
from .theorems import CATALOGUE, verify_theorem
from .enumerate import corpus, enumerate_loops, inverse_cycles, kinyon16

__version__ = "0.1.0"

__all__ = [
    "FiniteLoop", "LoopError", "MalformedFile", "NoIdentity", "NotLatinSquare",
    "mul", "ldiv", "rdiv", "left_inverse", "right_inverse",
    "parse_loop", "serialize_loop", "load_loop",
    "MappingWord", "Permutation", "evaluate", "parse_word", "theta", "translation",
    "words_equal", "PropertyReport", "has_property", "is_osborn",
    "check_OS0_prime", "check_OSI", "is_g_loop", "is_universal_osborn",
    "principal_isotope", "CATALOGUE", "verify_theorem",
    "corpus", "enumerate_loops", "inverse_cycles", "kinyon16",
]
