"""n-ary associative operations on finite sets and multilinear polynomials."""
from .algebra import INTEGERS, PrimeField, RingElem, RingSpec
from .errors import InfeasibleSize, InputError
from .finops import DerivationCertificate, FiniteOp, derivable_from, derive, is_associative, is_primitive
from .kernels import BACKEND

__version__ = "0.1.0"
