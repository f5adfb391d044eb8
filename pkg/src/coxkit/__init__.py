"""coxkit: exact computation with finitely generated Coxeter groups.

The library works throughout in the Tits reflection representation over the
real cyclotomic field Q(2cos(pi/N)), so every sign, length, and wall relation
is decided exactly.  On top of that sit the diagram combinatorics (twist
rigidity, elementary twists, pseudo-transpositions and reductions), the
base/marking calculus, hierarchies of geodesics with their slice resolution,
and generation plus independent verification of move-sequence certificates
connecting good markings.
"""

from .exactnum import FieldContext, CycReal, FieldError, field_init, embed_cos
from .coxgroup import (
    INF,
    CoxeterError,
    CoxeterSystem,
    build_system,
)

__all__ = [
    "FieldContext",
    "CycReal",
    "FieldError",
    "field_init",
    "embed_cos",
    "INF",
    "CoxeterError",
    "CoxeterSystem",
    "build_system",
]

__version__ = "0.1.0"
