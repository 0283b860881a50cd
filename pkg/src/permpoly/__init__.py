"""permpoly: exact permutation-polynomial toolkit over finite fields.

Construction and verification of permutation polynomials, closed-form
compositional inverses cross-validated against brute force, commuting-diagram
bijectivity criteria, and S-box export.  See the README for the CLI.
"""

from ._kernels import BACKEND as kernel_backend
from .errors import (ArityError, DiagramMismatch, DivisionByZero, InternalError,
                     LevelMismatch, NoBezout, NoSuchRoot, NotAPermutation,
                     PermPolyError, PreconditionFailed, RangeError)
from .families import (CyclotomicParams, LinearizedFamilyParams, TraceFamilyParams,
                       TwistParams, VerificationReport, bezout, cpp_check,
                       cyclotomic_check, cyclotomic_inverse, cyclotomic_legs,
                       linearized_build, linearized_check, linearized_inverse,
                       linearized_legs, trace_build, trace_check, trace_inverse,
                       trace_legs, twist_inverse, twist_map)
from .fields import (Field, FieldElement, FieldSpec, extension_field, field_spec,
                     find_irreducible, frobenius, prime_field, rel_trace, tower)
from .linearized import ImageLine, LinearizedContext, context
from .local_method import (AgwVerdict, DiagramLeg, LocalVerdict, Recombinator,
                           assemble_inverse, check_agw, check_local_criterion,
                           verify_legs, verify_recombinator)
from .oracle import brute_inverse, is_permutation
from .polyring import MapTable, Poly, compose, evaluate, interpolate, reduce_mod_qx, tabulate

__version__ = "0.1.0"
