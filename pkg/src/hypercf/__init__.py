"""Exact continued-fraction expansions on hyperelliptic curves.

Rational arithmetic throughout: expansion lines, the equivalent genus-1/2
birational maps, moment/Hankel-determinant formulas, Somos relation
detection, and the Poisson structure on Lax matrices, all verified
bit-exactly.
"""

from .cfrac import CFLine, CurveSpec, Expansion, SeedLine, expand_G, step_backward, step_forward, validate_seed
from .errors import (
    DivisionByZeroError,
    HypercfError,
    InputError,
    PoleError,
    SingularExpansionError,
    SingularOrbitError,
    VerificationError,
)
from .exactnum import Dual, Rational, dual_eval, rat, rat_arith, rat_str
from .moments import (
    HankelTable,
    MomentSeq,
    TauSeq,
    appendix_identities,
    glue_tau,
    hankel_table,
    moments_backward,
    moments_forward,
    orthopoly_q,
    verify_theorem2,
    verify_theorem3,
)
from .poisson import LaxPoint, PoissonTensor, bracket_eval, bt_step
from .somos import SomosRelation, chx_bridge, qrt_check, somos4_verify, somos8_detect, somos_k_find
from .upoly import LaurentTail, Poly, Series, poly_divmod, poly_shift, series_invert, sqrt_series

__version__ = "0.1.0"
