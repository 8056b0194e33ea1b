"""Invariants of pfaffian ideals of ladders.

>>> from pfladder import make_family, report
>>> report(family="M", t=2).multiplicity
5
"""

from .errors import PfladderError
from .invariants import (
    InvariantReport,
    hvec_generic,
    mult_formula,
    mult_generic,
    mult_krattenthaler,
    mult_product,
    reg_closed,
    reg_from_hvector,
    report,
)
from .kernel import backend_name, use_backend
from .ladder import (
    LadderIdealSpec,
    biliaison_step,
    height,
    make_family,
    make_spec,
    normalize,
    render_ascii,
    tilde,
)
from .oracle import verify

__version__ = "0.1.0"

__all__ = [
    "PfladderError",
    "InvariantReport",
    "LadderIdealSpec",
    "backend_name",
    "biliaison_step",
    "height",
    "hvec_generic",
    "make_family",
    "make_spec",
    "mult_formula",
    "mult_generic",
    "mult_krattenthaler",
    "mult_product",
    "normalize",
    "reg_closed",
    "reg_from_hvector",
    "render_ascii",
    "report",
    "tilde",
    "use_backend",
    "verify",
]
