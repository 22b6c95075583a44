"""The lamplighter group as the group of a 2-state Mealy machine.

Three realizations of every element are provided and cross-checked:
transduction by Mealy machines (:mod:`lamplight.mealy`), affine maps on
truncated power series (:mod:`lamplight.series`, :mod:`lamplight.affine`),
and (lamp set, position) pairs (:mod:`lamplight.lamplighter`).
"""

from lamplight.kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
