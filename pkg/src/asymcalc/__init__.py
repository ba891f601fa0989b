"""Exact calculus for asymptotic scales of continuous functions on (0,1].

Core layers, bottom up:

- polytools / window / ivset: exact rational polynomials, piecewise
  rational profiles, and interval sets.
- pwfunc: self-similar piecewise elements (the representatives).
- scaleset: asymptotic sets and the extension order.
- signs / genconst: sign engines and the generalized-constant ring
  operations (inversion, extension, gluing).
- ideal / afilter: finitely generated ideals and asymptotic filters.
- verify: seeded corpora, numeric oracles, invariant check suites.
- dsl / cli: the script language and the command line front-end.
"""

from .pwfunc import PwFunction, TailComponent
from .scaleset import AsymptoticSet
from .genconst import GenConstant

__all__ = ["PwFunction", "TailComponent", "AsymptoticSet", "GenConstant"]
__version__ = "0.1.0"
