"""Dynamic suffix-array and inverted-suffix-array engines.

The substitution-only inverted-suffix-array engine (`DynamicISA`) answers
iSA lookups in polylog time with ~sqrt(n) work per substitution; the
full-edit suffix-array engine (`DynamicSA`) answers SA/BWT/LCP-array
lookups with ~n^(2/3) work per edit.  Both are verified end to end against
brute-force oracles (`dynsa.oracle`).
"""

from .counters import Counters
from .csr import DynamicISA
from .dsa import DynamicSA
from .dynstr import DynamicString, DualView, EditOp

__all__ = [
    "Counters",
    "DynamicISA",
    "DynamicSA",
    "DynamicString",
    "DualView",
    "EditOp",
]
