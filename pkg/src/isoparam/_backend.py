"""Pick the compiled kernels when importable, else the pure-Python ones."""

import os

from . import _purekernels

if os.environ.get("ISOPARAM_PURE", "") not in ("", "0"):
    kernels = _purekernels
else:
    try:
        from . import _kernels as kernels
    except ImportError:  # extension not built
        kernels = _purekernels

BACKEND = kernels.BACKEND
Accumulator = kernels.Accumulator
eval_batch = kernels.eval_batch
# unbounded, used when the compiled accumulator reports overflow
FallbackAccumulator = _purekernels.Accumulator
