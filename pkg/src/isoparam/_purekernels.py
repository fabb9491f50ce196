"""Pure-Python reference kernels.

Same contract as the compiled ``_kernels`` module; selected automatically
when the extension is unavailable or ``ISOPARAM_PURE=1`` is set.  Unlike the
compiled accumulator this one has no size limits, so it is also the fallback
whenever the compiled one raises :class:`OverflowError`.

Exact products work on packed monomials (one int per monomial, exponents in
fixed bit fields, so multiplying monomials is adding keys) and integer
coefficient pairs ``(A, B)`` meaning ``(A + B*sqrt3) / D`` for a common
denominator ``D`` kept by the caller.
"""

import numpy as np

BACKEND = "python"


class Accumulator:
    """Running sum of ``mult * P * Q`` over packed operands."""

    native = False

    def __init__(self, size_hint=0):
        self._acc = {}

    def __len__(self):
        return len(self._acc)

    def product(self, kp, ap, bp, kq, aq, bq, mult=1):
        out = self._acc
        get = out.get
        for ki, ai, bi in zip(kp, ap, bp):
            if mult != 1:
                ai, bi = ai * mult, bi * mult
            bi3 = 3 * bi
            for kj, aj, bj in zip(kq, aq, bq):
                k = ki + kj
                cur = get(k)
                if cur is None:
                    out[k] = [ai * aj + bi3 * bj, ai * bj + bi * aj]
                else:
                    cur[0] += ai * aj + bi3 * bj
                    cur[1] += ai * bj + bi * aj

    def square(self, kp, ap, bp, mult=1):
        """``mult * P**2`` using each unordered pair of terms once."""
        out = self._acc
        get = out.get
        t = len(kp)
        for i in range(t):
            ki, ai, bi = kp[i], ap[i], bp[i]
            ma, mb = ai * mult, bi * mult
            k = ki + ki
            sa, sb = ma * ai + 3 * mb * bi, 2 * ma * bi
            cur = get(k)
            if cur is None:
                out[k] = [sa, sb]
            else:
                cur[0] += sa
                cur[1] += sb
            ai2, bi2 = 2 * ma, 2 * mb
            bi6 = 3 * bi2
            for j in range(i + 1, t):
                aj, bj = ap[j], bp[j]
                k = ki + kp[j]
                cur = get(k)
                if cur is None:
                    out[k] = [ai2 * aj + bi6 * bj, ai2 * bj + bi2 * aj]
                else:
                    cur[0] += ai2 * aj + bi6 * bj
                    cur[1] += ai2 * bj + bi2 * aj

    def items(self):
        """``(keys, A, B)`` lists of the nonzero entries."""
        keys, avals, bvals = [], [], []
        for k, (a, b) in self._acc.items():
            if a or b:
                keys.append(k)
                avals.append(a)
                bvals.append(b)
        return keys, avals, bvals


def eval_batch(exps, coeffs, offsets, x):
    exps = np.asarray(exps, dtype=np.int32)
    x = np.asarray(x, dtype=np.float64)
    npoly = len(offsets) - 1
    if exps.shape[0] == 0:
        return np.zeros(npoly)
    maxdeg = int(exps.max()) if exps.size else 0
    table = x[:, None] ** np.arange(maxdeg + 1)[None, :]
    vals = np.prod(table[np.arange(x.shape[0])[None, :], exps], axis=1) * coeffs
    seg = np.repeat(np.arange(npoly), np.diff(offsets))
    return np.bincount(seg, weights=vals, minlength=npoly)
