"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Exact products are timed through the public polynomial API with the kernel
functions swapped underneath; float evaluation calls ``eval_batch`` directly.
"""

import argparse
import time

import numpy as np

from isoparam import _backend, _purekernels
from isoparam.construct import cartan_cubic, clifford_system, fkm_quartic, normalized_ot_quartic
from isoparam.compose import chebyshev_compose
from isoparam.polyring import FloatBatch, Polynomial, grad_norm_sq, gradient, poly_diff, poly_mul

try:
    from isoparam import _kernels
except ImportError:
    _kernels = None

NAMES = ("Accumulator", "eval_batch")


def use(mod):
    for name in NAMES:
        setattr(_backend, name, getattr(mod, name))


def fresh(p: Polynomial) -> Polynomial:
    # drop cached packed/float forms so every run pays for conversion alike
    return Polynomial(p.dim, p.terms)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def exact_cases():
    c8 = cartan_cubic(8)
    grads8 = gradient(c8)
    ot2 = normalized_ot_quartic(2)
    d_ot2 = poly_diff(ot2, 1)
    fkm = fkm_quartic(clifford_system(3, 2))
    octic = chebyshev_compose(normalized_ot_quartic(1), 2)

    def grad_norm_c8():
        for g in grads8:
            g = fresh(g)
            poly_mul(g, g)

    def square_ot_partial():
        g = fresh(d_ot2)
        poly_mul(g, g)

    def fkm_times_cubic():
        poly_mul(fresh(fkm), fresh(poly_diff(fkm, 1)))

    def grad_norm_octic():
        grad_norm_sq(fresh(octic))

    return [
        ("grad norm of 26-var cubic", grad_norm_c8),
        ("grad norm of 10-var octic", grad_norm_octic),
        ("square of d/dx1 of 20-var quartic", square_ot_partial),
        ("16-var quartic times cubic", fkm_times_cubic),
    ]


def float_case():
    f = fkm_quartic(clifford_system(3, 2))
    batch = FloatBatch([f] + gradient(f))
    xs = np.random.default_rng(0).standard_normal((200, batch.exps.shape[1]))
    return batch, xs


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = [("python", _purekernels)] + ([("cython", _kernels)] if _kernels else [])
    if _kernels is None:
        print("compiled extension not built; timing the pure-Python kernels only")

    rows = []
    for label, fn in exact_cases():
        row = [label]
        for _, mod in backends:
            use(mod)
            row.append(best_of(fn, args.repeat))
        rows.append(row)

    batch, xs = float_case()
    row = ["value+gradient at 200 points"]
    for _, mod in backends:
        row.append(best_of(lambda: [mod.eval_batch(batch.exps, batch.coeffs, batch.offsets, x) for x in xs],
                           args.repeat))
    rows.append(row)

    head = f"{'case':<36}" + "".join(f"{name:>10}" for name, _ in backends)
    if len(backends) == 2:
        head += f"{'speedup':>10}"
    print(head)
    for row in rows:
        line = f"{row[0]:<36}" + "".join(f"{t:>9.3f}s" for t in row[1:])
        if len(row) == 3:
            line += f"{row[1] / row[2]:>9.1f}x"
        print(line)
    use(_backend.kernels)


if __name__ == "__main__":
    main()
