#!/usr/bin/env python3
"""Correcting noise that is not a Pauli error.

A random 3x3 unitary hits one site of an encoded state.  Measuring the
four stabilizers collapses the corruption onto a discrete syndrome
branch; each branch is then a plain Pauli error the lookup table already
knows.  Every branch returns to the codeword up to global phase -- the
discretization of errors in action.
"""

import numpy as np

from qutritqec.code import build_code
from qutritqec.decode import (
    apply_single_site_unitary,
    build_syndrome_table,
    measure_and_correct_branches,
)
from qutritqec.errormodel import random_unitary


def main():
    rng = np.random.default_rng(20240817)
    code = build_code(validate=False)
    table = build_syndrome_table(code)
    psi = code.codewords[0]

    u = random_unitary(rng)
    print("Random single-site unitary:")
    for row in u:
        print("   ", "  ".join(f"{z.real:+.3f}{z.imag:+.3f}j" for z in row))

    site = 2
    corrupted = apply_single_site_unitary(psi.to_float(), site, u)
    print(f"\napplied to site {site} of the encoded |0_L>")
    print(f"corrupted state norm: {corrupted.norm2():.12f}")

    print("\nProjective stabilizer measurement, branch by branch")
    print("=" * 60)
    branches = measure_and_correct_branches(table, corrupted, reference=psi)
    total = 0.0
    for b in branches:
        total += b.weight
        print(
            f"  syndrome {str(b.syndrome):<18} weight {b.weight:.6f}  "
            f"fidelity after correction {b.fidelity:.12f}"
        )
    print(f"\nBorn weights sum to {total:.12f}")
    worst = min(b.fidelity for b in branches)
    print(f"worst-branch fidelity: {worst:.15f}")
    assert worst > 1.0 - 1e-10

    print("\nEvery outcome of the measurement is correctable: continuous")
    print("single-site noise costs nothing beyond the Pauli error set.")


if __name__ == "__main__":
    main()
