#!/usr/bin/env python3
"""The deformed-sl(2) structure behind each boson mode, verified numerically.

For power k the ladder operators built from a^k and (a+)^k close on a
degree-k structure polynomial instead of the linear sl(2) term.  The
script prints the structure polynomial and Casimir values for small k and
runs the identity suite on truncated Fock matrices.
"""

from fractions import Fraction

from multiboson import casimir_value, phi_polynomial, verify_single_mode_algebra

print("Structure polynomial at a few points, exact rational arithmetic:")
for k in (1, 2, 3):
    pts = [Fraction(0), Fraction(1, 4), Fraction(1)]
    vals = ", ".join(f"phi({p}) = {phi_polynomial(k, p)}" for p in pts)
    print(f"  k = {k}: {vals}")

print("\nCasimir eigenvalues (constant on every tower):")
for k in (1, 2, 3, 4):
    print(f"  k = {k}: C = {casimir_value(k)}")

print("\nIdentity suite on truncated matrices (interior states only):")
for k in (1, 2, 3, 4):
    report = verify_single_mode_algebra(k, trunc=6 * k)
    for check in report.checks:
        status = "ok" if check.passed else "FAIL"
        print(f"  k = {k}  {check.name:<16} {status}  max error {check.max_error:.2e}")
