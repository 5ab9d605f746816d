#!/usr/bin/env python3
"""Generate high-precision reference values for the certificate closed forms.

Evaluates the stability-certificate constants with 50-digit arithmetic (mpmath)
and prints a C++ table ready to freeze into the tests. Also solves a couple of
scalar equations used as frozen oracles elsewhere in the test suite.

Run:  python3 tests/gen_reference_values.py
"""

from mpmath import mp, mpf, exp, sqrt, findroot

mp.dps = 50


def certificate(r_nat, r_int, rho, sup_q):
    r_nat, r_int, rho, sup_q = map(mpf, (r_nat, r_int, rho, sup_q))
    q0 = (r_nat - r_int) * sup_q
    eps0 = r_int - q0
    s0 = exp(-(1 + 2 * r_nat)) / r_nat
    i0 = rho * (r_int - 1) / r_int * exp(-(2 / (rho * (r_int - 1)) + 1 / r_int) * r_nat)
    kappa = rho / 4 * sqrt(eps0 * s0 / (2 * r_nat)) - q0 / (i0 * r_int) * (
        rho**2 * q0 / r_int**3 + rho * r_nat / r_int**2 + 1
    )
    a = r_nat / (2 * i0 * r_int) + q0 / (2 * s0 * r_int**2)
    b = q0 / r_int * (rho**2 * q0 / (i0 * r_int**3) + rho / (i0 * r_int) + 1)
    p = (a + b) / (a + b + kappa)
    return dict(q0=q0, eps0=eps0, s0=s0, i0=i0, kappa=kappa, a=a, b=b, p=p)


CASES = [
    # (r_nat, r_int, rho, sup_q)   sup_q = 2 is the uniform density on the triangle
    ("1.8", "1.7", "0.5", "2"),
    ("2.0", "1.8", "0.1", "2"),
    ("2.0", "1.9", "0.5", "2"),
    ("1.5", "1.25", "0.1", "2"),
    ("3.0", "2.0", "0.5", "2"),
    ("2.0", "2.0", "0.5", "2"),  # delta = 0
]


def emit_table():
    print("// generated by tests/gen_reference_values.py (mpmath, 50 digits)")
    print("struct CertificateReference {")
    print("    double r_nat, r_int, rho, sup_q;")
    print("    double q0, eps0, s0, i0, kappa, a, b, p;")
    print("};")
    print("inline constexpr CertificateReference kCertificateReferences[] = {")
    for r_nat, r_int, rho, sup_q in CASES:
        c = certificate(r_nat, r_int, rho, sup_q)
        fields = ", ".join(mp.nstr(c[k], 17, strip_zeros=False) for k in
                           ("q0", "eps0", "s0", "i0", "kappa", "a", "b", "p"))
        print(f"    {{{r_nat}, {r_int}, {rho}, {sup_q}, {fields}}},")
    print("};")


def emit_roots():
    # Endemic equilibrium of the virgin rising branch of the uniform-density
    # operator, R(I) = r_nat - (r_nat - r_int) I^2: solve 1/R(I) = 1 - I/rho.
    def root_for(r_nat, r_int, rho):
        r_nat, r_int, rho = map(mpf, (r_nat, r_int, rho))
        f = lambda i: 1 / (r_nat - (r_nat - r_int) * i * i) - (1 - i / rho)
        return findroot(f, rho / 2)

    print()
    print("// root of 1/(2 - 0.5 I^2) = 1 - 2 I  on [0, 0.5]")
    print("inline constexpr double kUniformVirginEndemicI =",
          mp.nstr(root_for("2.0", "1.5", "0.5"), 17) + ";")
    print("// root of 1/(2 - 0.2 I^2) = 1 - 10 I  on [0, 0.1]")
    print("inline constexpr double kUniformVirginEndemicI_rho01 =",
          mp.nstr(root_for("2.0", "1.8", "0.1"), 17) + ";")


if __name__ == "__main__":
    emit_table()
    emit_roots()
