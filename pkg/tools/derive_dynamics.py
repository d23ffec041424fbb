"""Derive the closed-form leg dynamics with sympy and write them as plain Python.

Run from the repository root::

    python tools/derive_dynamics.py > src/adaptive_leg/_closed_form.py

The output depends only on math; sympy is needed for regeneration, not at runtime.
"""

import sys
import time

import sympy as sp

q = sp.symbols("q0:4", real=True)
qd = sp.symbols("qd0:4", real=True)
qdd = sp.symbols("qdd0:4", real=True)
mu, ml, lu, cu, cl, g, eps = sp.symbols("mu ml lu cu cl g eps", positive=True)
S = sp.symbols("s0:4", real=True)
C = sp.symbols("c0:4", real=True)


def Rx(t):
    return sp.Matrix([[1, 0, 0], [0, sp.cos(t), -sp.sin(t)], [0, sp.sin(t), sp.cos(t)]])


def Ry(t):
    return sp.Matrix([[sp.cos(t), 0, sp.sin(t)], [0, 1, 0], [-sp.sin(t), 0, sp.cos(t)]])


def Rz(t):
    return sp.Matrix([[sp.cos(t), -sp.sin(t), 0], [sp.sin(t), sp.cos(t), 0], [0, 0, 1]])


def trig_symbols(expr):
    subs = {}
    for i in range(4):
        subs[sp.sin(q[i])] = S[i]
        subs[sp.cos(q[i])] = C[i]
    return expr.subs(subs)


def emit(name, args, exprs, doc):
    exprs = [trig_symbols(sp.sympify(e)) for e in exprs]
    used = set().union(*(e.free_symbols for e in exprs))
    repl, reduced = sp.cse(exprs, symbols=sp.numbered_symbols("x"), optimizations="basic")
    lines = [f"def {name}({', '.join(args)}):", f'    """{doc}"""']
    if "q" in args:
        lines.append("    q0, q1, q2, q3 = q")
    if "qd" in args:
        lines.append("    qd0, qd1, qd2, qd3 = qd")
    if "qdd" in args:
        lines.append("    qdd0, qdd1, qdd2, qdd3 = qdd")
    for i in range(4):
        if S[i] in used or any(S[i] in r.free_symbols for _, r in repl):
            lines.append(f"    s{i} = sin(q{i})")
        if C[i] in used or any(C[i] in r.free_symbols for _, r in repl):
            lines.append(f"    c{i} = cos(q{i})")
    for sym, val in repl:
        lines.append(f"    {sym} = {sp.pycode(val, fully_qualified_modules=False)}")
    body = ", ".join(sp.pycode(e, fully_qualified_modules=False) for e in reduced)
    lines.append(f"    return ({body})")
    return "\n".join(lines)


def main():
    t0 = time.time()
    qv = sp.Matrix(q)
    z = sp.Matrix([0, 0, 1])
    rot = Rz(q[0]) * Ry(-q[1]) * Rx(q[2])
    # unit-length directions: upper CoM = cu*A, lower CoM = lu*A + cl*B
    A = rot * z
    B = rot * Ry(q[3]) * z
    JA = A.jacobian(qv)
    JB = B.jacobian(qv)

    Ju = cu * JA
    Jl = lu * JA + cl * JB
    M = (mu * Ju.T * Ju + ml * Jl.T * Jl).applyfunc(lambda e: sp.trigsimp(sp.expand(e)))
    M = M + eps * sp.eye(4)
    assert all(sp.diff(M[i, j], q[0]) == 0 for i in range(4) for j in range(4))

    upper = [(i, j) for i in range(4) for j in range(i, 4)]
    dM = [M.applyfunc(lambda e: sp.diff(e, q[k])) for k in range(4)]

    pot = g * (mu * cu * A[2] + ml * (lu * A[2] + cl * B[2]))
    G = sp.Matrix([sp.trigsimp(sp.diff(pot, q[k])) for k in range(4)])

    # Coriolis/centripetal vector from Christoffel symbols of the first kind
    h = []
    for k in range(4):
        acc = 0
        for i in range(4):
            for j in range(4):
                chr_ijk = (dM[i][k, j] + dM[j][k, i] - dM[k][i, j]) / 2
                acc += chr_ijk * qd[i] * qd[j]
        h.append(sp.expand(acc))
    Cqd = sp.Matrix(h)

    # plant path: the same C(q, qd) qd written as J^T (dJ/dt qd) per point mass
    def vel_product(J):
        return sum((J.diff(q[i]) * qd[i] for i in range(4)), sp.zeros(3, 4)) * sp.Matrix(qd)

    acc_u = vel_product(Ju)
    acc_l = vel_product(Jl)
    # the Lagrangian does not depend on the z-hip angle, so neither does the bias
    bias = (mu * Ju.T * acc_u + ml * Jl.T * acc_l + G).subs(q[0], 0)

    tau = M * sp.Matrix(qdd) + Cqd + G
    groups = [cu**2, cu, cl**2, cl, 1]
    phi = []
    for r in range(4):
        poly = sp.Poly(sp.expand(tau[r]), cu, cl)
        allowed = {(2, 0), (1, 0), (0, 2), (0, 1), (0, 0)}
        assert set(poly.as_dict()) <= allowed, poly.as_dict().keys()
        row = [poly.coeff_monomial(m) for m in groups]
        phi.append([sp.factor_terms(sp.expand(e)) for e in row])

    out = [
        '"""Closed-form kinematic and dynamic terms of the 4-DoF leg.',
        "",
        "Generated by tools/derive_dynamics.py. Do not edit by hand.",
        "",
        "Joint order is (z-hip, y-hip, x-hip, y-knee). Matrices are returned",
        "row-major as flat tuples; symmetric matrices as their upper triangle",
        '"""',
        "",
        "from math import cos, sin",
    ]
    funcs = []
    funcs.append(emit("direction_upper", ["q"], list(A) + list(JA),
                    "Unit hip-axis direction A(q) and its 3x4 Jacobian."))
    funcs.append(emit("direction_lower", ["q"], list(B) + list(JB),
                    "Unit shank direction B(q) and its 3x4 Jacobian."))
    funcs.append(emit("mass_matrix", ["q", "mu", "ml", "lu", "cu", "cl", "eps"],
                    [M[i, j] for i, j in upper],
                    "Upper triangle of M(q), rotor regularizer included."))
    funcs.append(emit("mass_matrix_partials", ["q", "mu", "ml", "lu", "cu", "cl"],
                    [dM[k][i, j] for k in range(1, 4) for i, j in upper],
                    "Upper triangles of dM/dq1, dM/dq2, dM/dq3 (dM/dq0 vanishes)."))
    funcs.append(emit("gravity", ["q", "mu", "ml", "lu", "cu", "cl", "g"], list(G),
                    "Gravity torque G(q) = dP/dq."))
    funcs.append(emit("bias", ["q", "qd", "mu", "ml", "lu", "cu", "cl", "g"], list(bias),
                    "Velocity-product plus gravity torque C(q, qd) qd + G(q)."))
    funcs.append(emit("regressor", ["q", "qd", "qdd", "mu", "ml", "lu", "g", "eps"],
                    [e for row in phi for e in row],
                    "4x5 regressor grouped by (cu^2, cu, cl^2, cl, 1)."))
    sys.stdout.write("\n".join(out) + "\n\n\n" + "\n\n\n".join(funcs) + "\n")
    print(f"derived in {time.time() - t0:.1f} s", file=sys.stderr)


if __name__ == "__main__":
    main()
