"""Closed-form kinematic and dynamic terms of the 4-DoF leg.

Generated by tools/derive_dynamics.py. Do not edit by hand.

Joint order is (z-hip, y-hip, x-hip, y-knee). Matrices are returned
row-major as flat tuples; symmetric matrices as their upper triangle
"""

from math import cos, sin


def direction_upper(q):
    """Unit hip-axis direction A(q) and its 3x4 Jacobian."""
    q0, q1, q2, q3 = q
    s0 = sin(q0)
    c0 = cos(q0)
    s1 = sin(q1)
    c1 = cos(q1)
    s2 = sin(q2)
    c2 = cos(q2)
    x0 = c0*c2
    x1 = s0*s2 - s1*x0
    x2 = c0*s2
    x3 = c2*s0
    x4 = s1*x3 + x2
    x5 = c1*c2
    return (x1, -x4, x5, x4, -c0*x5, s1*x2 + x3, 0, x1, -s0*x5, s0*s1*s2 - x0, 0, 0, -c2*s1, -c1*s2, 0)


def direction_lower(q):
    """Unit shank direction B(q) and its 3x4 Jacobian."""
    q0, q1, q2, q3 = q
    s0 = sin(q0)
    c0 = cos(q0)
    s1 = sin(q1)
    c1 = cos(q1)
    s2 = sin(q2)
    c2 = cos(q2)
    s3 = sin(q3)
    c3 = cos(q3)
    x0 = c1*s3
    x1 = s0*s2
    x2 = c0*c2
    x3 = s1*x2 - x1
    x4 = c0*x0 - c3*x3
    x5 = c0*s2
    x6 = c2*s0
    x7 = s1*x6 + x5
    x8 = -c3*x7 + s0*x0
    x9 = c1*c3
    x10 = c2*x9 + s1*s3
    return (x4, x8, x10, -x8, -c0*x10, c3*(s1*x5 + x6), c0*x9 + s3*x3, x4, -s0*x10, -c3*(-s1*x1 + x2), s0*x9 + s3*x7, 0, -c2*c3*s1 + x0, -s2*x9, -c2*x0 + c3*s1)


def mass_matrix(q, mu, ml, lu, cu, cl, eps):
    """Upper triangle of M(q), rotor regularizer included."""
    q0, q1, q2, q3 = q
    s1 = sin(q1)
    c1 = cos(q1)
    s2 = sin(q2)
    c2 = cos(q2)
    s3 = sin(q3)
    c3 = cos(q3)
    x0 = cu**2
    x1 = lu**2
    x2 = c1**2
    x3 = cl**2
    x4 = c3**2
    x5 = ml*x3
    x6 = x4*x5
    x7 = -x6
    x8 = c1*c2
    x9 = cl*ml
    x10 = 2*x9
    x11 = s1*s3
    x12 = c2**2
    x13 = mu*x0
    x14 = x12*x13
    x15 = ml*x1
    x16 = x12*x15
    x17 = x2*x4*x5
    x18 = c3*x5
    x19 = x11*x18
    x20 = c3*lu
    x21 = x10*x20
    x22 = x12*x21
    x23 = lu*x9
    x24 = s3*x8
    x25 = x9*(cl + x20)
    x26 = eps + x5
    return (2*c3*cl*lu*ml + eps - lu*x10*x11*x8 + ml*x1 + ml*x2*x3 + mu*x0 - x12*x17 - x14*x2 - x16*x2 - x17 - 2*x19*x8 - x2*x22 - x7, -s2*(x11*x23 + x13*x8 + x15*x8 + x19 + x21*x8 + x6*x8), s1*x13 + s1*x15 + s1*x21 + s1*x6 - x18*x24 - x23*x24, c1*s2*x25, x12*x6 + x14 + x16 + x22 + x26 + x7, -s2*s3*x9*(c3*cl + lu), -c2*x25, eps + x13 + x15 + x21 + x6, 0, x26)


def mass_matrix_partials(q, mu, ml, lu, cu, cl):
    """Upper triangles of dM/dq1, dM/dq2, dM/dq3 (dM/dq0 vanishes)."""
    q0, q1, q2, q3 = q
    s1 = sin(q1)
    c1 = cos(q1)
    s2 = sin(q2)
    c2 = cos(q2)
    s3 = sin(q3)
    c3 = cos(q3)
    x0 = cl**2*ml
    x1 = c1*s1
    x2 = s1**2
    x3 = lu*s3
    x4 = cl*ml
    x5 = x3*x4
    x6 = c2*x5
    x7 = cu**2*mu
    x8 = c1*x7
    x9 = c2**2
    x10 = s1*x9
    x11 = lu**2*ml
    x12 = c1*x11
    x13 = c3**2
    x14 = x0*x13
    x15 = x1*x14
    x16 = c1**2
    x17 = x16*x3
    x18 = c2*x4
    x19 = c3*x0
    x20 = s3*x19
    x21 = c2*x20
    x22 = c3*lu
    x23 = s1*x22
    x24 = 2*x4
    x25 = x23*x24
    x26 = c2*s1
    x27 = c1*s3
    x28 = x22*x24
    x29 = c1*x14
    x30 = cl + x22
    x31 = s2*x4
    x32 = x30*x31
    x33 = s1*x3
    x34 = c1*c2
    x35 = x22*x34
    x36 = c2*x12 + c2*x29 + c2*x8 + s1*x20 + x24*x35 + x33*x4
    x37 = 2*s2
    x38 = x11 + x14 + x28 + x7
    x39 = c3*cl
    x40 = lu + x39
    x41 = s3*x40
    x42 = s3*x39
    x43 = x16*x42
    x44 = s3**2
    x45 = cl*s1*x44
    x46 = cl*x13
    x47 = s1*x46
    x48 = 2*x34
    return (2*c1*x25*x9 - 2*x0*x1 + 2*x10*x12 + 2*x10*x8 + 2*x15*x9 + 2*x15 - 2*x16*x21 - 2*x17*x18 + 2*x2*x21 + 2*x2*x6, s2*(-c1*x5 + c2*x25 + x11*x26 + x14*x26 - x19*x27 + x26*x7), c1*x28 + x12 + x20*x26 + x26*x5 + x29 + x8, -s1*x32, 0, 0, 0, 0, 0, 0, c1*x36*x37, c1*s2**2*x38 - c2*x36, x27*x31*x40, x30*x34*x4, -c2*x37*x38, -x18*x41, x32, 0, 0, 0, x24*(x17*x9 - x23*x34 - x3 + x34*x45 - x34*x47 - x42 + x43*x9 + x43), x31*(-x23 + x3*x48 + x42*x48 + x45 - x47), x4*(c1*c2*cl*x44 - 2*s1*x42 - 2*x33 - x34*x46 - x35), -c1*x3*x31, s3*x24*(c3*cl - lu*x9 - x39*x9), x31*(-c3*x40 + cl*x44), x6, -x24*x41, 0, 0)


def gravity(q, mu, ml, lu, cu, cl, g):
    """Gravity torque G(q) = dP/dq."""
    q0, q1, q2, q3 = q
    s1 = sin(q1)
    c1 = cos(q1)
    s2 = sin(q2)
    c2 = cos(q2)
    s3 = sin(q3)
    c3 = cos(q3)
    x0 = cu*mu
    x1 = c2*s1
    x2 = c1*s3
    x3 = c3*s1
    x4 = cl*ml
    return (0, -g*(ml*(-cl*(-c2*x3 + x2) + lu*x1) + x0*x1), -c1*g*s2*(c3*x4 + lu*ml + x0), -g*x4*(c2*x2 - x3))


def bias(q, qd, mu, ml, lu, cu, cl, g):
    """Velocity-product plus gravity torque C(q, qd) qd + G(q)."""
    q0, q1, q2, q3 = q
    qd0, qd1, qd2, qd3 = qd
    s1 = sin(q1)
    c1 = cos(q1)
    s2 = sin(q2)
    c2 = cos(q2)
    s3 = sin(q3)
    c3 = cos(q3)
    x0 = c2*s1
    x1 = c2*qd0
    x2 = qd0*s1
    x3 = qd2 + x2
    x4 = qd2*s2
    x5 = qd0*s2
    x6 = s1*x4
    x7 = c2*qd1
    x8 = c1*x7
    x9 = cu**2
    x10 = mu*x9
    x11 = x10*(-c1*qd1*x1 + qd0*(x5 + x6 - x8) + x3*x4)
    x12 = c1*s2
    x13 = qd1*x12
    x14 = c2*qd2
    x15 = qd1*(qd2*x12 + s1*x7) + qd2*(s1*x14 + x1 + x13) + x1*x3
    x16 = c2*lu
    x17 = s1*s3
    x18 = c1*c3
    x19 = c2*x18 + x17
    x20 = c1*x16 + cl*x19
    x21 = qd1*x20
    x22 = c2*x17 + x18
    x23 = cl*qd3
    x24 = c3*cl
    x25 = lu + x24
    x26 = qd2*x25
    x27 = s2*x26
    x28 = s1*x27 - x21 + x22*x23
    x29 = -qd0*x21 + qd0*(x25*x5 + x28) + qd2*(c2*s3*x23 + s2*x2*x25 + x27) + x23*(c3*qd3*s2 + qd0*x22 + s3*x14)
    x30 = c1*s3
    x31 = c3*s1
    x32 = -c2*x31 + x30
    x33 = -cl*x32 + s1*x16
    x34 = ml*x33
    x35 = c2*x26
    x36 = s2*x23
    x37 = c2*x30 - x31
    x38 = qd0*(qd0*x33 - s2*s3*x23 + x35) + qd1*(c1*x27 + qd1*x33 + x23*x37) + qd2*(s1*x35 + x1*x25 + x13*x25 - x17*x36) - x23*(-qd1*x37 + qd3*x32 + s3*x5 + x17*x4)
    x39 = cu*mu
    x40 = qd1*s1*s2
    x41 = qd1*(-x6 + x8) + qd2*(c1*x14 - x40)
    x42 = qd1*x28 + qd2*(-c1*x35 + x25*x40 + x30*x36) + x23*(qd1*x22 - qd3*x19 + x30*x4)
    x43 = ml*x25
    return (ml*s2*x25*x38 + mu*s2*x15*x9 - x0*x11 - x29*x34, -c1*c2*x10*x15 + c2*mu*s1*x41*x9 - g*(ml*x33 + x0*x39) - ml*x20*x38 - x34*x42, c1*mu*s2*x41*x9 - c2*x11 - c2*x29*x43 - g*x12*(lu*ml + ml*x24 + x39) + ml*s1*s2*x25*x38 + mu*s1*s2*x15*x9 - x12*x42*x43, cl*ml*(-g*x37 + s2*s3*x29 + x22*x38 - x37*x42))


def regressor(q, qd, qdd, mu, ml, lu, g, eps):
    """4x5 regressor grouped by (cu^2, cu, cl^2, cl, 1)."""
    q0, q1, q2, q3 = q
    qd0, qd1, qd2, qd3 = qd
    qdd0, qdd1, qdd2, qdd3 = qdd
    s1 = sin(q1)
    c1 = cos(q1)
    s2 = sin(q2)
    c2 = cos(q2)
    s3 = sin(q3)
    c3 = cos(q3)
    x0 = qdd2*s1
    x1 = c1*qd2
    x2 = qd1*x1
    x3 = c2*qdd1
    x4 = c1*s2
    x5 = x3*x4
    x6 = s2**2
    x7 = x2*x6
    x8 = qd1**2
    x9 = c2*s2
    x10 = x8*x9
    x11 = s1*x10
    x12 = c2**2
    x13 = x12*x2
    x14 = c1**2
    x15 = qdd0*x14
    x16 = x12*x15
    x17 = c1*s1
    x18 = 2*qd0
    x19 = qd1*x18
    x20 = x17*x19
    x21 = x12*x20
    x22 = x14*x9
    x23 = qd2*x18
    x24 = x22*x23
    x25 = qdd3*x4
    x26 = c3**2
    x27 = qdd0*x26
    x28 = c2*qd3
    x29 = x1*x28
    x30 = 2*c3
    x31 = qd3*s3
    x32 = x30*x31
    x33 = qd0*x32
    x34 = qd3*s2
    x35 = qd1*x34
    x36 = s1*x35
    x37 = c1*s3
    x38 = c2*x37
    x39 = qdd2*x38
    x40 = qd2*x32
    x41 = c3*s3
    x42 = qdd1*s2
    x43 = x41*x42
    x44 = s3**2
    x45 = qd2**2
    x46 = x41*x45
    x47 = qdd0*s1
    x48 = x38*x47
    x49 = qdd1*x26
    x50 = c2*x4
    x51 = x41*x8
    x52 = x14*x33
    x53 = s3*x4
    x54 = x28*x53
    x55 = qd0*x1
    x56 = s1*s3
    x57 = s2*x55*x56
    x58 = x17*x28
    x59 = x18*x58
    x60 = c2*x14
    x61 = qd0*x30
    x62 = qd1*x61
    x63 = s3*x62
    x64 = c2*s1**2
    x65 = qdd0*x30
    x66 = x18*x31
    x67 = 2*qd2
    x68 = qd3**2
    x69 = 2*qd1
    x70 = s3*x19
    x71 = 4*c3*qd0
    x72 = lu*ml
    x73 = lu**2
    x74 = ml*x73
    x75 = qdd0*x74
    x76 = qdd0*x4
    x77 = qdd1*x12
    x78 = qd1*x9
    x79 = x67*x78
    x80 = x12*x55
    x81 = x55*x6
    x82 = qd0**2
    x83 = x17*x82
    x84 = x12*x83
    x85 = g*s1
    x86 = c2*x85
    x87 = c2*qdd3
    x88 = qd2*x34
    x89 = qdd2*s2
    x90 = qd1*x32
    x91 = qd0*s1
    x92 = x34*x91
    x93 = s2*x47
    x94 = x26*x55
    x95 = x56*x61
    x96 = qd2*x95
    x97 = x26*x83
    x98 = x41*x82
    x99 = x14*x98
    x100 = g*x37
    x101 = c3*x85
    x102 = c3*lu
    x103 = lu*s3
    x104 = x103*x45
    x105 = lu*x30
    x106 = c2*x103
    x107 = s1*x23
    x108 = x103*x12
    x109 = x103*x82
    x110 = x109*x14
    x111 = c1*qd0
    x112 = qd1*x111
    x113 = x112*x12
    x114 = x112*x6
    x115 = x22*x82
    x116 = g*x4
    x117 = x111*x28
    x118 = qdd0*x38
    x119 = s1*x4
    x120 = qd3*x103
    x121 = x106*x19
    x122 = qd1*s2
    x123 = qd2*x122
    x124 = c2*x55
    x125 = x122*x91
    x126 = c2*x83
    return (mu*(qdd0 + x0 + x11 - x13 - x16 + x2 + x21 + x24 - x5 + x7), 0, ml*(-c3*x39 + qd1*x30*x54 - s1*x40 - s1*x43 + x0*x26 + x11*x26 + x12*x52 - x13*x26 - x15*x26 + x15 - x16*x26 + x2*x26 + x20*x26 - x20 + x21*x26 + x24*x26 + x25 - x26*x29 - x26*x36 - x26*x59 + x26*x7 + x27 + x29*x44 + x29 - x30*x48 + x30*x57 - x33 + x36*x44 - x36 + x4*x46 - x4*x51 + x44*x59 - x49*x50 + x52 - x60*x63 + x63*x64), -x72*(-c3*x25 - qd1*x12*x17*x71 - qd2*x22*x71 + s1*x31*x67 - x0*x30 - x11*x30 - x12*x14*x66 + x13*x30 + x16*x30 - x2*x30 + x30*x36 + x30*x5 - x30*x7 + x39 + x42*x56 - x45*x53 + 2*x48 + x53*x68 + x53*x8 - x54*x69 - 2*x57 + x58*x61 + x60*x70 - x64*x70 - x65 + x66), eps*qdd0 + x0*x74 + x11*x74 - x13*x74 - x16*x74 + x2*x74 + x21*x74 + x24*x74 - x5*x74 + x7*x74 + x75, -mu*(c2*x76 + x55 - x77 + x79 + x80 - x81 + x84), -mu*x86, -ml*(c2*x46 + c2*x96 - c2*x99 - qdd1 + x12*x90 - x26*x77 + x26*x79 + x26*x80 - x26*x81 + x26*x84 + x26*x88 + x26*x92 + x27*x50 + x41*x89 + x41*x93 - x44*x88 - x44*x92 + x49 - x54*x61 + x64*x98 - x83 + x87 - x88 - x90 - x92 + x94 + x97), -ml*(c2*x101 + c2*x104 - c2*x110 + lu*x50*x65 + 4*qd2*x102*x78 + qd3*x108*x69 - x100 + x102*x87 - x103*x18*x28*x4 + x103*x89 + x103*x93 + x105*x55 - x105*x77 + x105*x80 - x105*x81 + x105*x84 + x106*x107 - x106*x68 + x109*x64), c1*ml*qd0*qd2*x6*x73 + eps*qdd1 + ml*qdd1*x12*x73 - x50*x75 - x55*x74 - x72*x86 - x74*x79 - x74*x80 - x74*x84, mu*(qdd2 + x10 + x112 + x113 - x114 - x115 + x47), -mu*x116, -ml*(-c2*qd1*x95 + c3*x118 - qdd2*x26 - s1*x27 - x10*x26 - x112*x26 - x113*x26 + x114*x26 + x115*x26 + x117*x26 - x117*x44 + x117 + x119*x98 + x26*x35 + x32*x91 - x35*x44 + x35 + x40 + x43), -ml*(c3*x116 + lu*x118 - qdd2*x105 + s1*x120*x18 - s1*x121 - x10*x105 + x103*x42 - x105*x112 - x105*x113 + x105*x114 + x105*x115 + x105*x117 + x105*x35 - x105*x47 + x109*x119 + x120*x67), eps*qdd2 + qdd2*x74 + x10*x74 + x112*x74 + x113*x74 - x114*x74 - x115*x74 - x116*x72 + x47*x74, 0, 0, ml*(-c2*x53*x62 + c2*x94 + c2*x97 + qdd3 + x12*x51 - x12*x99 + x123*x26 - x123*x44 + x123 - x124*x44 + x124 + x125*x26 - x125*x44 - x125 - x126*x44 - x3 + x46 - x51 + x76 + x96 + x98 - x99), ml*(-c2*x100 + x101 + x102*x126 - x102*x3 + x102*x76 + x103*x107 + x104 + x105*x123 + x105*x124 + x108*x8 + x109 - x110*x12 - x121*x4), eps*qdd3)
