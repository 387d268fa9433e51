"""Elliptic integrals of the second kind by the arithmetic-geometric mean.

Used as an independent check on the quadrature in
:func:`footballs.geometry.profile_height`, which satisfies

    profile_height(u, k) = E(k) + E(u - pi/2, k).
"""
import math

_MAX_ITER = 64


def _agm_sequence(k):
    a, b, c = 1.0, math.sqrt(1.0 - k * k), k
    seq = [(a, b, c)]
    for _ in range(_MAX_ITER):
        if abs(c) <= 1e-15 * a:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        seq.append((a, b, c))
    return seq


def ellipe(k):
    """Complete integral ``E(k) = int_0^{pi/2} sqrt(1 - k^2 sin^2 t) dt``."""
    if not 0.0 <= k < 1.0:
        raise ValueError(f"modulus must lie in [0, 1), got {k}")
    seq = _agm_sequence(k)
    s = sum(2.0 ** (n - 1) * c * c for n, (_, _, c) in enumerate(seq))
    a_inf = seq[-1][0]
    return math.pi / (2.0 * a_inf) * (1.0 - s)


def ellipeinc(phi, k):
    """Incomplete integral ``E(phi, k) = int_0^phi sqrt(1 - k^2 sin^2 t) dt``.

    Descending Landen transformation: the amplitude roughly doubles at each
    AGM step, ``phi_{n+1} = phi_n + atan(b_n tan(phi_n) / a_n)``, with the
    branch of the arctangent chosen continuously in ``phi``.
    """
    if not 0.0 <= k < 1.0:
        raise ValueError(f"modulus must lie in [0, 1), got {k}")
    if phi == 0.0:
        return 0.0
    if phi < 0.0:
        return -ellipeinc(-phi, k)
    seq = _agm_sequence(k)
    ph = phi
    c_sum = 0.5 * k * k
    sin_sum = 0.0
    for n in range(len(seq) - 1):
        a, b, _ = seq[n]
        psi = math.atan2(b * math.sin(ph), a * math.cos(ph))
        psi += 2.0 * math.pi * round((ph - psi) / (2.0 * math.pi))
        ph = ph + psi
        c = seq[n + 1][2]
        c_sum += 2.0 ** n * c * c
        sin_sum += c * math.sin(ph)
    N = len(seq) - 1
    F = ph / (2.0**N * seq[-1][0])
    return F * (1.0 - c_sum) + sin_sum


def profile_height_agm(u, B):
    """``int_0^u sqrt(1 - B^2 cos^2 t) dt`` via the odd extension of ``E(., B)``."""
    return ellipe(B) + ellipeinc(u - 0.5 * math.pi, B)
