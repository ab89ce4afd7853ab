"""Independent scipy references for finite-width sequence profiles.

Physical waveforms (constant Rabi, truncated unit-area detuning pulses at the
segment boundaries) integrated with DOP853, compared against the composite
pulse built from instantaneous phase jumps. Printed constants are frozen in
tests/test_scan.cpp.
"""
import numpy as np
from scipy.integrate import quad, solve_ivp


def envelope(kind, tau):
    if kind == "sech":
        f, half = (lambda t: 1 / np.cosh(t / tau) / (np.pi * tau)), 40 * tau
    elif kind == "gaussian":
        f, half = (lambda t: np.exp(-t * t / (2 * tau * tau)) / (tau * np.sqrt(2 * np.pi))), 10 * tau
    elif kind == "lorentzian":
        f, half = (lambda t: tau / (np.pi * (t * t + tau * tau))), 200 * tau
    z = 2 * quad(f, 0, half, limit=500, points=[tau])[0]
    return (lambda t: f(t) / z if abs(t) <= half else 0.0), half


def sequence(phases, alpha, tau, kind="sech", det=0.0):
    g, half = envelope(kind, tau)
    areas = np.diff(phases)
    n = len(phases)
    centers = np.pi * np.arange(1, n)

    def rhs(t, y):
        d = det + sum(a * g(t - c) for a, c in zip(areas, centers))
        h = 0.5 * np.array([[-d, alpha], [alpha, d]])
        return (-1j * h @ y.reshape(2, 2)).reshape(-1)

    cuts = {0.0, n * np.pi}
    for c in centers:
        cuts |= {c, c - half, c + half, c - 3 * tau, c + 3 * tau}
    cuts = sorted(x for x in cuts if 0 <= x <= n * np.pi)
    u = np.eye(2, dtype=complex)
    for t0, t1 in zip(cuts[:-1], cuts[1:]):
        step = tau / 5 if t1 - t0 < 100 * tau else 0.05
        sol = solve_ivp(rhs, (t0, t1), u.reshape(-1), method="DOP853",
                        rtol=1e-12, atol=1e-13, max_step=step)
        u = sol.y[:, -1].reshape(2, 2)
    return abs(u[1, 0]) ** 2


def composite(phases, alpha):
    u = np.eye(2, dtype=complex)
    c, s = np.cos(np.pi * alpha / 2), np.sin(np.pi * alpha / 2)
    for p in phases:
        u = np.array([[c, -1j * s * np.exp(1j * p)],
                      [-1j * s * np.exp(-1j * p), c]]) @ u
    return abs(u[1, 0]) ** 2


bb3 = [0, 2 * np.pi / 3, 0]
for a in (0.5, 1.0, 1.5, 1.8, 2.0):
    p = sequence(bb3, a, 0.01)
    print(f"bb3 tau=0.01 alpha={a}: P={p!r} P_cp={composite(bb3, a)!r}")
for a in (1.6, 1.8, 2.0):
    vals = [sequence(bb3, a, 0.05, k) for k in ("sech", "gaussian", "lorentzian")]
    print(f"bb3 tau=0.05 alpha={a} sech/gaussian/lorentzian:", [repr(v) for v in vals])
uni = np.array([0, 5, 2, 5, 0]) * np.pi / 6
for tau in (0.05, 0.001):
    print(f"universal tau={tau}: P(1.5,0.5)={sequence(uni, 1.5, tau, det=0.5)!r}"
          f" P(1.1,0.1)={sequence(uni, 1.1, tau, det=0.1)!r}")
