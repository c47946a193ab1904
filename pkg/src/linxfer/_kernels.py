"""Numba kernels for the state-vector engine and the annealer.

Basis index ``z`` stores qubit ``q`` in bit ``q`` (qubit 0 least significant).
"""
import numba
import numpy as np


@numba.njit(cache=True)
def cost_table(n_qubits, ii, jj, J, offset):
    size = 1 << n_qubits
    out = np.empty(size)
    m = J.shape[0]
    for z in range(size):
        v = offset
        for e in range(m):
            if ((z >> ii[e]) ^ (z >> jj[e])) & 1:
                v += J[e] * -1.0
            else:
                v += J[e] * 1.0
        out[z] = v
    return out


@numba.njit(cache=True)
def apply_phase(psi, levels, level_index, gamma):
    # e^{-i gamma C}; phases computed once per distinct cost value
    ph = np.exp(-1j * gamma * levels)
    for z in range(psi.shape[0]):
        psi[z] *= ph[level_index[z]]


@numba.njit(cache=True)
def apply_mixer(psi, n_qubits, beta):
    # e^{-i beta X} on every qubit, two qubits per pass
    size = psi.shape[0]
    c = np.cos(beta)
    s = -1j * np.sin(beta)
    cc = c * c
    cs = c * s
    ss = s * s
    q = 0
    while q + 1 < n_qubits:
        m1 = 1 << q
        m2 = m1 << 1
        for hi in range(0, size, m1 << 2):
            for lo in range(hi, hi + m1):
                a0 = psi[lo]
                a1 = psi[lo + m1]
                a2 = psi[lo + m2]
                a3 = psi[lo + m1 + m2]
                psi[lo] = cc * a0 + cs * (a1 + a2) + ss * a3
                psi[lo + m1] = cc * a1 + cs * (a0 + a3) + ss * a2
                psi[lo + m2] = cc * a2 + cs * (a0 + a3) + ss * a1
                psi[lo + m1 + m2] = cc * a3 + cs * (a1 + a2) + ss * a0
        q += 2
    if q < n_qubits:
        m = 1 << q
        for hi in range(0, size, m << 1):
            for lo in range(hi, hi + m):
                a = psi[lo]
                b = psi[lo + m]
                psi[lo] = c * a + s * b
                psi[lo + m] = s * a + c * b


@numba.njit(cache=True)
def anneal(spins, nbr_ptr, nbr_idx, nbr_J, temps, uniforms, order):
    """Single-spin-flip Metropolis over a temperature ladder.

    ``uniforms`` and ``order`` have shape (sweeps, n); returns the best spins
    seen and their energy change relative to the starting configuration.
    """
    n = spins.shape[0]
    best = spins.copy()
    cur = 0.0
    best_e = 0.0
    for t in range(temps.shape[0]):
        T = temps[t]
        for k in range(n):
            i = order[t, k]
            local = 0.0
            for e in range(nbr_ptr[i], nbr_ptr[i + 1]):
                local += nbr_J[e] * spins[nbr_idx[e]]
            delta = -2.0 * spins[i] * local
            if delta <= 0.0 or uniforms[t, k] < np.exp(-delta / T):
                spins[i] = -spins[i]
                cur += delta
                if cur < best_e - 1e-12:
                    best_e = cur
                    best[:] = spins
    return best, best_e
