"""Pure-Python (numpy) twin of the compiled RK4 propagator."""
import numpy as np


def rk4_propagate(ops, coefs, psi0, dt, record):
    """Integrate ``i dpsi/dt = H(t) psi`` and return the states at ``record`` steps.

    ``coefs[n, 0/1/2, m]`` are the term weights at the start, midpoint and
    end of step ``n``.
    """
    ops = np.ascontiguousarray(ops, dtype=np.complex128)
    coefs = np.ascontiguousarray(coefs, dtype=np.float64)
    record = np.asarray(record, dtype=np.int64)
    nsteps = coefs.shape[0]
    if record.size and record[-1] > nsteps:
        raise ValueError("record index beyond the last step")
    psi = np.array(psi0, dtype=np.complex128)
    out = np.empty((record.size, psi.size), dtype=np.complex128)
    r = 0
    while r < record.size and record[r] == 0:
        out[r] = psi
        r += 1
    h2, h6 = 0.5 * dt, dt / 6.0
    for n in range(nsteps):
        c0, c1, c2 = coefs[n]
        H0 = np.tensordot(c0, ops, 1)
        H1 = np.tensordot(c1, ops, 1)
        H2 = np.tensordot(c2, ops, 1)
        k1 = -1j * (H0 @ psi)
        k2 = -1j * (H1 @ (psi + h2 * k1))
        k3 = -1j * (H1 @ (psi + h2 * k2))
        k4 = -1j * (H2 @ (psi + dt * k3))
        psi = psi + h6 * (k1 + 2 * k2 + 2 * k3 + k4)
        while r < record.size and record[r] == n + 1:
            out[r] = psi
            r += 1
    return out
