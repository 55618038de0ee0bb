"""Regenerates tests/data/kubo_oracle.csv with 40-digit mpmath arithmetic.

Evaluates sigma(w) = (2 e^2 kB T / (pi hbar^2)) ln[2 cosh(E_F / (2 kB T))] * i / (w + i / tau)
directly as a complex expression, independently of the Rust code path.

    python3 tests/oracle/kubo_oracle.py > tests/data/kubo_oracle.csv
"""
from mpmath import mp, mpf, mpc, pi, log, cosh, nstr

mp.dps = 40
E = mpf("1.602176634e-19")
HBAR = mpf("1.054571817e-34")
KB = mpf("1.380649e-23")
T = mpf(300)

print("fermi_ev,tau_ps,freq_hz,sigma_re,sigma_im")
for ef in ("0.1", "0.4", "0.8", "1.2"):
    for tau_ps in ("0.3", "0.6", "0.9", "1.2"):
        for i in range(100):
            f = mpf(220e9) + (mpf(325e9) - mpf(220e9)) * i / 99
            w = 2 * pi * f
            x = mpf(ef) * E / (2 * KB * T)
            weight = 2 * E**2 * KB * T / (pi * HBAR**2) * log(2 * cosh(x))
            sigma = weight * mpc(0, 1) / (w + mpc(0, 1) / (mpf(tau_ps) * mpf("1e-12")))
            print(f"{ef},{tau_ps},{nstr(f, 20)},{nstr(sigma.real, 20)},{nstr(sigma.imag, 20)}")
