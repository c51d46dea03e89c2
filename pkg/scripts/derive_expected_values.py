"""High-precision derivation of the frozen constants used in the test suite.

Computes the reference-device quantities (plasma frequency, resonant bias,
oscillator length, vacuum Rabi frequency, protocol durations) with mpmath at
50 significant digits, independently of the package implementation.  The
printed values are copy-pasted into tests as frozen expectations; rerun this
script if a tolerance ever looks suspicious.
"""

import mpmath as mp

mp.mp.dps = 50

# CODATA 2018: hbar = 6.582119569e-16 eV s, exact to the digits shown.
HBAR_EV_NS = mp.mpf("6.582119569e-16") * mp.mpf("1e9")   # eV ns

# Reference device
E_J_EV = mp.mpf("43.05e-3")      # junction Josephson energy, eV
E_C_EV = mp.mpf("53.33e-9")      # junction charging energy, eV
F0_GHZ = mp.mpf("15.0")          # resonator frequency, GHz
G_RATIO = mp.mpf("0.05")         # coupling over hbar*omega0


def report(name, value, unit=""):
    print(f"{name:28s} = {mp.nstr(value, 17)} {unit}")


omega0 = 2 * mp.pi * F0_GHZ                             # rad/ns
omega_p0 = mp.sqrt(2 * E_C_EV * E_J_EV) / HBAR_EV_NS    # rad/ns
ratio = omega0 / omega_p0
s_star = mp.sqrt(1 - ratio ** 4)

ell = lambda s: (2 * E_C_EV / E_J_EV) ** mp.mpf("0.25") * (1 - s * s) ** (-mp.mpf(1) / 8)
level_spacing = lambda s: omega_p0 * (1 - s * s) ** mp.mpf("0.25")   # rad/ns units of hbar=1

ell_star = ell(s_star)
x01 = ell_star / mp.sqrt(2)
g_int = G_RATIO * omega0                                 # rad/ns
omega_rabi = 2 * g_int * x01
gate_time = 4 * mp.pi / omega_rabi                       # storage + retrieval dwells

report("hbar", HBAR_EV_NS, "eV ns")
report("omega0", omega0, "rad/ns")
report("omega_p0", omega_p0, "rad/ns")
report("omega_p0 / 2 pi", omega_p0 / (2 * mp.pi), "GHz")
report("s_star", s_star)
report("level spacing at s*", level_spacing(s_star), "rad/ns")
report("level spacing at s* / 2pi", level_spacing(s_star) / (2 * mp.pi), "GHz")
report("level spacing at 0.545/2pi", level_spacing(mp.mpf("0.545")) / (2 * mp.pi), "GHz")
report("ell at s*", ell_star)
report("ell at 0.407", ell(mp.mpf("0.407")))
report("x01", x01)
report("g", g_int, "rad/ns")
report("Omega_Rabi", omega_rabi, "rad/ns")
report("pi / Omega (store dwell)", mp.pi / omega_rabi, "ns")
report("3 pi / Omega (retrieve)", 3 * mp.pi / omega_rabi, "ns")
report("4 pi / Omega (gate time)", gate_time, "ns")
report("2 pi / Omega (Rabi period)", 2 * mp.pi / omega_rabi, "ns")

# Detuned beat rate at the storage bias: level spacing minus omega0.
for s_off in ("0.30", "0.407", "0.50"):
    s = mp.mpf(s_off)
    report(f"beat rate at s={s_off}", level_spacing(s) - omega0, "rad/ns")

# Second junction matrix element, used in spot checks of phi_matrix.
report("x12 at s*", ell_star, " (= sqrt(2)*ell/sqrt(2))")
