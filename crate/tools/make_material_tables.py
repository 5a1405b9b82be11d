#!/usr/bin/env python3
"""Generate the sample material tables shipped under crates/core/data/.

Dynamic polarizabilities are built from effective oscillator sums

    alpha(i xi) = sum_j f_j / (E_j^2 + (hbar xi)^2)        [atomic units]

with the discrete line strengths taken from standard spectroscopic
compilations (NIST ASD; Drake's helium tables; Na D-line f-values), a single
effective oscillator standing in for the valence continuum, and one for the
core electrons. The continuum strength is fixed by anchoring alpha(0) to the
accurate static values (Yan & Babb, PRA 58, 1247 (1998) for He* 2^3S;
Derevianko et al., PRL 82, 3589 (1999) for Na); the core strength is fixed by
the Thomas-Reiche-Kuhn sum rule. The resulting curves carry the correct
static limit, the correct 1/xi^2 high-frequency tail, and percent-level
accuracy in between -- adequate sample data, not a substitute for the
published ab initio tables.

The gold absorption file holds the interband (bound-electron) part of
Im eps(omega) for Au as n, k columns, from the six-oscillator Lorentz
parameterization used in precision Casimir work (Decca et al., Ann. Phys.
318, 37 (2005); Klimchitskaya, Mohideen, Mostepanenko, RMP 81, 1827 (2009)).
The free-electron part is intentionally absent: the library adds it
analytically as the plasma (or Drude) extrapolation term, so tabulating it
here would double count.
"""

import math
import os

HBAR = 1.054571817e-34
EV = 1.602176634e-19
HARTREE_EV = 27.211386245988
A0 = 5.29177210903e-11

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "data")


def oscillator_alpha_au(oscillators, xi_rad_s):
    w_au = xi_rad_s * HBAR / (HARTREE_EV * EV)
    return sum(f / ((e / HARTREE_EV) ** 2 + w_au**2) for f, e in oscillators)


def build_atom(discrete, alpha0_target_au, n_electrons, core_alpha_au, e_continuum_ev):
    disc_alpha = sum(f / ((e / HARTREE_EV) ** 2) for f, e in discrete)
    f_cont = (alpha0_target_au - disc_alpha - core_alpha_au) * (
        e_continuum_ev / HARTREE_EV
    ) ** 2
    f_core = n_electrons - sum(f for f, _ in discrete) - f_cont
    e_core_ev = math.sqrt(f_core / core_alpha_au) * HARTREE_EV
    osc = list(discrete) + [(f_cont, e_continuum_ev), (f_core, e_core_ev)]
    got = oscillator_alpha_au(osc, 0.0)
    assert abs(got - alpha0_target_au) < 1e-9 * alpha0_target_au, (got, alpha0_target_au)
    return osc


def xi_grid():
    grid = [0.0]
    lo, hi, per_decade = 1e12, 4.1e18, 12
    n = int(math.log10(hi / lo) * per_decade) + 1
    for i in range(n + 1):
        grid.append(lo * 10 ** (i / per_decade))
    return grid


def write_alpha_table(path, osc, header_lines):
    with open(path, "w") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        fh.write("#\n# xi_rad_s  alpha_au\n")
        for xi in xi_grid():
            fh.write(f"{xi:.8e} {oscillator_alpha_au(osc, xi):.9e}\n")


# --- He*(2^3S1) ------------------------------------------------------------
# 2^3S -> n^3P energies and oscillator strengths (Drake / NIST ASD)
HE_DISCRETE = [
    (0.5391, 1.14448),   # 2^3P (1083 nm line)
    (0.06446, 3.18746),  # 3^3P
    (0.02332, 3.88828),  # 4^3P
    (0.01139, 4.19160),  # 5^3P
    (0.00647, 4.34929),  # 6^3P
    (0.01200, 4.55000),  # remainder of the n^3P series (effective)
]
HE_ALPHA0_AU = 467.727e-31 / A0**3  # Yan & Babb static value, in a.u.

# --- Na(3s) -----------------------------------------------------------------
NA_DISCRETE = [
    (0.96100, 2.10420),  # 3p (D1+D2 combined)
    (0.01403, 3.75340),  # 4p
    (0.00220, 4.34460),  # 5p
    (0.00100, 4.62350),  # 6p
]
NA_ALPHA0_AU = 241.067e-31 / A0**3  # Derevianko et al. static value, in a.u.

# --- Au interband oscillators (omega_j eV, g_j eV^2, gamma_j eV) -------------
AU_CORE = [
    (3.05, 7.091, 0.75),
    (4.15, 41.46, 1.85),
    (5.40, 2.700, 1.00),
    (8.50, 154.7, 7.00),
    (13.5, 44.55, 6.00),
    (21.5, 309.6, 9.00),
]


def au_core_eps(omega_ev):
    re = 1.0
    im = 0.0
    for wj, gj, yj in AU_CORE:
        d = wj * wj - omega_ev * omega_ev
        den = d * d + (yj * omega_ev) ** 2
        re += gj * d / den
        im += gj * yj * omega_ev / den
    return re, im


def write_au_table(path):
    lo, hi, per_decade = 0.1, 1000.0, 60
    n = int(math.log10(hi / lo) * per_decade)
    with open(path, "w") as fh:
        fh.write("# Synthetic optical data for Au: interband (bound-electron) part only.\n")
        fh.write("# Six-oscillator Lorentz model, parameters from Decca et al.,\n")
        fh.write("# Ann. Phys. 318, 37 (2005); see also RMP 81, 1827 (2009).\n")
        fh.write("# The free-electron response is NOT included here; supply it through\n")
        fh.write("# the plasma/Drude extrapolation term (omega_p = 9.0 eV, gamma = 0.035 eV).\n")
        fh.write("#\n# energy_eV  n  k\n")
        for i in range(n + 1):
            w = lo * 10 ** (i / per_decade)
            re, im = au_core_eps(w)
            mod = math.hypot(re, im)
            # evaluate the large component by the stable branch and recover
            # the small one from 2nk = Im eps to avoid cancellation
            if re >= 0.0:
                nn = math.sqrt((mod + re) / 2.0)
                kk = im / (2.0 * nn)
            else:
                kk = math.sqrt((mod - re) / 2.0)
                nn = im / (2.0 * kk)
            assert abs(2 * nn * kk - im) < 1e-12 * im
            fh.write(f"{w:.7e} {nn:.9e} {kk:.9e}\n")


def main():
    os.makedirs(OUT, exist_ok=True)
    he = build_atom(HE_DISCRETE, HE_ALPHA0_AU, 2, 0.281, 7.5)
    na = build_atom(NA_DISCRETE, NA_ALPHA0_AU, 11, 0.9457, 7.0)

    write_alpha_table(
        os.path.join(OUT, "he_star_polarizability.au.tsv"),
        he,
        [
            "Dynamic polarizability of He*(2^3S1) on the imaginary frequency axis.",
            "Effective oscillator model: discrete 2^3S -> n^3P lines (Drake / NIST ASD),",
            "one valence-continuum oscillator anchored to alpha(0) = 315.6378 a.u.",
            "(Yan & Babb, PRA 58, 1247 (1998)), one core (1s) oscillator fixed by the",
            "TRK sum rule (2 electrons). Percent-level sample data.",
            "alpha column in atomic units (a0^3); load with units = au.",
        ],
    )
    write_alpha_table(
        os.path.join(OUT, "na_polarizability.au.tsv"),
        na,
        [
            "Dynamic polarizability of Na(3s) on the imaginary frequency axis.",
            "Effective oscillator model: D lines plus higher np (NIST ASD), one",
            "valence-continuum oscillator anchored to alpha(0) = 162.6801 a.u.",
            "(Derevianko et al., PRL 82, 3589 (1999)), one core oscillator carrying",
            "the remaining TRK strength (11 electrons) and the Na+ core",
            "polarizability 0.9457 a.u. Percent-level sample data.",
            "alpha column in atomic units (a0^3); load with units = au.",
        ],
    )
    write_au_table(os.path.join(OUT, "au_interband_nk.dat"))
    print("wrote tables to", os.path.abspath(OUT))


if __name__ == "__main__":
    main()
