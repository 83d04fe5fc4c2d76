"""Physical constants in the unit system used throughout the package.

Energies are microelectronvolts (ueV), times nanoseconds (ns), lengths
nanometres (nm), temperatures kelvin (K).  These units put single-qubit
pulse amplitudes, thermal energies at dilution-fridge temperatures and
phonon wavevectors all within a few orders of magnitude of unity.
"""

#: Reduced Planck constant, ueV * ns.
HBAR_UEV_NS = 0.6582119569

#: Boltzmann constant, ueV / K.
K_B_UEV_PER_K = 86.17333262
