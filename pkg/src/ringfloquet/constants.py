"""Physical constants used throughout the package (SI, CODATA 2018).

Pinned here rather than pulled from ``scipy.constants`` so results do not
drift when the installed SciPy ships a newer CODATA release.
"""

CONSTANTS_TABLE_VERSION = "CODATA-2018"

HBAR = 1.054571817e-34  # J s
ELEMENTARY_CHARGE = 1.602176634e-19  # C
ELECTRON_MASS = 9.1093837015e-31  # kg
SPEED_OF_LIGHT = 299792458.0  # m / s
MU_0 = 1.25663706212e-6  # N / A^2

TABLE = {
    "hbar_J_s": HBAR,
    "elementary_charge_C": ELEMENTARY_CHARGE,
    "electron_mass_kg": ELECTRON_MASS,
    "speed_of_light_m_s": SPEED_OF_LIGHT,
    "mu_0_N_A2": MU_0,
}
