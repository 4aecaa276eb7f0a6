import math

INF = math.inf

SUPPORTED_DIMS = (1, 2, 3)

# Relative tail level a sampled state must reach at the box edge.
TAIL_TOL = 1e-14
# Relative spectral level allowed on the Nyquist shell.
NYQUIST_TOL = 1e-10
# Levels used to measure support and bandwidth of sampled data.
SUPPORT_LEVEL = 1e-7
BAND_LEVEL = 1e-6
# Windows are cut where they fall below this level.
WINDOW_CUTOFF = 1e-16
# Largest spacing of the centers at which smooth local-norm profiles are sampled.
PROFILE_SPACING = 0.125

FIT_R2_MIN = 0.999
BOUNDED_SPREAD = 20.0
T_DOUBLING_TOL = 0.01

LAMBDA_SMALL = (1e-3, 1e-2)
LAMBDA_LARGE = (1e2, 1e3)
FIT_POINTS = 25

MAX_PHASE_PER_STEP = 0.1

# Slope tolerance of the N-bump growth exponent.
BUMP_TOL = 0.1
