VERSION = "0.5.0"

# amplitudes below this are dropped from sparse Fock vectors
PRUNE_TOLERANCE = 1e-14
NORM_TOLERANCE = 1e-12
HERMITIAN_TOLERANCE = 1e-12
# partial-transpose eigenvalues in (-PPT_TOLERANCE, 0) count as zero
PPT_TOLERANCE = 1e-10
PSD_TOLERANCE = 1e-10
ENTROPY_EIGENVALUE_CUTOFF = 1e-14
SYMPLECTIC_CLAMP = 1e-8

MAX_DICKE_QUBITS = 24
MAX_REDUCED_QUBITS = 12
MAX_HUBBARD_SITES = 6
MAX_ODLRO_SITES = 6
MIN_HUBBARD_SITES = 2
MIN_FIT_SAMPLES = 4

FLOAT_DIGITS = 12
