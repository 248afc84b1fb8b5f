"""Package-wide numeric and resource configuration.

Everything that a contract in this package calls "the tolerance" or "the
configured cap" resolves to one of the constants below, so tightening or
loosening the whole artifact is a one-line change.
"""

# Default numeric tolerance for norms, unitarity and state comparisons.
TOLERANCE = 1e-10

# Looser tolerance for composite-gate fragments, which chain several
# matrix products and accumulate rounding.
COMPOSITE_TOLERANCE = 1e-8

# Dense simulation cap.  A hard error above this, never silent truncation.
MAX_QUBITS = 20

# Approximation-net size cap (number of distinct single-qubit words kept).
NET_SIZE_CAP = 2_000_000

# Identifier of the fixed lossless compressor used as the complexity proxy.
# See prepcomplex.compressor for the exact parameter set this names.
COMPRESSOR_ID = "lzma2-raw-p9e-lc0lp0pb0"

# Recursive synthesis defaults: basic word length, deepest recursion tried.
DEFAULT_NET_L0 = 20
DEFAULT_MAX_DEPTH = 5

# A net whose coarseness exceeds this cannot be contracted by the recursion;
# callers are told to raise l0 instead of looping forever.
CONTRACTION_THRESHOLD = 0.15
