"""prepcomplex: compile pure states to finite-basis circuits and bound
their description complexity with formulas and a compression proxy."""

__version__ = "0.1.0"
