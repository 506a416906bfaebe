"""Character-ratio exponents for Levi subgroups, finite GL/SL class data and class walks."""

__version__ = "0.1.0"
