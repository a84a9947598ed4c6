"""Exact symbolic and numeric verification of quantum group covariance and
braided Hopf structure for the two-parameter deformed oscillator algebra."""

__version__ = "0.1.0"
