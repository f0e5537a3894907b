"""
Stochastic Subspace ROM Package
"""

__version__ = "1.0.0"
__author__ = "SSROM Team"
__description__ = "Stochastic subspace reduced-order models for model-error quantification"
