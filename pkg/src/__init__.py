"""
pcfprod

Products of parabolic cylinder functions with unrelated orders and
arguments, evaluated through their integral representations and checked
against extended-precision references and inverse Laplace transforms.
"""

__version__ = "1.0.0"
