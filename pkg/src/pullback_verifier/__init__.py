"""Exact-arithmetic verifier for the local pullback computations behind the
GU(3,3) Siegel Eisenstein series and the degree-8 L-function it represents."""

__version__ = "0.1.0"
