"""Super-zeta regularized determinants of hyperbolic orbifold Laplacians.

Computes det^2(Laplacian - z(1-z)I) for finite-volume hyperbolic orbifolds
with unitary representation data: trivial-zero multiplicities, the Barnes
based gamma factor, completed Selberg zeta functions, superzeta values at
s = 0, regularized products, and the scattering-determinant recovery
identity.
"""

__version__ = "0.1.0"
