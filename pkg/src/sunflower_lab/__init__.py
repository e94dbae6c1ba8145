"""sunflower-lab: exact-arithmetic toolkit for sunflower-free set families.

Modules: setfam (families and extremal search), polyalg (exact polynomials
and term orders), groebner (bases, vanishing ideals, ballot monomials),
slicerank (rank-one decompositions), bounds (closed-form calculators),
certify (the end-to-end pipeline), cli (command-line entry).
"""

__version__ = "0.1.0"
