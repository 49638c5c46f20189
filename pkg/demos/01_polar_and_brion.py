"""Polar duality, lattice points and Brion's identity on the degree-8 del Pezzo surface.

Run:  python3 demos/01_polar_and_brion.py
"""
from fractions import Fraction

from fanohilbert.catalog import catalog_get
from fanohilbert.hilbert import brion_check, brion_limit_count, msy_eval
from fanohilbert.polytope import lattice_points, polar_volume, validate

entry = catalog_get("dP8")
P = entry.polytope
print("fan generators:", P.vertices)
print("validation passed:", validate(P).passed)

# %% polar polytope and its vertex cones
polar = entry.polar
for vc in polar.vertex_cones:
    print(f"  w = {vc.w}   edges = {vc.edges}   det = {vc.edge_det}")
print("area of the polar:", polar_volume(P))

# %% lattice points of dilates
for l in range(4):
    print(f"  |{l} P°| = {len(lattice_points(polar, l))}")

# %% Brion: monomial sum over l P° equals the vertex-cone sum, exactly
x = (Fraction(2), Fraction(3))
for l in (1, 2, 3):
    print(f"  l = {l}: Brion identity at x = (2, 3) holds: {brion_check(polar, l, x)}")

# the same vertex sum, pushed to x -> 1 along a generic line, counts points
print("count from the x -> 1 limit at l = 2:", brion_limit_count(polar, 2))

# %% the full cone series at a point off the poles
print("Hilbert series at (2, 3, 1/50):", msy_eval(polar, (2, 3, Fraction(1, 50))))
