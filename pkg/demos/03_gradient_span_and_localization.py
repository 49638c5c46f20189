"""Gradient spans of the Laurent coefficients against fixed-point integrals.

Run:  python3 demos/03_gradient_span_and_localization.py
"""
from fanohilbert.catalog import catalog_get
from fanohilbert.expansion import coefficient_gradients, gradient_generating_check, span_report
from fanohilbert.localization import derived_fixed_points, load_fixed_points, localize, span_compare

# %% gradient spans of the threefolds in the catalog
for name in ("CP2xCP1", "B2", "C2", "D2"):
    entry = catalog_get(name)
    G = coefficient_gradients(entry.polar, None, -1)
    rep = span_report(G, range(-4, 0))
    print(f"{name:8s} dim W = {entry.dim_W}  rank = {rep.rank}  basis = {rep.basis}")

# %% D2 in detail
G = coefficient_gradients(catalog_get("D2").polar, None, -1)
for i in G.orders:
    print(f"  grad C_{i} = {[str(x) for x in G[i]]}")

# the reference closed form for the c-derivative reproduces the table...
q_c = "-t*exp(8*t)*(4*exp(8*t)+13*exp(4*t)+4)/((exp(2*t)-1)**5*(exp(2*t)+1)**5)"
print("  d/dc closed form:", bool(gradient_generating_check(catalog_get("D2").polar, q_c, (0, 0, 1), -1, [2], G)))
# ...while the reference a-derivative is off by a factor 32 at leading order
q_a = "-t*exp(8*t)*(2*exp(8*t)+7*exp(4*t)+2)/((exp(4*t)-1)**5*(exp(4*t)+1)**5)"
print("  d/da closed form:", gradient_generating_check(catalog_get("D2").polar, q_a, (1, 1, 0), -1, [0], G).detail)

# %% fixed-point data in the blow-up model coordinates
for name in ("D2", "C2"):
    L = localize(load_fixed_points(catalog_get(name).expected["fixed_points"]))
    print(f"{name}: c1^4 = {L.c1_top}   c1^2 c2 = {L.c1sq_c2}")

# %% weights read off the polar polytope, compared with the gradient span
for name in ("CP2xCP1", "C2", "D2"):
    polar = catalog_get(name).polar
    L = localize(derived_fixed_points(polar))
    rep = span_report(coefficient_gradients(polar, None, -1), range(-4, 0))
    print(f"{name:8s} c1^4 = {str(L.c1_top):28s} c1^2 c2 = {str(L.c1sq_c2):26s} spans agree: {span_compare(L, rep)}")
