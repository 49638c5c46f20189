"""Laurent coefficients C_i(b) of the index character and their closed forms.

Run:  python3 demos/02_laurent_coefficients.py
"""
from fractions import Fraction

from fanohilbert.catalog import catalog_get
from fanohilbert.expansion import coefficient_data, line_series

dp8 = catalog_get("dP8").polar

# %% restrict to the line b(s) = xi_0 + s c and expand in t
ser = line_series(dp8, None, (1, 2), -1)
for k in ser.orders():
    print(f"  t^{k}:  {ser[k]}")

# %% values and gradients at the regular Reeb vector
vals, grads = coefficient_data(dp8, None, N=-1)
for i in vals.values:
    print(f"  C_{i} = {vals[i]}   grad = {[str(x) for x in grads[i]]}")


# %% compare with the reference closed form for C_-3 at a few interior points
def closed_c3(a, b):
    return 2 * (2 * b - a + 12) / ((b + 3) * (b - 2 * a - 3) * (b - a + 3) * (b + a - 3))


for pt in [(Fraction(1, 2), Fraction(0)), (Fraction(-1, 3), Fraction(1, 4)), (Fraction(0), Fraction(-1, 2))]:
    v, _ = coefficient_data(dp8, pt, N=-2, verify=False)
    print(f"  b = {tuple(map(str, pt))}: C_-3 = {v[-3]}, closed form = {closed_c3(*pt)}, C_-2/C_-3 = {v[-2] / v[-3]}")
