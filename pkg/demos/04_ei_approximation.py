"""How good is -(sqrt(pi)/2) exp(-16x/pi^2) as a stand-in for Ei(-x)?

Not very: the relative error is tens of percent everywhere and approaches
100% for large x, where the approximation decays far too fast.
"""
import numpy as np

from ddmac.specfun import approx_error_by_decade, ei_neg, ei_neg_approx

print("x range          max rel. error   at x")
for lo, hi, err, where in approx_error_by_decade(-3, 2):
    print(f"[{lo:7.0e}, {hi:7.0e}]  {err:14.3f}   {where:.3g}")

xs = np.array([0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0])
print("\n      x       Ei(-x)        approx")
for x, e, a in zip(xs, ei_neg(xs), ei_neg_approx(xs)):
    print(f"{x:7.2f}  {e:12.6e}  {a:12.6e}")
