"""Coverage region of the two transmitters under FGM dependence.

Draws the region as text for three dependence levels and compares the exact
sum rate with the exponential approximation of Ei.
"""
import numpy as np

from ddmac.coverage import GridSpec, coverage_region, sum_rate_fgm_approx, sum_rate_fgm_exact
from ddmac.dependence import DependenceModel
from ddmac.fading import AvgSnrPair, Geometry

snrs = AvgSnrPair(100.0, 100.0)  # 20 dB at unit distance
grid = GridSpec(3.0, 3.0, 24, 24)
regions = {t: coverage_region(DependenceModel.fgm(t), snrs, 3.5, 1.0, grid) for t in (-1.0, 0.0, 1.0)}

# '#' in every region, '+' only with theta >= 0, '.' only with theta = 1
print("d2 up, d1 right; target 1 bit/use")
for j in reversed(range(grid.n2)):
    line = ""
    for i in range(grid.n1):
        if regions[-1.0].inside[i, j]:
            line += "#"
        elif regions[0.0].inside[i, j]:
            line += "+"
        elif regions[1.0].inside[i, j]:
            line += "."
        else:
            line += " "
    print(f"{grid.d2[j]:5.2f} |{line}")
for t, r in regions.items():
    print(f"theta_F = {t:+g}: area {r.area:.4f}")

print("\nexact vs approximate sum rate (bit/use)")
for d1, d2 in [(1.0, 1.0), (0.5, 2.0), (2.0, 2.0)]:
    g = Geometry(d1, d2, 3.5)
    for t in (-1.0, 1.0):
        e, a = sum_rate_fgm_exact(snrs, g, t), sum_rate_fgm_approx(snrs, g, t)
        print(f"d=({d1}, {d2}) theta={t:+g}: exact {e:.4f}  approx {a:.4f}  rel.err {a / e - 1:+.1%}")
