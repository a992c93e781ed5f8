# Information measures on small bipartite states.
#
# Mutual information splits into correlated coherence C (what the local
# dephasing removes) and the classical remainder J = I - C.

import math

import numpy as np

from qtransport import BipartiteSystem, measure_report, skew_information

sz = np.diag([1.0, -1.0])
system = BipartiteSystem.from_hamiltonians(sz, sz)

bell = np.zeros((4, 4), dtype=complex)
bell[np.ix_([0, 3], [0, 3])] = 0.5
classical = np.diag([0.5, 0, 0, 0.5]).astype(complex)

for name, rho in [("Bell", bell), ("classically correlated", classical)]:
    rep = measure_report(rho, system)
    print(f"{name:>24}: I = {rep.mutual_information:.4f}  C = {rep.coherence:.4f}  "
          f"J = {rep.classical:.4f}   (ln 2 = {math.log(2):.4f})")

# Skew information vanishes for states commuting with H and is positive otherwise
sx = np.array([[0, 1], [1, 0]], dtype=complex)
rho = np.diag([0.8, 0.2]).astype(complex)
print("skew information, [H, rho] = 0 :", skew_information(sz, rho))
print("skew information, [H, rho] != 0:", round(skew_information(sx, rho), 6))
