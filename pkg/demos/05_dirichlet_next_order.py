"""The Dirichlet scalar: where the derivative expansion keeps going.

Its kernel is analytic in momentum, so a fourth-order gradient expansion
exists.  The x^2 coefficient of the exact energy is read off by a fit and
compared with the closed form; the fit also confirms there is no log x term.
"""

import math

import numpy as np

from casimir4d.analysis import fit_expansion

basis = ["pow(-1.5)", "pow(-0.5)", "logx", "const", "pow(0.5)", "pow(1.5)"]
rep = fit_expansion("dirichlet", basis, np.geomspace(1e-4, 1e-2, 60))
lead = rep.coefficient("pow(-1.5)")
print(f"leading   {lead:+.9f}  (closed form {-math.sqrt(2) * math.pi**4 / 2880:+.9f})")
print(f"x^1       {rep.coefficient('pow(-0.5)') / lead:+.9f}  (1/4)")
print(f"x^2       {rep.coefficient('pow(0.5)') / lead:+.9f}  ({12 / math.pi**4 - 7 / 480:+.9f})")
print(f"log x     {rep.coefficient('logx'):+.2e}")
# F itself is fitted, so the constant enters with a plus sign
print(f"constant  {rep.coefficient('const'):+.9f}  ({1.2020569031595942 / (8 * math.pi**2):+.9f})")
print(f"condition number of the weighted design: {rep.condition_estimate:.3g}")
