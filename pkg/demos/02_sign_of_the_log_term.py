"""Which way does the logarithm go?

The small-separation expansion of the EM energy has a logarithmic term whose
sign is easy to get wrong.  Here both candidate coefficient sets are compared
with the exact series, and the log coefficient is measured directly from the
numbers.
"""

import numpy as np

from casimir4d import asymptotics as A
from casimir4d.analysis import fit_log_nntlo, fit_mu_expansion
from casimir4d.geometry import ConcentricPair
from casimir4d.spectrum import em_energy_exact

print("mu      exact            printed          sign-resolved")
for mu in (0.3, 0.2, 0.1, 0.05):
    exact = em_energy_exact(ConcentricPair.from_mu(mu)).value
    printed = A.em_asymptotic_mu(mu, A.EM_MU_PRINTED).value
    fitted = A.em_asymptotic_mu(mu, A.EM_MU_FITTED).value
    print(f"{mu:<6}  {exact:<15.9f}  {printed:<15.9f}  {fitted:.9f}")

fit = fit_log_nntlo()
print(f"\nfitted log slope {fit.slope:+.5f}, constant {fit.constant:+.5f} -> closest: {fit.closest_variant().value}")

coeffs = fit_mu_expansion(np.geomspace(0.02, 0.3, 60))
print("free fit in mu:")
for p, c in sorted(coeffs.powers.items()):
    print(f"  mu^{p:+.0f}: {c:+.12f}")
print(f"  log(mu/pi): {coeffs.log_coefficient:+.12f}\n  constant:   {coeffs.constant:+.12f}")
