"""How good are the proximity-force and derivative expansions?

A sphere of radius R at distance d from a plate.  The PFA averages the
plane-plane energy over the local gap; the derivative expansion adds the
first gradient correction, whose coefficient comes from matching the
perturbative kernel.
"""

from casimir4d.analysis import percent_error, sphere_plate_exact
from casimir4d.base import TheoryKind
from casimir4d.gradient import de2_energy, ntlo_coefficient, second_order_match
from casimir4d.proximity import HeightProfile, pfa_leading, pfa_quadrature

for theory in TheoryKind:
    m = second_order_match(theory)
    cubic = "non-analytic k^3 term" if m.cubic_present else "analytic"
    print(f"{theory.value:>9}: beta = {m.beta:+.7f}, NTLO = {ntlo_coefficient(m.beta):+.6f}, kernel {cubic}")

x = 0.002
exact = sphere_plate_exact(x).value
print(f"\nEM at d/R = {x}: exact {exact:.4f}")
print(f"  PFA {pfa_leading(x).value:.4f}  error {percent_error(exact, pfa_leading(x).value):+.3f}%")
print(f"  DE  {de2_energy(x).value:.4f}  error {percent_error(exact, de2_energy(x).value):+.3f}%")

print("\nclosed-form PFA against quadrature over the profile:")
for x in (1e-3, 1e-2, 1e-1):
    para = pfa_quadrature(HeightProfile("parabolic", 1.0), x).value
    cap = pfa_quadrature(HeightProfile("spherical_cap", 1.0), x).value
    lead = pfa_leading(x).value
    print(f"  x={x:<6} paraboloid/closed {para / lead:.12f}   cap/closed {cap / lead:.6f}")
