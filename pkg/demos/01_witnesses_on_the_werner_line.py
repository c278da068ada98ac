"""
Witnesses on the Werner line
============================

The white-noise singlet family p |psi-><psi-| + (1-p) I/4 is the simplest
testbed for the detection machinery: the linear correlation witness, its
nonlinear refinement, and the exact partial-transpose criterion all flip
from "separable" to "entangled" at exactly p = 1/3.
"""

import numpy as np

from uwit import (
    is_npt,
    linear_witness_value,
    nonlinear_witness_value,
    pauli_lur,
    werner_state,
    werner_thresholds,
)

# Step 1 -- scan the line ----------------------------------------------------
print(f"{'p':>5} {'linear':>9} {'nonlinear':>10} {'lur sum':>8} {'min PT eig':>11}  verdicts")
for p in np.linspace(0.0, 1.0, 11):
    rho = werner_state(float(p))
    linear = linear_witness_value(rho)
    nonlinear = nonlinear_witness_value(rho)
    lur = pauli_lur(rho)
    npt, min_eig = is_npt(rho)
    tags = "".join(
        tag if flag else "-"
        for tag, flag in (("W", linear < 0), ("N", nonlinear.detected), ("P", npt))
    )
    print(f"{p:5.2f} {linear:9.4f} {nonlinear.value:10.4f} {lur.value:8.4f} {min_eig:11.4f}  {tags}")

# On this line the quadratic correction vanishes (the local Bloch vectors are
# zero), so the nonlinear witness coincides with the linear one and neither
# can beat the partial transpose -- all three flip at the same point.

# Step 2 -- locate the flip points by bisection ------------------------------
thresholds = werner_thresholds()
print(
    f"\nbisection thresholds: witness={thresholds.witness:.8f} "
    f"lur={thresholds.lur:.8f} npt={thresholds.npt:.8f} (analytic: 1/3)"
)
