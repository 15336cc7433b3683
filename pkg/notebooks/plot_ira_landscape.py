"""
Intercept-resend landscape
==========================

Sweep Eve's measurement direction and look at how often a control round
survives her intercept-resend attack. One basis for both qubits first, then
two independent bases in the x-z plane.
"""
import numpy as np

from sixdp import EveBasis, EveStrategy, average_no_detect_single, sweep
from sixdp.ira_model import Mode, detection_prob

###############################################################################
# One basis for both qubits
# -------------------------
# The floor sits on the protocol axes, the ceiling on the cube diagonals.

single = sweep(Mode.SINGLE, 181)
lo, hi = single.minimum(), single.maximum()
print(f"single basis: min {lo.value:.6f}, max {hi.value:.6f} at {len(hi.points)} grid points")
print(f"detected at least {detection_prob(hi.value):.1%} of the time")

diag = EveBasis(np.arccos(1 / np.sqrt(3)), np.pi / 4)
print("cube diagonal:", average_no_detect_single(EveStrategy.single(diag)), "vs 5/18 =", 5 / 18)

###############################################################################
# Two bases
# ---------
# Azimuths are fixed at zero, so both directions live in the x-z plane.

two = sweep(Mode.TWO, 181)
print(f"two bases: min {two.minimum().value:.6f}, max {two.maximum().value:.6f} (7/24 = {7 / 24:.6f})")
print("maximising (theta1, theta2):", [tuple(float(round(np.degrees(a), 1)) for a in p) for p in two.maximum().points])

###############################################################################
# Pictures, if matplotlib is around
# ---------------------------------

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    for ax, sw, xlabel in ((axes[0], single, "phi"), (axes[1], two, "theta2")):
        im = ax.imshow(sw.values, origin="lower", aspect="auto",
                       extent=[np.degrees(sw.axis2[0]), np.degrees(sw.axis2[-1]), 0, 180])
        ax.set_xlabel(f"{xlabel} (deg)")
        ax.set_ylabel("theta1 (deg)")
        fig.colorbar(im, ax=ax)
    plt.show()
