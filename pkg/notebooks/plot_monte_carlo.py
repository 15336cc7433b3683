"""
Monte Carlo rounds
==================

Run whole protocol rounds with sampled measurements and compare the observed
detection rate against the closed form.
"""
import json

from sixdp import EveBasis, EveStrategy, IRAAttack, Model, TwoCnotAttack, simulate

attack = IRAAttack(EveStrategy.single(EveBasis.along("z")), Model.PHYSICAL)
rep = simulate(attack, trials=20_000, c=1.0, seed=1)
print(f"observed {rep.detection_rate:.4f} +/- {rep.detection_se:.4f}")
print("closed form", rep.analytic)

###############################################################################
# Mixed traffic
# -------------
# Half control, half message rounds. The double-CNOT attack is never caught.

for atk in (None, attack, TwoCnotAttack()):
    r = simulate(atk, trials=5_000, c=0.5, seed=2)
    print(json.dumps({k: r.to_dict()[k] for k in ("attack", "detection_rate", "decode_accuracy", "eve_accuracy")}))
