"""
Odds of stealing a byte
=======================

How likely is Eve to pull ``n`` message bits out unnoticed, given the share of
control rounds ``c`` and the per-control detection probability ``d``?
"""
from fractions import Fraction

from sixdp import AttackEconomics, success_prob
from sixdp.ira_model import three_basis_round_prob

for d in (0.75, 0.72):
    p = success_prob(AttackEconomics(c=0.5, d=d, n=8))
    print(f"c=0.5 d={d}: P_8 = {p:.5f}")

###############################################################################
# Longer messages
# ---------------
# The odds decay geometrically in ``n``.

for n in (1, 8, 16, 32, 64):
    print(n, f"{success_prob(AttackEconomics(0.5, 0.75, n)):.3e}")

###############################################################################
# Three bases at once
# -------------------
# Exact constants, kept as fractions.

per_path, per_round = three_basis_round_prob()
print(per_path, per_round, float(per_round))
assert per_round == Fraction(1, 144)
