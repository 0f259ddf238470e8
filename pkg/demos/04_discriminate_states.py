"""Telling stabilizer and magical states apart with few measurements.

Stabilizer Bell samples can never produce a non-commuting quadruple, so one
counter-example certifies magic.  Closed forms predict how many samples the
certificate needs; a learned threshold handles noisy data.
"""
import numpy as np

from bellmagic import discrimination as dis, experiments as exp

print("misclassification probability for one magic-angle input qubit:")
print("   N_Q   phi=pi/20   phi=pi/8    phi=pi/4   highly magical")
for nq in (5, 10, 20, 50):
    row = [dis.p_error_single_magic(phi, nq) for phi in (np.pi / 20, np.pi / 8, np.pi / 4)]
    row.append(dis.p_error_random(nq) if nq >= 2 else 1.0)
    print(f"  {nq:4d}   " + "   ".join(f"{v:9.2e}" for v in row))
print("6 samples certify a highly magical state at the 1% level;")
print(f"small angles follow N_Q ~ -2 log(P_E)/phi^2"
      f" (phi=pi/20, 1%: ~{dis.small_angle_samples(np.pi / 20, 0.01):.0f})")

print("\nMonte-Carlo check against the closed forms (400 fresh circuits each):")
rows = exp.error_probability_curve("single", 6, np.pi / 8, 0, [5, 10, 20], 400, seed=3)
for r in rows:
    print(f"  single phi=pi/8 nq={r['nq']:3d}: empirical {r['p_error']:.3f}"
          f"  theory {r['p_error_theory']:.3f}")

print("\nthreshold learning on noisy (p = 0.15) simulated data:")
rows = exp.learning_curve([20, 100, 1000], 20, 3, 2, 0.15, 10, seed=4)
for r in rows:
    print(f"  N_Q = {r['nq']:5d}: train error {r['train_error']:.3f}"
          f"  test error {r['test_error']:.3f}")
print("more samples -> cleaner separation -> lower test error")
