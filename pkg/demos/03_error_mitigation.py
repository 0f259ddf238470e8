"""Mitigating global depolarizing noise.

The same Bell samples that estimate magic also give the purity through the
SWAP-test parity; inverting the purity fixes the depolarizing probability,
which then corrects the magic estimate in closed form.
"""
import numpy as np

from bellmagic import estimation as est, magic, simulator as sim

rng = np.random.default_rng(2)
n = 3
circuit = sim.magic_input_circuit(n, 2, np.pi / 4, 3, rng)
state = sim.simulate(circuit)
clean = sim.bell_distribution(state)
b_true = magic.bell_magic_exact(clean).bell_magic
print(f"{n}-qubit random Clifford with two T-angle inputs: exact B = {b_true:.6f}")

print("\nestimates from 20000 samples of the depolarized state:")
print("      p   purity_hat   p_hat    raw B_hat   mitigated   approx-form")
for p in (0.0, 0.05, 0.1, 0.2):
    noisy = sim.noisy_bell_distribution(clean, sim.NoiseModel(p))
    samples = sim.sample(noisy, 20_000, rng)
    res = est.estimate_magic(samples, rng)
    print(f"  {p:5.2f}   {res.purity_hat:8.4f}  {res.p_hat:6.3f}    {res.b_hat:8.4f}"
          f"    {res.b_mtg_exact:8.4f}    {res.b_mtg_approx:8.4f}")

print("\nthe closed loop is exact on noise-free inputs:")
for p in (0.1, 0.3):
    noisy = sim.noisy_bell_distribution(clean, sim.NoiseModel(p))
    b_dp = magic.bell_magic_exact(noisy).bell_magic
    m = est.mitigate(b_dp, p, float((noisy.probabilities**2).sum()), n)
    print(f"  p = {p}: exact-distribution mitigation error = {abs(m.exact - b_true):.2e}")

print("\nnoise costs samples: the error amplification factor is (1-p)^-8,")
print("so the sample budget grows as (1-p)^-16 at fixed accuracy.")
for p in (0.0, 0.05, 0.1, 0.15):
    print(f"  p = {p:4.2f}: amplification {(1 - p) ** -8:6.2f}"
          f"   budget factor {(1 - p) ** -16:8.2f}")
