"""Variationally maximizing Bell magic with the two-copy shift rule.

Exact gradients drive Adam from a near-stabilizer start to the known
maximal-magic states; the sampled mode runs the same loop from measurement
outcomes only.  The Clifford-dressed single-rotation ansatz shows the
qubit-count-independent gradient variance.
"""
import numpy as np

from bellmagic import magic, states, variational as var

rng = np.random.default_rng(5)

print("exact-gradient ascent, N = 1 (target B = 16/27 = 0.592593):")
state = var.maximize_magic(1, depth=2, epochs=300, learning_rate=0.1, rng=rng, lr_decay=0.99)
for e in (1, 50, 100, 200, 300):
    print(f"  epoch {e:4d}: B = {state.history[e - 1]:.6f}")
print(f"  reached {state.best():.9f}; the maximizer is the R state")

print("\nexact-gradient ascent, N = 2 (target B_a ~ 2.678):")
state = var.maximize_magic(2, depth=6, epochs=600, learning_rate=0.1, rng=rng, lr_decay=0.996)
print(f"  best B_a = {magic.additive_magic(state.best()):.5f}"
      f"  (fixture value {states.MAX_MAGIC_ADDITIVE[2]})")

print("\nsampled-gradient mode (2K+3 measurement settings per epoch):")
theta0 = var.near_stabilizer_params(8, rng)
from bellmagic.simulator import hardware_efficient_ansatz

circ = hardware_efficient_ansatz(2, 2, theta0)
state = var.optimize(circ, epochs=60, learning_rate=0.15, n_samples=400, rng=rng)
print(f"  B_hat trajectory: start {state.history[0]:.3f}"
      f" -> mid {state.history[29]:.3f} -> end {state.history[-1]:.3f}")

print("\ngradient variance of the Clifford-dressed rotation ansatz:")
for n in (2, 4, 6):
    v, se = var.trainability_experiment(n, 150, rng)
    print(f"  N = {n}: Var = {v:.3f} +- {se:.3f}   (1/2 independent of N)")
print("no barren plateau: the variance does not decay with qubit count")
