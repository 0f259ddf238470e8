"""Exact Bell magic of canonical states.

Walks through the two-copy Bell-measurement distribution and the magic
monotones it defines: the T and R magic states, stabilizer states, product
states and the known maximal-magic states up to four qubits.
"""
import numpy as np

from bellmagic import magic, simulator as sim, states

print("Bell distribution of |0>: support on {I, Z} labels only")
d = sim.bell_distribution(sim.zero_state(1))
for r, p in enumerate(d.probabilities):
    print(f"  label {'IXZY'[r]}: P = {p:.3f}")

print("\nMagic of canonical single-qubit states:")
for name, state in [("|0>", sim.zero_state(1)), ("|+>", states.plus_state()),
                    ("|T>", states.t_state()), ("|R>", states.r_state())]:
    mv = magic.bell_magic_of_state(state)
    print(f"  {name:4s}: B = {mv.bell_magic:.6f}  B_a = {mv.additive:.6f}")

print("\nAdditivity: B_a of |T>^n grows linearly (one unit per T state)")
for n in range(1, 5):
    prod = states.product_state([np.pi / 2] * n, [np.pi / 4] * n)
    print(f"  n={n}: B_a = {magic.bell_magic_of_state(prod).additive:.9f}")

print("\nMaximal-magic fixtures vs the pure-state bound:")
for n in range(1, 5):
    mv = magic.bell_magic_of_state(states.max_magic_state(n))
    print(f"  N={n}: B = {mv.bell_magic:.6f}  bound = {magic.pure_state_bound(n):.6f}"
          f"  B_a = {mv.additive:.6f}")
print("the bound is saturated at N = 1 and N = 3")

print("\nBloch-sphere landscape: B_a of cos(t/2)|0> + e^{-i phi} sin(t/2)|1>")
for theta in np.linspace(0, np.pi, 7):
    row = [magic.product_state_magic([theta], [phi]) for phi in np.linspace(0, np.pi / 2, 5)]
    print("  theta={:4.2f}: ".format(theta) + "  ".join(f"{v:.3f}" for v in row))
print("zero along stabilizer axes, maximal at the R-state angles")
