"""Bell sampling far beyond dense-simulation reach.

Stabilizer states admit an exact coset description of their two-copy Bell
outcomes: every sample is a random generator product XORed with the
conjugation offset.  Sampling cost is polynomial, so thousand-qubit states
are routine, and their estimated magic is identically zero at any sample
budget.
"""
import time

import numpy as np

from bellmagic import estimation as est, stabilizer as st
from bellmagic.pauli import symplectic_rows

rng = np.random.default_rng(7)

for n in (50, 300, 1500):
    t0 = time.time()
    tab, _ = st.random_clifford(n, 3, rng)
    samples = st.bell_sample_stabilizer(tab, 2000, rng)
    b_hat, _ = est.estimate_bell_magic(samples, 20_000, rng)
    dt = time.time() - t0
    print(f"N = {n:5d}: 2000 samples + estimate in {dt:5.2f}s"
          f"   B_hat = {b_hat}   purity = {est.estimate_purity(samples)}")

print("\nstructure check at N = 1500: pairwise XORs of outcomes all commute")
w = st.bell_sample_stabilizer(tab, 400, rng).words
xors = w[:200] ^ w[200:]
print(f"  non-commuting XOR pairs found: {int(symplectic_rows(xors, np.roll(xors, 7, axis=0)).sum())}")

print("\ndistinct outcomes grow as 2^N (uniform over the coset):")
for n in (2, 4, 6):
    tab, _ = st.random_clifford(n, 4, rng)
    s = st.bell_sample_stabilizer(tab, 6000 * n, rng)
    print(f"  N = {n}: {len(np.unique(s.words, axis=0))} distinct outcomes (2^N = {2**n})")

print("\ngenerator tableau of a small random stabilizer state:")
tab, _ = st.random_clifford(4, 2, rng)
print("  " + tab.to_text().replace("\n", "\n  "))
