"""Stabilizer states as generator tableaux, with scalable Bell-outcome sampling.

A tableau holds N generator Pauli strings as boolean z/x matrices plus sign
bits.  Bell sampling exploits the coset structure of the two-copy outcome
distribution of a stabilizer state: outcomes are exactly t XOR g where t
ranges over the group's bit-span and sigma_g maps |psi> to +-|psi*>, each
with probability 2^-N.  Sampling therefore never builds the 4^N
distribution and scales to thousands of qubits.

The gate conventions match `simulator` (S = diag(1, -i), so X -> -Y).
"""
from __future__ import annotations

import numpy as np

from .pauli import BellSamples, PauliString, words_per_string
from .simulator import CircuitSpec, Gate


def _pack_zx(z: np.ndarray, x: np.ndarray, n_qubits: int) -> np.ndarray:
    """Pack boolean (M, N) z/x matrices into (M, W) uint64 outcome words."""
    m = z.shape[0]
    bits = np.zeros((m, 2 * n_qubits), dtype=np.uint64)
    # LSB-first bit sequence: x_N, z_N, x_{N-1}, z_{N-1}, ..., x_1, z_1
    bits[:, 0::2] = x[:, ::-1]
    bits[:, 1::2] = z[:, ::-1]
    n_words = words_per_string(n_qubits)
    out = np.zeros((m, n_words), dtype=np.uint64)
    for w in range(n_words):
        chunk = bits[:, 64 * w : 64 * (w + 1)]
        shifts = np.arange(chunk.shape[1], dtype=np.uint64)
        out[:, w] = (chunk << shifts).sum(axis=1, dtype=np.uint64)
    return out


def _zx_to_pauli(z: np.ndarray, x: np.ndarray) -> PauliString:
    n = len(z)
    bits = 0
    for i in range(n):
        bits = (bits << 2) | (int(z[i]) << 1) | int(x[i])
    return PauliString(n, bits)


def _gf2_solve(mat: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """One solution of mat @ v = rhs over GF(2); free variables set to 0."""
    m = mat.astype(np.uint8).copy()
    y = rhs.astype(np.uint8).copy()
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        hit = np.nonzero(m[r:, c])[0]
        if hit.size == 0:
            continue
        pr = r + hit[0]
        m[[r, pr]], y[[r, pr]] = m[[pr, r]].copy(), y[[pr, r]].copy()
        elim = np.nonzero(m[:, c])[0]
        for rr in elim:
            if rr != r:
                m[rr] ^= m[r]
                y[rr] ^= y[r]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if np.any(y[r:]):
        raise AssertionError("inconsistent GF(2) system for a valid tableau")
    v = np.zeros(cols, dtype=np.uint8)
    for i, c in enumerate(pivots):
        v[c] = y[i]
    return v


class StabilizerTableau:
    """Generator tableau of an N-qubit stabilizer state, starting from |0...0>."""

    def __init__(self, n_qubits: int):
        if n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        self.n_qubits = n_qubits
        self.z = np.eye(n_qubits, dtype=bool)
        self.x = np.zeros((n_qubits, n_qubits), dtype=bool)
        self.signs = np.zeros(n_qubits, dtype=bool)

    def _col(self, q: int) -> int:
        if not 1 <= q <= self.n_qubits:
            raise IndexError(f"qubit index {q} out of range")
        return q - 1

    def h(self, q: int) -> None:
        c = self._col(q)
        self.signs ^= self.z[:, c] & self.x[:, c]
        self.z[:, c], self.x[:, c] = self.x[:, c].copy(), self.z[:, c].copy()

    def s(self, q: int) -> None:
        c = self._col(q)
        self.signs ^= self.x[:, c] & ~self.z[:, c]
        self.z[:, c] ^= self.x[:, c]

    def cnot(self, control: int, target: int) -> None:
        cc, ct = self._col(control), self._col(target)
        if cc == ct:
            raise IndexError("control and target coincide")
        self.signs ^= self.x[:, cc] & self.z[:, ct] & ~(self.x[:, ct] ^ self.z[:, cc])
        self.x[:, ct] ^= self.x[:, cc]
        self.z[:, cc] ^= self.z[:, ct]

    def apply_gate(self, gate: Gate) -> None:
        if gate.name == "h":
            self.h(gate.qubits[0])
        elif gate.name == "s":
            self.s(gate.qubits[0])
        elif gate.name == "cnot":
            self.cnot(*gate.qubits)
        else:
            raise ValueError(f"gate {gate.name!r} is not a tableau Clifford gate")

    def apply_circuit(self, circuit: CircuitSpec) -> None:
        for g in circuit.gates:
            self.apply_gate(g)

    def generator(self, i: int) -> tuple[int, PauliString]:
        """Generator i as (sign in {+1,-1}, PauliString)."""
        return (-1 if self.signs[i] else 1), _zx_to_pauli(self.z[i], self.x[i])

    def generator_words(self) -> np.ndarray:
        return _pack_zx(self.z, self.x, self.n_qubits)

    def is_valid(self) -> bool:
        """Generators pairwise commute and are independent over GF(2)."""
        zi, xi = self.z.astype(np.uint8), self.x.astype(np.uint8)
        sym = (zi @ xi.T + xi @ zi.T) % 2
        if np.any(sym):
            return False
        mat = np.concatenate([zi, xi], axis=1)
        return _gf2_rank(mat) == self.n_qubits

    def to_text(self) -> str:
        """One generator per line, sign then letters."""
        lines = []
        for i in range(self.n_qubits):
            sign, p = self.generator(i)
            lines.append(("+" if sign > 0 else "-") + p.to_letters())
        return "\n".join(lines)


def _gf2_rank(mat: np.ndarray) -> int:
    m = mat.astype(np.uint8).copy()
    rank = 0
    for c in range(m.shape[1]):
        hit = np.nonzero(m[rank:, c])[0]
        if hit.size == 0:
            continue
        pr = rank + hit[0]
        m[[rank, pr]] = m[[pr, rank]].copy()
        for rr in range(m.shape[0]):
            if rr != rank and m[rr, c]:
                m[rr] ^= m[rank]
        rank += 1
        if rank == m.shape[0]:
            break
    return rank


def apply_clifford_gate(tableau: StabilizerTableau, gate: Gate) -> StabilizerTableau:
    """Functional wrapper over the in-place gate methods."""
    tableau.apply_gate(gate)
    return tableau


def random_clifford(
    n_qubits: int, depth: int, rng: np.random.Generator
) -> tuple[StabilizerTableau, CircuitSpec]:
    """Random layered Clifford circuit: per-qubit H/S words plus CNOT chains.

    Not uniform over the Clifford group; Bell magic is Clifford-invariant so
    the sampled magic values do not depend on the circuit distribution.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    tab = StabilizerTableau(n_qubits)
    circuit = CircuitSpec(n_qubits)
    for _ in range(depth):
        for q in range(1, n_qubits + 1):
            word = ["s"] * int(rng.integers(0, 4))
            if rng.integers(0, 2):
                word.append("h")
            word += ["s"] * int(rng.integers(0, 4))
            for name in word:
                circuit.add(name, q)
        for q in range(1, n_qubits):
            circuit.add("cnot", q, q + 1)
    circuit.depth = depth
    tab.apply_circuit(circuit)
    return tab, circuit


def conjugation_offset(tableau: StabilizerTableau) -> PauliString:
    """A Pauli g with sigma_g|psi> = +-|psi*>.

    Complex conjugation flips the sign of every generator with an odd number
    of Y letters; g must anticommute with exactly those generators, a linear
    system over GF(2).  Solutions differ by stabilizer elements and any one
    is valid.
    """
    n = tableau.n_qubits
    y_parity = (tableau.z & tableau.x).sum(axis=1) % 2
    # row i = pair-swapped generator i, so mat @ (z|x) is the symplectic form
    mat = np.concatenate([tableau.x, tableau.z], axis=1).astype(np.uint8)
    v = _gf2_solve(mat, y_parity.astype(np.uint8))
    return _zx_to_pauli(v[:n].astype(bool), v[n:].astype(bool))


def bell_sample_stabilizer(
    tableau: StabilizerTableau, n_samples: int, rng: np.random.Generator
) -> BellSamples:
    """Sample two-copy Bell outcomes of the tableau state.

    Each sample is the bit vector of a uniformly random product of generators
    XORed with the conjugation offset; the result is uniform over the 2^N
    outcomes of nonzero probability.
    """
    if n_samples < 1:
        raise ValueError("need at least one sample")
    n = tableau.n_qubits
    g = conjugation_offset(tableau)
    gz = np.array([(g.digit(q) >> 1) for q in range(1, n + 1)], dtype=np.uint8)
    gx = np.array([(g.digit(q) & 1) for q in range(1, n + 1)], dtype=np.uint8)
    picks = rng.integers(0, 2, size=(n_samples, n), dtype=np.uint8)
    tz = (picks @ tableau.z.astype(np.uint8)) % 2
    tx = (picks @ tableau.x.astype(np.uint8)) % 2
    return BellSamples(n, _pack_zx((tz ^ gz).astype(bool), (tx ^ gx).astype(bool), n))
