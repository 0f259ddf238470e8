"""Dense statevector simulation and two-copy Bell-measurement distributions.

State indices put qubit 1 in the most significant bit, matching the
qubit-1-leftmost text convention of `pauli`.

Bell-outcome labels are fixed by requiring

    P(r) = 2^-N |<psi| sigma_r |psi*>|^2

to hold literally, i.e. the Bell state labelled r is, per qubit pair,
(sigma_r (x) I)|Phi+> with |Phi+> = (|00> + |11>)/sqrt(2).  Relative to the
textbook enumeration of Bell states this swaps the two middle labels; the
permutation is irrelevant for every magic quantity (they only depend on
XORs and commutators) and is pinned down by the |0...0> fixture, whose
distribution is supported exactly on {I, Z}^N labels.

Gate set: H, S = diag(1, -i), T = diag(1, e^{-i pi/4}), CNOT, and the
rotations Ry(t), Rz(t) = exp(-i t sigma/2).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np

from .pauli import BellSamples, PauliString

DENSE_CAP = 12  # exact 4^N distributions get large quickly

_SQ2 = 1.0 / np.sqrt(2.0)

_FIXED_GATES = {
    "h": np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    "s": np.array([[1, 0], [0, -1j]], dtype=complex),
    "t": np.array([[1, 0], [0, np.exp(-1j * np.pi / 4)]], dtype=complex),
}


def _ry(t: float) -> np.ndarray:
    c, s = np.cos(t / 2), np.sin(t / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _rz(t: float) -> np.ndarray:
    return np.array([[np.exp(-1j * t / 2), 0], [0, np.exp(1j * t / 2)]], dtype=complex)


_PARAM_GATES = {"ry": _ry, "rz": _rz}

# Bell analysis kernel: row r of the pair transform is <Bell_r| with
# |Bell_r> = (sigma_r (x) I)|Phi+>; entry [r, a, b] multiplies the amplitude
# with copy-A bit a and copy-B bit b.
_BELL_KERNEL = _SQ2 * np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[1, 0], [0, -1]],
        [[0, 1j], [-1j, 0]],
    ],
    dtype=complex,
)


@dataclass(frozen=True)
class StateVector:
    """Normalized pure state; amplitudes are read-only after construction."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (2**self.n_qubits,):
            raise ValueError("amplitude vector has wrong length")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > 1e-9:
            raise ValueError(f"state is not normalized: |psi|^2 = {norm2}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)


def zero_state(n_qubits: int) -> StateVector:
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[0] = 1.0
    return StateVector(n_qubits, amps)


def conjugate(state: StateVector) -> StateVector:
    """Entrywise complex conjugate in the computational basis."""
    return StateVector(state.n_qubits, np.conj(state.amplitudes))


def overlap(a: StateVector, b: StateVector) -> complex:
    """Inner product <a|b>."""
    if a.n_qubits != b.n_qubits:
        raise ValueError("qubit-count mismatch")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: tuple[int, ...]
    param: int | None = None  # index into the circuit parameter vector


@dataclass
class CircuitSpec:
    """Ordered gate list with a parameter vector for the rotation gates."""

    n_qubits: int
    gates: list[Gate] = field(default_factory=list)
    params: np.ndarray = field(default_factory=lambda: np.zeros(0))
    depth: int | None = None

    def __post_init__(self):
        self.params = np.asarray(self.params, dtype=float)
        seen = []
        for g in self.gates:
            if g.name not in _FIXED_GATES and g.name not in _PARAM_GATES and g.name != "cnot":
                raise ValueError(f"unknown gate {g.name!r}")
            for q in g.qubits:
                if not 1 <= q <= self.n_qubits:
                    raise ValueError(f"qubit index {q} out of range")
            if g.name in _PARAM_GATES:
                if g.param is None:
                    raise ValueError(f"{g.name} gate needs a parameter index")
                seen.append(g.param)
        if sorted(seen) != list(range(len(self.params))):
            raise ValueError("parameter count does not match parameterized-gate count")

    @property
    def n_params(self) -> int:
        return len(self.params)

    def with_params(self, params) -> "CircuitSpec":
        return replace(self, params=np.asarray(params, dtype=float))

    def shifted(self, k: int, delta: float) -> "CircuitSpec":
        theta = self.params.copy()
        theta[k] += delta
        return self.with_params(theta)

    def add(self, name: str, *qubits: int, angle: float | None = None) -> "CircuitSpec":
        """Append a gate; rotation angles are appended to the parameter vector."""
        if name not in _FIXED_GATES and name not in _PARAM_GATES and name != "cnot":
            raise ValueError(f"unknown gate {name!r}")
        for q in qubits:
            if not 1 <= q <= self.n_qubits:
                raise ValueError(f"qubit index {q} out of range")
        param = None
        if name in _PARAM_GATES:
            if angle is None:
                raise ValueError("rotation gate needs an angle")
            param = len(self.params)
            self.params = np.append(self.params, angle)
        self.gates.append(Gate(name, tuple(qubits), param))
        return self

    def to_json(self) -> str:
        return json.dumps(
            {
                "version": 1,
                "n_qubits": self.n_qubits,
                "depth": self.depth,
                "gates": [
                    {"name": g.name, "qubits": list(g.qubits), "param": g.param}
                    for g in self.gates
                ],
                "params": [float(x) for x in self.params],
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "CircuitSpec":
        d = json.loads(text)
        gates = [Gate(g["name"], tuple(g["qubits"]), g.get("param")) for g in d["gates"]]
        return cls(d["n_qubits"], gates, np.array(d["params"], dtype=float), d.get("depth"))


def _apply_1q(amps: np.ndarray, u: np.ndarray, q: int, n: int) -> np.ndarray:
    t = amps.reshape(2 ** (q - 1), 2, 2 ** (n - q))
    return np.einsum("ab,ibj->iaj", u, t).reshape(-1)


def _apply_cnot(amps: np.ndarray, c: int, t: int, n: int) -> np.ndarray:
    out = amps.copy().reshape((2,) * n)
    sel1 = [slice(None)] * n
    sel1[c - 1] = 1
    lo, hi = list(sel1), list(sel1)
    lo[t - 1], hi[t - 1] = 0, 1
    out[tuple(lo)], out[tuple(hi)] = out[tuple(hi)].copy(), out[tuple(lo)].copy()
    return out.reshape(-1)


# pair kernel as a 4x4 matrix over the combined digit 2*(copy-A bit) + copy-B bit
_BELL_KERNEL_MAT = _BELL_KERNEL.reshape(4, 4)


def simulate(circuit: CircuitSpec, initial: StateVector | None = None) -> StateVector:
    """Apply the circuit's gates in order to |0...0> (or `initial`)."""
    n = circuit.n_qubits
    if initial is None:
        initial = zero_state(n)
    if initial.n_qubits != n:
        raise ValueError("initial state size does not match circuit")
    amps = initial.amplitudes.copy()
    for g in circuit.gates:
        if g.name == "cnot":
            amps = _apply_cnot(amps, g.qubits[0], g.qubits[1], n)
        elif g.name in _FIXED_GATES:
            amps = _apply_1q(amps, _FIXED_GATES[g.name], g.qubits[0], n)
        else:
            u = _PARAM_GATES[g.name](circuit.params[g.param])
            amps = _apply_1q(amps, u, g.qubits[0], n)
    norm2 = float(np.vdot(amps, amps).real)
    if abs(norm2 - 1.0) > 1e-6:
        raise RuntimeError(f"norm drifted to {norm2}")
    return StateVector(n, amps / np.sqrt(norm2))


def apply_pauli(state: StateVector, p: PauliString) -> StateVector:
    """sigma_p |psi> with the standard phases i^{#Y} (-1)^{z.b}."""
    if p.n_qubits != state.n_qubits:
        raise ValueError("qubit-count mismatch")
    n = state.n_qubits
    idx = np.arange(2**n, dtype=np.uint64)
    # per-qubit x/z masks as N-bit integers (qubit 1 = MSB)
    xm, zm = np.uint64(p.x_bits_compact()), np.uint64(p.z_bits_compact())
    signs = np.where(np.bitwise_count(idx & zm) & 1, -1.0, 1.0)
    global_phase = 1j ** (p.y_count() % 4)
    out = np.empty_like(state.amplitudes)
    out[idx ^ xm] = global_phase * signs * state.amplitudes
    return StateVector(n, out)


def pauli_expectation(state: StateVector, p: PauliString) -> float:
    """Real expectation value <psi|sigma_p|psi>."""
    val = complex(np.vdot(state.amplitudes, apply_pauli(state, p).amplitudes))
    assert abs(val.imag) < 1e-9
    return val.real


@dataclass(frozen=True)
class NoiseModel:
    """Global depolarizing channel with probability p."""

    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("depolarizing probability must be in [0, 1]")


@dataclass(frozen=True)
class BellDistribution:
    """Probability vector over the 4^N two-copy Bell outcomes.

    Distributions of physical states obey P(r) <= 2^-N entrywise (asserted
    by the producing functions); the container itself accepts any normalized
    vector so empirical histograms can be carried too.
    """

    n_qubits: int
    probabilities: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float)
        if p.shape != (4**self.n_qubits,):
            raise ValueError("probability vector has wrong length")
        if p.min() < -1e-12 or p.max() > 1.0 + 1e-12:
            raise ValueError("entries outside [0, 1]")
        if abs(p.sum() - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {p.sum()}")
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)


def bell_amplitudes(a: StateVector, b: StateVector) -> np.ndarray:
    """Bell-basis amplitudes <Bell_r | a (x) b> as a 4^N complex vector.

    Interleaves the two copies into per-qubit pair digits once, then applies
    the 4x4 pair kernel mode by mode as batched matrix products, so the
    result comes out directly in the interleaved outcome indexing.
    """
    if a.n_qubits != b.n_qubits:
        raise ValueError("qubit-count mismatch")
    n = a.n_qubits
    if n > DENSE_CAP:
        raise ValueError(f"dense Bell distributions are capped at {DENSE_CAP} qubits")
    t = np.outer(a.amplitudes, b.amplitudes).reshape((2,) * (2 * n))
    order = [ax for q in range(n) for ax in (q, n + q)]
    t = np.ascontiguousarray(t.transpose(order)).reshape(-1)
    for k in range(n):
        t = np.matmul(_BELL_KERNEL_MAT, t.reshape(4**k, 4, -1)).reshape(-1)
    return t


def cross_bell_distribution(a: StateVector, b: StateVector) -> BellDistribution:
    """Outcome distribution of a Bell measurement across |a> and |b>."""
    amps = bell_amplitudes(a, b)
    probs = np.abs(amps) ** 2
    assert probs.max() <= 2.0**-a.n_qubits + 1e-12
    return BellDistribution(a.n_qubits, probs)


def bell_distribution(state: StateVector) -> BellDistribution:
    """Outcome distribution of a Bell measurement across two copies of |psi>."""
    return cross_bell_distribution(state, state)


def pauli_expectation_table(state: StateVector) -> np.ndarray:
    """<psi|sigma_r|psi> for every r, as a real 4^N vector."""
    table = 2 ** (state.n_qubits / 2) * bell_amplitudes(state, conjugate(state))
    assert np.max(np.abs(table.imag)) < 1e-9
    return table.real


def noisy_bell_distribution(dist: BellDistribution, noise: NoiseModel) -> BellDistribution:
    """Distribution after global depolarizing noise on both copies."""
    p = noise.p
    dim = 4**dist.n_qubits
    return BellDistribution(
        dist.n_qubits, (1 - p) ** 2 * dist.probabilities + p * (2 - p) / dim
    )


def sample(dist: BellDistribution, n_samples: int, rng: np.random.Generator) -> BellSamples:
    """Draw i.i.d. outcomes by inverse CDF; deterministic for a fixed seed."""
    if n_samples < 1:
        raise ValueError("need at least one sample")
    cdf = np.cumsum(dist.probabilities)
    cdf[-1] = 1.0
    idx = np.searchsorted(cdf, rng.random(n_samples), side="right")
    return BellSamples.from_indices(dist.n_qubits, idx)


# single-pair Bell projectors in their Pauli decomposition
# 1/4 (II + Ex XX + Ey YY + Ez ZZ); base signs (+, -, +) for the |Phi+>
# projector, conjugation by sigma_r flips the sign of anticommuting axes
_P2 = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _pair_projector(digit: int) -> np.ndarray:
    base = {"x": 1.0, "y": -1.0, "z": 1.0}
    anti = {  # axes anticommuting with each label digit (0=I,1=X,2=Z,3=Y)
        0: set(),
        1: {"y", "z"},
        2: {"x", "y"},
        3: {"x", "z"},
    }[digit]
    out = np.eye(4, dtype=complex)
    for ax, m in _P2.items():
        sign = -base[ax] if ax in anti else base[ax]
        out += sign * np.kron(m, m)
    return out / 4.0


def mixed_bell_distribution(rho: np.ndarray, cap: int = 5) -> BellDistribution:
    """Two-copy Bell distribution of a density matrix, via explicit projectors.

    Deliberately the slow reference construction; the fast pure-state path is
    cross-validated against it in the tests.
    """
    rho = np.asarray(rho, dtype=complex)
    dim = rho.shape[0]
    n = int(np.log2(dim))
    if rho.shape != (dim, dim) or 2**n != dim:
        raise ValueError("density matrix must be 2^N x 2^N")
    if n > cap:
        raise ValueError(f"dense two-copy work is capped at {cap} qubits")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-9:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-9:
        raise ValueError("density matrix trace is not 1")
    if np.linalg.eigvalsh(rho).min() < -1e-9:
        raise ValueError("density matrix is not positive semidefinite")

    # reorder rho (x) rho from (A1..An B1..Bn) to pairwise (A1 B1 A2 B2 ...)
    w = np.kron(rho, rho).reshape((2,) * (4 * n))
    perm = []
    for i in range(n):
        perm += [i, n + i]
    perm_full = perm + [2 * n + p for p in perm]
    w = w.transpose(perm_full).reshape(4**n, 4**n)

    pair_proj = [_pair_projector(d) for d in range(4)]
    probs = np.empty(4**n)
    for r in range(4**n):
        op = np.ones((1, 1), dtype=complex)
        rr = r
        for _ in range(n):
            # most significant base-4 digit first
            d = (rr >> (2 * (n - 1))) & 3
            rr = (rr << 2) & (4**n - 1)
            op = np.kron(op, pair_proj[d])
        probs[r] = np.einsum("ij,ji->", w, op).real
    return BellDistribution(n, probs)


def distribution_to_csv(dist: BellDistribution, path: str) -> None:
    """Write a distribution as CSV rows of (outcome bits, probability)."""
    n2 = 2 * dist.n_qubits
    with open(path, "w") as f:
        f.write("bits,probability\n")
        for r, p in enumerate(dist.probabilities):
            f.write(f"{r:0{n2}b},{float(p)!r}\n")


def project_measure(state: StateVector, qubit: int) -> list[tuple[float, StateVector]]:
    """Computational-basis measurement branches (probability, state)."""
    n = state.n_qubits
    if not 1 <= qubit <= n:
        raise ValueError("qubit index out of range")
    t = state.amplitudes.reshape(2 ** (qubit - 1), 2, 2 ** (n - qubit))
    branches = []
    for b in (0, 1):
        proj = np.zeros_like(t)
        proj[:, b, :] = t[:, b, :]
        prob = float(np.vdot(proj, proj).real)
        if prob > 1e-12:
            branches.append((prob, StateVector(n, proj.reshape(-1) / np.sqrt(prob))))
    return branches


# ---------------------------------------------------------------------------
# Circuit builders


def hardware_efficient_ansatz(n_qubits: int, depth: int, params) -> CircuitSpec:
    """Layers of per-qubit Ry then Rz rotations followed by a CNOT chain."""
    params = np.asarray(params, dtype=float)
    if params.shape != (2 * n_qubits * depth,):
        raise ValueError(f"expected {2 * n_qubits * depth} parameters, got {params.shape}")
    gates, k = [], 0
    for _ in range(depth):
        for q in range(1, n_qubits + 1):
            gates.append(Gate("ry", (q,), k))
            k += 1
        for q in range(1, n_qubits + 1):
            gates.append(Gate("rz", (q,), k))
            k += 1
        for q in range(1, n_qubits):
            gates.append(Gate("cnot", (q, q + 1)))
    return CircuitSpec(n_qubits, gates, params, depth)


def clifford_plus_t_params(
    n_qubits: int, depth: int, n_tgates: int, rng: np.random.Generator
) -> np.ndarray:
    """Random multiples of pi/2 with n_tgates positions shifted by pi/4."""
    k = 2 * n_qubits * depth
    if not 0 <= n_tgates <= k:
        raise ValueError("T-gate count out of range")
    theta = (np.pi / 2) * rng.integers(0, 4, size=k).astype(float)
    shift = rng.choice(k, size=n_tgates, replace=False)
    theta[shift] += np.pi / 4
    return theta


def magic_input_circuit(
    n_qubits: int,
    n_magic: int,
    phi: float,
    depth: int,
    rng: np.random.Generator,
) -> CircuitSpec:
    """Magic-angle inputs on random qubits followed by a random layered Clifford.

    Prepares cos(phi/2)|0> + sin(phi/2)|1> on n_magic randomly chosen qubits
    and applies `depth` layers of random pi/2-multiple rotations plus CNOT
    chains, which are all Clifford.
    """
    if not 0 <= n_magic <= n_qubits:
        raise ValueError("magic-state count out of range")
    circuit = CircuitSpec(n_qubits)
    for q in sorted(rng.choice(n_qubits, size=n_magic, replace=False) + 1):
        circuit.add("ry", int(q), angle=phi)
    for _ in range(depth):
        for q in range(1, n_qubits + 1):
            circuit.add("ry", q, angle=(np.pi / 2) * int(rng.integers(0, 4)))
        for q in range(1, n_qubits + 1):
            circuit.add("rz", q, angle=(np.pi / 2) * int(rng.integers(0, 4)))
        for q in range(1, n_qubits):
            circuit.add("cnot", q, q + 1)
    circuit.depth = depth
    return circuit
