"""Dense complex state algebra over multipartite systems.

States live over a :class:`SystemShape` with a fixed big-endian multi-index
convention: for local dimensions (d_1, ..., d_n) the flat basis index is
i = sum_k i_k * prod_{m>k} d_m, i.e. party 0 is most significant.  Every
module in this package shares that convention.
"""

from dataclasses import dataclass, field

import numpy as np

ATOL = 1e-9
RANK_TOL = 1e-10


class InvariantError(ValueError):
    """A state, channel or protocol violates one of its defining invariants."""


class UnsupportedError(ValueError):
    """The request is well-formed but outside what this package implements."""


@dataclass(frozen=True)
class SystemShape:
    """Party structure: n parties with local dimensions (d_1, ..., d_n)."""

    local_dims: tuple

    def __post_init__(self):
        dims = tuple(int(d) for d in self.local_dims)
        if len(dims) < 1 or any(d < 1 for d in dims):
            raise InvariantError("need n >= 1 parties with local dims >= 1")
        object.__setattr__(self, "local_dims", dims)

    @property
    def n_parties(self):
        return len(self.local_dims)

    @property
    def total_dim(self):
        return int(np.prod(self.local_dims))

    def concat(self, other):
        return SystemShape(self.local_dims + other.local_dims)


def _as_complex(a):
    return np.ascontiguousarray(np.asarray(a, dtype=complex))


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized state vector over a SystemShape."""

    shape: SystemShape
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _as_complex(self.amplitudes).reshape(-1)
        if amps.size != self.shape.total_dim:
            raise InvariantError(
                f"amplitude vector has length {amps.size}, "
                f"shape needs {self.shape.total_dim}")
        if abs(np.linalg.norm(amps) - 1.0) > ATOL:
            raise InvariantError("state vector is not normalized")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    def density(self):
        """|psi><psi| as a DensityMatrix."""
        return DensityMatrix(self.shape, np.outer(self.amplitudes,
                                                  self.amplitudes.conj()))

    def overlap(self, other):
        """<self|other> (complex)."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def equals_up_to_phase(self, other, tol=ATOL):
        """Physical equality: |<self|other>| = 1 within tol."""
        if self.shape != other.shape:
            return False
        return abs(abs(self.overlap(other)) - 1.0) <= tol


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace operator."""

    shape: SystemShape
    entries: np.ndarray
    symmetrize: bool = field(default=False, compare=False)

    def __post_init__(self):
        m = _as_complex(self.entries)
        d = self.shape.total_dim
        if m.shape != (d, d):
            raise InvariantError(f"expected a {d}x{d} matrix, got {m.shape}")
        if self.symmetrize:
            # allowed only at construction from external input
            m = (m + m.conj().T) / 2
        if np.max(np.abs(m - m.conj().T)) > ATOL:
            raise InvariantError("matrix is not Hermitian")
        if np.linalg.eigvalsh((m + m.conj().T) / 2).min() < -ATOL:
            raise InvariantError("matrix is not positive semidefinite")
        if abs(np.trace(m).real - 1.0) > ATOL:
            raise InvariantError("trace is not 1")
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)

    def eigensystem(self):
        """Deterministic eigendecomposition, eigenvalues descending."""
        w, v = deterministic_eigh(self.entries)
        return w[::-1], v[:, ::-1]

    def rank(self, tol=RANK_TOL):
        return int(np.sum(np.linalg.eigvalsh(self.entries) > tol))

    def purity(self):
        return float(np.trace(self.entries @ self.entries).real)


# ---------------------------------------------------------------------------
# deterministic linear algebra helpers


def _fix_phases(vecs):
    """Rotate each column so its largest-magnitude entry is real positive."""
    out = np.array(vecs, dtype=complex)
    for j in range(out.shape[1]):
        col = out[:, j]
        k = int(np.argmax(np.abs(col)))
        ph = col[k] / abs(col[k]) if abs(col[k]) > 0 else 1.0
        out[:, j] = col / ph
    return out


def deterministic_eigh(h, degeneracy_tol=1e-9):
    """eigh with a reproducible choice of basis inside degenerate eigenspaces.

    Within each cluster of eigenvalues closer than degeneracy_tol the
    eigenvectors are re-diagonalized against the basis-index operator
    diag(0, 1, ..., D-1), ordered by ascending expectation of that operator,
    and phase-fixed.  The same input bits always give the same basis.
    """
    h = np.asarray(h, dtype=complex)
    w, v = np.linalg.eigh(h)
    pos = np.diag(np.arange(h.shape[0], dtype=float))
    i = 0
    while i < len(w):
        j = i + 1
        while j < len(w) and abs(w[j] - w[j - 1]) <= degeneracy_tol:
            j += 1
        if j - i > 1:
            block = v[:, i:j]
            b = block.conj().T @ pos @ block
            bw, bv = np.linalg.eigh((b + b.conj().T) / 2)
            v[:, i:j] = block @ bv  # ascending <position> within the cluster
        i = j
    return w, _fix_phases(v)


# ---------------------------------------------------------------------------
# operations


def tensor_product(a, b):
    """Kronecker product of two pure states or two density matrices.

    The result's shape is the concatenation of the operand shapes, in the
    fixed index ordering (left operand most significant).
    """
    if isinstance(a, PureState) and isinstance(b, PureState):
        return PureState(a.shape.concat(b.shape),
                         np.kron(a.amplitudes, b.amplitudes))
    if isinstance(a, DensityMatrix) and isinstance(b, DensityMatrix):
        return DensityMatrix(a.shape.concat(b.shape),
                             np.kron(a.entries, b.entries))
    raise InvariantError("cannot tensor a pure state with a density matrix")


def _check_parties(shape, parties):
    parties = sorted(set(int(p) for p in parties))
    if not parties:
        raise InvariantError("party subset must be nonempty")
    if parties[0] < 0 or parties[-1] >= shape.n_parties:
        raise InvariantError(f"party index out of range for {shape.n_parties} parties")
    return parties


def partial_trace(rho, keep):
    """Trace out all parties not in `keep` (0-based indices).

    Kept parties retain their relative order.
    """
    keep = _check_parties(rho.shape, keep)
    dims = rho.shape.local_dims
    n = len(dims)
    t = rho.entries.reshape(dims + dims)
    drop = [k for k in range(n) if k not in keep]
    for c, k in enumerate(drop):
        # after c removals the row axis of party k sits at k - c and its
        # column axis n - c further along
        ax = k - c
        t = np.trace(t, axis1=ax, axis2=ax + n - c)
    d_keep = int(np.prod([dims[k] for k in keep]))
    out = t.reshape(d_keep, d_keep)
    return DensityMatrix(SystemShape(tuple(dims[k] for k in keep)), out)


def _sqrtm_psd(m):
    w, v = np.linalg.eigh(m)
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def distance(metric, a, b):
    """Distance/similarity between two density matrices of the same shape.

    trace:            (1/2) * sum of singular values of (a - b)
    hilbert_schmidt:  Frobenius norm of (a - b)
    fidelity:         Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2
    """
    if a.shape != b.shape:
        raise InvariantError("shape mismatch")
    diff = a.entries - b.entries
    if metric == "trace":
        return float(np.sum(np.linalg.svd(diff, compute_uv=False)) / 2)
    if metric == "hilbert_schmidt":
        return float(np.linalg.norm(diff))
    if metric == "fidelity":
        sa = _sqrtm_psd(a.entries)
        sv = np.linalg.svd(sa @ _sqrtm_psd(b.entries), compute_uv=False)
        return float(np.sum(sv) ** 2)
    raise InvariantError(f"unknown metric {metric!r}")


@dataclass(frozen=True, eq=False)
class SchmidtForm:
    """Bipartite normal form sum_i lam_i |l_i>|r_i> across a cut."""

    coefficients: np.ndarray      # non-negative, descending, squares sum to 1
    left_basis: np.ndarray        # columns are |l_i>
    right_basis: np.ndarray       # columns are |r_i>
    left_parties: tuple
    right_parties: tuple

    def rank(self, tol=RANK_TOL):
        return int(np.sum(self.coefficients > np.sqrt(tol)))


def _cut_permutation(shape, cut):
    left, right = cut
    left = _check_parties(shape, left)
    right = _check_parties(shape, right)
    if sorted(left + right) != list(range(shape.n_parties)):
        raise InvariantError("cut must partition all parties into two nonempty groups")
    return left, right


def schmidt_decompose(psi, cut):
    """Schmidt decomposition of a pure state across a bipartition.

    cut is a pair (left_parties, right_parties) of disjoint index collections
    covering every party.
    """
    left, right = _cut_permutation(psi.shape, cut)
    dims = psi.shape.local_dims
    t = psi.amplitudes.reshape(dims)
    t = np.transpose(t, left + right)
    dl = int(np.prod([dims[k] for k in left]))
    dr = int(np.prod([dims[k] for k in right]))
    u, s, vh = np.linalg.svd(t.reshape(dl, dr))
    r = min(dl, dr)
    # |psi> = sum_i s_i |u_i> (x) conj(v_i), and conj(v_i) = vh[i, :]
    return SchmidtForm(coefficients=s[:r].copy(),
                       left_basis=u[:, :r].copy(),
                       right_basis=vh[:r, :].T.copy(),
                       left_parties=tuple(left),
                       right_parties=tuple(right))


# ---------------------------------------------------------------------------
# canonical constructors


def basis_state(shape, index):
    """Computational basis state |index> (flat index) over shape."""
    d = shape.total_dim
    if not 0 <= index < d:
        raise InvariantError(f"basis index {index} out of range")
    amps = np.zeros(d, dtype=complex)
    amps[index] = 1.0
    return PureState(shape, amps)


def ghz_state(n=3, d=2):
    """(|0...0> + ... + |d-1...d-1>)/sqrt(d) on n parties of dimension d."""
    if n < 2 or d < 2:
        raise UnsupportedError("GHZ needs n >= 2 parties of dimension >= 2")
    shape = SystemShape((d,) * n)
    amps = np.zeros(shape.total_dim, dtype=complex)
    stride = (shape.total_dim - 1) // (d - 1)  # index of |k,k,...,k> is k*stride
    amps[::stride] = 1 / np.sqrt(d)
    return PureState(shape, amps)


def w_state():
    """Three-qubit W state (|001> + |010> + |100>)/sqrt(3)."""
    amps = np.zeros(8, dtype=complex)
    amps[[1, 2, 4]] = 1 / np.sqrt(3)
    return PureState(SystemShape((2, 2, 2)), amps)


def max_entangled(d):
    """Maximally entangled pair (1/sqrt(d)) sum_i |ii>."""
    if d < 2:
        raise UnsupportedError("need local dimension >= 2")
    amps = np.zeros(d * d, dtype=complex)
    amps[:: d + 1] = 1 / np.sqrt(d)
    return PureState(SystemShape((d, d)), amps)


def canonical_state(kind, **params):
    """Dispatch constructor: GHZ_n, W3, MaxEntangled_d or Basis(index)."""
    kind = kind.lower()
    if kind in ("ghz", "ghz_n"):
        return ghz_state(n=params.get("n", 3), d=params.get("d", 2))
    if kind in ("w", "w3"):
        if params.get("n", 3) != 3:
            raise UnsupportedError("W state only implemented for 3 qubits")
        return w_state()
    if kind in ("maxent", "max_entangled", "maxentangled_d"):
        return max_entangled(params.get("d", 2))
    if kind == "basis":
        return basis_state(SystemShape(tuple(params["dims"])), params["index"])
    raise UnsupportedError(f"unknown canonical state kind {kind!r}")


def z_mixture(p):
    """p |W><W| + (1-p) |GHZ><GHZ| on three qubits."""
    if not 0.0 <= p <= 1.0:
        raise InvariantError("mixing weight must lie in [0, 1]")
    w = w_state().amplitudes
    g = ghz_state().amplitudes
    m = p * np.outer(w, w.conj()) + (1 - p) * np.outer(g, g.conj())
    return DensityMatrix(SystemShape((2, 2, 2)), m)


def purify(rho, ancilla_dims):
    """Purify rho on an appended ancilla register.

    The ancilla components are the first rank(rho) computational basis
    states, paired with eigenvectors in descending-eigenvalue order, so the
    ancilla parts of the purification are orthonormal by construction.
    """
    ancilla = SystemShape(tuple(ancilla_dims))
    w, v = rho.eigensystem()
    keep = w > RANK_TOL
    w, v = w[keep], v[:, keep]
    r = len(w)
    if ancilla.total_dim < r:
        raise InvariantError(
            f"ancilla dimension {ancilla.total_dim} below rank {r}")
    m = np.zeros((rho.shape.total_dim, ancilla.total_dim), dtype=complex)
    m[:, :r] = v * np.sqrt(w)
    psi = m.reshape(-1)  # system parties most significant, ancilla appended
    psi = psi / np.linalg.norm(psi)
    return PureState(rho.shape.concat(ancilla), psi)
