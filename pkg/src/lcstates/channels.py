"""Local quantum channels in Kraus form, noise constructors, and the
parameter-counting arithmetic for local contamination.

A channel on one d-level party is stored canonically as Kraus operators
{K_m}, m = 1..e with e <= d^2 and sum_m K_m^dag K_m = I.  The alternative
description by environment-state overlaps (a d^2 x d^2 Gram matrix) is a
constructor, not a storage format.
"""

from dataclasses import dataclass

import numpy as np

from .states import DensityMatrix, InvariantError, _as_complex

COMPLETENESS_ATOL = 1e-9
GRAM_ATOL = 1e-7


@dataclass(frozen=True, eq=False)
class LocalChannel:
    """CPTP map on a single party, as Kraus operators."""

    dim: int
    kraus: np.ndarray  # (e, d, d)

    def __post_init__(self):
        k = _as_complex(self.kraus)
        if k.ndim != 3 or k.shape[1:] != (self.dim, self.dim):
            raise InvariantError(
                f"expected Kraus stack of shape (e, {self.dim}, {self.dim})")
        if not 1 <= k.shape[0] <= self.dim ** 2:
            raise InvariantError("need 1 <= e <= d^2 Kraus operators")
        comp = np.einsum("mij,mik->jk", k.conj(), k)
        if np.max(np.abs(comp - np.eye(self.dim))) > COMPLETENESS_ATOL:
            raise InvariantError("Kraus operators do not sum to the identity")
        k.flags.writeable = False
        object.__setattr__(self, "kraus", k)

    @property
    def env_dim(self):
        return self.kraus.shape[0]

    def __call__(self, m):
        """Apply to a dim x dim matrix."""
        m = np.asarray(m, dtype=complex)
        return np.einsum("mij,jk,mlk->il", self.kraus, m, self.kraus.conj())

    def completeness_residual(self):
        comp = np.einsum("mij,mik->jk", self.kraus.conj(), self.kraus)
        return float(np.max(np.abs(comp - np.eye(self.dim))))


def identity_channel(d, env_dim=1):
    """Identity map, optionally padded with zero Kraus operators."""
    k = np.zeros((env_dim, d, d), dtype=complex)
    k[0] = np.eye(d)
    return LocalChannel(d, k)


@dataclass(frozen=True, eq=False)
class AdjointMap:
    """Heisenberg-picture adjoint X -> sum_m K_m^dag X K_m (unital, not TP)."""

    dim: int
    kraus: np.ndarray  # adjoints of the channel's Kraus operators

    def __call__(self, m):
        m = np.asarray(m, dtype=complex)
        return np.einsum("mij,jk,mlk->il", self.kraus, m, self.kraus.conj())


def adjoint_channel(c):
    """Adjoint of a LocalChannel, satisfying Tr(rho L(sig)) = Tr(L^dag(rho) sig)."""
    return AdjointMap(c.dim, np.transpose(c.kraus, (0, 2, 1)).conj())


# ---------------------------------------------------------------------------
# environment-Gram representation


@dataclass(frozen=True, eq=False)
class EnvironmentGram:
    """Overlap matrix G[(i,j),(i',j')] = <e_{i'j'}|e_{ij}> of the d^2
    environment states describing a system-environment interaction.

    Trace preservation of the induced channel is the d^2 conditions
    sum_j G[(i,j),(i',j)] = delta_{ii'}.
    """

    dim: int
    gram: np.ndarray

    def __post_init__(self):
        g = _as_complex(self.gram)
        d2 = self.dim ** 2
        if g.shape != (d2, d2):
            raise InvariantError(f"Gram matrix must be {d2}x{d2}")
        if np.max(np.abs(g - g.conj().T)) > GRAM_ATOL:
            raise InvariantError("Gram matrix is not Hermitian")
        if np.linalg.eigvalsh((g + g.conj().T) / 2).min() < -GRAM_ATOL:
            raise InvariantError("Gram matrix is not positive semidefinite")
        t = g.reshape(self.dim, self.dim, self.dim, self.dim)
        # sum over the shared environment output index j
        tp = np.einsum("ijkj->ik", t)
        if np.max(np.abs(tp - np.eye(self.dim))) > GRAM_ATOL:
            raise InvariantError(
                "Gram matrix violates trace preservation "
                "(sum_j G[(i,j),(i',j)] != delta)")
        g.flags.writeable = False
        object.__setattr__(self, "gram", g)


def channel_from_environment_gram(g):
    """Realize the channel induced by an environment Gram matrix.

    Factors G = V^dag V by eigendecomposition (negative dust below 1e-12
    clipped to zero) and reads each Kraus operator off one row of V:
    K_m[j, i] = V[m, i*d + j].  env_dim equals the numerical rank of G.
    """
    d = g.dim
    w, u = np.linalg.eigh((g.gram + g.gram.conj().T) / 2)
    w = np.where(w < 1e-12, 0.0, w)
    keep = w > 0
    v = (np.sqrt(w[keep])[:, None] * u[:, keep].conj().T)  # rank x d^2
    if v.shape[0] == 0:
        raise InvariantError("Gram matrix has rank zero")
    kraus = v.reshape(-1, d, d).transpose(0, 2, 1)  # K_m[j,i] = V[m, (i,j)]
    return LocalChannel(d, kraus)


def environment_gram_from_channel(c):
    """Inverse direction: G[(i,j),(i',j')] = sum_m K_m[j,i] conj(K_m[j',i'])."""
    d = c.dim
    v = c.kraus.transpose(0, 2, 1).reshape(c.env_dim, d * d)
    return EnvironmentGram(d, v.conj().T @ v)


# ---------------------------------------------------------------------------
# product-channel application


def _apply_local(t, k, kraus, n):
    """Apply a Kraus stack on party k of a (dims + dims)-shaped tensor."""
    t = np.tensordot(kraus, t, axes=([2], [k]))          # m, a, (rest)
    t = np.moveaxis(t, 1, 1 + k)                          # m, ..., a at k, ...
    t = np.tensordot(t, kraus.conj(), axes=([0, 1 + n + k], [0, 2]))
    return np.moveaxis(t, -1, n + k)


def apply_product_channel(channels, rho):
    """(Lambda_1 (x) ... (x) Lambda_n)(rho) for one LocalChannel per party."""
    dims = rho.shape.local_dims
    if len(channels) != len(dims):
        raise InvariantError("need exactly one channel per party")
    for k, (c, d) in enumerate(zip(channels, dims)):
        if c.dim != d:
            raise InvariantError(
                f"channel on party {k} has dim {c.dim}, party has dim {d}")
    out = _apply_product_channel_matrix(channels, rho.entries, dims)
    return DensityMatrix(rho.shape, out)


def _apply_product_channel_matrix(channels, mat, dims, skip=None):
    """Raw matrix version; optionally skip one party (used by the search)."""
    n = len(dims)
    t = np.asarray(mat, dtype=complex).reshape(dims + tuple(dims))
    for k, c in enumerate(channels):
        if skip is not None and k == skip:
            continue
        t = _apply_local(t, k, c.kraus, n)
    d = int(np.prod(dims))
    return t.reshape(d, d)


def apply_adjoint_product_channel(channels, mat, dims):
    """Tensor product of per-party adjoints applied to a raw matrix."""
    n = len(dims)
    t = np.asarray(mat, dtype=complex).reshape(dims + tuple(dims))
    for k, c in enumerate(channels):
        t = _apply_local(t, k, np.transpose(c.kraus, (0, 2, 1)).conj(), n)
    d = int(np.prod(dims))
    return t.reshape(d, d)


def _minimal_kraus(kraus, d):
    """Reduce a redundant Kraus set to <= d^2 operators for the same map."""
    vecs = kraus.reshape(-1, d * d)
    choi = vecs.T @ vecs.conj()          # d^2 x d^2, PSD
    w, u = np.linalg.eigh((choi + choi.conj().T) / 2)
    keep = w > 1e-14
    out = (np.sqrt(w[keep]) * u[:, keep]).T.reshape(-1, d, d)
    return out


def compose(outer, inner):
    """Channel composition outer(inner(.)) as a single Kraus set.

    The raw product set has e_outer * e_inner elements; it is reduced to a
    minimal equivalent set so the e <= d^2 storage bound always holds.
    """
    if outer.dim != inner.dim:
        raise InvariantError("composition needs matching dimensions")
    prods = np.einsum("mij,njk->mnik", outer.kraus, inner.kraus)
    d = outer.dim
    return LocalChannel(d, _minimal_kraus(prods.reshape(-1, d, d), d))


# ---------------------------------------------------------------------------
# constructors


def haar_isometry(rows, cols, rng):
    """Haar-random isometry via QR of a complex Gaussian, phases fixed."""
    z = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def random_local_channel(d, env_dim, seed):
    """Seeded Haar-random channel: Kraus blocks of a (d*e) x d isometry."""
    if not 1 <= env_dim <= d * d:
        raise InvariantError("need 1 <= env_dim <= d^2")
    rng = np.random.default_rng(seed)
    v = haar_isometry(d * env_dim, d, rng)
    return LocalChannel(d, v.reshape(env_dim, d, d))


def _weyl_operators(d):
    """Generalized Pauli (Heisenberg-Weyl) unitaries X^a Z^b, a,b in 0..d-1."""
    omega = np.exp(2j * np.pi / d)
    x = np.roll(np.eye(d), 1, axis=0)
    z = np.diag(omega ** np.arange(d))
    ops = []
    xa = np.eye(d, dtype=complex)
    for _ in range(d):
        zb = np.eye(d, dtype=complex)
        for _ in range(d):
            ops.append(xa @ zb)
            zb = zb @ z
        xa = xa @ x
    return ops


def depolarizing_channel(d, p):
    """rho -> (1-p) rho + p I/d."""
    if not 0.0 <= p <= 1.0:
        raise InvariantError("noise strength must lie in [0, 1]")
    ops = _weyl_operators(d)
    kraus = [np.sqrt(1 - p + p / d ** 2) * ops[0]]
    kraus += [np.sqrt(p) / d * w for w in ops[1:]]
    return LocalChannel(d, np.stack(kraus))


def dephasing_channel(d, p):
    """Scales every off-diagonal element by (1-p); populations untouched."""
    if not 0.0 <= p <= 1.0:
        raise InvariantError("noise strength must lie in [0, 1]")
    kraus = [np.sqrt(1 - p) * np.eye(d, dtype=complex)]
    for i in range(d):
        e = np.zeros((d, d), dtype=complex)
        e[i, i] = np.sqrt(p)
        kraus.append(e)
    return LocalChannel(d, np.stack(kraus))


def amplitude_damping_channel(p):
    """Qubit energy relaxation: |1> decays to |0> with probability p."""
    if not 0.0 <= p <= 1.0:
        raise InvariantError("noise strength must lie in [0, 1]")
    k0 = np.array([[1, 0], [0, np.sqrt(1 - p)]], dtype=complex)
    k1 = np.array([[0, np.sqrt(p)], [0, 0]], dtype=complex)
    return LocalChannel(2, np.stack([k0, k1]))


def standard_noise(kind, d, p):
    """Named noise families: depolarizing, dephasing, amplitude_damping."""
    if kind == "depolarizing":
        return depolarizing_channel(d, p)
    if kind == "dephasing":
        return dephasing_channel(d, p)
    if kind == "amplitude_damping":
        if d != 2:
            raise InvariantError("amplitude damping is only defined for qubits here")
        return amplitude_damping_channel(p)
    raise InvariantError(f"unknown noise kind {kind!r}")


# ---------------------------------------------------------------------------
# parameter counting


@dataclass(frozen=True)
class ParameterCounts:
    """Real-parameter counts for n parties of d levels each.

    pure_dim:  parameters of a pure state, 2 d^n - 2
    lc_bound:  pure state plus per-party local contamination,
               2 d^n - 2 + n (d^4 - d^2)  (an upper bound; some unitary-like
               transformations are double-counted)
    mixed_dim: parameters of a general density matrix, d^(2n) - 1
    """

    n: int
    d: int
    pure_dim: int
    lc_bound: int
    mixed_dim: int

    @property
    def lc_strictly_smaller(self):
        return self.lc_bound < self.mixed_dim


def parameter_counts(n, d):
    """Exact integer evaluation of the three counts above."""
    if n < 1 or d < 2:
        raise InvariantError("need n >= 1 and d >= 2")
    pure = 2 * d ** n - 2
    return ParameterCounts(n=n, d=d,
                           pure_dim=pure,
                           lc_bound=pure + n * (d ** 4 - d ** 2),
                           mixed_dim=d ** (2 * n) - 1)
