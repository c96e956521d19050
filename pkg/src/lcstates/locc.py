"""Bipartite LOCC machinery.

Implements the majorization criterion for deterministic pure-state
conversion, an explicit protocol turning a maximally entangled state into
any target of compatible Schmidt rank with probability one, and the
synthesis of an arbitrary bipartite density matrix from that protocol plus
shared randomness (the LCCC route: Alice samples an ensemble element,
announces it, and both parties steer the maximally entangled precursor to
the sampled pure state).
"""

from dataclasses import dataclass

import numpy as np

from .states import (ATOL, DensityMatrix, InvariantError, PureState,
                     RANK_TOL, SystemShape, deterministic_eigh, distance,
                     max_entangled, schmidt_decompose)


# ---------------------------------------------------------------------------
# majorization


def majorizes(x, y, slack=1e-12):
    """True iff x majorizes y: every prefix sum of sorted-descending x
    dominates the corresponding prefix sum of y (within slack)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if (x < 0).any() or (y < 0).any():
        raise InvariantError("probability vectors must be non-negative")
    if abs(x.sum() - 1) > ATOL or abs(y.sum() - 1) > ATOL:
        raise InvariantError("probability vectors must sum to 1")
    m = max(len(x), len(y))
    xs = np.sort(np.concatenate([x, np.zeros(m - len(x))]))[::-1]
    ys = np.sort(np.concatenate([y, np.zeros(m - len(y))]))[::-1]
    return bool(np.all(np.cumsum(xs) >= np.cumsum(ys) - slack))


def can_convert(psi, phi, cut):
    """Deterministic LOCC convertibility psi -> phi across a cut.

    Nielsen's criterion: possible iff the squared Schmidt coefficients of
    the target majorize those of the source.
    """
    if psi.shape != phi.shape:
        raise InvariantError("states must share one shape")
    lam_src = schmidt_decompose(psi, cut).coefficients ** 2
    lam_tgt = schmidt_decompose(phi, cut).coefficients ** 2
    return majorizes(lam_tgt, lam_src)


# ---------------------------------------------------------------------------
# deterministic conversion protocol


def _cut_views(shape, cut):
    left, right = cut
    left, right = tuple(left), tuple(right)
    dims = shape.local_dims
    dl = int(np.prod([dims[k] for k in left]))
    dr = int(np.prod([dims[k] for k in right]))
    return left, right, dl, dr


def _to_cut_order(psi, left, right):
    dims = psi.shape.local_dims
    t = psi.amplitudes.reshape(dims)
    return np.transpose(t, left + right).reshape(-1)


def _from_cut_order(vec, shape, left, right):
    dims = shape.local_dims
    perm = left + right
    t = vec.reshape([dims[k] for k in perm])
    inv = np.argsort(perm)
    return np.transpose(t, inv).reshape(-1)


@dataclass(frozen=True, eq=False)
class ConversionProtocol:
    """Measure-and-correct recipe taking |Phi+> to a fixed target.

    Alice measures with d diagonal Kraus operators; every outcome occurs
    with probability exactly 1/d, and the per-outcome local unitary
    corrections restore the target with certainty.
    """

    target: PureState
    cut: tuple                     # (left parties, right parties)
    alice_kraus: np.ndarray        # (d, dl, dl), each diagonal
    corrections: tuple             # d pairs (A_m, B_m) of unitaries

    @property
    def n_outcomes(self):
        return self.alice_kraus.shape[0]

    def precursor(self):
        """The maximally entangled precursor, embedded across the cut."""
        left, right, dl, dr = _cut_views(self.target.shape, self.cut)
        d = self.n_outcomes
        vec = np.zeros(dl * dr, dtype=complex)
        for i in range(d):
            vec[i * dr + i] = 1 / np.sqrt(d)
        return PureState(self.target.shape,
                         _from_cut_order(vec, self.target.shape, left, right))

    def outcome_state(self, m):
        """(probability, corrected PureState) for outcome m, computed exactly."""
        left, right, dl, dr = _cut_views(self.target.shape, self.cut)
        src = _to_cut_order(self.precursor(), left, right).reshape(dl, dr)
        post = self.alice_kraus[m] @ src
        prob = float(np.linalg.norm(post) ** 2)
        post = post / np.linalg.norm(post)
        a, b = self.corrections[m]
        post = a @ post @ b.T
        amps = _from_cut_order(post.reshape(-1), self.target.shape, left, right)
        return prob, PureState(self.target.shape, amps)

    def verify(self, tol=ATOL):
        """Raise unless completeness, uniform outcomes, and unit fidelity hold."""
        d = self.n_outcomes
        comp = np.einsum("mij,mik->jk", self.alice_kraus.conj(), self.alice_kraus)
        if np.max(np.abs(comp - np.eye(comp.shape[0]))) > 1e-10:
            raise InvariantError("Alice's measurement is not complete")
        for m in range(d):
            prob, state = self.outcome_state(m)
            if abs(prob - 1 / d) > tol:
                raise InvariantError(f"outcome {m} has probability {prob}, not 1/{d}")
            if abs(abs(state.overlap(self.target)) ** 2 - 1.0) > tol:
                raise InvariantError(f"outcome {m} does not reproduce the target")


def _shift_unitary(dim, d, m):
    """|i> -> |(i+m) mod d> on the first d levels, identity above."""
    u = np.zeros((dim, dim), dtype=complex)
    for i in range(d):
        u[(i + m) % d, i] = 1.0
    for i in range(d, dim):
        u[i, i] = 1.0
    return u


def build_conversion(target, cut):
    """Protocol producing `target` from the maximally entangled state with
    probability one.

    With target squared Schmidt coefficients (lam_0, ..., lam_{d-1}) padded
    by zeros, Alice's m-th Kraus operator is diag(sqrt(lam_{(i+m) mod d}));
    completeness follows from sum_i lam_i = 1 and every outcome norm is
    exactly 1/d.  The corrections compose a modular shift with the change
    from the computational to the Schmidt bases on each side.
    """
    left, right, dl, dr = _cut_views(target.shape, cut)
    d = min(dl, dr)
    sf = schmidt_decompose(target, cut)
    if sf.rank() > d:
        raise InvariantError("target Schmidt rank exceeds the cut dimension")
    lam = np.zeros(d)
    lam[:len(sf.coefficients)] = sf.coefficients ** 2
    lam = lam / lam.sum()

    # full unitaries whose first columns are the Schmidt bases
    t = _to_cut_order(target, left, right).reshape(dl, dr)
    u, s, vh = np.linalg.svd(t)
    ua = u                      # dl x dl
    ub = vh.T                   # dr x dr, columns are the right Schmidt vectors

    kraus = np.zeros((d, dl, dl), dtype=complex)
    corrections = []
    for m in range(d):
        diag = np.full(dl, 1 / np.sqrt(d))
        diag[:d] = np.sqrt(lam[(np.arange(d) + m) % d])
        kraus[m] = np.diag(diag)
        corrections.append((ua @ _shift_unitary(dl, d, m),
                            ub @ _shift_unitary(dr, d, m)))
    return ConversionProtocol(target=target, cut=(left, right),
                              alice_kraus=kraus,
                              corrections=tuple(corrections))


# ---------------------------------------------------------------------------
# ensembles and LCCC synthesis


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Mixture of pure states: pairs (p_mu, psi_mu) over one shape."""

    probabilities: np.ndarray
    states: tuple

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float)
        if (p < 0).any() or abs(p.sum() - 1) > ATOL:
            raise InvariantError("ensemble probabilities must be a distribution")
        shapes = {s.shape for s in self.states}
        if len(self.states) != len(p) or len(shapes) != 1:
            raise InvariantError("ensemble states must match probabilities and share a shape")
        p.flags.writeable = False
        object.__setattr__(self, "probabilities", p)

    def mixture(self):
        shape = self.states[0].shape
        m = sum(p * np.outer(s.amplitudes, s.amplitudes.conj())
                for p, s in zip(self.probabilities, self.states))
        return DensityMatrix(shape, m)


def spectral_ensemble(rho, tol=RANK_TOL):
    """Eigendecomposition of rho as an Ensemble, eigenvalues descending.

    Degenerate eigenspaces are resolved by the package-wide deterministic
    disambiguation, so the output depends only on the input bits.
    """
    w, v = deterministic_eigh(rho.entries)
    order = np.argsort(-w, kind="stable")  # descending, ties keep their order
    w, v = w[order], v[:, order]
    keep = w > tol
    w, v = w[keep], v[:, keep]
    states = tuple(PureState(rho.shape, v[:, i] / np.linalg.norm(v[:, i]))
                   for i in range(len(w)))
    return Ensemble(w / w.sum(), states)


@dataclass(frozen=True, eq=False)
class SynthesisPlan:
    """Ensemble for a bipartite target plus one conversion protocol per element."""

    ensemble: Ensemble
    protocols: tuple
    target: DensityMatrix

    def verify(self, tol=ATOL):
        recon = self.ensemble.mixture()
        if np.max(np.abs(recon.entries - self.target.entries)) > tol:
            raise InvariantError("ensemble does not reconstruct the target")
        for proto in self.protocols:
            proto.verify()


def build_synthesis_plan(rho):
    """Spectral ensemble of rho plus a conversion protocol per element."""
    if rho.shape.n_parties != 2:
        raise InvariantError("synthesis is defined for bipartite states")
    ens = spectral_ensemble(rho)
    cut = ((0,), (1,))
    protocols = tuple(build_conversion(psi, cut) for psi in ens.states)
    return SynthesisPlan(ensemble=ens, protocols=protocols, target=rho)


_CHUNK = 1 << 14


def simulate_synthesis(plan, n_samples, seed):
    """Monte-Carlo run of the synthesis protocol.

    Draws the shared random variable mu ~ p_mu and Alice's measurement
    outcome for each shot, accumulates the empirical mixture of corrected
    output states, and reports its trace distance to the target.  Sampling
    is chunked with per-chunk seeds derived from the master seed, so serial
    and parallel schedules give identical results.
    """
    probs = plan.ensemble.probabilities
    n_el = len(probs)
    d_out = plan.target.shape.total_dim
    # corrected output states per (element, outcome); outcome-independent
    # in exact arithmetic but accumulated per outcome anyway
    outcome_states = []
    for proto in plan.protocols:
        outcome_states.append([proto.outcome_state(m)[1].amplitudes
                               for m in range(proto.n_outcomes)])

    counts = [np.zeros(len(states), dtype=np.int64) for states in outcome_states]
    ss = np.random.SeedSequence(seed)
    n_chunks = (n_samples + _CHUNK - 1) // _CHUNK
    children = ss.spawn(n_chunks)
    done = 0
    for c in range(n_chunks):
        size = min(_CHUNK, n_samples - done)
        done += size
        rng = np.random.default_rng(children[c])
        mus = rng.choice(n_el, size=size, p=probs)
        outs = rng.random(size)
        for mu in range(n_el):
            k = len(outcome_states[mu])
            sel = outs[mus == mu]
            counts[mu] += np.bincount((sel * k).astype(np.int64), minlength=k)

    emp = np.zeros((d_out, d_out), dtype=complex)
    for mu in range(n_el):
        for m, amp in enumerate(outcome_states[mu]):
            if counts[mu][m]:
                emp += (counts[mu][m] / n_samples) * np.outer(amp, amp.conj())
    empirical = DensityMatrix(plan.target.shape, emp, symmetrize=True)
    return empirical, distance("trace", empirical, plan.target)


def lccc_synthesize_bipartite(rho, n_samples, seed):
    """Full pipeline: plan, simulate, report (plan, empirical, trace distance)."""
    plan = build_synthesis_plan(rho)
    empirical, td = simulate_synthesis(plan, n_samples, seed)
    return plan, empirical, td
