"""Multimode Gaussian states and Gaussian channels in the quadrature picture.

Conventions
-----------
Quadrature ordering is (x1, p1, x2, p2, ...). The vacuum covariance is the
identity (shot-noise units), so a quadrature variance V reads directly as
10*log10(V) dB on a homodyne trace. States and channels are immutable
values; every operation returns a new state.
"""

from dataclasses import dataclass

import numpy as np

SYMMETRY_RTOL = 1e-12    # relative symmetry tolerance for covariance input
UNCERTAINTY_TOL = -1e-9  # lower bound for eigenvalues of cov + i*Omega
CP_TOL = -1e-9           # lower bound for the channel complete-positivity check


def symplectic_form(n_modes):
    """The 2N x 2N symplectic form for (x1, p1, ...) ordering."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


@dataclass(frozen=True, eq=False)
class GaussianState:
    """Mean vector and covariance matrix of N optical modes, vacuum variance = 1."""

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.array(self.mean, dtype=float)
        cov = np.array(self.cov, dtype=float)
        if mean.ndim != 1 or mean.size == 0 or mean.size % 2:
            raise ValueError("mean must be a vector of length 2*n_modes")
        if cov.shape != (mean.size, mean.size):
            raise ValueError("cov must be a 2N x 2N matrix matching the mean")
        if not np.isfinite(mean).all() or not np.isfinite(cov).all():
            raise ValueError("state contains non-finite values")
        scale = max(1.0, float(np.abs(cov).max()))
        if float(np.abs(cov - cov.T).max()) > SYMMETRY_RTOL * scale:
            raise ValueError("covariance matrix is not symmetric")
        cov = 0.5 * (cov + cov.T)
        test = cov + 1j * symplectic_form(mean.size // 2)
        if float(np.linalg.eigvalsh(test).min()) < UNCERTAINTY_TOL:
            raise ValueError("covariance matrix violates the uncertainty relation")
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def n_modes(self):
        return self.mean.size // 2


@dataclass(frozen=True, eq=False)
class GaussianChannel:
    """Deterministic Gaussian channel (X, Y): mean -> X mean, cov -> X cov X^T + Y.

    Unifies symplectic operations (Y = 0) and losses. Construction checks
    complete positivity, Y + i(Omega - X Omega X^T) >= 0.
    """

    X: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        X = np.array(self.X, dtype=float)
        Y = np.array(self.Y, dtype=float)
        if X.ndim != 2 or X.shape[0] != X.shape[1] or X.shape[0] % 2:
            raise ValueError("X must be a square 2N x 2N matrix")
        if Y.shape != X.shape:
            raise ValueError("Y must have the same shape as X")
        if not np.isfinite(X).all() or not np.isfinite(Y).all():
            raise ValueError("channel contains non-finite values")
        scale = max(1.0, float(np.abs(Y).max()))
        if float(np.abs(Y - Y.T).max()) > SYMMETRY_RTOL * scale:
            raise ValueError("Y must be symmetric")
        Y = 0.5 * (Y + Y.T)
        omega = symplectic_form(X.shape[0] // 2)
        test = Y + 1j * (omega - X @ omega @ X.T)
        if float(np.linalg.eigvalsh(test).min()) < CP_TOL:
            raise ValueError("channel is not completely positive")
        X.setflags(write=False)
        Y.setflags(write=False)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)

    @property
    def n_modes(self):
        return self.X.shape[0] // 2

    def apply(self, state):
        if state.n_modes != self.n_modes:
            raise ValueError("channel and state mode counts differ")
        return GaussianState(self.X @ state.mean, self.X @ state.cov @ self.X.T + self.Y)


def vacuum(n_modes):
    """N-mode vacuum: zero mean, identity covariance."""
    if not isinstance(n_modes, (int, np.integer)) or n_modes < 1:
        raise ValueError("n_modes must be a positive integer")
    return GaussianState(np.zeros(2 * n_modes), np.eye(2 * n_modes))


def _check_mode(state_or_n, mode):
    n = state_or_n if isinstance(state_or_n, (int, np.integer)) else state_or_n.n_modes
    if not isinstance(mode, (int, np.integer)) or not 0 <= mode < n:
        raise ValueError(f"mode index {mode} out of range for {n} modes")


def rotation_matrix(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def squeeze_symplectic(r, phase=0.0):
    """Single-mode squeezer, diag(e^-r, e^+r) with its axis rotated by `phase`."""
    core = np.diag([np.exp(-r), np.exp(r)])
    if phase == 0.0:
        return core
    rot = rotation_matrix(phase)
    return rot @ core @ rot.T


def phaseshift_symplectic(theta):
    """Single-mode quadrature rotation."""
    return rotation_matrix(theta)


def coupler_symplectic(ratio):
    """Two-mode coupler with power splitting ratio R, cos(theta) = sqrt(R)."""
    t, s = np.sqrt(ratio), np.sqrt(1.0 - ratio)
    eye = np.eye(2)
    return np.block([[t * eye, s * eye], [-s * eye, t * eye]])


def embed_single(block, mode, n_modes):
    """Embed a 2x2 matrix acting on one mode into the full 2N x 2N identity."""
    full = np.eye(2 * n_modes)
    sl = slice(2 * mode, 2 * mode + 2)
    full[sl, sl] = block
    return full


def embed_pair(block4, mode_a, mode_b, n_modes):
    """Embed a 4x4 matrix acting on an ordered mode pair into the full identity."""
    full = np.eye(2 * n_modes)
    sa = slice(2 * mode_a, 2 * mode_a + 2)
    sb = slice(2 * mode_b, 2 * mode_b + 2)
    full[sa, sa] = block4[0:2, 0:2]
    full[sa, sb] = block4[0:2, 2:4]
    full[sb, sa] = block4[2:4, 0:2]
    full[sb, sb] = block4[2:4, 2:4]
    return full


def _apply_symplectic(state, S):
    return GaussianState(S @ state.mean, S @ state.cov @ S.T)


def apply_squeezer(state, mode, r, phase=0.0):
    """Squeeze one mode: x-variance times e^-2r, p-variance times e^+2r at phase 0."""
    _check_mode(state, mode)
    if r < 0:
        raise ValueError("squeezing parameter r must be >= 0")
    return _apply_symplectic(state, embed_single(squeeze_symplectic(r, phase), mode, state.n_modes))


def apply_phaseshift(state, mode, theta):
    """Rotate one mode's quadratures by theta."""
    _check_mode(state, mode)
    return _apply_symplectic(state, embed_single(phaseshift_symplectic(theta), mode, state.n_modes))


def apply_coupler(state, mode_a, mode_b, ratio):
    """Mix two modes on a coupler with power splitting ratio in [0, 1]."""
    _check_mode(state, mode_a)
    _check_mode(state, mode_b)
    if mode_a == mode_b:
        raise ValueError("coupler requires two distinct modes")
    if not 0.0 <= ratio <= 1.0:
        raise ValueError("splitting ratio must lie in [0, 1]")
    return _apply_symplectic(state, embed_pair(coupler_symplectic(ratio), mode_a, mode_b, state.n_modes))


def apply_loss(state, mode, eta):
    """Attenuate one mode: cov block -> eta*block + (1-eta)*I, mean scaled by sqrt(eta)."""
    _check_mode(state, mode)
    if not 0.0 <= eta <= 1.0:
        raise ValueError("efficiency eta must lie in [0, 1]")
    return loss_channel(state.n_modes, mode, eta).apply(state)


def quadrature_variance(state, mode, theta):
    """Variance of the quadrature x*cos(theta) + p*sin(theta) on one mode."""
    _check_mode(state, mode)
    u = np.array([np.cos(theta), np.sin(theta)])
    sl = slice(2 * mode, 2 * mode + 2)
    return float(u @ state.cov[sl, sl] @ u)


def tensor(state_a, state_b):
    """Product state of two Gaussian states (modes of `state_a` come first)."""
    na, nb = 2 * state_a.n_modes, 2 * state_b.n_modes
    cov = np.zeros((na + nb, na + nb))
    cov[:na, :na] = state_a.cov
    cov[na:, na:] = state_b.cov
    return GaussianState(np.concatenate([state_a.mean, state_b.mean]), cov)


def reduce_modes(state, modes):
    """Partial trace keeping the listed modes, in the order given."""
    modes = list(modes)
    if len(set(modes)) != len(modes) or not modes:
        raise ValueError("modes must be a non-empty list of distinct indices")
    for m in modes:
        _check_mode(state, m)
    idx = np.array([i for m in modes for i in (2 * m, 2 * m + 1)])
    return GaussianState(state.mean[idx], state.cov[np.ix_(idx, idx)])


def symplectic_channel(S):
    """Lossless channel from a symplectic matrix."""
    return GaussianChannel(S, np.zeros_like(S))


def squeezer_channel(n_modes, mode, r, phase=0.0, excess=1.0):
    """Squeezer as a channel, with optional excess noise on the antisqueezed axis.

    `excess` multiplies the antisqueezed variance produced from vacuum
    (1.0 gives the pure, minimum-uncertainty squeezer). Values below 1
    would violate complete positivity and are rejected.
    """
    _check_mode(n_modes, mode)
    if r < 0:
        raise ValueError("squeezing parameter r must be >= 0")
    if excess < 1.0:
        raise ValueError("excess noise factor must be >= 1")
    X = embed_single(squeeze_symplectic(r, phase), mode, n_modes)
    Y = np.zeros((2 * n_modes, 2 * n_modes))
    if excess > 1.0:
        noise = np.diag([0.0, (excess - 1.0) * np.exp(2.0 * r)])
        if phase != 0.0:
            rot = rotation_matrix(phase)
            noise = rot @ noise @ rot.T
        sl = slice(2 * mode, 2 * mode + 2)
        Y[sl, sl] = noise
    return GaussianChannel(X, Y)


def phaseshift_channel(n_modes, mode, theta):
    _check_mode(n_modes, mode)
    return symplectic_channel(embed_single(phaseshift_symplectic(theta), mode, n_modes))


def coupler_channel(n_modes, mode_a, mode_b, ratio):
    _check_mode(n_modes, mode_a)
    _check_mode(n_modes, mode_b)
    if mode_a == mode_b:
        raise ValueError("coupler requires two distinct modes")
    if not 0.0 <= ratio <= 1.0:
        raise ValueError("splitting ratio must lie in [0, 1]")
    return symplectic_channel(embed_pair(coupler_symplectic(ratio), mode_a, mode_b, n_modes))


def loss_channel(n_modes, mode, eta):
    _check_mode(n_modes, mode)
    if not 0.0 <= eta <= 1.0:
        raise ValueError("efficiency eta must lie in [0, 1]")
    X = embed_single(np.sqrt(eta) * np.eye(2), mode, n_modes)
    Y = np.zeros((2 * n_modes, 2 * n_modes))
    sl = slice(2 * mode, 2 * mode + 2)
    Y[sl, sl] = (1.0 - eta) * np.eye(2)
    return GaussianChannel(X, Y)
