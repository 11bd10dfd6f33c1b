"""Eigensystem of the coupling chain, analytic and numeric.

The chain adjacency G has a closed-form spectrum: squaring G decouples the
two OAM rails, the interleaving permutation S compresses the half-chain
Gram matrix M = Q Q^T into a tridiagonal matrix M' with known eigenpairs,
and the full eigenvectors of G are built from the half-chain ones as
combinations that are symmetric or antisymmetric under the end-to-end
mirror of the mode ladder.  A dense cyclic-Jacobi eigensolver is provided
alongside as an independent numerical route; it never uses the closed
forms it is meant to check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .lattice import CouplingMatrix, build_g

__all__ = [
    "SpectralDecomposition",
    "ConvergenceError",
    "analytic_eigenvalues",
    "half_chain_eigenvector",
    "m_prime",
    "s_matrix",
    "j_matrix",
    "build_v",
    "numeric_eig",
]


class ConvergenceError(RuntimeError):
    """Jacobi sweeps exhausted before the off-diagonal mass vanished."""


def analytic_eigenvalues(n: int) -> np.ndarray:
    """Positive half of the chain spectrum, descending.

    The 2n eigenvalues of the chain adjacency come in opposite-sign pairs
    (bipartite symmetry); the positive ones are 2 cos(k pi / (2n + 1)) for
    k = 1..n, all strictly positive since k pi / (2n + 1) < pi / 2.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    k = np.arange(1, n + 1)
    return 2.0 * np.cos(k * np.pi / (2 * n + 1))


def half_chain_eigenvector(n: int, k: int) -> np.ndarray:
    """Unit eigenvector of :func:`m_prime` for its k-th largest eigenvalue.

    Components are sin(k (2j - 1) pi / (2n + 1)) for j = 1..n scaled by
    2 / sqrt(2n + 1), which is an exact unit normalization.
    """
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    j = np.arange(1, n + 1)
    return 2.0 / math.sqrt(2 * n + 1) * np.sin(k * (2 * j - 1) * np.pi / (2 * n + 1))


def m_prime(n: int) -> np.ndarray:
    """Tridiagonal compression of the half-chain Gram matrix.

    Diagonal (1, 2, 2, ..., 2), unit super- and sub-diagonals.  Satisfies
    S M S^T = M' exactly for M = Q Q^T, with Q the off-diagonal block of
    :func:`opocluster.lattice.build_g` and S from :func:`s_matrix`.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    m = 2 * np.eye(n, dtype=int) + np.eye(n, k=1, dtype=int) + np.eye(n, k=-1, dtype=int)
    m[0, 0] = 1
    return m


def s_matrix(n: int) -> np.ndarray:
    """Interleaving permutation: odd target slots read 1, 2, 3, ...
    in order and even slots read n, n-1, ... from the top.

    Row i has its 1 in column 2i - 1 when that is <= n; row n - i + 1 has
    its 1 in column 2i otherwise.  Orthogonal by construction.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    s = np.zeros((n, n), dtype=int)
    for i in range(1, n + 1):
        if 2 * i - 1 <= n:
            s[i - 1, 2 * i - 2] = 1
        if 2 * i <= n:
            s[n - i, 2 * i - 1] = 1
    return s


def j_matrix(n: int) -> np.ndarray:
    """Anti-diagonal identity (index-reversal permutation)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return np.eye(n, dtype=int)[::-1].copy()


@dataclass(frozen=True)
class SpectralDecomposition:
    """Full eigensystem of the chain adjacency, positive block first.

    ``eigenvalues`` holds (l_1, ..., l_n, -l_1, ..., -l_n) with l_k > 0
    descending; column k of ``vectors`` is the eigenvector for
    ``eigenvalues[k]``.  ``signs`` records, in construction order
    (mirror-combined column k paired with its sign-flipped partner at
    k + n), the computed sign of each constructed column's eigenvalue
    before reordering.  ``parity_mismatches`` lists the k whose computed
    first-half sign is negative, i.e. where the alternating-parity rule
    for the mirror-symmetric/antisymmetric combinations does not hold as
    stated; empirically the rule is sign-flipped for every k.
    """

    n: int
    eigenvalues: np.ndarray = field(repr=False)
    vectors: np.ndarray = field(repr=False)
    signs: tuple[int, ...]
    parity_mismatches: tuple[int, ...]


def build_v(n: int) -> SpectralDecomposition:
    """Assemble the orthogonal eigenvector matrix of build_g(n).

    Each half-chain eigenvector x_k yields two full-chain candidates
    (x_k; +-J x_k) / sqrt(2), one mirror-symmetric and one antisymmetric;
    their eigenvalue signs are measured by Rayleigh quotient against G
    rather than assumed, and columns are arranged so the positive block
    comes first.  Construction uses the alternating diagonal
    L = diag(-1, +1, -1, ...) to pick which parity sits in the first half.
    """
    lam = analytic_eigenvalues(n)
    g = build_g(n).entries.astype(float)
    s = s_matrix(n)
    j = j_matrix(n)
    x = s.T @ np.column_stack([half_chain_eigenvector(n, k) for k in range(1, n + 1)])
    l_diag = np.array([(-1) ** k for k in range(1, n + 1)], dtype=float)

    first = np.vstack([x, j @ x * l_diag]) / math.sqrt(2.0)
    second = np.vstack([x, -(j @ x) * l_diag]) / math.sqrt(2.0)

    vectors = np.zeros((2 * n, 2 * n))
    signs: list[int] = []
    mismatches: list[int] = []
    for k in range(n):
        pair = (first[:, k], second[:, k])
        rho = [col @ g @ col for col in pair]
        for r in rho:
            if abs(abs(r) - lam[k]) > 1e-8:
                raise ValueError(
                    f"constructed column for k={k + 1} has Rayleigh quotient {r}, "
                    f"expected magnitude {lam[k]}"
                )
        pos = 0 if rho[0] > 0 else 1
        vectors[:, k] = pair[pos]
        vectors[:, n + k] = pair[1 - pos]
        signs.extend([int(np.sign(rho[0])), int(np.sign(rho[1]))])
        if rho[0] < 0:
            mismatches.append(k + 1)

    eigenvalues = np.concatenate([lam, -lam])
    return SpectralDecomposition(
        n=n,
        eigenvalues=eigenvalues,
        vectors=vectors,
        signs=tuple(signs),
        parity_mismatches=tuple(mismatches),
    )


def _rotation_schedule(m: int) -> list[tuple[np.ndarray, np.ndarray]]:
    # Round-robin tournament ordering: each round pairs up disjoint
    # (p, q) index pairs so all rotations in a round commute and can be
    # applied as one vectorized two-sided update.  m - 1 rounds (m even,
    # padded with a sit-out slot when odd) visit every pair once.
    players = list(range(m)) + ([-1] if m % 2 else [])
    half = len(players) // 2
    rounds = []
    arr = players[:]
    for _ in range(len(players) - 1):
        pairs = [
            (min(arr[i], arr[-1 - i]), max(arr[i], arr[-1 - i]))
            for i in range(half)
            if arr[i] != -1 and arr[-1 - i] != -1
        ]
        rounds.append((np.array([p for p, _ in pairs]), np.array([q for _, q in pairs])))
        arr = [arr[0], arr[-1], *arr[1:-1]]
    return rounds


def _apply_round(w: np.ndarray, v: np.ndarray, p: np.ndarray, q: np.ndarray) -> None:
    # One parallel Jacobi round: zero w[p, q] for disjoint pairs via the
    # stable small-angle root t = sign / (|theta| + sqrt(theta^2 + 1)).
    apq = w[p, q]
    active = np.abs(apq) > 0.0
    theta = np.zeros_like(apq)
    np.divide(w[q, q] - w[p, p], 2.0 * apq, out=theta, where=active)
    t = np.where(
        active,
        np.copysign(1.0, theta) / (np.abs(theta) + np.hypot(theta, 1.0)),
        0.0,
    )
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    wp, wq = w[p, :], w[q, :]
    w[p, :] = c[:, None] * wp - s[:, None] * wq
    w[q, :] = s[:, None] * wp + c[:, None] * wq
    wp, wq = w[:, p], w[:, q]
    w[:, p] = wp * c - wq * s
    w[:, q] = wp * s + wq * c
    w[p, q] = 0.0
    w[q, p] = 0.0

    vp, vq = v[:, p], v[:, q]
    v[:, p] = vp * c - vq * s
    v[:, q] = vp * s + vq * c


def _off_norm(w: np.ndarray) -> float:
    return math.sqrt(max(np.sum(w * w) - np.sum(np.diag(w) ** 2), 0.0))


def numeric_eig(
    a: np.ndarray | CouplingMatrix,
    *,
    tol: float = 1e-13,
    max_sweeps: int = 64,
) -> tuple[np.ndarray, np.ndarray]:
    """Dense eigendecomposition of a symmetric matrix by cyclic Jacobi.

    Rotations follow a fixed round-robin ordering whose rounds consist of
    disjoint index pairs, applied as vectorized two-sided updates; the
    schedule is fixed, so results are deterministic for a given input.
    Returns ``(w, v)`` with eigenvalues ``w`` sorted descending and
    orthonormal eigenvector columns ``v``, each column's sign fixed so
    its first component of magnitude above 1e-12 is positive.  Sweeps
    stop once the off-diagonal Frobenius mass falls below ``tol`` times
    the matrix norm.

    Raises ValueError on non-symmetric input and
    :class:`ConvergenceError` if ``max_sweeps`` is exhausted.
    """
    if isinstance(a, CouplingMatrix):
        a = a.entries
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.allclose(a, a.T, atol=1e-12, rtol=0.0):
        raise ValueError("matrix is not symmetric to 1e-12")

    m = a.shape[0]
    w = (a + a.T) / 2.0
    v = np.eye(m)
    if m > 1:
        thresh = tol * (np.linalg.norm(a) or 1.0)
        schedule = _rotation_schedule(m)
        for sweep in range(max_sweeps + 1):
            off = _off_norm(w)
            if off <= thresh:
                break
            if sweep == max_sweeps:
                raise ConvergenceError(
                    f"Jacobi did not converge in {max_sweeps} sweeps "
                    f"(off-norm {off:.3e})"
                )
            for p, q in schedule:
                _apply_round(w, v, p, q)
            w = (w + w.T) / 2.0

    vals = np.diag(w).copy()
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    v = v[:, order]
    for col in range(m):
        nz = np.nonzero(np.abs(v[:, col]) > 1e-12)[0]
        if nz.size and v[nz[0], col] < 0:
            v[:, col] = -v[:, col]
    return vals, v
