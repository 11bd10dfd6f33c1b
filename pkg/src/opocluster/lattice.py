"""Mode bookkeeping and coupling graph of the dual-pumped comb.

A cavity pumped by two first-order transverse modes at carrier offsets of
plus and minus one free spectral range downconverts into pairs of comb
modes carrying opposite orbital angular momentum (OAM).  Each pump links a
mode on the +1 OAM rail to a mode on the -1 rail subject to frequency and
OAM conservation, and the union of both pumps' pairings threads all 2n
modes into a single zigzag chain.  This module enumerates those couplings
and builds the 2n x 2n 0/1 adjacency matrix G of that chain under the
canonical 1..2n relabeling.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ModeIndex",
    "CouplingMatrix",
    "physical_couplings",
    "chain_modes",
    "chain_order",
    "build_g",
]


@dataclass(frozen=True)
class ModeIndex:
    """Physical label of one qumode.

    Parameters
    ----------
    freq_offset : int
        Longitudinal offset from the carrier, in units of the free
        spectral range.
    oam : int
        OAM number; +1 or -1 for downconverted modes, 0 is reserved for
        the pumps.
    oam_order : int
        Radial/azimuthal order of the transverse mode family.  Only
        order 1 is placed in graphs; the field exists so higher orders
        can be carried through the data model.
    """

    freq_offset: int
    oam: int
    oam_order: int = 1

    def __post_init__(self):
        if self.oam not in (-1, 0, 1):
            raise ValueError(f"oam must be -1, 0 or +1, got {self.oam}")
        if self.oam_order < 1:
            raise ValueError(f"oam_order must be positive, got {self.oam_order}")


@dataclass(frozen=True)
class CouplingMatrix:
    """Adjacency matrix of the two-mode-squeezing coupling graph.

    ``entries`` is a symmetric, hollow 2n x 2n 0/1 matrix whose two
    diagonal n x n blocks vanish: labels 1..n sit on the +1 OAM rail and
    labels n+1..2n on the -1 rail, and couplings only join the rails.
    """

    n: int
    entries: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return 2 * self.n

    def validate(self) -> None:
        """Raise ValueError if any structural invariant is violated."""
        g = self.entries
        n = self.n
        if g.shape != (2 * n, 2 * n):
            raise ValueError(f"expected shape {(2 * n, 2 * n)}, got {g.shape}")
        if not np.array_equal(g, g.T):
            raise ValueError("coupling matrix must be symmetric")
        if np.any(np.diag(g) != 0):
            raise ValueError("coupling matrix must have a zero diagonal")
        if not np.all((g == 0) | (g == 1)):
            raise ValueError("coupling matrix entries must be 0 or 1")
        if np.any(g[:n, :n]) or np.any(g[n:, n:]):
            raise ValueError("diagonal rail blocks must be zero")
        deg = g.sum(axis=1)
        if deg.max() > 2 or np.count_nonzero(deg == 1) != 2:
            raise ValueError("coupling graph must be a single open chain")
        if g.sum() != 2 * (2 * n - 1):
            raise ValueError(f"expected {2 * n - 1} edges, got {g.sum() // 2}")


def _upper_offset(a: int, n: int) -> int:
    # a-th +1-rail mode along the chain; offsets step by -2 and are
    # centered on the carrier.
    return n + 1 - 2 * a


def _lower_offset(a: int, n: int) -> int:
    return 2 * a - n


def chain_modes(n: int) -> list[ModeIndex]:
    """Return the 2n physical modes in the order they occur along the chain.

    Odd positions hold +1-rail modes with descending frequency offsets,
    even positions hold -1-rail modes with ascending offsets; consecutive
    modes are linked by alternating pumps.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    modes: list[ModeIndex] = []
    for a in range(1, n + 1):
        modes.append(ModeIndex(_upper_offset(a, n), +1))
        modes.append(ModeIndex(_lower_offset(a, n), -1))
    return modes


def physical_couplings(n: int) -> list[tuple[ModeIndex, ModeIndex, int]]:
    """Enumerate every pumped mode pair of the 2n-mode set.

    Each item is ``(signal, idler, pump)`` where ``pump`` is the pump's
    carrier offset (+1 or -1 free spectral ranges): the +1 pump joins
    modes whose frequency offsets sum to +1, the -1 pump to -1, and every
    pair conserves OAM.  The 2n - 1 pairs form a single open chain that
    alternates between the two OAM rails.
    """
    modes = chain_modes(n)
    edges = []
    for i in range(2 * n - 1):
        sig, idl = modes[i], modes[i + 1]
        edges.append((sig, idl, sig.freq_offset + idl.freq_offset))
    return edges


def chain_order(n: int) -> tuple[int, ...]:
    """Vertex sequence of the chain under the canonical 1..2n labeling.

    The +1-rail modes receive labels 1..n ordered as ascending odds then
    descending evens along the chain; the -1-rail modes receive labels
    n+1..2n ordered as descending odds then ascending evens.  This is the
    unique relabeling (up to reversal) for which the half-chain Gram
    matrix reduces to the standard tridiagonal form under the interleaving
    permutation of :func:`opocluster.spectral.s_matrix`.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    half = (n + 1) // 2
    upper = [2 * a - 1 for a in range(1, half + 1)]
    upper += [2 * (n - a + 1) for a in range(half + 1, n + 1)]
    lower = [n + 1 - 2 * a for a in range(1, n // 2 + 1)]
    lower += [2 * a - n for a in range(n // 2 + 1, n + 1)]
    seq: list[int] = []
    for u, l in zip(upper, lower):
        seq.append(u)
        seq.append(l + n)
    return tuple(seq)


def build_g(n: int) -> CouplingMatrix:
    """Build the 2n x 2n coupling adjacency matrix G.

    G[u, v] = 1 exactly when u and v are consecutive in
    :func:`chain_order`; the result is the adjacency matrix of a single
    path on 2n vertices with both rails' diagonal blocks zero.
    """
    seq = chain_order(n)
    g = np.zeros((2 * n, 2 * n), dtype=int)
    for u, v in zip(seq, seq[1:]):
        g[u - 1, v - 1] = 1
        g[v - 1, u - 1] = 1
    return CouplingMatrix(n=n, entries=g)
