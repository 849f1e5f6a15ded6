"""Local and intrinsic energy on tensor powers of the vector crystal.

The local energy table is computed, never hardcoded: the affine crystal
graph on B (x) B is propagated breadth-first from the pair 1 (x) 1 with the
increment rule (+1 when e_0 moves the left factor, -1 when it moves the
right factor, 0 for classical moves).  The unique table normalized by
H(1 (x) 1) = 0 that satisfies this rule is the barred local energy; the
unbarred one is its negative.  All statistics exposed here (dbar, xbar)
are the barred ones, which are the nonnegative ones on restricted paths.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache

from .cartan import AffineType
from .crystal import (
    apply_e,
    enumerate_highest,
    eps_letter,
    letters,
    phi_letter,
)
from .qpoly import QPoly


class PropagationError(RuntimeError):
    """The pair graph was disconnected or gave conflicting increments."""


def _pair_e(at: AffineType, i: int, pair):
    """e_i on a two-factor tensor; returns (new_pair, side) or None."""
    x, y = pair
    if eps_letter(at, i, x) > phi_letter(at, i, y):
        nx = apply_e(at, i, x)
        return ((nx, y), "left") if nx is not None else None
    ny = apply_e(at, i, y)
    return ((x, ny), "right") if ny is not None else None


@lru_cache(maxsize=None)
def local_hbar(at: AffineType):
    """The barred local energy table on B (x) B as a dict pair -> int."""
    B = letters(at)
    edges = {}  # pair -> list of (other_pair, delta along pair -> other)
    for x in B:
        for y in B:
            p = (x, y)
            for i in range(at.n + 1):
                r = _pair_e(at, i, p)
                if r is None:
                    continue
                q, side = r
                d = 0
                if i == 0:
                    d = 1 if side == "left" else -1
                edges.setdefault(p, []).append((q, d))
                edges.setdefault(q, []).append((p, -d))
    start = (1, 1)
    h = {start: 0}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for q, d in edges.get(p, ()):
            v = h[p] + d
            if q in h:
                if h[q] != v:
                    raise PropagationError(
                        "conflicting energy at %r: %d vs %d" % (q, h[q], v)
                    )
            else:
                h[q] = v
                queue.append(q)
    if len(h) != len(B) ** 2:
        raise PropagationError(
            "pair graph disconnected: reached %d of %d" % (len(h), len(B) ** 2)
        )
    return h


def hbar(at: AffineType, x, y) -> int:
    return local_hbar(at)[(x, y)]


@lru_cache(maxsize=None)
def b_natural(at: AffineType):
    """The unique letter with phi = Lambda_0 (one 0-arrow out, nothing else)."""
    found = [
        b
        for b in letters(at)
        if phi_letter(at, 0, b) == 1
        and all(phi_letter(at, i, b) == 0 for i in range(1, at.n + 1))
    ]
    if len(found) != 1:
        raise RuntimeError("b natural not unique for %s: %r" % (at, found))
    return found[0]


def ebar(at: AffineType, word) -> int:
    """Barred total energy of a word (leftmost factor first)."""
    L = len(word)
    if L == 0:
        return 0
    h = local_hbar(at)
    bnat = b_natural(at)
    total = L * h[(word[-1], bnat)]
    for idx in range(L - 1):
        total += (idx + 1) * h[(word[idx], word[idx + 1])]
    return total


def dbar(at: AffineType, word) -> int:
    """Barred intrinsic energy: ebar relative to the all-ones word."""
    L = len(word)
    if L == 0:
        return 0
    h = local_hbar(at)
    return ebar(at, word) - L * h[(1, b_natural(at))]


def intrinsic_d(at: AffineType, word) -> int:
    """The unbarred intrinsic energy (nonpositive on restricted paths)."""
    return -dbar(at, word)


def xbar(at: AffineType, lam, L: int) -> QPoly:
    """One-dimensional sum in the barred variable: sum of q^dbar over paths."""
    out: dict[int, int] = {}
    for word in enumerate_highest(at, lam, L):
        e2 = 2 * dbar(at, word)
        out[e2] = out.get(e2, 0) + 1
    return QPoly(out)


def one_dim_sum(at: AffineType, lam, L: int) -> QPoly:
    """The one-dimensional sum X itself (in q, with nonpositive exponents)."""
    return xbar(at, lam, L).invert_q()
