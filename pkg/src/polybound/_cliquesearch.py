"""Exact maximum-code search on Hamming graphs.

Finds A(H^n; n, d), the largest binary code of length n with minimum
distance >= d, as a maximum clique of the graph on {0,1}^n whose edges
join words at distance >= d.

The search is a depth-first branch and bound over codes listed in
increasing word value, with two exact reductions:

  * translation invariance: the all-zero word is fixed in the code;
  * column symmetry: while the induced ordered column partition stays
    coarse, each new word is required to be "block-prefix canonical"
    (its support meets every block of the partition in a prefix). Every
    code is column-equivalent to exactly one such increasing chain, so
    the restriction loses no optimum.

Bounding combines candidate cardinality with a greedy coloring of the
candidate set. The kernel is numba-compiled over uint64 bitsets with an
explicit stack (no native recursion).

Even minimum distance reduces to A(n-1, d-1) first (extend by a parity
bit / puncture), which is an exact classical identity.
"""

from __future__ import annotations

import random

import numpy as np
from numba import int64, njit, uint64

from .errors import DomainError, ResourceError

_ONE = uint64(1)


@njit(inline="always")
def _popcnt(x):
    x = x - ((x >> uint64(1)) & uint64(0x5555555555555555))
    x = (x & uint64(0x3333333333333333)) + ((x >> uint64(2)) & uint64(0x3333333333333333))
    x = (x + (x >> uint64(4))) & uint64(0x0F0F0F0F0F0F0F0F)
    return int64((x * uint64(0x0101010101010101)) >> uint64(56))


@njit(inline="always")
def _ctz(x):
    n = 0
    if x & uint64(0xFFFFFFFF) == uint64(0):
        n += 32
        x >>= uint64(32)
    if x & uint64(0xFFFF) == uint64(0):
        n += 16
        x >>= uint64(16)
    if x & uint64(0xFF) == uint64(0):
        n += 8
        x >>= uint64(8)
    if x & uint64(0xF) == uint64(0):
        n += 4
        x >>= uint64(4)
    if x & uint64(0x3) == uint64(0):
        n += 2
        x >>= uint64(2)
    if x & uint64(0x1) == uint64(0):
        n += 1
    return n


@njit
def _color_bound(adj, P, W, cutoff, Q, avail):
    """Greedy coloring count of P, early exit once the count passes cutoff."""
    for w in range(W):
        Q[w] = P[w]
    c = 0
    while True:
        has = False
        for w in range(W):
            if Q[w] != uint64(0):
                has = True
                break
        if not has:
            return c
        c += 1
        if c > cutoff:
            return c
        for w in range(W):
            avail[w] = Q[w]
        while True:
            vw = -1
            for w in range(W):
                if avail[w] != uint64(0):
                    vw = w
                    break
            if vw < 0:
                break
            v = (vw << 6) + _ctz(avail[vw])
            bmask = _ONE << uint64(v & 63)
            Q[vw] &= ~bmask
            avail[vw] &= ~bmask
            for w in range(W):
                avail[w] &= ~adj[v, w]


@njit
def _canonical_candidates(starts, sizes, nblocks, P, buf):
    """Ascending values of partition-prefix words that lie in P."""
    t = np.zeros(nblocks, np.int64)
    count = 0
    while True:
        word = uint64(0)
        for b in range(nblocks):
            if t[b] > 0:
                word |= ((_ONE << uint64(t[b])) - _ONE) << uint64(starts[b])
        if word != uint64(0):
            idx = int64(word)
            if (P[idx >> 6] >> uint64(idx & 63)) & _ONE:
                buf[count] = idx
                count += 1
        b = 0
        while b < nblocks:
            t[b] += 1
            if t[b] <= sizes[b]:
                break
            t[b] = 0
            b += 1
        if b == nblocks:
            break
    buf[:count].sort()
    return count


@njit
def _search(adj, above, P0, starts0, sizes0, n, W, best, best_set, Rstack, node_budget):
    """Iterative DFS over increasing canonical chains. Returns node count,
    negative if the budget ran out."""
    NV = adj.shape[0]
    maxdepth = NV + 2
    stack_P = np.zeros((maxdepth, W), np.uint64)
    stack_cand = np.zeros((maxdepth, NV), np.int64)
    stack_ncand = np.zeros(maxdepth, np.int64)
    stack_pos = np.zeros(maxdepth, np.int64)
    stack_starts = np.zeros((maxdepth, n), np.int64)
    stack_sizes = np.zeros((maxdepth, n), np.int64)
    stack_nb = np.zeros(maxdepth, np.int64)
    Q = np.empty(W, np.uint64)
    avail = np.empty(W, np.uint64)
    newP = np.empty(W, np.uint64)
    nodes = 0

    def _fill_candidates(level):
        # canonical filter while the partition is coarse enough
        P = stack_P[level]
        nb = stack_nb[level]
        cnt = 0
        for w in range(W):
            cnt += _popcnt(P[w])
        use_canon = nb > 0
        combos = 1
        if use_canon:
            for b in range(nb):
                combos *= stack_sizes[level, b] + 1
                if combos > 4 * cnt + 256:
                    use_canon = False
                    break
        if use_canon:
            m = _canonical_candidates(
                stack_starts[level], stack_sizes[level], nb, P, stack_cand[level]
            )
            stack_ncand[level] = m
        else:
            stack_nb[level] = 0
            m = 0
            for w0 in range(W):
                bits = P[w0]
                while bits != uint64(0):
                    v = (w0 << 6) + _ctz(bits)
                    bits &= bits - _ONE
                    stack_cand[level, m] = v
                    m += 1
            stack_ncand[level] = m
        stack_pos[level] = 0

    # root frame: R = {0}, level 0
    for w in range(W):
        stack_P[0, w] = P0[w]
    nb0 = len(starts0)
    for b in range(nb0):
        stack_starts[0, b] = starts0[b]
        stack_sizes[0, b] = sizes0[b]
    stack_nb[0] = nb0
    _fill_candidates(0)
    level = 0
    while level >= 0:
        if stack_pos[level] >= stack_ncand[level]:
            level -= 1
            continue
        v = stack_cand[level, stack_pos[level]]
        stack_pos[level] += 1
        nodes += 1
        if nodes > node_budget:
            return -nodes
        rsize = level + 2  # {0} + one word per level, including v
        Rstack[level] = v
        if rsize > best[0]:
            best[0] = rsize
            for t in range(level + 1):
                best_set[t] = Rstack[t]
        cnt = 0
        for w in range(W):
            newP[w] = stack_P[level, w] & adj[v, w] & above[v, w]
            cnt += _popcnt(newP[w])
        if cnt == 0 or rsize + cnt <= best[0]:
            continue
        cb = _color_bound(adj, newP, W, best[0] - rsize, Q, avail)
        if rsize + cb <= best[0]:
            continue
        child = level + 1
        for w in range(W):
            stack_P[child, w] = newP[w]
        # refine the partition along v (its support is a prefix per block)
        nb = stack_nb[level]
        cnb = 0
        if nb > 0:
            for b in range(nb):
                st = stack_starts[level, b]
                sz = stack_sizes[level, b]
                tt = _popcnt((uint64(v) >> uint64(st)) & ((_ONE << uint64(sz)) - _ONE))
                if tt > 0:
                    stack_starts[child, cnb] = st
                    stack_sizes[child, cnb] = tt
                    cnb += 1
                if sz - tt > 0:
                    stack_starts[child, cnb] = st + tt
                    stack_sizes[child, cnb] = sz - tt
                    cnb += 1
        stack_nb[child] = cnb
        _fill_candidates(child)
        level = child
    return nodes


def _greedy_code(n: int, d: int, order) -> list[int]:
    code = [0]
    for w in order:
        if all(((w ^ u).bit_count()) >= d for u in code):
            code.append(w)
    return code


def _anneal_code(n: int, d: int, target: int, rng: random.Random, sweeps: int) -> list[int] | None:
    """Look for a size-`target` code with min distance >= d by fixed-size
    annealing on the count of violating pairs."""
    N = 1 << n
    pc = int.bit_count
    for _restart in range(sweeps):
        cur = rng.sample(range(N), target)
        viol = sum(
            1
            for i in range(target)
            for j in range(i + 1, target)
            if pc(cur[i] ^ cur[j]) < d
        )
        temp = 2.0
        for _ in range(30000):
            if viol == 0:
                return cur
            i = rng.randrange(target)
            w_new = cur[i] ^ (1 << rng.randrange(n)) if rng.random() < 0.7 else rng.randrange(N)
            if w_new in cur:
                continue
            old = cur[i]
            dv = 0
            for j in range(target):
                if j == i:
                    continue
                if pc(old ^ cur[j]) < d:
                    dv -= 1
                if pc(w_new ^ cur[j]) < d:
                    dv += 1
            if dv <= 0 or rng.random() < 2.718 ** (-dv / temp):
                cur[i] = w_new
                viol += dv
            temp = max(0.02, temp * 0.9995)
    return None


def _incumbent(n: int, d: int, rng: random.Random) -> list[int]:
    """Best code found by cheap heuristics; only used to seed the search."""
    N = 1 << n
    best = _greedy_code(n, d, range(1, N))
    for _ in range(8):
        order = list(range(1, N))
        rng.shuffle(order)
        cand = _greedy_code(n, d, order)
        if len(cand) > len(best):
            best = cand
    target = len(best) + 1
    while True:
        found = _anneal_code(n, d, target, rng, sweeps=6)
        if found is None:
            break
        base = min(found)
        best = sorted(w ^ base for w in found)  # translate so 0 is included
        target += 1
    return best


def max_code_search(
    n: int,
    d: int,
    node_budget: int = 200_000_000,
    seed: int = 0x5EED,
) -> tuple[int, list[int]]:
    """Exact A(n, d) with a witness code, or ResourceError past the budget."""
    if not 1 <= d <= n:
        raise DomainError(f"need 1 <= d <= n, got n={n}, d={d}")
    if d == 1:
        return 1 << n, list(range(1 << n))
    if d % 2 == 0:
        # A(n, d) = A(n-1, d-1) for even d: puncture one way, extend by a
        # parity bit the other way. The witness is the parity extension.
        size, code = max_code_search(n - 1, d - 1, node_budget, seed)
        ext = [(w << 1) | (w.bit_count() & 1) for w in code]
        return size, ext
    N = 1 << n
    W = (N + 63) // 64
    rng = random.Random(seed)
    incumbent = _incumbent(n, d, rng)

    adj = np.zeros((N, W), np.uint64)
    above = np.zeros((N, W), np.uint64)
    pc = int.bit_count
    for u in range(N):
        row = adj[u]
        for v in range(N):
            if v != u and pc(u ^ v) >= d:
                row[v >> 6] |= _ONE << uint64(v & 63)
    full = [
        np.uint64(0xFFFFFFFFFFFFFFFF)
        if (w + 1) * 64 <= N
        else np.uint64((1 << (N - w * 64)) - 1)
        for w in range(W)
    ]
    for u in range(N):
        for w in range(W):
            above[u, w] = full[w] if w > (u >> 6) else np.uint64(0)
        above[u, u >> 6] = full[u >> 6] & np.uint64(
            ~((1 << ((u & 63) + 1)) - 1) & 0xFFFFFFFFFFFFFFFF
        )

    P0 = np.zeros(W, np.uint64)
    for v in range(1, N):
        if pc(v) >= d:
            P0[v >> 6] |= _ONE << uint64(v & 63)

    best = np.array([len(incumbent)], np.int64)
    best_set = np.zeros(N, np.int64)
    Rstack = np.zeros(N, np.int64)
    nodes = _search(
        adj,
        above,
        P0,
        np.array([0], np.int64),
        np.array([n], np.int64),
        n,
        W,
        best,
        best_set,
        Rstack,
        node_budget,
    )
    if nodes < 0:
        raise ResourceError(
            f"max-code search for (n={n}, d={d}) exceeded the node budget "
            f"({node_budget}); best size found so far is {int(best[0])}"
        )
    size = int(best[0])
    if size == len(incumbent):
        witness = sorted(incumbent)
    else:
        witness = sorted([0] + [int(x) for x in best_set[: size - 1]])
    return size, witness
