"""Generic matroid machinery over a rank oracle."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence

Element = Hashable


class OracleRefusal(RuntimeError):
    """Raised when an exhaustive routine would exceed its size cap."""


class ConsistencyError(AssertionError):
    """Two independent computations of the same quantity disagree."""


class RankOracle:
    """Ground set plus a (memoised) rank function on subsets of it."""

    def __init__(self, ground: Iterable[Element], rank_fn: Callable[[frozenset], int], name: str = "matroid"):
        self.ground = tuple(ground)
        self._ground_set = frozenset(self.ground)
        self._rank_fn = rank_fn
        self._cache: dict[frozenset, int] = {}
        self.name = name

    def rank(self, subset: Iterable[Element]) -> int:
        s = frozenset(subset)
        r = self._cache.get(s)
        if r is None:
            if not s <= self._ground_set:
                raise KeyError(f"elements outside the ground set: {sorted(map(str, s - self._ground_set))}")
            r = self._rank_fn(s) if s else 0
            self._cache[s] = r
        return r

    def full_rank(self) -> int:
        return self.rank(self._ground_set)

    def is_independent(self, subset: Iterable[Element]) -> bool:
        s = frozenset(subset)
        return self.rank(s) == len(s)

    def restrict(self, subset: Iterable[Element]) -> "RankOracle":
        sub = [e for e in self.ground if e in set(subset)]
        return RankOracle(sub, self.rank, f"{self.name}|restricted")

    def greedy_basis(self, subset: Iterable[Element] | None = None) -> list:
        items = self.ground if subset is None else [e for e in self.ground if e in set(subset)]
        basis: list = []
        for e in items:
            if self.rank(basis + [e]) == len(basis) + 1:
                basis.append(e)
        return basis

    def __repr__(self) -> str:
        return f"RankOracle({self.name}, |E|={len(self.ground)})"


@dataclass(frozen=True)
class Separation:
    first: frozenset
    second: frozenset
    order: int

    def verify(self, o: RankOracle) -> bool:
        """Re-check the vertical separation inequalities from scratch."""
        if self.first & self.second or (self.first | self.second) != frozenset(o.ground):
            return False
        r1, r2 = o.rank(self.first), o.rank(self.second)
        k = self.order
        return r1 >= k and r2 >= k and r1 + r2 <= o.full_rank() + k - 1

    def to_json(self) -> dict:
        return {"E1": sorted(map(str, self.first)), "E2": sorted(map(str, self.second)), "order": self.order}


# union


def _union_exhaustive(oracles: Sequence[RankOracle], items: list) -> int:
    if len(items) > 20:
        raise OracleRefusal(f"exhaustive union over {len(items)} elements exceeds 2^20 subsets")
    best = len(items)
    for size in range(len(items) + 1):
        for f in combinations(items, size):
            rest = frozenset(items) - frozenset(f)
            val = size + sum(o.rank(rest) for o in oracles)
            if val < best:
                best = val
    return best


def union_partition(oracles: Sequence[RankOracle], subset: Iterable[Element]) -> list[list]:
    """Maximal independent set of the union, split into per-matroid independent parts.

    Matroid partitioning by shortest augmenting paths in the exchange digraph.
    """
    items = [e for e in oracles[0].ground if e in set(subset)] if oracles else []
    t = len(oracles)
    parts: list[list] = [[] for _ in range(t)]
    where: dict = {}
    for x in items:
        # BFS from x; nodes are elements, edges y -> z mean "y can replace z in z's part"
        prev: dict = {x: None}
        queue = deque([x])
        found = None
        while queue and found is None:
            y = queue.popleft()
            for i in range(t):
                if where.get(y) == i:
                    continue
                cur = parts[i]
                if oracles[i].rank(cur + [y]) == len(cur) + 1:
                    found = (y, i)
                    break
                for z in cur:
                    if z in prev:
                        continue
                    swapped = [w for w in cur if w != z] + [y]
                    if oracles[i].rank(swapped) == len(cur):
                        prev[z] = (y, i)
                        queue.append(z)
        if found is None:
            continue
        y, i = found
        # walk back: y enters part i; each predecessor shuffle moves along the path
        moves = [(y, i)]
        node = y
        while prev[node] is not None:
            pred, j = prev[node]
            moves.append((pred, j))
            node = pred
        # moves: (element, target part); the element displaced from target is the next one
        for elem, part in moves:
            old = where.get(elem)
            if old is not None:
                parts[old].remove(elem)
            parts[part].append(elem)
            where[elem] = part
    for i, o in enumerate(oracles):
        if not o.is_independent(parts[i]):
            raise ConsistencyError(f"augmenting engine produced a dependent part for matroid {i}")
    return parts


def union_rank(oracles: Sequence[RankOracle], subset: Iterable[Element], engine: str = "augment") -> int:
    """Rank of ``subset`` in the union of the given matroids (common ground set).

    engine: "exhaustive" (min over F of |F| + sum r_i(E' - F)), "augment"
    (matroid partitioning), or "both", which raises ConsistencyError on mismatch.
    """
    if not oracles:
        return 0
    items = [e for e in oracles[0].ground if e in set(subset)]
    if engine == "exhaustive":
        return _union_exhaustive(oracles, items)
    if engine == "augment":
        return sum(len(p) for p in union_partition(oracles, items))
    if engine == "both":
        a = _union_exhaustive(oracles, items)
        b = sum(len(p) for p in union_partition(oracles, items))
        if a != b:
            raise ConsistencyError(f"union engines disagree: exhaustive {a}, augmenting {b}")
        return a
    raise ValueError(f"unknown engine {engine!r}")


# closure, hyperplanes, circuits


def closure(o: RankOracle, subset: Iterable[Element]) -> frozenset:
    a = frozenset(subset)
    r = o.rank(a)
    return a | frozenset(e for e in o.ground if e not in a and o.rank(a | {e}) == r)


def is_closed(o: RankOracle, subset: Iterable[Element]) -> bool:
    a = frozenset(subset)
    r = o.rank(a)
    return all(o.rank(a | {e}) == r + 1 for e in o.ground if e not in a)


def is_k_hyperplane(o: RankOracle, subset: Iterable[Element], k: int) -> bool:
    a = frozenset(subset)
    return o.rank(a) == o.full_rank() - k and is_closed(o, a)


def fundamental_circuit(o: RankOracle, basis: Iterable[Element], e: Element) -> frozenset:
    b = frozenset(basis)
    if e in b:
        raise ValueError(f"{e!r} is in the basis")
    if o.rank(b | {e}) > o.rank(b):
        raise ValueError(f"{e!r} is independent of the given basis")
    circuit = {e}
    for f in b:
        # f lies on the circuit iff swapping it for e keeps full rank
        if o.rank((b - {f}) | {e}) == len(b):
            circuit.add(f)
    return frozenset(circuit)


# components


def components(o: RankOracle) -> list[frozenset]:
    """Connected components via a fixed basis and its fundamental circuits."""
    if not o.ground:
        return []
    basis = o.greedy_basis()
    bset = frozenset(basis)
    parent = {e: e for e in o.ground}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in o.ground:
        if e in bset:
            continue
        if o.rank([e]) == 0:
            continue  # loop: its own component
        for f in fundamental_circuit(o, basis, e):
            parent[find(f)] = find(e)
    groups: dict = {}
    for e in o.ground:
        groups.setdefault(find(e), []).append(e)
    return [frozenset(g) for g in groups.values()]


def separator_components(o: RankOracle) -> list[frozenset]:
    """Components as minimal nonempty separators (r(S) + r(E - S) = r(E)); exhaustive."""
    ground = list(o.ground)
    if len(ground) > 20:
        raise OracleRefusal(f"separator scan over {len(ground)} elements exceeds 2^20 subsets")
    full = frozenset(ground)
    r = o.full_rank()
    remaining = set(ground)
    comps = []
    while remaining:
        x = min(remaining, key=ground.index)
        best = None
        # smallest separator containing x
        pool = [e for e in ground if e != x]
        for size in range(len(pool) + 1):
            for extra in combinations(pool, size):
                s = frozenset(extra) | {x}
                if o.rank(s) + o.rank(full - s) == r:
                    best = s
                    break
            if best is not None:
                break
        comps.append(best)
        remaining -= best
    return comps


def vertical_connectivity(o: RankOracle, cap: int = 20) -> tuple[int, Separation | None]:
    """Exact vertical connectivity with a witness, by scanning all bipartitions."""
    ground = list(o.ground)
    if len(ground) > cap:
        raise OracleRefusal(f"vertical connectivity scan over {len(ground)} elements exceeds cap {cap}")
    r = o.full_rank()
    best: tuple[int, Separation | None] = (r, None)
    if len(ground) < 2:
        return best
    first, rest = ground[0], ground[1:]
    full = frozenset(ground)
    for size in range(len(rest)):
        for extra in combinations(rest, size):
            e1 = frozenset(extra) | {first}
            e2 = full - e1
            r1, r2 = o.rank(e1), o.rank(e2)
            k = max(1, r1 + r2 - r + 1)
            if k <= min(r1, r2) and k < best[0]:
                best = (k, Separation(e1, e2, k))
    return best
