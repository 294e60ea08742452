"""Recover a graph from an edge-labelled matroid by locating vertex stars.

Star complements are connected closed sets of rank r(E) - drop.  They are
searched for as closures of a basis with ``drop`` elements removed: any flat of
that corank arises this way from a suitable basis, and the star of a vertex
turns up whenever the basis meets it in exactly ``drop`` edges.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable

from . import cofactor, count
from .graph import GraphError, MultiGraph, read_graph, sort_key
from .matroid import OracleRefusal, RankOracle, components, fundamental_circuit, is_k_hyperplane


class ReconstructionError(RuntimeError):
    pass


class SearchBudgetExceeded(ReconstructionError):
    """The star search did not settle; ``partial`` holds what was found (unusable)."""

    def __init__(self, message: str, partial: list[frozenset]):
        super().__init__(message)
        self.partial = partial


@dataclass
class LabeledMatroid:
    oracle: RankOracle
    family: str  # "count" or "cofactor"
    params: dict = field(default_factory=dict)

    @property
    def ground(self) -> tuple:
        return self.oracle.ground

    @property
    def drop(self) -> int:
        """Rank lost when one vertex star is deleted."""
        if self.family == "count":
            return self.params["k"]
        if self.family == "cofactor":
            return 3 * self.params["t"]
        raise ValueError(f"unknown family {self.family!r}")

    @classmethod
    def count_matroid(cls, g: MultiGraph, k: int, l: int) -> "LabeledMatroid":
        return cls(count.count_oracle(g, count.CountParams(k, l)), "count", {"k": k, "l": l})

    @classmethod
    def cofactor_matroid(cls, g: MultiGraph, t: int = 1, cap: int = cofactor.DEFAULT_CAP) -> "LabeledMatroid":
        return cls(cofactor.rank_oracle(g, t, cap), "cofactor", {"t": t})


def load_labeled_matroid(data: bytes | str) -> LabeledMatroid:
    """Parse the JSON matroid document; the hidden graph only backs the oracle."""
    doc = json.loads(data)
    elements = doc.get("elements")
    fam = doc.get("family")
    if not isinstance(elements, list) or not isinstance(fam, dict) or len(fam) != 1:
        raise ValueError("matroid document needs 'elements' and a single-key 'family'")
    hidden = read_graph(json.dumps(doc["graph"]))
    if sorted(elements) != sorted(hidden.edge_ids):
        raise ValueError("'elements' must match the edge ids of the hidden graph")
    (name, params), = fam.items()
    if name == "count":
        return LabeledMatroid.count_matroid(hidden, int(params["k"]), int(params["l"]))
    if name == "cofactor":
        return LabeledMatroid.cofactor_matroid(hidden, int(params["t"]))
    raise ValueError(f"unknown matroid family {name!r}")


@dataclass(frozen=True)
class StarFamily:
    stars: tuple[frozenset, ...]

    def incidence_problems(self, ground: Iterable[Hashable]) -> list[str]:
        seen: dict = {e: 0 for e in ground}
        for s in self.stars:
            for e in s:
                if e not in seen:
                    return [f"unknown element {e!r}"]
                seen[e] += 1
        bad = [e for e, c in seen.items() if c != 2]
        return [f"element {e!r} lies in {seen[e]} stars" for e in sorted(bad, key=sort_key)]


def _is_connected_restriction(o: RankOracle, subset: frozenset) -> bool:
    if len(subset) < 2:
        return False
    comps = components(o.restrict(subset))
    return len(comps) == 1


def _candidate_flats(o: RankOracle, basis: list, drop: int, d_max: int) -> set[frozenset]:
    """Closures cl(B - S) over all S of size ``drop`` with small complement.

    A non-basis element e lies in cl(B - S) exactly when its fundamental
    circuit avoids S, so one circuit computation per element suffices.
    """
    bset = set(basis)
    bit = {b: 1 << i for i, b in enumerate(basis)}
    circuit_mask = {}
    for e in o.ground:
        if e in bset:
            continue
        circuit_mask[e] = sum(bit[f] for f in fundamental_circuit(o, basis, e) if f != e)
    found = set()
    for removed in combinations(basis, drop):
        smask = sum(bit[b] for b in removed)
        spilled = [e for e, cm in circuit_mask.items() if cm & smask]
        if len(spilled) + drop > d_max:
            continue
        found.add(frozenset(o.ground) - frozenset(removed) - frozenset(spilled))
    return found


def find_star_complements(
    m: LabeledMatroid,
    drop: int | None = None,
    d_max: int = 9,
    seed: int = 0,
    patience: int = 25,
    max_bases: int = 400,
) -> list[frozenset]:
    """Connected ``drop``-hyperplanes whose complement has at most ``d_max`` elements."""
    o = m.oracle
    drop = m.drop if drop is None else drop
    rng = random.Random(seed)
    full = frozenset(o.ground)
    accepted: set[frozenset] = set()
    rejected: set[frozenset] = set()
    # a connected restriction lives inside one component of the whole matroid
    blocks = components(o)
    quiet = 0
    for round_no in range(max_bases):
        order = list(o.ground)
        rng.shuffle(order)
        if round_no % 2:
            # elements seen in fewer than two stars go last, so the basis meets
            # a still-missing star in as few elements as possible
            seen = {e: 0 for e in order}
            for flat in accepted:
                for e in full - flat:
                    seen[e] += 1
            order.sort(key=lambda e: seen[e] < 2)
        basis: list = []
        for e in order:
            if o.rank(basis + [e]) == len(basis) + 1:
                basis.append(e)
        if len(basis) < drop:
            break
        new = False
        for flat in _candidate_flats(o, basis, drop, d_max):
            if flat in accepted or flat in rejected:
                continue
            if not any(flat <= b for b in blocks):
                rejected.add(flat)
            elif _is_connected_restriction(o, flat):
                accepted.add(flat)
                new = True
            else:
                rejected.add(flat)
        quiet = 0 if new else quiet + 1
        if quiet >= patience:
            return sorted(accepted, key=lambda f: sorted(map(str, full - f)))
    raise SearchBudgetExceeded(f"star search still changing after {max_bases} bases", sorted(accepted, key=len))


def find_star_complements_exhaustive(m: LabeledMatroid, drop: int | None = None, d_max: int = 9) -> list[frozenset]:
    """Scan every candidate complement D with |D| <= d_max (small ground sets only)."""
    o = m.oracle
    drop = m.drop if drop is None else drop
    ground = list(o.ground)
    if len(ground) > 16:
        raise OracleRefusal("exhaustive star scan is limited to 16 elements")
    full = frozenset(ground)
    out = []
    for size in range(1, min(d_max, len(ground)) + 1):
        for d in combinations(ground, size):
            flat = full - frozenset(d)
            if is_k_hyperplane(o, flat, drop) and _is_connected_restriction(o, flat):
                out.append(flat)
    return sorted(out, key=lambda f: sorted(map(str, full - f)))


def assemble(stars: StarFamily, ground: Iterable[Hashable] | None = None) -> MultiGraph:
    """One vertex per star, one edge per element joining the two stars holding it."""
    ground = list(ground) if ground is not None else sorted({e for s in stars.stars for e in s}, key=sort_key)
    problems = stars.incidence_problems(ground)
    if problems:
        raise ReconstructionError("not a star family: " + "; ".join(problems[:3]))
    holders: dict = {e: [] for e in ground}
    for i, s in enumerate(stars.stars):
        for e in s:
            holders[e].append(i)
    return MultiGraph(range(len(stars.stars)), [(e, *holders[e]) for e in ground])


def _verify(m: LabeledMatroid, g: MultiGraph, samples: int, seed: int) -> None:
    if m.family == "count":
        mine = count.count_oracle(g, count.CountParams(m.params["k"], m.params["l"]))
    else:
        mine = cofactor.rank_oracle(g, m.params["t"])
    rng = random.Random(seed)
    ground = list(m.ground)
    checks = [ground] + [[e for e in ground if rng.random() < 0.5] for _ in range(samples - 1)]
    for sub in checks:
        if mine.rank(sub) != m.oracle.rank(sub):
            raise ReconstructionError("assembled graph's matroid disagrees with the input oracle")


def _stars_from(m: LabeledMatroid, complements: list[frozenset]) -> list[frozenset]:
    full = frozenset(m.ground)
    return [full - f for f in complements]


def reconstruct(
    m: LabeledMatroid,
    *,
    d_max: int = 9,
    seed: int = 0,
    samples: int = 200,
    exhaustive: bool = False,
    drop: int | None = None,
) -> MultiGraph:
    """Reconstruct a graph whose matroid (under the identity labelling) equals m."""
    finder = find_star_complements_exhaustive if exhaustive else find_star_complements
    kwargs = {"d_max": d_max} if exhaustive else {"d_max": d_max, "seed": seed}
    try:
        complements = finder(m, drop, **kwargs)
    except SearchBudgetExceeded as exc:
        raise ReconstructionError(f"reconstruction failed: {exc}") from None
    stars = _stars_from(m, complements)
    family = StarFamily(tuple(stars))
    if family.incidence_problems(m.ground) and m.family == "count" and m.params == {"k": 1, "l": 0}:
        family = _wheel_completion(m, stars)
    problems = family.incidence_problems(m.ground)
    if problems:
        raise ReconstructionError("reconstruction failed: " + "; ".join(problems[:3]))
    g = assemble(family, m.ground)
    _verify(m, g, samples, seed)
    return g


def _wheel_completion(m: LabeledMatroid, stars: list[frozenset]) -> StarFamily:
    """Bicircular case: the hub star is missing when deleting the hub leaves a cycle."""
    o = m.oracle
    seen: dict = {e: 0 for e in m.ground}
    for s in stars:
        for e in s:
            seen[e] += 1
    hub = frozenset(e for e, c in seen.items() if c == 1)
    rest = frozenset(m.ground) - hub
    if not hub or any(c == 0 for c in seen.values()):
        return StarFamily(tuple(stars))
    if not is_k_hyperplane(o, rest, 1) or _is_connected_restriction(o, rest):
        return StarFamily(tuple(stars))
    return StarFamily(tuple(stars) + (hub,))


def reconstruct_count(m: LabeledMatroid, **kw) -> MultiGraph:
    if m.family != "count":
        raise ValueError("expected a count matroid")
    return reconstruct(m, **kw)


def reconstruct_bicircular(m: LabeledMatroid, **kw) -> MultiGraph:
    if m.family != "count" or m.params != {"k": 1, "l": 0}:
        raise ValueError("expected the (1,0) count matroid")
    return reconstruct(m, **kw)


def reconstruct_cofactor(m: LabeledMatroid, **kw) -> MultiGraph:
    if m.family != "cofactor":
        raise ValueError("expected a cofactor matroid")
    return reconstruct(m, **kw)
