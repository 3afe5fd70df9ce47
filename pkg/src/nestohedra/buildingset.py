"""Graphs on {0..n-1} and the building sets their connected subgraphs form.

A building set on a finite ground set contains every singleton and is closed
under unions of intersecting members.  The ones used here are graphical:
``building_set_from_graph`` collects the node subsets that induce a connected
subgraph.  Subsets are bitmasks over positions into the (sorted) ground
label tuple, which keeps restriction, removal and validation down to integer
bit operations.

Two operations drive the facet recursion.  ``restriction(b, s)`` keeps the
members contained in s; for graphical sets this is the building set of the
induced subgraph.  ``removal(b, s)`` erases the elements of s from every
member; for graphical sets this is the building set of the graph obtained by
reconnecting the remaining nodes through s (``contraction``), not of the
induced subgraph on the complement.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

__all__ = [
    "MAX_GROUND",
    "Graph",
    "GraphSpecError",
    "complete_graph",
    "empty_graph",
    "path_graph",
    "star_graph",
    "bipartite_graph",
    "join_graphs",
    "graph_from_edges",
    "adjacency_masks",
    "is_connected_graph",
    "connected_submask",
    "induced_subgraph",
    "contraction",
    "parse_graph_spec",
    "graph_spec",
    "connected_graphs_upto_iso",
    "BuildingSet",
    "building_set_from_graph",
    "validate",
    "is_valid",
    "restriction",
    "removal",
    "components",
    "dimension",
    "canonical_key",
    "building_set_from_key",
    "building_set_lists",
]

# Grounds are bitmasks in a Python int, so the cap is soft; 20 keeps the
# all-subsets enumeration in building_set_from_graph at desk scale.
MAX_GROUND = 20
_ISO_KEY_MAX_GROUND = 8


class GraphSpecError(ValueError):
    """Malformed graph description."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on nodes 0..n-1 with edges as sorted pairs."""

    n: int
    edges: frozenset[tuple[int, int]]


def graph_from_edges(n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise ValueError("negative node count")
    edges = set()
    for u, v in pairs:
        if u == v:
            raise ValueError(f"self-loop at node {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge {u}-{v} out of range for {n} nodes")
        edges.add((min(u, v), max(u, v)))
    return Graph(n, frozenset(edges))


def complete_graph(n: int) -> Graph:
    return graph_from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def empty_graph(n: int) -> Graph:
    return graph_from_edges(n, ())


def path_graph(n: int) -> Graph:
    return graph_from_edges(n, ((i, i + 1) for i in range(n - 1)))


def join_graphs(a: Graph, b: Graph) -> Graph:
    """Disjoint union plus every edge between the two parts; b is shifted."""
    edges = list(a.edges)
    edges += [(u + a.n, v + a.n) for u, v in b.edges]
    edges += [(u, v + a.n) for u in range(a.n) for v in range(b.n)]
    return graph_from_edges(a.n + b.n, edges)


def star_graph(leaves: int) -> Graph:
    """One center (node 0) joined to the given number of leaves."""
    return join_graphs(complete_graph(1), empty_graph(leaves))


def bipartite_graph(m: int, n: int) -> Graph:
    """Complete bipartite graph, first part labeled 0..m-1."""
    return join_graphs(empty_graph(m), empty_graph(n))


def adjacency_masks(g: Graph) -> list[int]:
    adj = [0] * g.n
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def connected_submask(adj: Sequence[int], mask: int) -> bool:
    """Whether the induced subgraph on the masked nodes is connected."""
    if mask == 0:
        return False
    start = mask & -mask
    seen = start
    frontier = start
    while frontier:
        reach = 0
        m = frontier
        while m:
            low = m & -m
            reach |= adj[low.bit_length() - 1]
            m ^= low
        frontier = reach & mask & ~seen
        seen |= frontier
    return seen == mask


def is_connected_graph(g: Graph) -> bool:
    if g.n == 0:
        return False
    return connected_submask(adjacency_masks(g), (1 << g.n) - 1)


def _mask_nodes(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def induced_subgraph(g: Graph, mask: int) -> Graph:
    """Subgraph on the masked nodes, relabeled compactly in label order."""
    nodes = _mask_nodes(mask)
    index = {v: i for i, v in enumerate(nodes)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return graph_from_edges(len(nodes), edges)


def contraction(g: Graph, removed: int) -> Graph:
    """Graph on the remaining nodes after reconnecting through ``removed``.

    Two surviving nodes become adjacent exactly when they are joined by a
    path whose interior lies in the removed set (a direct edge counts).
    """
    adj = adjacency_masks(g)
    keep = [v for v in range(g.n) if not (removed >> v) & 1]
    index = {v: i for i, v in enumerate(keep)}
    # reach[v] = removed nodes reachable from v walking only inside `removed`
    reach = {}
    for v in keep:
        seen = 0
        frontier = adj[v] & removed
        while frontier:
            seen |= frontier
            step = 0
            m = frontier
            while m:
                low = m & -m
                step |= adj[low.bit_length() - 1]
                m ^= low
            frontier = step & removed & ~seen
        reach[v] = seen
    edges = []
    for a in range(len(keep)):
        u = keep[a]
        through_u = reach[u] | (1 << u)
        for b in range(a + 1, len(keep)):
            v = keep[b]
            if adj[v] & through_u:
                edges.append((a, b))
    return graph_from_edges(len(keep), edges)


def graph_spec(g: Graph) -> str:
    """Canonical ``edges:N:...`` description; inverse of parse_graph_spec."""
    body = ",".join(f"{u}-{v}" for u, v in sorted(g.edges))
    return f"edges:{g.n}:{body}"


def _split_top_level(text: str) -> list[str]:
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise GraphSpecError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth:
        raise GraphSpecError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(current))
    return parts


def _parse_size(text: str, spec: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise GraphSpecError(f"bad size {text!r} in {spec!r}") from None
    if n < 0:
        raise GraphSpecError(f"negative size in {spec!r}")
    return n


def parse_graph_spec(spec: str) -> Graph:
    """Parse the graph mini-language.

    Accepted forms: ``complete:N``, ``empty:N``, ``star:N``, ``path:N``,
    ``bipartite:M,N``, ``edges:N:0-1,1-2,...`` (0-based labels, possibly no
    edges) and ``join(SPEC,SPEC)``.
    """
    spec = spec.strip()
    if spec.startswith("join(") and spec.endswith(")"):
        inner = _split_top_level(spec[len("join(") : -1])
        if len(inner) != 2:
            raise GraphSpecError(f"join takes two arguments: {spec!r}")
        return join_graphs(parse_graph_spec(inner[0]), parse_graph_spec(inner[1]))
    head, _, rest = spec.partition(":")
    if head == "complete":
        return complete_graph(_parse_size(rest, spec))
    if head == "empty":
        return empty_graph(_parse_size(rest, spec))
    if head == "star":
        return star_graph(_parse_size(rest, spec))
    if head == "path":
        return path_graph(_parse_size(rest, spec))
    if head == "bipartite":
        sizes = rest.split(",")
        if len(sizes) != 2:
            raise GraphSpecError(f"bipartite takes two sizes: {spec!r}")
        return bipartite_graph(_parse_size(sizes[0], spec), _parse_size(sizes[1], spec))
    if head == "edges":
        count, _, body = rest.partition(":")
        n = _parse_size(count, spec)
        pairs = []
        for item in body.split(","):
            item = item.strip()
            if not item:
                continue
            ends = item.split("-")
            if len(ends) != 2:
                raise GraphSpecError(f"bad edge {item!r} in {spec!r}")
            pairs.append((_parse_size(ends[0], spec), _parse_size(ends[1], spec)))
        try:
            return graph_from_edges(n, pairs)
        except ValueError as exc:
            raise GraphSpecError(f"{exc} in {spec!r}") from None
    raise GraphSpecError(f"unknown graph spec {spec!r}")


def connected_graphs_upto_iso(max_nodes: int) -> list[Graph]:
    """All connected graphs with 1..max_nodes nodes, one per isomorphism class.

    Backed by the networkx graph atlas, which covers every graph on up to
    seven nodes.
    """
    if not 1 <= max_nodes <= 7:
        raise ValueError("the atlas covers 1..7 nodes")
    import networkx as nx

    out = []
    for g in nx.graph_atlas_g():
        if 1 <= g.number_of_nodes() <= max_nodes and nx.is_connected(g):
            out.append(graph_from_edges(g.number_of_nodes(), g.edges()))
    return out


# ---------------------------------------------------------------------------
# building sets


@dataclass(frozen=True)
class BuildingSet:
    """Members of a building set as bitmasks over positions into ``ground``.

    ``ground`` is a sorted tuple of integer labels; bit p of a member mask
    refers to ``ground[p]``.  Validity (singletons present, unions of
    intersecting members present) is checked by ``validate``, not enforced
    on construction.
    """

    ground: tuple[int, ...]
    sets: frozenset[int]

    def __post_init__(self) -> None:
        if len(self.ground) > MAX_GROUND:
            raise ValueError(f"ground larger than {MAX_GROUND} elements")
        if list(self.ground) != sorted(set(self.ground)):
            raise ValueError("ground labels must be strictly increasing")
        limit = 1 << len(self.ground)
        for m in self.sets:
            if not 0 < m < limit:
                raise ValueError(f"member mask {m} outside the ground")

    def labels_of(self, mask: int) -> tuple[int, ...]:
        return tuple(self.ground[p] for p in _mask_nodes(mask))

    def mask_of(self, labels: Iterable[int]) -> int:
        position = {label: p for p, label in enumerate(self.ground)}
        mask = 0
        for label in labels:
            mask |= 1 << position[label]
        return mask

    @property
    def full_mask(self) -> int:
        return (1 << len(self.ground)) - 1

    def is_connected(self) -> bool:
        """A building set is connected when the whole ground is a member."""
        return self.full_mask in self.sets


def building_set_from_graph(g: Graph) -> BuildingSet:
    """Building set of all node subsets inducing a connected subgraph."""
    if g.n > MAX_GROUND:
        raise ValueError(f"graph larger than {MAX_GROUND} nodes")
    adj = adjacency_masks(g)
    members = [
        mask for mask in range(1, 1 << g.n) if connected_submask(adj, mask)
    ]
    return BuildingSet(tuple(range(g.n)), frozenset(members))


def validate(b: BuildingSet) -> list[str]:
    """All axiom violations, formatted with ground labels; empty means valid."""
    problems = []
    for p, label in enumerate(b.ground):
        if (1 << p) not in b.sets:
            problems.append(f"missing singleton {{{label}}}")
    members = sorted(b.sets)
    present = b.sets
    for a_idx, m1 in enumerate(members):
        for m2 in members[a_idx + 1 :]:
            if m1 & m2 and (m1 | m2) not in present:
                problems.append(
                    f"sets {set(b.labels_of(m1))} and {set(b.labels_of(m2))} "
                    "intersect but their union is missing"
                )
    return problems


def is_valid(b: BuildingSet) -> bool:
    return not validate(b)


def _compress(mask: int, within: int) -> int:
    """Re-index the bits of ``mask`` against the bits set in ``within``."""
    out = 0
    p = 0
    while within:
        low = within & -within
        if mask & low:
            out |= 1 << p
        p += 1
        within ^= low
    return out


def restriction(b: BuildingSet, s: int) -> BuildingSet:
    """Members contained in s, on ground s."""
    ground = b.labels_of(s)
    members = frozenset(_compress(m, s) for m in b.sets if m and (m & ~s) == 0)
    return BuildingSet(ground, members)


def removal(b: BuildingSet, s: int) -> BuildingSet:
    """Every member with the elements of s erased, on the remaining ground."""
    keep = b.full_mask & ~s
    ground = b.labels_of(keep)
    members = frozenset(
        _compress(m & keep, keep) for m in b.sets if m & keep
    )
    return BuildingSet(ground, members)


def components(b: BuildingSet) -> list[BuildingSet]:
    """Restrictions of b to its inclusion-maximal members.

    For a valid building set the maximal members partition the ground, so
    the result is the list of connected components, ordered by their
    smallest label.
    """
    if not b.ground:
        return []
    if b.is_connected():
        return [b]
    maximal: list[int] = []
    for m in sorted(b.sets, key=lambda m: -bin(m).count("1")):
        if not any(m | kept == kept for kept in maximal):
            maximal.append(m)
    maximal.sort(key=lambda m: m & -m)
    return [restriction(b, m) for m in maximal]


def dimension(b: BuildingSet) -> int:
    """Dimension of the nestohedron: ground size minus component count."""
    return len(b.ground) - len(components(b))


def canonical_key(b: BuildingSet, iso: bool = False) -> bytes:
    """Byte key identifying b up to relabeling of the ground.

    The default key relabels the ground to 0..k-1 preserving label order,
    which is exactly the position encoding already used, so it serializes
    the sorted member masks directly.  With ``iso=True`` the key is
    additionally minimized over all ground permutations (isomorphism
    reduction); that is affordable only for small grounds, so grounds above
    8 elements fall back to the label-order key.
    """
    k = len(b.ground)
    members = sorted(b.sets)
    if iso and k <= _ISO_KEY_MAX_GROUND:
        best = None
        for perm in permutations(range(k)):
            image = sorted(
                _apply_permutation(m, perm) for m in b.sets
            )
            if best is None or image < best:
                best = image
        members = best or []
    return struct.pack("<II", k, len(members)) + struct.pack(
        f"<{len(members)}I", *members
    )


def _apply_permutation(mask: int, perm: Sequence[int]) -> int:
    out = 0
    for p in _mask_nodes(mask):
        out |= 1 << perm[p]
    return out


def building_set_from_key(key: bytes) -> BuildingSet:
    """Rebuild the relabeled building set a canonical key encodes."""
    k, count = struct.unpack_from("<II", key)
    members = struct.unpack_from(f"<{count}I", key, 8)
    return BuildingSet(tuple(range(k)), frozenset(members))


def building_set_lists(b: BuildingSet) -> list[list[int]]:
    """Serialize as a sorted list of sorted 1-based element lists."""
    return sorted(
        [label + 1 for label in b.labels_of(m)] for m in b.sets
    )
