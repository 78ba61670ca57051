"""Tree decompositions: validation, min-fill construction, PACE interop, nice form.

A tree decomposition of G is a tree of bags covering every vertex and edge,
with each vertex's occurrence set inducing a connected subtree.  Width is the
largest bag size minus one.  A nice decomposition is rooted with empty root
and leaf bags and only introduce/forget/join internal nodes; the dynamic
programs in this package run over nice decompositions.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterator

from .errors import InputError, ParseError
from .graph import Graph


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed 0..b-1 plus tree edges between bag indices.

    ``n`` is the vertex count of the decomposed graph (needed for the PACE
    header and validation).
    """

    n: int
    bags: tuple[frozenset[int], ...]
    tree_edges: frozenset[tuple[int, int]]

    @property
    def node_count(self) -> int:
        return len(self.bags)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbour_map(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


@dataclass(frozen=True)
class TdValidation:
    """Validation report; ``violations`` holds one message per broken property."""

    ok: bool
    violations: tuple[str, ...]


def validate_td(g: Graph, td: TreeDecomposition) -> TdValidation:
    """Check the three decomposition properties plus tree shape.

    Every violation is reported with a witness (0-indexed ids).
    """
    violations: list[str] = []
    b = td.node_count
    if b == 0:
        return TdValidation(False, ("decomposition has no nodes",))
    if td.n != g.n:
        violations.append(f"decomposition is for {td.n} vertices, graph has {g.n}")

    for a, c in td.tree_edges:
        if not (0 <= a < b and 0 <= c < b):
            return TdValidation(False, (f"tree edge ({a}, {c}) out of range",))

    adj = td.neighbour_map()
    seen = bytearray(b)
    stack = [0]
    seen[0] = 1
    reached = 1
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if not seen[y]:
                seen[y] = 1
                reached += 1
                stack.append(y)
    if reached != b:
        violations.append(f"bag tree is disconnected ({reached} of {b} nodes reachable)")
    if len(td.tree_edges) != b - 1:
        violations.append(
            f"bag tree has {len(td.tree_edges)} edges, a tree on {b} nodes needs {b - 1}"
        )

    covered = set().union(*td.bags) if td.bags else set()
    for v in range(g.n):
        if v not in covered:
            violations.append(f"vertex {v} not in any bag")
            break
    stray = covered - set(range(g.n))
    if stray:
        violations.append(f"bag contains unknown vertex {min(stray)}")

    for u, v in sorted(g.edges):
        if not any(u in bag and v in bag for bag in td.bags):
            violations.append(f"edge ({u}, {v}) not covered by any bag")
            break

    for v in range(g.n):
        holders = [t for t in range(b) if v in td.bags[t]]
        if not holders:
            continue
        member = set(holders)
        comp = {holders[0]}
        stack = [holders[0]]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in member and y not in comp:
                    comp.add(y)
                    stack.append(y)
        if len(comp) != len(holders):
            violations.append(f"occurrence set of vertex {v} is not connected in the bag tree")
            break

    return TdValidation(not violations, tuple(violations))


def min_fill_decompose(g: Graph, seed: int = 0) -> TreeDecomposition:
    """Build a decomposition from a greedy minimum fill-in elimination ordering.

    Ties are broken by minimum degree, then by a seed-determined random pick.
    Disconnected graphs get one decomposition per component, joined through an
    empty connector bag.
    """
    n = g.n
    if n == 0:
        return TreeDecomposition(0, (frozenset(),), frozenset())
    rng = random.Random(seed)
    nb: list[set[int]] = [set(g.adjacency[v]) for v in range(n)]
    alive = set(range(n))
    bags: list[frozenset[int]] = []
    bag_of: dict[int, int] = {}
    elim_pos: dict[int, int] = {}
    elim_nb: dict[int, frozenset[int]] = {}
    order: list[int] = []

    while alive:
        best_key: tuple[int, int] | None = None
        candidates: list[int] = []
        for v in sorted(alive):
            nbv = nb[v]
            fill = 0
            nbl = sorted(nbv)
            for i, a in enumerate(nbl):
                nba = nb[a]
                for c in nbl[i + 1 :]:
                    if c not in nba:
                        fill += 1
            key = (fill, len(nbv))
            if best_key is None or key < best_key:
                best_key = key
                candidates = [v]
            elif key == best_key:
                candidates.append(v)
        v = candidates[0] if len(candidates) == 1 else candidates[rng.randrange(len(candidates))]

        neighbours = nb[v]
        bag_of[v] = len(bags)
        bags.append(frozenset(neighbours | {v}))
        elim_nb[v] = frozenset(neighbours)
        elim_pos[v] = len(order)
        order.append(v)
        nbl = sorted(neighbours)
        for i, a in enumerate(nbl):
            for c in nbl[i + 1 :]:
                if c not in nb[a]:
                    nb[a].add(c)
                    nb[c].add(a)
        for u in neighbours:
            nb[u].discard(v)
        alive.remove(v)

    edges: set[tuple[int, int]] = set()
    roots: list[int] = []
    for v in order:
        remaining = elim_nb[v]
        if remaining:
            parent_vertex = min(remaining, key=lambda u: elim_pos[u])
            a, b = sorted((bag_of[v], bag_of[parent_vertex]))
            edges.add((a, b))
        else:
            roots.append(bag_of[v])
    if len(roots) > 1:
        connector = len(bags)
        bags.append(frozenset())
        for r in roots:
            edges.add((min(r, connector), max(r, connector)))
    return TreeDecomposition(n, tuple(bags), frozenset(edges))


def parse_td(text: str | bytes, g: Graph) -> TreeDecomposition:
    """Parse a PACE-2017 ``.td`` file against a graph.

    Header ``s td <#bags> <width+1> <n>``; bag lines ``b <id> <v...>``;
    remaining lines are bag-tree edges.  Bags without a line are empty.
    """
    if isinstance(text, bytes):
        text = text.decode()
    nb_bags = -1
    declared_width_plus1 = 0
    bag_lines: dict[int, frozenset[int]] = {}
    edges: set[tuple[int, int]] = set()
    for ln, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("c"):
            continue
        parts = s.split()
        if parts[0] == "s":
            if nb_bags >= 0:
                raise ParseError(f"line {ln}: duplicate 's td' header")
            if len(parts) != 5 or parts[1] != "td":
                raise ParseError(f"line {ln}: malformed header {s!r}")
            try:
                nb_bags, declared_width_plus1, declared_n = (
                    int(parts[2]),
                    int(parts[3]),
                    int(parts[4]),
                )
            except ValueError:
                raise ParseError(f"line {ln}: non-integer header fields") from None
            if nb_bags < 1:
                raise ParseError(f"line {ln}: need at least one bag")
            if declared_n != g.n:
                raise ParseError(
                    f"line {ln}: decomposition declares {declared_n} vertices, graph has {g.n}"
                )
        elif parts[0] == "b":
            if nb_bags < 0:
                raise ParseError(f"line {ln}: bag line before 's td' header")
            try:
                bag_id = int(parts[1])
                vertices = [int(x) for x in parts[2:]]
            except (ValueError, IndexError):
                raise ParseError(f"line {ln}: malformed bag line {s!r}") from None
            if not 1 <= bag_id <= nb_bags:
                raise ParseError(f"line {ln}: bag id {bag_id} out of range 1..{nb_bags}")
            if bag_id in bag_lines:
                raise ParseError(f"line {ln}: duplicate bag {bag_id}")
            for v in vertices:
                if not 1 <= v <= g.n:
                    raise ParseError(f"line {ln}: vertex {v} out of range 1..{g.n}")
            bag_lines[bag_id] = frozenset(v - 1 for v in vertices)
        else:
            if nb_bags < 0:
                raise ParseError(f"line {ln}: edge line before 's td' header")
            if len(parts) != 2:
                raise ParseError(f"line {ln}: malformed tree edge line {s!r}")
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(f"line {ln}: non-integer bag id") from None
            if not (1 <= a <= nb_bags and 1 <= b <= nb_bags):
                raise ParseError(f"line {ln}: bag id out of range 1..{nb_bags}")
            if a == b:
                raise ParseError(f"line {ln}: self-loop in bag tree")
            e = (min(a, b) - 1, max(a, b) - 1)
            if e in edges:
                raise ParseError(f"line {ln}: duplicate tree edge")
            edges.add(e)
    if nb_bags < 0:
        raise ParseError("missing 's td' header")
    bags = tuple(bag_lines.get(i, frozenset()) for i in range(1, nb_bags + 1))

    td = TreeDecomposition(g.n, bags, frozenset(edges))
    if len(edges) != nb_bags - 1 or not _is_connected_tree(td):
        raise ParseError("bag-tree edges do not form a tree")
    actual = td.width + 1
    if actual != declared_width_plus1:
        warnings.warn(
            f"declared width+1 {declared_width_plus1} but bags give {actual}", stacklevel=2
        )
    return td


def _is_connected_tree(td: TreeDecomposition) -> bool:
    b = td.node_count
    adj = td.neighbour_map()
    seen = bytearray(b)
    seen[0] = 1
    stack = [0]
    reached = 1
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if not seen[y]:
                seen[y] = 1
                reached += 1
                stack.append(y)
    return reached == b


def write_td(td: TreeDecomposition) -> str:
    lines = [f"s td {td.node_count} {td.width + 1} {td.n}"]
    for i, bag in enumerate(td.bags, start=1):
        vertices = " ".join(str(v + 1) for v in sorted(bag))
        lines.append(f"b {i} {vertices}".rstrip())
    for a, b in sorted(td.tree_edges):
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


class NodeKind(IntEnum):
    LEAF = 0
    INTRODUCE = 1
    FORGET = 2
    JOIN = 3


@dataclass(frozen=True)
class NiceNode:
    kind: NodeKind
    bag: frozenset[int]
    vertex: int | None
    children: tuple[int, ...]


@dataclass(frozen=True)
class NiceTreeDecomposition:
    """Rooted nice decomposition; nodes are stored children-before-parent.

    ``post_order`` therefore is simply ascending node index, and the root is
    the last node.
    """

    n: int
    nodes: tuple[NiceNode, ...]
    root: int

    @property
    def width(self) -> int:
        return max(len(node.bag) for node in self.nodes) - 1

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    def post_order(self) -> Iterator[int]:
        return iter(range(len(self.nodes)))


@dataclass(frozen=True)
class TdStats:
    width: int
    node_count: int
    leaf_count: int
    introduce_count: int
    forget_count: int
    join_count: int


def td_stats(nice: NiceTreeDecomposition) -> TdStats:
    counts = [0, 0, 0, 0]
    for node in nice.nodes:
        counts[node.kind] += 1
    return TdStats(
        width=nice.width,
        node_count=nice.node_count,
        leaf_count=counts[NodeKind.LEAF],
        introduce_count=counts[NodeKind.INTRODUCE],
        forget_count=counts[NodeKind.FORGET],
        join_count=counts[NodeKind.JOIN],
    )


def make_nice(td: TreeDecomposition, g: Graph) -> NiceTreeDecomposition:
    """Convert a valid decomposition into nice form of no larger width.

    Bags that are subsets of a neighbouring bag are contracted first, then the
    tree is rooted and introduce/forget chains are inserted between adjacent
    bags, multi-child nodes become join cascades, leaves grow from empty bags
    and the root forgets down to an empty bag.
    """
    report = validate_td(g, td)
    if not report.ok:
        raise InputError("invalid tree decomposition: " + "; ".join(report.violations))

    bags: dict[int, frozenset[int]] = dict(enumerate(td.bags))
    adj: dict[int, set[int]] = {i: set() for i in bags}
    for a, b in td.tree_edges:
        adj[a].add(b)
        adj[b].add(a)

    changed = True
    while changed:
        changed = False
        for a in list(bags):
            if a not in bags:
                continue
            for b in list(adj[a]):
                if bags[a] <= bags[b]:
                    for other in adj[a]:
                        if other != b:
                            adj[other].discard(a)
                            adj[other].add(b)
                            adj[b].add(other)
                    adj[b].discard(a)
                    del bags[a]
                    del adj[a]
                    changed = True
                    break

    nodes: list[NiceNode] = []

    def add(kind: NodeKind, bag: frozenset[int], vertex: int | None, children: tuple[int, ...]) -> int:
        nodes.append(NiceNode(kind, bag, vertex, children))
        return len(nodes) - 1

    def leaf_chain(target: frozenset[int]) -> int:
        cur = add(NodeKind.LEAF, frozenset(), None, ())
        bag: set[int] = set()
        for v in sorted(target):
            bag.add(v)
            cur = add(NodeKind.INTRODUCE, frozenset(bag), v, (cur,))
        return cur

    def chain(from_id: int, from_bag: frozenset[int], target: frozenset[int]) -> int:
        cur = from_id
        bag = set(from_bag)
        for v in sorted(from_bag - target):
            bag.remove(v)
            cur = add(NodeKind.FORGET, frozenset(bag), v, (cur,))
        for v in sorted(target - from_bag):
            bag.add(v)
            cur = add(NodeKind.INTRODUCE, frozenset(bag), v, (cur,))
        return cur

    root_bag_id = min(bags)
    # Iterative post-order over the contracted bag tree.
    order: list[tuple[int, int | None]] = []
    stack: list[tuple[int, int | None]] = [(root_bag_id, None)]
    while stack:
        node, parent = stack.pop()
        order.append((node, parent))
        for child in adj[node]:
            if child != parent:
                stack.append((child, node))
    top_of: dict[int, int] = {}
    for node, parent in reversed(order):
        bag = bags[node]
        kids = [c for c in adj[node] if c != parent]
        if not kids:
            top_of[node] = leaf_chain(bag)
            continue
        branches = [chain(top_of[c], bags[c], bag) for c in kids]
        top = branches[0]
        for other in branches[1:]:
            top = add(NodeKind.JOIN, bag, None, (top, other))
        top_of[node] = top

    root = chain(top_of[root_bag_id], bags[root_bag_id], frozenset())
    return NiceTreeDecomposition(g.n, tuple(nodes), root)


def validate_nice(g: Graph, nice: NiceTreeDecomposition) -> TdValidation:
    """Check nice-form structure plus the underlying decomposition properties."""
    violations: list[str] = []
    nodes = nice.nodes
    if nice.root != len(nodes) - 1:
        violations.append("root is not the last node")
    is_child = bytearray(len(nodes))
    for i, node in enumerate(nodes):
        for c in node.children:
            if c >= i:
                violations.append(f"node {i} has child {c} not preceding it")
            else:
                is_child[c] = 1
        if node.kind == NodeKind.LEAF:
            if node.children or node.bag:
                violations.append(f"leaf node {i} must have no children and an empty bag")
        elif node.kind == NodeKind.INTRODUCE:
            if len(node.children) != 1:
                violations.append(f"introduce node {i} must have one child")
            else:
                child = nodes[node.children[0]]
                v = node.vertex
                if v is None or v in child.bag or node.bag != child.bag | {v}:
                    violations.append(f"introduce node {i} bag relation broken")
        elif node.kind == NodeKind.FORGET:
            if len(node.children) != 1:
                violations.append(f"forget node {i} must have one child")
            else:
                child = nodes[node.children[0]]
                v = node.vertex
                if v is None or v not in child.bag or node.bag != child.bag - {v}:
                    violations.append(f"forget node {i} bag relation broken")
        else:
            if len(node.children) != 2:
                violations.append(f"join node {i} must have two children")
            else:
                c1, c2 = node.children
                if nodes[c1].bag != node.bag or nodes[c2].bag != node.bag:
                    violations.append(f"join node {i} children bags differ from its own")
    if nodes[nice.root].bag:
        violations.append("root bag is not empty")
    for i in range(len(nodes)):
        if not is_child[i] and i != nice.root:
            violations.append(f"node {i} is unreachable from the root")
            break

    edges = frozenset(
        (min(i, c), max(i, c)) for i, node in enumerate(nodes) for c in node.children
    )
    underlying = TreeDecomposition(nice.n, tuple(node.bag for node in nodes), edges)
    base = validate_td(g, underlying)
    violations.extend(base.violations)
    return TdValidation(not violations, tuple(violations))
