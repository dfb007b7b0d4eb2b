"""Typed attack-graph model: validation, AND/OR reachability, path enumeration, DOT export.

Node semantics: Configuration nodes are facts known to be true; AttackStep and
FinalStep nodes require ALL predecessors (AND); Privilege nodes require ANY
predecessor (OR). Because AND nodes need several branches at once, a "path" here
is a minimal node set that satisfies the goal, reported in topological order.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence


DEFAULT_PATH_CAP = 10_000


class NodeKind(Enum):
    CONFIGURATION = "configuration"
    ATTACK_STEP = "attack_step"
    PRIVILEGE = "privilege"
    FINAL_STEP = "final_step"


_DOT_SHAPES = {
    NodeKind.CONFIGURATION: "circle",
    NodeKind.ATTACK_STEP: "circle",
    NodeKind.PRIVILEGE: "diamond",
    NodeKind.FINAL_STEP: "box",
}


@dataclass(frozen=True)
class AttackNode:
    id: str
    kind: NodeKind
    label: str = ""
    cve: Optional[str] = None
    scheme: Optional[str] = None


@dataclass(frozen=True)
class AttackScheme:
    code: str
    description: str


#: Threat categories arising from MEC/5G integration; scenario files may
#: reference these codes or declare additional ones explicitly.
PREDEFINED_SCHEMES = {
    "I": AttackScheme("I", "Insecure mobile backhaul network"),
    "S": AttackScheme("S", "Shared infrastructure with third-party applications"),
    "P": AttackScheme("P", "Privacy leakage via illegitimate access to the MEC system"),
}


class GraphValidationError(ValueError):
    """Raised by build_graph with the full list of structural problems."""

    def __init__(self, errors: Sequence[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class PathExplosionError(RuntimeError):
    """Raised when path enumeration exceeds the configured cap."""


class UnknownNodeError(KeyError):
    pass


@dataclass(frozen=True)
class AttackGraph:
    """Validated DAG of attack nodes. Immutable; construct via build_graph."""

    nodes: dict[str, AttackNode]
    edges: frozenset[tuple[str, str]]
    targets: frozenset[str]
    _preds: dict[str, tuple[str, ...]] = field(repr=False, default_factory=dict)
    _succs: dict[str, tuple[str, ...]] = field(repr=False, default_factory=dict)

    def predecessors(self, node_id: str) -> tuple[str, ...]:
        self._check(node_id)
        return self._preds[node_id]

    def successors(self, node_id: str) -> tuple[str, ...]:
        self._check(node_id)
        return self._succs[node_id]

    def _check(self, node_id: str) -> None:
        if node_id not in self.nodes:
            raise UnknownNodeError(f"unknown node id {node_id!r}")

    def __len__(self) -> int:
        return len(self.nodes)


def build_graph(
    nodes: Iterable[AttackNode],
    edges: Iterable[tuple[str, str]],
    targets: Iterable[str] = (),
) -> AttackGraph:
    """Validate and assemble an attack graph; collects every violation it finds."""
    node_list = list(nodes)
    edge_list = list(dict.fromkeys(tuple(e) for e in edges))
    target_set = set(targets)
    errors: list[str] = []

    by_id: dict[str, AttackNode] = {}
    for node in node_list:
        if node.id in by_id:
            errors.append(f"duplicate node id {node.id!r}")
        by_id[node.id] = node

    preds: dict[str, list[str]] = {nid: [] for nid in by_id}
    succs: dict[str, list[str]] = {nid: [] for nid in by_id}
    for src, dst in edge_list:
        if src not in by_id:
            errors.append(f"edge ({src!r} -> {dst!r}): unknown source node")
            continue
        if dst not in by_id:
            errors.append(f"edge ({src!r} -> {dst!r}): unknown destination node")
            continue
        preds[dst].append(src)
        succs[src].append(dst)

    for nid in target_set - by_id.keys():
        errors.append(f"target {nid!r} is not a node in the graph")

    for nid, node in by_id.items():
        if node.kind is NodeKind.CONFIGURATION and preds[nid]:
            errors.append(f"configuration node {nid!r} has a predecessor")
        if node.kind is NodeKind.FINAL_STEP and succs[nid]:
            errors.append(f"final-step node {nid!r} has a successor")
        if node.kind in (NodeKind.ATTACK_STEP, NodeKind.PRIVILEGE) and not preds[nid]:
            errors.append(f"{node.kind.value} node {nid!r} has no predecessor")

    cycle = _find_cycle(by_id.keys(), succs)
    if cycle:
        errors.append("cycle detected: " + " -> ".join(cycle))
    else:
        # final steps must be reachable from some configuration node
        reachable = _reachable_from_configurations(by_id, succs)
        for nid, node in by_id.items():
            if node.kind is NodeKind.FINAL_STEP and nid not in reachable:
                errors.append(f"final-step node {nid!r} is unreachable from any configuration node")

    if errors:
        raise GraphValidationError(errors)

    return AttackGraph(
        nodes=by_id,
        edges=frozenset(edge_list),
        targets=frozenset(target_set),
        _preds={nid: tuple(sorted(ps)) for nid, ps in preds.items()},
        _succs={nid: tuple(sorted(ss)) for nid, ss in succs.items()},
    )


def _find_cycle(node_ids: Iterable[str], succs: dict[str, list[str]]) -> Optional[list[str]]:
    """Return one directed cycle as a node sequence (closed), or None."""
    WHITE, GREY, BLACK = 0, 1, 2
    color = {nid: WHITE for nid in node_ids}
    parent: dict[str, Optional[str]] = {}

    for start in sorted(color):
        if color[start] != WHITE:
            continue
        stack: list[tuple[str, int]] = [(start, 0)]
        parent[start] = None
        color[start] = GREY
        while stack:
            nid, idx = stack[-1]
            children = sorted(succs[nid])
            if idx < len(children):
                stack[-1] = (nid, idx + 1)
                child = children[idx]
                if color[child] == GREY:
                    cycle = [child, nid]
                    cur = parent[nid]
                    while cur is not None and cycle[-1] != child:
                        cycle.append(cur)
                        cur = parent[cur]
                    if cycle[-1] != child:
                        cycle.append(child)
                    cycle.reverse()
                    return cycle
                if color[child] == WHITE:
                    color[child] = GREY
                    parent[child] = nid
                    stack.append((child, 0))
            else:
                color[nid] = BLACK
                stack.pop()
    return None


def _reachable_from_configurations(
    by_id: dict[str, AttackNode], succs: dict[str, list[str]]
) -> set[str]:
    frontier = [nid for nid, n in by_id.items() if n.kind is NodeKind.CONFIGURATION]
    seen = set(frontier)
    while frontier:
        nid = frontier.pop()
        for nxt in succs[nid]:
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def enabled(graph: AttackGraph, node_id: str, satisfied: set[str]) -> bool:
    """Whether node_id can fire given the already-satisfied node set."""
    node = graph.nodes.get(node_id)
    if node is None:
        raise UnknownNodeError(f"unknown node id {node_id!r}")
    preds = graph.predecessors(node_id)
    if node.kind is NodeKind.CONFIGURATION:
        return True
    if node.kind is NodeKind.PRIVILEGE:
        return any(p in satisfied for p in preds)
    return all(p in satisfied for p in preds)


def enumerate_paths(
    graph: AttackGraph, goal: str, cap: int = DEFAULT_PATH_CAP
) -> list[tuple[str, ...]]:
    """All minimal node sets that satisfy `goal`, each linearized topologically.

    AND nodes pull in every predecessor's requirements; OR nodes branch per
    predecessor. Supersets introduced by overlapping OR branches are dropped,
    so each returned sequence is a minimal satisfying set. Output order is
    deterministic: sequences sorted lexicographically.
    """
    graph._check(goal)
    sets = _requirement_sets(graph, goal, {}, cap)
    minimal = _drop_supersets(sets)
    paths = sorted(_linearize(graph, s) for s in minimal)
    return paths


def _requirement_sets(
    graph: AttackGraph,
    node_id: str,
    cache: dict[str, frozenset[frozenset[str]]],
    cap: int,
) -> frozenset[frozenset[str]]:
    if node_id in cache:
        return cache[node_id]
    node = graph.nodes[node_id]
    preds = graph.predecessors(node_id)

    if node.kind is NodeKind.CONFIGURATION or not preds:
        result = frozenset({frozenset({node_id})})
    elif node.kind is NodeKind.PRIVILEGE:
        collected: set[frozenset[str]] = set()
        for p in preds:
            for s in _requirement_sets(graph, p, cache, cap):
                collected.add(s | {node_id})
                if len(collected) > cap:
                    raise PathExplosionError(
                        f"more than {cap} candidate paths while expanding {node_id!r}; "
                        "raise the cap to enumerate anyway"
                    )
        result = frozenset(collected)
    else:  # AND: ATTACK_STEP and FINAL_STEP
        combos: set[frozenset[str]] = {frozenset()}
        for p in preds:
            branch = _requirement_sets(graph, p, cache, cap)
            combos = {c | s for c in combos for s in branch}
            if len(combos) > cap:
                raise PathExplosionError(
                    f"more than {cap} candidate paths while expanding {node_id!r}; "
                    "raise the cap to enumerate anyway"
                )
        result = frozenset(c | {node_id} for c in combos)
    cache[node_id] = result
    return result


def _drop_supersets(sets: Iterable[frozenset[str]]) -> list[frozenset[str]]:
    ordered = sorted(set(sets), key=len)
    kept: list[frozenset[str]] = []
    for s in ordered:
        if not any(k < s for k in kept):
            kept.append(s)
    return kept


def _linearize(graph: AttackGraph, node_set: frozenset[str]) -> tuple[str, ...]:
    """Topological order of node_set, smallest id first among ready nodes."""
    indeg = {
        nid: sum(1 for p in graph.predecessors(nid) if p in node_set) for nid in node_set
    }
    ready = [nid for nid, d in indeg.items() if d == 0]
    heapq.heapify(ready)
    order: list[str] = []
    while ready:
        nid = heapq.heappop(ready)
        order.append(nid)
        for nxt in graph.successors(nid):
            if nxt in node_set:
                indeg[nxt] -= 1
                if indeg[nxt] == 0:
                    heapq.heappush(ready, nxt)
    return tuple(order)


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(graph: AttackGraph, name: str = "attack_graph") -> str:
    """Graphviz DOT text: circles for steps/configurations, diamonds for privileges, boxes for final exploits."""
    lines = [f"digraph {_dot_quote(name)} {{"]
    for nid in sorted(graph.nodes):
        node = graph.nodes[nid]
        label = node.label or nid
        attrs = f"shape={_DOT_SHAPES[node.kind]}, label={_dot_quote(label)}"
        if nid in graph.targets:
            attrs += ", peripheries=2"
        lines.append(f"  {_dot_quote(nid)} [{attrs}];")
    for src, dst in sorted(graph.edges):
        lines.append(f"  {_dot_quote(src)} -> {_dot_quote(dst)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def subgraph_to_goal(graph: AttackGraph, goal: str, cap: int = DEFAULT_PATH_CAP) -> AttackGraph:
    """Restriction of the graph to nodes on some minimal path to `goal`."""
    keep: set[str] = set()
    for path in enumerate_paths(graph, goal, cap=cap):
        keep.update(path)
    nodes = [graph.nodes[nid] for nid in sorted(keep)]
    edges = [(s, d) for s, d in sorted(graph.edges) if s in keep and d in keep]
    targets = [t for t in graph.targets if t in keep]
    return build_graph(nodes, edges, targets)
