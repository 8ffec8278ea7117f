"""
The functional graph of a self-map: one edge x -> f(x) per point.

On a discrete space the dynamics of f is fully described by this graph: each
weakly connected component (basin) contains exactly one cycle, with trees of
transient points hanging into it.
"""
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx


class Node:
    def __init__(self, value: int, parent: Optional["Node"]):
        self.value = value
        self.parent = parent

    def __repr__(self):
        return f"Node(value={self.value}, parent={self.parent})"


class ComponentFinder:
    """
    Union-find over points. Initially each point is in a separate set;
    merge(x, y) joins the sets containing x and y, and find(x) returns the
    smallest point of the set that x is in.
    """

    def __init__(self, values: Iterable[int]):
        self.nodes = {value: Node(value, None) for value in values}

    def merge(self, x: int, y: int) -> None:
        x_root = self._find_node(x)
        y_root = self._find_node(y)
        if x_root is y_root:
            return
        # the smaller value stays the representative
        if x_root.value < y_root.value:
            y_root.parent = x_root
        else:
            x_root.parent = y_root

    def _find_node(self, value: int) -> Node:
        node = root = self.nodes[value]
        while root.parent is not None:
            root = root.parent
        # compression path
        while node.parent is not None:
            node.parent, node = root, node.parent
        return root

    def find(self, value: int) -> int:
        return self._find_node(value).value


class FunctionalGraph:
    def __init__(self, f: Sequence[int]):
        self.f = tuple(f)
        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(range(len(self.f)))
        self.graph.add_edges_from(enumerate(self.f))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Cycles in increasing order, each rotated to start at its smallest point"""
        result = []
        for cycle in nx.simple_cycles(self.graph):
            start = cycle.index(min(cycle))
            result.append(tuple(cycle[start:] + cycle[:start]))
        return sorted(result)

    def cycle_points(self) -> List[int]:
        return sorted(x for cycle in self.cycles() for x in cycle)

    def sources(self) -> List[int]:
        return [x for x in self.graph.nodes if self.graph.in_degree(x) == 0]

    def preimage_sizes(self) -> List[int]:
        # a fixed point has a self-loop, which networkx counts once
        return [self.graph.in_degree(x) for x in range(len(self.f))]

    def basins(self) -> List[List[int]]:
        """Weakly connected components, each sorted, in order of their smallest point"""
        finder = ComponentFinder(range(len(self.f)))
        for x, y in enumerate(self.f):
            finder.merge(x, y)
        components: Dict[int, List[int]] = {}
        for x in range(len(self.f)):
            components.setdefault(finder.find(x), []).append(x)
        return [components[root] for root in sorted(components)]

    def depth(self, x: int) -> int:
        """Number of steps from x to the first point on a cycle"""
        on_cycle = set(self.cycle_points())
        steps = 0
        while x not in on_cycle:
            x = self.f[x]
            steps += 1
        return steps

    def summary(self) -> Dict[str, object]:
        return {
            "cycles": [list(c) for c in self.cycles()],
            "sources": self.sources(),
            "basins": self.basins(),
            "preimage_sizes": self.preimage_sizes(),
        }
