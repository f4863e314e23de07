"""
Disjoint sets with path compression, used to merge adjacent cells into pieces
"""

from typing import Dict, List


class UnionFind:
    """Union-find over 0..size-1 that keeps a running component count"""

    def __init__(self, size: int):
        self.size = size
        self.parents = list(range(size))
        self.num_components = size

    def find(self, elem: int) -> int:
        root = elem
        while root != self.parents[root]:
            root = self.parents[root]

        # compress
        while elem != root:
            self.parents[elem], elem = root, self.parents[elem]
        return root

    def union(self, a: int, b: int) -> bool:
        root_a, root_b = self.find(a), self.find(b)
        if root_a == root_b:
            return False
        # smaller root wins so groups come out in a stable order
        if root_b < root_a:
            root_a, root_b = root_b, root_a
        self.parents[root_b] = root_a
        self.num_components -= 1
        return True

    def groups(self) -> List[List[int]]:
        """Members of every component, ordered by smallest member"""
        members: Dict[int, List[int]] = {}
        for i in range(self.size):
            members.setdefault(self.find(i), []).append(i)
        return sorted(members.values(), key=lambda group: group[0])


__all__ = ['UnionFind']
