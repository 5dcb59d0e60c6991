"""Canonical indexing and navigation for the truncated topic tree.

Nodes are identified by 1-based paths (i1, ..., il); the level-0 root is
not part of the node set unless ``include_root`` is on, in which case it
appears as the distinguished empty path.  Flat ids are assigned in
breadth-first order so per-node parameter arrays can be indexed
contiguously and children of a node occupy a contiguous id range.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

__all__ = [
    "Truncation",
    "TreeNodeId",
    "TruncatedTree",
    "enumerate_nodes",
    "parent",
    "children",
    "ROOT_SLOT",
]

# Slot id standing in for the level-0 root when it is not a topic node.
ROOT_SLOT = -1


@dataclass(frozen=True)
class Truncation:
    """Children-per-node widths (n1, ..., nL); L is the tree depth."""

    widths: tuple[int, ...]

    def __post_init__(self):
        if len(self.widths) < 1:
            raise ConfigError("truncation needs at least one level")
        if any(int(w) != w or w < 1 for w in self.widths):
            raise ConfigError(f"truncation widths must be positive integers: {self.widths}")
        object.__setattr__(self, "widths", tuple(int(w) for w in self.widths))

    @property
    def levels(self) -> int:
        return len(self.widths)


@dataclass(frozen=True, eq=False)
class TreeNodeId:
    """A node: 1-based path, level (= path length), dense flat id.

    Identity is the path; flat ids are metadata filled in by the tree
    (-1 on ids produced by bare path arithmetic).
    """

    path: tuple[int, ...]
    flat_id: int = -1

    @property
    def level(self) -> int:
        return len(self.path)

    def __eq__(self, other):
        return isinstance(other, TreeNodeId) and self.path == other.path

    def __hash__(self):
        return hash(self.path)

    def path_str(self) -> str:
        return "/".join(str(i) for i in self.path) if self.path else "root"


class TruncatedTree:
    """Precomputed navigation arrays for one truncation.

    Pure immutable value object; all arrays are derived from the
    truncation alone, so flat ids are stable across runs.
    """

    def __init__(self, trunc: Truncation, include_root: bool = False):
        self.trunc = trunc
        self.include_root = bool(include_root)
        widths = trunc.widths

        counts, running = [], 1
        for w in widths:
            running *= w
            counts.append(running)
        offset = 1 if include_root else 0
        self.n_nodes = sum(counts) + offset

        # level_offsets[l] = flat id of the first node at level l + 1.
        self.level_offsets = np.zeros(trunc.levels + 1, dtype=np.int64)
        self.level_offsets[0] = offset
        for l in range(trunc.levels):
            self.level_offsets[l + 1] = self.level_offsets[l] + counts[l]

        self.level = np.zeros(self.n_nodes, dtype=np.int64)
        self.parent_id = np.full(self.n_nodes, ROOT_SLOT, dtype=np.int64)
        self.child_index = np.zeros(self.n_nodes, dtype=np.int64)  # 1-based among siblings
        paths: list[tuple[int, ...]] = [()] if include_root else []
        for l in range(trunc.levels):
            start, stop = int(self.level_offsets[l]), int(self.level_offsets[l + 1])
            self.level[start:stop] = l + 1
            w = widths[l]
            for pos, i in enumerate(range(start, stop)):
                if l == 0:
                    par = 0 if include_root else ROOT_SLOT
                    path = (pos + 1,)
                    cidx = pos + 1
                else:
                    par = int(self.level_offsets[l - 1]) + pos // w
                    path = paths[par] + (pos % w + 1,)
                    cidx = pos % w + 1
                self.parent_id[i] = par
                self.child_index[i] = cidx
                paths.append(path)
        self.paths = paths
        self._path_to_id = {p: i for i, p in enumerate(paths)}

    # -- lookups ---------------------------------------------------------
    def node(self, flat_id: int) -> TreeNodeId:
        return TreeNodeId(self.paths[flat_id], flat_id)

    def flat_id(self, path) -> int:
        try:
            return self._path_to_id[tuple(path)]
        except KeyError:
            raise KeyError(f"path {tuple(path)!r} not in truncated tree {self.trunc.widths}")

    def nodes(self) -> list[TreeNodeId]:
        return [self.node(i) for i in range(self.n_nodes)]

    def is_leaf(self, flat_id: int) -> bool:
        return int(self.level[flat_id]) == self.trunc.levels

    def n_children(self, slot: int) -> int:
        if slot == ROOT_SLOT:
            return self.trunc.widths[0]
        l = int(self.level[slot])
        return self.trunc.widths[l] if l < self.trunc.levels else 0

    def children_of(self, slot: int) -> np.ndarray:
        """Flat ids of the children of a node id, or of ROOT_SLOT."""
        if slot == ROOT_SLOT or int(self.level[slot]) == 0:
            return np.arange(self.level_offsets[0], self.level_offsets[1], dtype=np.int64)
        l = int(self.level[slot])
        if l >= self.trunc.levels:
            return np.arange(0, dtype=np.int64)
        w = self.trunc.widths[l]
        pos = slot - int(self.level_offsets[l - 1])
        start = int(self.level_offsets[l]) + pos * w
        return np.arange(start, start + w, dtype=np.int64)

    def root_slot(self) -> int:
        """Slot owning the top-level document DP: the root node or ROOT_SLOT."""
        return 0 if self.include_root else ROOT_SLOT

    def dp_parents(self) -> list[int]:
        """Slots owning a Dirichlet process over children (root + internal nodes)."""
        internal = [i for i in range(self.n_nodes)
                    if 0 < int(self.level[i]) < self.trunc.levels]
        return [self.root_slot()] + internal

    def ancestors(self, flat_id: int) -> list[int]:
        """Proper ancestor flat ids, nearest first; excludes the virtual root."""
        out = []
        cur = int(self.parent_id[flat_id])
        while cur != ROOT_SLOT:
            out.append(cur)
            cur = int(self.parent_id[cur])
        return out

    def path_str(self, flat_id: int) -> str:
        return self.node(flat_id).path_str()


# -- module-level spec operations (pure path arithmetic) ------------------

def enumerate_nodes(trunc: Truncation, include_root: bool = False) -> list[TreeNodeId]:
    """Breadth-first node list; list position equals flat id."""
    return TruncatedTree(trunc, include_root).nodes()


def parent(node: TreeNodeId, include_root: bool = False) -> TreeNodeId | None:
    """Drop the last path element; top-level nodes yield None (root if included)."""
    if len(node.path) == 0:
        return None
    if len(node.path) == 1:
        return TreeNodeId(()) if include_root else None
    return TreeNodeId(node.path[:-1])


def children(node: TreeNodeId, trunc: Truncation) -> list[TreeNodeId]:
    """Children (path, 1) ... (path, n_{l+1}) in index order; [] at leaves."""
    if node.level >= trunc.levels:
        return []
    w = trunc.widths[node.level]
    return [TreeNodeId(node.path + (j,)) for j in range(1, w + 1)]
