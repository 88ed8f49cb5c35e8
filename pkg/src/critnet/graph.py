"""Immutable simple-graph storage with BFS distances and persistence.

Vertices are labelled 1..N everywhere (slot 0 of the per-vertex arrays is
unused).  Adjacency is CSR-style: sorted neighbours of v live in
``neighbors[offsets[v]:offsets[v+1]]``.  BFS queries reuse epoch-tagged
scratch buffers so repeated queries allocate nothing.
"""

import numpy as np

from .backend import USE_NUMBA, njit


class GraphFormatError(ValueError):
    pass


class Graph:
    """Undirected simple graph on labels 1..N with compressed adjacency."""

    __slots__ = ("n", "offsets", "neighbors", "n_edges")

    def __init__(self, n: int, offsets: np.ndarray, neighbors: np.ndarray):
        self.n = int(n)
        self.offsets = offsets
        self.neighbors = neighbors
        self.n_edges = neighbors.size // 2

    def adj(self, v: int) -> np.ndarray:
        return self.neighbors[self.offsets[v]:self.offsets[v + 1]]

    def degrees(self) -> np.ndarray:
        """Degree of every vertex, indexed by label (slot 0 is zero)."""
        return np.diff(self.offsets[: self.n + 1 + 1]).astype(np.int64)

    def indegrees(self) -> np.ndarray:
        """Per-vertex count of adjacent younger (larger-label) vertices."""
        out = np.zeros(self.n + 1, dtype=np.int64)
        for v in range(1, self.n + 1):
            nb = self.adj(v)
            out[v] = nb.size - np.searchsorted(nb, v)
        return out

    def outdegrees(self) -> np.ndarray:
        return self.degrees() - self.indegrees()

    def edge_arrays(self):
        """Canonical (u, v) arrays with u < v, ascending lexicographic."""
        deg = np.diff(self.offsets[: self.n + 2])
        heads = np.repeat(np.arange(self.n + 1, dtype=np.int64), deg)
        keep = heads < self.neighbors
        return heads[keep], self.neighbors[keep]

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.adj(u)
        i = np.searchsorted(nb, v)
        return bool(i < nb.size and nb[i] == v)

    def check_invariants(self):
        """Raise unless adjacency is symmetric, sorted, loop- and dup-free."""
        if self.offsets[0] != 0 or self.offsets[1] != 0:
            raise GraphFormatError("offsets must start with 0, 0")
        if self.offsets[-1] != self.neighbors.size:
            raise GraphFormatError("offsets do not cover the neighbor array")
        if self.neighbors.size:
            if self.neighbors.min() < 1 or self.neighbors.max() > self.n:
                raise GraphFormatError("neighbor label out of range")
        u, v = self.edge_arrays()
        if u.size != self.n_edges or u.size * 2 != self.neighbors.size:
            raise GraphFormatError("adjacency is not symmetric")
        if np.any(u == v):
            raise GraphFormatError("self-loop present")
        for w in range(1, self.n + 1):
            nb = self.adj(w)
            if nb.size > 1 and np.any(np.diff(nb) <= 0):
                raise GraphFormatError("neighbor lists must be strictly sorted")
        # symmetry: every (u,v) must appear in v's list as well
        for a, b in zip(u[: 10_000], v[: 10_000]):
            if not self.has_edge(b, a):
                raise GraphFormatError("adjacency is not symmetric")
        return self

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.n == other.n
                and np.array_equal(self.offsets, other.offsets)
                and np.array_equal(self.neighbors, other.neighbors))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.n_edges})"


def from_edge_arrays(n: int, src: np.ndarray, dst: np.ndarray, merge: bool = False) -> Graph:
    """Build a Graph from edge endpoint arrays (labels in 1..n).

    With ``merge=True`` duplicate pairs are collapsed (parallel edges from a
    multigraph construction); otherwise duplicates raise.
    """
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    if src.size != dst.size:
        raise ValueError("edge arrays must be the same length")
    if src.size:
        if min(src.min(), dst.min()) < 1 or max(src.max(), dst.max()) > n:
            raise ValueError("vertex label out of range")
        if np.any(src == dst):
            raise ValueError("self-loop in edge list")
    u = np.minimum(src, dst)
    v = np.maximum(src, dst)
    order = np.lexsort((v, u))
    u, v = u[order], v[order]
    if u.size:
        dup = (u[1:] == u[:-1]) & (v[1:] == v[:-1])
        if dup.any():
            if not merge:
                raise ValueError("duplicate edge in edge list")
            keep = np.concatenate([[True], ~dup])
            u, v = u[keep], v[keep]
    heads = np.concatenate([u, v])
    tails = np.concatenate([v, u])
    order = np.lexsort((tails, heads))
    deg = np.bincount(heads, minlength=n + 1)
    offsets = np.zeros(n + 2, dtype=np.int64)
    np.cumsum(deg, out=offsets[1:])
    return Graph(n, offsets, tails[order])


def empty_graph(n: int) -> Graph:
    return Graph(n, np.zeros(n + 2, dtype=np.int64), np.empty(0, dtype=np.int64))


# -- BFS ------------------------------------------------------------------------


class BfsScratch:
    """Reusable epoch-tagged BFS buffers; one instance per querying thread."""

    def __init__(self, n: int):
        self.dist = np.zeros(n + 1, dtype=np.int64)
        self.epoch = np.zeros(n + 1, dtype=np.int64)
        self.queue = np.zeros(n + 1, dtype=np.int64)
        self.flag = np.zeros(n + 1, dtype=np.int64)
        self.cur = 0

    def next_epoch(self) -> int:
        self.cur += 1
        return self.cur


@njit
def _bfs_kernel(offsets, neighbors, source, target, dist, epoch, cur, queue):
    """BFS from source; stops early when target (>0) is reached.

    Returns the distance to target, or -1 if target is unreachable / not
    requested.  dist entries are valid where epoch == cur.
    """
    dist[source] = 0
    epoch[source] = cur
    queue[0] = source
    head, tail = 0, 1
    while head < tail:
        v = queue[head]
        head += 1
        d = dist[v] + 1
        for i in range(offsets[v], offsets[v + 1]):
            w = neighbors[i]
            if epoch[w] != cur:
                epoch[w] = cur
                dist[w] = d
                if w == target:
                    return d
                queue[tail] = w
                tail += 1
    return -1


def _bfs_numpy(g: Graph, source: int, scratch: BfsScratch, target: int = -1) -> int:
    """Level-synchronous vectorised BFS (numpy backend)."""
    dist, epoch, cur = scratch.dist, scratch.epoch, scratch.cur
    dist[source] = 0
    epoch[source] = cur
    frontier = np.array([source], dtype=np.int64)
    d = 0
    off = g.offsets
    while frontier.size:
        d += 1
        starts = off[frontier]
        counts = off[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        idx = np.repeat(starts + counts, counts) - np.arange(total, dtype=np.int64)[::-1] - 1
        nbrs = g.neighbors[idx]
        fresh = nbrs[epoch[nbrs] != cur]
        if fresh.size == 0:
            break
        frontier = np.unique(fresh)
        epoch[frontier] = cur
        dist[frontier] = d
        if target > 0 and epoch[target] == cur:
            return d
    return -1


def bfs_sweep(g: Graph, source: int, scratch: BfsScratch | None = None) -> BfsScratch:
    """Full BFS from source; returns the scratch holding distances."""
    if scratch is None:
        scratch = BfsScratch(g.n)
    cur = scratch.next_epoch()
    if USE_NUMBA:
        _bfs_kernel(g.offsets, g.neighbors, source, -1, scratch.dist,
                    scratch.epoch, cur, scratch.queue)
    else:
        scratch.cur = cur
        _bfs_numpy(g, source, scratch, -1)
    return scratch


def bfs_distance(g: Graph, u: int, v: int, scratch: BfsScratch | None = None):
    """Unweighted shortest-path length from u to v; None if disconnected."""
    for x in (u, v):
        if not 1 <= x <= g.n:
            raise ValueError(f"vertex label {x} out of range")
    if u == v:
        return 0
    if scratch is None:
        scratch = BfsScratch(g.n)
    cur = scratch.next_epoch()
    if USE_NUMBA:
        d = _bfs_kernel(g.offsets, g.neighbors, u, v, scratch.dist,
                        scratch.epoch, cur, scratch.queue)
    else:
        scratch.cur = cur
        d = _bfs_numpy(g, u, scratch, v)
    return None if d < 0 else int(d)


# -- connected components ---------------------------------------------------------


class ComponentLabeling:
    """Partition of the vertices into connected components.

    Component ids are assigned in order of each component's smallest vertex,
    so ties for the largest component break toward the smallest id.
    """

    def __init__(self, label: np.ndarray, sizes: np.ndarray):
        self.label = label
        self.sizes = sizes
        self.largest = int(np.argmax(sizes))

    @property
    def n_components(self) -> int:
        return self.sizes.size

    def members(self, comp: int) -> np.ndarray:
        return np.nonzero(self.label == comp)[0]

    def largest_members(self) -> np.ndarray:
        return self.members(self.largest)


@njit
def _components_kernel(offsets, neighbors, n, label, queue):
    n_comp = 0
    for s in range(1, n + 1):
        if label[s] >= 0:
            continue
        label[s] = n_comp
        queue[0] = s
        head, tail = 0, 1
        while head < tail:
            v = queue[head]
            head += 1
            for i in range(offsets[v], offsets[v + 1]):
                w = neighbors[i]
                if label[w] < 0:
                    label[w] = n_comp
                    queue[tail] = w
                    tail += 1
        n_comp += 1
    return n_comp


def components(g: Graph) -> ComponentLabeling:
    label = np.full(g.n + 1, -1, dtype=np.int64)
    if USE_NUMBA:
        queue = np.zeros(g.n + 1, dtype=np.int64)
        _components_kernel(g.offsets, g.neighbors, g.n, label, queue)
    else:
        from scipy.sparse import csr_matrix
        from scipy.sparse.csgraph import connected_components as _scipy_cc

        deg = np.diff(g.offsets[1: g.n + 2])
        indptr = np.concatenate([[0], np.cumsum(deg)])
        mat = csr_matrix((np.ones(g.neighbors.size, dtype=np.int8),
                          g.neighbors - 1, indptr), shape=(g.n, g.n))
        _, raw = _scipy_cc(mat, directed=False)
        # renumber so ids follow each component's smallest vertex
        first = np.full(raw.max() + 1, np.iinfo(np.int64).max, dtype=np.int64)
        np.minimum.at(first, raw, np.arange(1, g.n + 1))
        remap = np.empty_like(first)
        remap[np.argsort(first, kind="stable")] = np.arange(first.size)
        label[1:] = remap[raw]
    sizes = np.bincount(label[1:])
    return ComponentLabeling(label, sizes)


# -- subset diameter ---------------------------------------------------------------


@njit
def _subset_bfs_kernel(offsets, neighbors, source, dist, epoch, cur, queue,
                       is_target, n_targets):
    """BFS from source until all flagged targets are seen; returns
    (max distance over targets, number of targets found)."""
    dist[source] = 0
    epoch[source] = cur
    queue[0] = source
    head, tail = 0, 1
    found = 1 if is_target[source] else 0
    best = 0
    while head < tail and found < n_targets:
        v = queue[head]
        head += 1
        d = dist[v] + 1
        for i in range(offsets[v], offsets[v + 1]):
            w = neighbors[i]
            if epoch[w] != cur:
                epoch[w] = cur
                dist[w] = d
                queue[tail] = w
                tail += 1
                if is_target[w]:
                    found += 1
                    if d > best:
                        best = d
    return best, found


def subset_diameter(g: Graph, subset) -> int | None:
    """Max graph distance (in g, not the induced subgraph) over subset pairs.

    None if some pair is disconnected.
    """
    subset = np.asarray(sorted(set(int(v) for v in subset)), dtype=np.int64)
    if subset.size == 0:
        raise ValueError("subset must be nonempty")
    if subset.min() < 1 or subset.max() > g.n:
        raise ValueError("vertex label out of range")
    if subset.size == 1:
        return 0
    scratch = BfsScratch(g.n)
    is_target = scratch.flag
    is_target[subset] = 1
    best = 0
    for s in subset:
        cur = scratch.next_epoch()
        if USE_NUMBA:
            d, found = _subset_bfs_kernel(g.offsets, g.neighbors, s, scratch.dist,
                                          scratch.epoch, cur, scratch.queue,
                                          is_target, subset.size)
        else:
            scratch.cur = cur
            _bfs_numpy(g, int(s), scratch, -1)
            seen = subset[scratch.epoch[subset] == cur]
            found = seen.size
            d = int(scratch.dist[seen].max()) if found else 0
        if found < subset.size:
            return None
        best = max(best, int(d))
    return best


# -- persistence -------------------------------------------------------------------

_HEADER_PREFIX = "critnet-graph v1 "


def save_edge_list(g: Graph, path):
    """Write the canonical edge-list text format (bit-exact roundtrip)."""
    u, v = g.edge_arrays()
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"critnet-graph v1 N={g.n} E={g.n_edges}\n")
        if u.size:
            fh.write("\n".join(f"{a} {b}" for a, b in zip(u.tolist(), v.tolist())))
            fh.write("\n")


def load_edge_list(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if not header.startswith(_HEADER_PREFIX):
            raise GraphFormatError("line 1: missing critnet-graph v1 header")
        try:
            fields = dict(part.split("=") for part in header[len(_HEADER_PREFIX):].split())
            n = int(fields["N"])
            n_edges = int(fields["E"])
        except (ValueError, KeyError) as exc:
            raise GraphFormatError(f"line 1: malformed header ({exc})") from exc
        src = np.empty(n_edges, dtype=np.int64)
        dst = np.empty(n_edges, dtype=np.int64)
        count = 0
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                raise GraphFormatError(f"line {lineno}: blank line")
            parts = line.split(" ")
            if len(parts) != 2:
                raise GraphFormatError(f"line {lineno}: expected 'u v'")
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer label") from None
            if count >= n_edges:
                raise GraphFormatError(f"line {lineno}: more edges than header E")
            if not (1 <= a <= n and 1 <= b <= n):
                raise GraphFormatError(f"line {lineno}: label out of range")
            if a == b:
                raise GraphFormatError(f"line {lineno}: self-loop")
            if a >= b:
                raise GraphFormatError(f"line {lineno}: edges must satisfy u < v")
            if count > 0 and (a, b) <= (int(src[count - 1]), int(dst[count - 1])):
                raise GraphFormatError(f"line {lineno}: edges out of order or duplicated")
            src[count] = a
            dst[count] = b
            count += 1
        if count != n_edges:
            raise GraphFormatError(f"edge count {count} does not match header E={n_edges}")
    g = from_edge_arrays(n, src, dst)
    g.check_invariants()
    return g
