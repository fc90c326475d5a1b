"""Automorphism group size of a digraph by individualisation-refinement.

Weights are ignored; only the link structure counts. Isolated nodes are
stripped first and contribute ``k!`` analytically. The rest splits into
weakly connected components; ``r`` isomorphic copies of a component with
group ``A`` contribute ``|A|^r * r!``. Each component class goes through an
ordered-partition search in the style of McKay's algorithm:

* equitable refinement on in/out neighbour counts (Hopcroft-style splitter
  queue, fragments ordered by count so the result is labelling invariant);
* a first path of individualisations down to a discrete partition;
* for each level, deepest first, every vertex of the target cell that is not
  already in the known orbit is tested by an exhaustive subtree search for an
  automorphism. Found automorphisms are kept as generators and merged into a
  union-find of orbits.

The orbit sizes of the successive point stabilisers multiply to ``|Aut|``.
The product is kept as an exact integer so isomorphic inputs yield
bit-identical ``log2_aut`` values.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .graph import WeightedDigraph, log2_factorial

__all__ = [
    "AutResult",
    "AutomorphismBudgetError",
    "DEFAULT_BUDGET",
    "automorphism_log_size",
    "automorphism_brute_force",
    "BRUTE_FORCE_LIMIT",
]

DEFAULT_BUDGET = 10**8
BRUTE_FORCE_LIMIT = 8


class AutomorphismBudgetError(RuntimeError):
    """Search exceeded the configured number of refinement nodes."""


@dataclass(frozen=True)
class AutResult:
    log2_aut: float
    orbit_count: int
    generators_found: int
    group_order_core: int = 1  # |Aut| of the graph with isolated nodes removed
    isolated: int = 0
    search_nodes: int = 0


class _Partition:
    """Ordered partition; a cell is identified by the position it starts at."""

    __slots__ = ("lab", "pos", "cell", "size", "ncells")

    def __init__(self, m: int | None = None):
        if m is not None:
            self.lab = list(range(m))
            self.pos = list(range(m))
            self.cell = [0] * m
            self.size = [0] * m
            self.size[0] = m
            self.ncells = 1

    def copy(self) -> "_Partition":
        p = _Partition()
        p.lab = self.lab[:]
        p.pos = self.pos[:]
        p.cell = self.cell[:]
        p.size = self.size[:]
        p.ncells = self.ncells
        return p

    def individualize(self, v: int) -> list[int]:
        c = self.cell[v]
        k = self.size[c]
        if k == 1:
            return []
        lab, pos = self.lab, self.pos
        p = pos[v]
        other = lab[c]
        lab[c], lab[p] = v, other
        pos[v], pos[other] = c, p
        self.size[c] = 1
        self.size[c + 1] = k - 1
        cell = self.cell
        for q in range(c + 1, c + k):
            cell[lab[q]] = c + 1
        self.ncells += 1
        return [c]

    def target_cell(self) -> int:
        """Start of the first smallest non-singleton cell, or -1 if discrete."""
        best, best_size = -1, None
        i, m, size = 0, len(self.lab), self.size
        while i < m:
            k = size[i]
            if k > 1 and (best_size is None or k < best_size):
                best, best_size = i, k
                if k == 2:
                    break
            i += k
        return best


class _Search:
    def __init__(self, m, out_adj, in_adj, budget):
        self.m = m
        self.out_adj = out_adj
        self.in_adj = in_adj
        self.budget = budget
        self.nodes = 0

    def refine(self, P: _Partition, stack: list[int], ref: list | None = None) -> list | None:
        """Refine ``P`` in place to an equitable partition.

        Returns the split trace, or None as soon as it departs from ``ref``.
        """
        self.nodes += 1
        if self.nodes > self.budget:
            raise AutomorphismBudgetError(
                f"automorphism search exceeded budget of {self.budget} refinement nodes"
            )
        m = self.m
        lab, pos, cell, size = P.lab, P.pos, P.cell, P.size
        trace: list = []
        in_stack = set(stack)
        stack = list(stack)
        while stack and P.ncells < m:
            s = stack.pop()
            in_stack.discard(s)
            members = lab[s:s + size[s]]
            for direction, adj in ((0, self.in_adj), (1, self.out_adj)):
                cnt: dict[int, int] = {}
                for w in members:
                    for u in adj[w]:
                        cnt[u] = cnt.get(u, 0) + 1
                if not cnt:
                    continue
                bycell: dict[int, list[int]] = {}
                for u in cnt:
                    bycell.setdefault(cell[u], []).append(u)
                for c in sorted(bycell):
                    csize = size[c]
                    if csize == 1:
                        continue
                    touched = bycell[c]
                    t = len(touched)
                    if t == csize:
                        first = cnt[touched[0]]
                        if all(cnt[u] == first for u in touched):
                            continue
                        touched.sort(key=cnt.__getitem__)
                        base = c
                        frags = []
                    else:
                        # move touched vertices to the tail of the cell block
                        end = c + csize - 1
                        for u in touched:
                            p = pos[u]
                            v = lab[end]
                            lab[p], lab[end] = v, u
                            pos[v], pos[u] = p, end
                            end -= 1
                        touched.sort(key=cnt.__getitem__)
                        base = c + csize - t
                        frags = [(0, c, csize - t)]
                    q = base
                    fstart = base
                    prev = cnt[touched[0]]
                    for u in touched:
                        k = cnt[u]
                        if k != prev:
                            frags.append((prev, fstart, q - fstart))
                            fstart, prev = q, k
                        lab[q] = u
                        pos[u] = q
                        q += 1
                    frags.append((prev, fstart, q - fstart))
                    for _, fs, fl in frags:
                        size[fs] = fl
                        if fs != c:
                            for r in range(fs, fs + fl):
                                cell[lab[r]] = fs
                    P.ncells += len(frags) - 1
                    entry = (direction, c, tuple((k, fl) for k, _, fl in frags))
                    if ref is not None:
                        idx = len(trace)
                        if idx >= len(ref) or ref[idx] != entry:
                            return None
                    trace.append(entry)
                    if c in in_stack:
                        for _, fs, _ in frags:
                            if fs != c:
                                stack.append(fs)
                                in_stack.add(fs)
                    else:
                        big = max(range(len(frags)), key=lambda i: (frags[i][2], -i))
                        for i, (_, fs, _) in enumerate(frags):
                            if i != big:
                                stack.append(fs)
                                in_stack.add(fs)
        if ref is not None and len(trace) != len(ref):
            return None
        return trace


class _Component:
    """One weakly connected piece of the link structure, on local ids 0..m-1."""

    def __init__(self, m: int, edges: list[tuple[int, int]], search: _Search):
        self.m = m
        self.edges = edges
        out_adj: list[list[int]] = [[] for _ in range(m)]
        in_adj: list[list[int]] = [[] for _ in range(m)]
        for a, b in edges:
            out_adj[a].append(b)
            in_adj[b].append(a)
        self.out_adj, self.in_adj = out_adj, in_adj
        self.edge_codes = {a * m + b for a, b in edges}
        self.search = search
        self.root = _Partition(m)
        self.root_trace = self._refine(self.root, [0])
        self._levels = None
        self._leaf = None

    def _refine(self, P, stack, ref=None):
        s = self.search
        s.m, s.out_adj, s.in_adj = self.m, self.out_adj, self.in_adj
        return s.refine(P, stack, ref)

    def invariant(self):
        return (self.m, len(self.edges), tuple(self.root_trace))

    def first_path(self):
        """Individualise the first vertex of the target cell down to a leaf."""
        if self._levels is None:
            levels = []  # (partition before individualising, cell start, cell members, vertex, trace)
            node = self.root
            while node.ncells < self.m:
                c = node.target_cell()
                members = node.lab[c:c + node.size[c]]
                v = members[0]
                child = node.copy()
                trace = self._refine(child, child.individualize(v))
                levels.append((node, c, members, v, trace))
                node = child
            self._levels, self._leaf = levels, node.lab
        return self._levels

    def descend(self, start: _Partition, j0: int, ref: "_Component") -> list[int] | None:
        """Search below ``start`` for a leaf matching ``ref``'s first path.

        ``start`` is a partition of this component at depth ``j0`` of the
        reference path. Returns the map ref-vertex -> self-vertex of the first
        leaf that is an isomorphism, or None after exhausting the subtree.
        """
        levels = ref.first_path()
        leaf0 = ref._leaf
        depth = len(levels)
        m = self.m
        codes = self.edge_codes
        frames = [(j0, start, None, 0)]
        while frames:
            j, P, cands, idx = frames.pop()
            if j == depth:
                sigma = [0] * m
                for p in range(m):
                    sigma[leaf0[p]] = P.lab[p]
                if all(sigma[a] * m + sigma[b] in codes for a, b in ref.edges):
                    return sigma
                continue
            _, c, ref_members, _, ref_trace = levels[j]
            if cands is None:
                cands = P.lab[c:c + len(ref_members)]
            while idx < len(cands):
                w = cands[idx]
                idx += 1
                child = P.copy()
                if self._refine(child, child.individualize(w), ref_trace) is not None:
                    frames.append((j, P, cands, idx))
                    frames.append((j + 1, child, None, 0))
                    break
        return None

    def isomorphic_to(self, other: "_Component") -> bool:
        if self.invariant() != other.invariant():
            return False
        return other.descend(other.root.copy(), 0, self) is not None

    def group(self) -> tuple[int, int, int]:
        """(|Aut|, orbit count, generators found) for this component."""
        m = self.m
        levels = self.first_path()
        parent = list(range(m))
        generators = 0
        order = 1
        for i in range(len(levels) - 1, -1, -1):
            node, _, members, v, trace = levels[i]
            failed: list[int] = []
            for u in members:
                ru = _find(parent, u)
                if ru == _find(parent, v):
                    continue
                if any(_find(parent, f) == ru for f in failed):
                    continue
                start = node.copy()
                sigma = None
                if self._refine(start, start.individualize(u), trace) is not None:
                    sigma = self.descend(start, i + 1, self)
                if sigma is None:
                    failed.append(u)
                    continue
                generators += 1
                for a in range(m):
                    ra, rb = _find(parent, a), _find(parent, sigma[a])
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
            rv = _find(parent, v)
            order *= sum(1 for u in members if _find(parent, u) == rv)
        orbits = len({_find(parent, a) for a in range(m)})
        return order, orbits, generators


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _weak_components(g: WeightedDigraph) -> list[list[tuple[int, int]]]:
    """Edge lists of the weakly connected components, on local vertex ids."""
    parent = list(range(g.n))
    for s, d, _ in g.links:
        rs, rd = _find(parent, s), _find(parent, d)
        if rs != rd:
            parent[max(rs, rd)] = min(rs, rd)
    groups: dict[int, list[tuple[int, int]]] = {}
    for s, d, _ in g.links:
        groups.setdefault(_find(parent, s), []).append((s, d))
    comps = []
    for root in sorted(groups):
        edges = groups[root]
        verts = sorted({v for e in edges for v in e})
        local = {v: i for i, v in enumerate(verts)}
        comps.append([(local[a], local[b]) for a, b in edges])
    return comps


def automorphism_log_size(g: WeightedDigraph, budget: int = DEFAULT_BUDGET) -> AutResult:
    """log2 |Aut(g)| of the link structure, ignoring weights.

    Raises :class:`AutomorphismBudgetError` rather than returning an
    approximation when the search needs more than ``budget`` refinements.
    """
    isolated = g.isolated_count()
    search = _Search(0, [], [], budget)
    comps = []
    for edges in _weak_components(g):
        m = 1 + max(max(e) for e in edges)
        comps.append(_Component(m, edges, search))

    # isomorphism classes: bucket by cheap invariant, then test against representatives
    buckets: dict[tuple, list[list]] = {}
    for comp in comps:
        classes = buckets.setdefault(comp.invariant(), [])
        for cls in classes:
            if cls[0].isomorphic_to(comp):
                cls[1] += 1
                break
        else:
            classes.append([comp, 1])

    order = 1
    orbit_count = 1 if isolated else 0
    generators = 0
    for key in sorted(buckets):
        for rep, mult in buckets[key]:
            c_order, c_orbits, c_gens = rep.group()
            order *= c_order**mult * math.factorial(mult)
            orbit_count += c_orbits
            generators += c_gens + (mult - 1)
    log2_aut = math.log2(order) + log2_factorial(isolated)
    return AutResult(log2_aut, orbit_count, generators, order, isolated, search.nodes)


def automorphism_brute_force(g: WeightedDigraph) -> AutResult:
    """Count automorphisms by testing all n! permutations (test oracle, n <= 8)."""
    n = g.n
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force refused for n={n} > {BRUTE_FORCE_LIMIT}")
    edges = g.edges()
    edge_set = set(edges)
    parent = list(range(n))
    count = 0
    for perm in itertools.permutations(range(n)):
        if all((perm[a], perm[b]) in edge_set for a, b in edges):
            count += 1
            for a in range(n):
                ra, rb = _find(parent, a), _find(parent, perm[a])
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    orbits = len({_find(parent, a) for a in range(n)})
    return AutResult(math.log2(count), orbits, count - 1, count, g.isolated_count(), 0)
