"""Finite graphs, circular stable sets, and dihedral group actions.

Vertex subsets of Z_m are kept as bitmasks, so disjointness and cyclic
stability are single AND operations.  Graphs store one adjacency bitmask
per vertex; loops are permitted unless an operation says otherwise.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


def _rotate_mask(mask: int, m: int, shift: int) -> int:
    shift %= m
    full = (1 << m) - 1
    return ((mask << shift) | (mask >> (m - shift))) & full if shift else mask


@dataclass(frozen=True)
class CircularSet:
    """A subset of Z_m stored as a bitmask (bit j set iff j is a member)."""

    m: int
    mask: int

    @classmethod
    def from_members(cls, m: int, members: Iterable[int]) -> "CircularSet":
        mask = 0
        for j in members:
            mask |= 1 << (j % m)
        return cls(m, mask)

    def members(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.m) if self.mask >> j & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, j: int) -> bool:
        return bool(self.mask >> (j % self.m) & 1)

    def is_stable(self) -> bool:
        """No two cyclically consecutive members (wraparound pair included)."""
        return self.mask & _rotate_mask(self.mask, self.m, 1) == 0

    def disjoint(self, other: "CircularSet") -> bool:
        return self.mask & other.mask == 0

    def act(self, g: "DihedralElement") -> "CircularSet":
        return dihedral_act(self, g)

    def __str__(self) -> str:
        return "{" + ",".join(str(j) for j in self.members()) + "}"


@dataclass(frozen=True)
class DihedralElement:
    """sigma^shift rho^flip in D_{2m}, with rho sigma = sigma^{-1} rho."""

    m: int
    shift: int
    flip: bool = False

    def __post_init__(self):
        object.__setattr__(self, "shift", self.shift % self.m)

    @classmethod
    def identity(cls, m: int) -> "DihedralElement":
        return cls(m, 0, False)

    @classmethod
    def sigma(cls, m: int, power: int = 1) -> "DihedralElement":
        return cls(m, power, False)

    @classmethod
    def rho(cls, m: int) -> "DihedralElement":
        return cls(m, 0, True)

    def compose(self, other: "DihedralElement") -> "DihedralElement":
        """Group product self*other; acting by it applies self first."""
        if self.m != other.m:
            raise ValueError("modulus mismatch")
        sgn = -1 if self.flip else 1
        return DihedralElement(self.m, self.shift + sgn * other.shift,
                               self.flip ^ other.flip)

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        return self.compose(other)

    def inverse(self) -> "DihedralElement":
        if self.flip:
            return self
        return DihedralElement(self.m, -self.shift, False)

    def is_identity(self) -> bool:
        return self.shift == 0 and not self.flip

    def order(self) -> int:
        if self.flip:
            return 2
        if self.shift == 0:
            return 1
        from math import gcd
        return self.m // gcd(self.m, self.shift)


def dihedral_act(s: CircularSet, g: DihedralElement) -> CircularSet:
    """Right action on subsets of Z_m: S.sigma = {j+1}, S.rho = {-j}."""
    if s.m != g.m:
        raise ValueError("modulus mismatch: set lives in Z_%d, element in D_%d" % (s.m, 2 * g.m))
    mask = _rotate_mask(s.mask, s.m, g.shift)
    if g.flip:
        rev = 0
        for j in range(s.m):
            if mask >> j & 1:
                rev |= 1 << ((-j) % s.m)
        mask = rev
    return CircularSet(s.m, mask)


def generate_subgroup(generators: Sequence[DihedralElement]) -> list[DihedralElement]:
    """All elements of the subgroup generated in D_{2m}, identity first."""
    if not generators:
        raise ValueError("need at least one generator")
    m = generators[0].m
    seen = {(0, False)}
    frontier = [DihedralElement.identity(m)]
    elems = [DihedralElement.identity(m)]
    while frontier:
        nxt = []
        for e in frontier:
            for g in generators:
                f = e * g
                key = (f.shift, f.flip)
                if key not in seen:
                    seen.add(key)
                    elems.append(f)
                    nxt.append(f)
        frontier = nxt
    elems.sort(key=lambda e: (e.flip, e.shift))
    return elems


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class Graph:
    """Finite graph as adjacency bitmask rows; loops allowed.

    adjacency[i] has bit j set iff (i, j) is an edge.  The relation is
    kept symmetric by construction.  labels, when present, attach a
    CircularSet to each vertex and are injective.
    """

    adjacency: tuple[int, ...]
    labels: Optional[tuple[CircularSet, ...]] = None

    def __post_init__(self):
        n = len(self.adjacency)
        for i in range(n):
            for j in range(i + 1, n):
                if (self.adjacency[i] >> j & 1) != (self.adjacency[j] >> i & 1):
                    raise ValueError("adjacency not symmetric at (%d,%d)" % (i, j))
        if self.labels is not None:
            if len(self.labels) != n:
                raise ValueError("labels length != vertex count")
            if len({(l.m, l.mask) for l in self.labels}) != n:
                raise ValueError("labels not injective")

    @property
    def n(self) -> int:
        return len(self.adjacency)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)

    def degree(self, i: int) -> int:
        return bin(self.adjacency[i]).count("1")

    def neighbours(self, i: int) -> tuple[int, ...]:
        row = self.adjacency[i]
        return tuple(j for j in range(self.n) if row >> j & 1)

    def edges(self, include_loops: bool = True) -> list[tuple[int, int]]:
        out = []
        for i in range(self.n):
            row = self.adjacency[i]
            for j in range(i, self.n):
                if row >> j & 1:
                    if i == j and not include_loops:
                        continue
                    out.append((i, j))
        return out

    def is_loopless(self) -> bool:
        return all(not (self.adjacency[i] >> i & 1) for i in range(self.n))

    def has_loop(self, i: int) -> bool:
        return bool(self.adjacency[i] >> i & 1)

    def looped_vertices(self) -> list[int]:
        return [i for i in range(self.n) if self.has_loop(i)]

    def label_index(self) -> dict[tuple[int, int], int]:
        if self.labels is None:
            raise ValueError("graph carries no labels")
        return {(l.m, l.mask): i for i, l in enumerate(self.labels)}

    def delete_vertex(self, v: int) -> "Graph":
        keep = [i for i in range(self.n) if i != v]
        return self.induced_subgraph(keep)

    def induced_subgraph(self, keep: Sequence[int]) -> "Graph":
        pos = {v: i for i, v in enumerate(keep)}
        adj = [0] * len(keep)
        for v in keep:
            row = self.adjacency[v]
            for w in keep:
                if row >> w & 1:
                    adj[pos[v]] |= 1 << pos[w]
        labels = tuple(self.labels[v] for v in keep) if self.labels else None
        return Graph(tuple(adj), labels)


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]],
                     labels: Optional[Sequence[CircularSet]] = None) -> Graph:
    adj = [0] * n
    for i, j in edges:
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return Graph(tuple(adj), tuple(labels) if labels is not None else None)


def complete_graph(s: int) -> Graph:
    return graph_from_edges(s, [(i, j) for i in range(s) for j in range(i + 1, s)])


def cycle_graph(length: int) -> Graph:
    return graph_from_edges(length, [(i, (i + 1) % length) for i in range(length)])


def one_vertex_looped() -> Graph:
    return Graph((1,))


def k2() -> Graph:
    return complete_graph(2)


# ---------------------------------------------------------------------------
# stable sets and Kneser graphs


def enumerate_stable_sets(n: int, m: int) -> list[CircularSet]:
    """All stable n-subsets of Z_m, in lexicographic member order.

    Stable means no two cyclically consecutive elements.  Returns [] when
    m < 2n (no such set fits).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if m < 2 * n:
        return []
    out: list[CircularSet] = []

    def rec(start: int, limit: int, chosen: list[int], need: int) -> None:
        if need == 0:
            out.append(CircularSet.from_members(m, chosen))
            return
        # prune: `need` more elements with pairwise gaps >= 2 must fit
        for j in range(start, limit - 2 * (need - 1) + 1):
            chosen.append(j)
            rec(j + 2, limit, chosen, need - 1)
            chosen.pop()

    rec(2, m - 2, [0], n - 1)   # sets containing 0: exclude 1 and m-1
    rec(1, m - 1, [], n)        # sets avoiding 0
    out.sort(key=lambda s: s.members())
    return out


def stable_set_count(n: int, m: int) -> int:
    """Closed form m/(m-n) * C(m-n, n)."""
    from math import comb
    if m < 2 * n:
        return 0
    return m * comb(m - n, n) // (m - n)


def kneser_graph(n: int, k: int) -> Graph:
    """KG_{n,k}: n-subsets of Z_{2n+k}, adjacent iff disjoint."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = 2 * n + k
    labels = [CircularSet.from_members(m, c)
              for c in itertools.combinations(range(m), n)]
    return _disjointness_graph(labels)


def stable_kneser_graph(n: int, k: int) -> Graph:
    """SG_{n,k}: stable n-subsets of Z_{2n+k}, adjacent iff disjoint."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = 2 * n + k
    return _disjointness_graph(enumerate_stable_sets(n, m))


def _disjointness_graph(labels: Sequence[CircularSet]) -> Graph:
    nv = len(labels)
    adj = [0] * nv
    for i in range(nv):
        for j in range(i + 1, nv):
            if labels[i].mask & labels[j].mask == 0:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(tuple(adj), tuple(labels))


# ---------------------------------------------------------------------------
# categorical product and exponential


def product(g: Graph, h: Graph) -> Graph:
    """Categorical product: (u,u') ~ (v,v') iff u~v in G and u'~v' in H."""
    nv = g.n * h.n
    adj = [0] * nv
    for u in range(g.n):
        for up in range(h.n):
            i = u * h.n + up
            for v in range(g.n):
                if not g.has_edge(u, v):
                    continue
                row = h.adjacency[up]
                for vp in range(h.n):
                    if row >> vp & 1:
                        adj[i] |= 1 << (v * h.n + vp)
    return Graph(tuple(adj))


def exponential(g: Graph, h: Graph, max_vertices: int = 10 ** 6) -> Graph:
    """Exponential graph [G,H]: vertices are all maps V(G)->V(H).

    (f,g') is an edge iff every edge (u,v) of G has (f(u), g'(v)) in E(H);
    looped vertices are exactly the graph homomorphisms G -> H.
    """
    if h.n ** g.n > max_vertices:
        raise ValueError("exponential graph would have %d vertices (limit %d)"
                         % (h.n ** g.n, max_vertices))
    maps = list(itertools.product(range(h.n), repeat=g.n))
    gedges = []
    for u in range(g.n):
        row = g.adjacency[u]
        for v in range(g.n):
            if row >> v & 1:
                gedges.append((u, v))
    nv = len(maps)
    adj = [0] * nv
    for i, f in enumerate(maps):
        for j in range(i, nv):
            fj = maps[j]
            if all(h.has_edge(f[u], fj[v]) and h.has_edge(fj[u], f[v])
                   for u, v in gedges):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(tuple(adj))


def homomorphisms(g: Graph, h: Graph) -> list[tuple[int, ...]]:
    """All graph homomorphisms G -> H by backtracking."""
    gedges = [(u, v) for u in range(g.n) for v in range(g.n)
              if g.has_edge(u, v)]
    out: list[tuple[int, ...]] = []
    assign: list[int] = []

    def rec(u: int) -> None:
        if u == g.n:
            out.append(tuple(assign))
            return
        for t in range(h.n):
            ok = True
            for a, b in gedges:
                if a == u and b < u and not h.has_edge(t, assign[b]):
                    ok = False
                    break
                if b == u and a < u and not h.has_edge(assign[a], t):
                    ok = False
                    break
                if a == u and b == u and not h.has_edge(t, t):
                    ok = False
                    break
            if ok:
                assign.append(t)
                rec(u + 1)
                assign.pop()

    rec(0)
    return out


# ---------------------------------------------------------------------------
# exact chromatic number


def chromatic_number(g: Graph, return_colouring: bool = False):
    """Exact chromatic number by branch and bound.

    Clique lower bound, greedy upper bound, then k-colourability decided by
    backtracking in a fixed vertex order.  Practical to a few dozen
    vertices.  A loop makes the graph uncolourable and raises.
    """
    if not g.is_loopless():
        raise ValueError("graph has a loop; chromatic number undefined")
    n = g.n
    if n == 0:
        return (0, []) if return_colouring else 0

    order = sorted(range(n), key=lambda v: (-g.degree(v), v))

    # greedy upper bound along `order`
    greedy = [-1] * n
    for v in order:
        used = {greedy[w] for w in g.neighbours(v) if greedy[w] >= 0}
        c = 0
        while c in used:
            c += 1
        greedy[v] = c
    ub = max(greedy) + 1 if n else 0

    lb = _clique_lower_bound(g, order)

    best = greedy[:]
    chi = ub
    for kcol in range(lb, ub):
        col = _try_colour(g, order, kcol)
        if col is not None:
            chi = kcol
            best = col
            break
    if return_colouring:
        return chi, best
    return chi


def _clique_lower_bound(g: Graph, order: Sequence[int]) -> int:
    best = 0
    for v0 in order[: min(len(order), 12)]:
        clique = [v0]
        cand = g.adjacency[v0]
        while cand:
            pick = -1
            for v in order:
                if cand >> v & 1:
                    pick = v
                    break
            if pick < 0:
                break
            clique.append(pick)
            cand &= g.adjacency[pick]
        best = max(best, len(clique))
    return max(best, 1)


def _try_colour(g: Graph, order: Sequence[int], kcol: int) -> Optional[list[int]]:
    """Exact k-colourability by saturation-ordered backtracking.

    Always branches on the uncoloured vertex seeing the most distinct
    neighbour colours (ties by degree, then the fixed order), and spends a
    fresh colour class at most once per node.
    """
    n = g.n
    colour = [-1] * n
    seen = [0] * n          # bitmask of neighbour colours per vertex
    rank = {v: i for i, v in enumerate(order)}
    degs = [g.degree(v) for v in range(n)]
    full = (1 << kcol) - 1

    def pick() -> int:
        best, best_key = -1, None
        for v in range(n):
            if colour[v] >= 0:
                continue
            key = (-bin(seen[v]).count("1"), -degs[v], rank[v])
            if best < 0 or key < best_key:
                best, best_key = v, key
        return best

    def rec(coloured: int, used: int) -> bool:
        if coloured == n:
            return True
        v = pick()
        if seen[v] == full:
            return False
        limit = min(kcol, used + 1)
        row = g.adjacency[v]
        nbrs = [w for w in range(n) if row >> w & 1]
        for c in range(limit):
            if seen[v] >> c & 1:
                continue
            colour[v] = c
            touched = []
            for w in nbrs:
                if not (seen[w] >> c & 1):
                    seen[w] |= 1 << c
                    touched.append(w)
            if rec(coloured + 1, max(used, c + 1)):
                return True
            for w in touched:
                seen[w] &= ~(1 << c)
            colour[v] = -1
        return False

    if rec(0, 0):
        return colour
    return None


def is_valid_colouring(g: Graph, colouring: Sequence[int]) -> bool:
    return all(colouring[i] != colouring[j]
               for i, j in g.edges(include_loops=False)) and \
        all(colouring[v] >= 0 for v in range(g.n))


def vertex_criticality_check(g: Graph) -> bool:
    """True iff deleting any single vertex lowers the chromatic number."""
    if g.n == 0:
        raise ValueError("empty graph")
    chi = chromatic_number(g)
    for v in range(g.n):
        if chromatic_number(g.delete_vertex(v)) >= chi:
            return False
    return True


# ---------------------------------------------------------------------------
# group actions on labelled graphs


def vertex_permutation(g: Graph, elem: DihedralElement) -> list[int]:
    """The vertex permutation induced by a dihedral element on labels.

    Raises if some image label is not a vertex or adjacency is broken.
    """
    index = g.label_index()
    perm = []
    for lab in g.labels:
        img = dihedral_act(lab, elem)
        key = (img.m, img.mask)
        if key not in index:
            raise ValueError("action does not preserve the vertex set at %s" % lab)
        perm.append(index[key])
    for i, j in g.edges():
        if not g.has_edge(perm[i], perm[j]):
            raise ValueError("action does not preserve the edge set")
    return perm


def free_action_check(g: Graph, generators: Sequence[DihedralElement]):
    """Freeness witnesses per the orbit criterion.

    For each non-identity gamma of the generated subgroup, search for a
    vertex v and exponent k with (v, v.gamma^k) an edge.  Returns a dict
    mapping (shift, flip) -> (vertex index, k) or None when no witness
    exists (the action on some Hom(T, G) then fails to be free).
    """
    if not g.is_loopless():
        raise ValueError("graph must be loopless")
    group = generate_subgroup(generators)
    result = {}
    for gamma in group:
        if gamma.is_identity():
            continue
        witness = None
        power = gamma
        k = 1
        while not power.is_identity():
            perm = vertex_permutation(g, power)
            for v in range(g.n):
                if g.has_edge(v, perm[v]):
                    witness = (v, k)
                    break
            if witness:
                break
            power = power * gamma
            k += 1
        result[(gamma.shift, gamma.flip)] = witness
    return result


def automorphism_group_order(g: Graph, max_vertices: int = 16) -> int:
    """|Aut(G)| by backtracking over degree-compatible bijections.

    Refuses graphs with more than `max_vertices` vertices rather than
    fall back to heuristics.
    """
    n = g.n
    if n > max_vertices:
        raise ValueError("too large: %d vertices (limit %d)" % (n, max_vertices))
    if n == 0:
        return 1
    sig = [(g.degree(v), g.has_loop(v)) for v in range(n)]
    count = 0
    image = [-1] * n
    used = [False] * n

    def rec(v: int) -> None:
        nonlocal count
        if v == n:
            count += 1
            return
        for t in range(n):
            if used[t] or sig[t] != sig[v]:
                continue
            ok = True
            for w in range(v):
                if g.has_edge(v, w) != g.has_edge(t, image[w]):
                    ok = False
                    break
            if ok and g.has_edge(v, v) == g.has_edge(t, t):
                image[v] = t
                used[t] = True
                rec(v + 1)
                used[t] = False
                image[v] = -1

    rec(0)
    return count


# ---------------------------------------------------------------------------
# serialization


def graph_to_json_dict(g: Graph) -> dict:
    """JSON document {m, n, k, vertices, edges}; m/n/k need labels."""
    doc: dict = {"m": None, "n": None, "k": None}
    if g.labels is not None:
        m = g.labels[0].m
        sizes = {len(l) for l in g.labels}
        if len(sizes) == 1:
            nn = sizes.pop()
            doc = {"m": m, "n": nn, "k": m - 2 * nn}
        else:
            doc = {"m": m, "n": None, "k": None}
        doc["vertices"] = [list(l.members()) for l in g.labels]
    else:
        doc["vertices"] = [[v] for v in range(g.n)]
    doc["edges"] = [[i, j] for i, j in g.edges(include_loops=False)]
    return doc


def graph_to_json(g: Graph) -> str:
    return json.dumps(graph_to_json_dict(g), sort_keys=True)


def graph_to_dimacs(g: Graph) -> str:
    """DIMACS edge-list format, vertices 1-based."""
    edges = g.edges(include_loops=False)
    lines = ["p edge %d %d" % (g.n, len(edges))]
    lines += ["e %d %d" % (i + 1, j + 1) for i, j in edges]
    return "\n".join(lines) + "\n"
