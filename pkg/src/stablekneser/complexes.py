"""Hom posets, neighbourhood and order complexes, and GF(2) homology.

A Hom cell assigns to each source vertex a nonempty set of target vertices
with every cross pair an edge; cells ordered componentwise.  Homology is
computed from boundary-matrix ranks over GF(2), rows bit-packed into ints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .graphs import (CircularSet, DihedralElement, Graph,
                     stable_kneser_graph)
from .matroid import (SignVector, covector_extension_feasible, dihedral_act_sign,
                      enumerate_covectors, is_covector, negate,
                      render_sign_vector)


@dataclass(frozen=True)
class MultiHom:
    """A cell of Hom(G,H): source vertex -> nonempty target vertex set."""

    assignment: tuple[frozenset, ...]

    def validate(self, source: Graph, target: Graph) -> None:
        if len(self.assignment) != source.n:
            raise ValueError("assignment length != |V(source)|")
        if any(not a for a in self.assignment):
            raise ValueError("empty value set")
        for u in range(source.n):
            for v in range(source.n):
                if source.has_edge(u, v):
                    for a in self.assignment[u]:
                        for b in self.assignment[v]:
                            if not target.has_edge(a, b):
                                raise ValueError("not a multihomomorphism")

    def is_atom(self) -> bool:
        return all(len(a) == 1 for a in self.assignment)

    def leq(self, other: "MultiHom") -> bool:
        return all(a <= b for a, b in zip(self.assignment, other.assignment))

    def swap(self) -> "MultiHom":
        """The nontrivial K_2 involution on Hom(K_2, -)."""
        if len(self.assignment) != 2:
            raise ValueError("swap needs a 2-vertex source")
        return MultiHom((self.assignment[1], self.assignment[0]))

    def act_vertices(self, perm: Sequence[int]) -> "MultiHom":
        return MultiHom(tuple(frozenset(perm[t] for t in a) for a in self.assignment))

    def key(self):
        return tuple(tuple(sorted(a)) for a in self.assignment)


class FinitePoset:
    """Finite poset over arbitrary elements with bitmask up-sets."""

    def __init__(self, elements: Sequence, leq: Callable):
        self.elements = list(elements)
        n = len(self.elements)
        self.above = [0] * n   # above[i] bit j: elements[i] <= elements[j]
        for i in range(n):
            for j in range(n):
                if leq(self.elements[i], self.elements[j]):
                    self.above[i] |= 1 << j
        for i in range(n):
            if not (self.above[i] >> i & 1):
                raise ValueError("order not reflexive")
            for j in range(n):
                if i != j and (self.above[i] >> j & 1) and (self.above[j] >> i & 1):
                    raise ValueError("order not antisymmetric")

    @property
    def n(self) -> int:
        return len(self.elements)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.above[i] >> j & 1)

    def atoms(self) -> list[int]:
        """Minimal elements (the poset has no artificial bottom)."""
        n = self.n
        out = []
        for i in range(n):
            if all(not (self.above[j] >> i & 1) for j in range(n) if j != i):
                out.append(i)
        return out

    def maximal(self) -> list[int]:
        return [i for i in range(self.n) if self.above[i] == 1 << i]

    def covers(self) -> list[list[int]]:
        """covers[i] = indices j covering i."""
        n = self.n
        out: list[list[int]] = [[] for _ in range(n)]
        for i in range(n):
            ups = [j for j in range(n) if j != i and self.leq(i, j)]
            for j in ups:
                if not any(self.leq(i, l) and self.leq(l, j)
                           for l in ups if l != j):
                    out[i].append(j)
        return out

    def maximal_chains(self) -> list[tuple[int, ...]]:
        cov = self.covers()
        minimal = self.atoms()
        chains: list[tuple[int, ...]] = []

        def rec(chain: list[int]) -> None:
            ups = cov[chain[-1]]
            if not ups:
                chains.append(tuple(chain))
                return
            for j in ups:
                chain.append(j)
                rec(chain)
                chain.pop()

        for i in minimal:
            rec([i])
        return chains


@dataclass(frozen=True)
class SimplicialComplex:
    """Abstract simplicial complex given by its facets (maximal faces)."""

    vertices: tuple
    facets: tuple[frozenset, ...]

    @classmethod
    def from_faces(cls, faces: Sequence[frozenset]) -> "SimplicialComplex":
        faces = [frozenset(f) for f in faces if f]
        maximal = [f for f in faces
                   if not any(f < g for g in faces)]
        seen = set()
        uniq = []
        for f in maximal:
            if f not in seen:
                seen.add(f)
                uniq.append(f)
        verts = sorted({v for f in uniq for v in f}, key=repr)
        uniq.sort(key=lambda f: (len(f), sorted(map(repr, f))))
        return cls(tuple(verts), tuple(uniq))

    def dimension(self) -> int:
        return max((len(f) - 1 for f in self.facets), default=-1)

    def all_faces(self, max_faces: int = 10 ** 6) -> dict[int, list[frozenset]]:
        """Downward closure, keyed by dimension."""
        byd: dict[int, set] = {}
        total = 0
        for facet in self.facets:
            fl = sorted(facet, key=repr)
            for size in range(1, len(fl) + 1):
                bucket = byd.setdefault(size - 1, set())
                for sub in itertools.combinations(fl, size):
                    fs = frozenset(sub)
                    if fs not in bucket:
                        bucket.add(fs)
                        total += 1
                        if total > max_faces:
                            raise ValueError("complex exceeds %d faces" % max_faces)
        return {d: sorted(fs, key=lambda f: sorted(map(repr, f)))
                for d, fs in byd.items()}

    def f_vector(self) -> tuple[int, ...]:
        byd = self.all_faces()
        top = max(byd) if byd else -1
        return tuple(len(byd.get(d, ())) for d in range(top + 1))


def gf2_rank_dense(rows: Sequence[int]) -> int:
    """Rank over GF(2); rows are bit-packed ints."""
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        r = row
        while r:
            p = r.bit_length() - 1
            if p in pivots:
                r ^= pivots[p]
            else:
                pivots[p] = r
                rank += 1
                break
    return rank


def gf2_rank_sparse(rows: Sequence[set]) -> int:
    """Rank over GF(2); rows as sets of column indices."""
    pivots: dict[int, set] = {}
    rank = 0
    for row in rows:
        r = set(row)
        while r:
            p = max(r)
            if p in pivots:
                r ^= pivots[p]
            else:
                pivots[p] = r
                rank += 1
                break
    return rank


_DENSE_COLUMN_LIMIT = 1 << 13


def boundary_rank(faces: Sequence[frozenset], below_index: dict) -> int:
    """Rank of the boundary map from `faces` to the faces indexed by below_index."""
    ncols = len(below_index)
    if ncols <= _DENSE_COLUMN_LIMIT:
        rows = []
        for f in faces:
            row = 0
            for v in f:
                row |= 1 << below_index[f - {v}]
            rows.append(row)
        return gf2_rank_dense(rows)
    rows_s = [{below_index[f - {v}] for v in f} for f in faces]
    return gf2_rank_sparse(rows_s)


def z2_betti(x: SimplicialComplex, max_faces: int = 10 ** 6) -> tuple[int, ...]:
    """Betti numbers over GF(2), trailing zeros trimmed."""
    byd = x.all_faces(max_faces=max_faces)
    if not byd:
        return ()
    top = max(byd)
    index = {d: {f: i for i, f in enumerate(byd[d])} for d in byd}
    ranks = {0: 0}
    for d in range(1, top + 1):
        ranks[d] = boundary_rank(byd[d], index[d - 1])
    betti = []
    for d in range(top + 1):
        b = len(byd[d]) - ranks[d] - ranks.get(d + 1, 0)
        betti.append(b)
    while len(betti) > 1 and betti[-1] == 0:
        betti.pop()
    return tuple(betti)


def boundary_matrix_coordinate_text(x: SimplicialComplex, d: int) -> str:
    """Sparse boundary matrix of dimension d in 'row col' coordinate lines."""
    byd = x.all_faces()
    if d not in byd or d - 1 not in byd:
        return "%d %d 0\n" % (len(byd.get(d, ())), len(byd.get(d - 1, ())))
    idx = {f: i for i, f in enumerate(byd[d - 1])}
    lines = []
    nnz = 0
    for r, f in enumerate(byd[d]):
        for v in f:
            lines.append("%d %d" % (r, idx[f - {v}]))
            nnz += 1
    head = "%d %d %d" % (len(byd[d]), len(byd[d - 1]), nnz)
    return "\n".join([head] + lines) + "\n"


def complex_to_facets_json_dict(x: SimplicialComplex) -> dict:
    return {
        "vertices": [repr(v) for v in x.vertices],
        "facets": [sorted(map(repr, f)) for f in x.facets],
    }


# ---------------------------------------------------------------------------
# Hom poset


def hom_size_estimate(g: Graph, h: Graph) -> int:
    return (2 ** h.n - 1) ** g.n


def hom_poset(g: Graph, h: Graph, max_cells: int = 10 ** 6) -> FinitePoset:
    """The poset of multihomomorphisms G -> H, ordered componentwise.

    Enumerates by backtracking over source vertices; refuses with the cell
    count found so far once `max_cells` is exceeded.
    """
    if g.n > 3 and hom_size_estimate(g, h) > max_cells:
        raise ValueError("refusing: size estimate %d cells exceeds %d"
                         % (hom_size_estimate(g, h), max_cells))
    cells: list[tuple[frozenset, ...]] = []
    assigned: list[frozenset] = []

    def subsets_for(u: int) -> list[frozenset]:
        allowed = (1 << h.n) - 1
        for w in range(len(assigned)):
            if g.has_edge(u, w):
                common = (1 << h.n) - 1
                for b in assigned[w]:
                    common &= h.adjacency[b]
                allowed &= common
        pool = [v for v in range(h.n) if allowed >> v & 1]
        loop = g.has_edge(u, u)
        if loop:
            pool = [v for v in pool if h.has_edge(v, v)]
        out = []
        np_ = len(pool)
        for mask in range(1, 1 << np_):
            sub = [pool[i] for i in range(np_) if mask >> i & 1]
            if loop and any(not h.has_edge(a, b)
                            for a in sub for b in sub):
                continue
            out.append(frozenset(sub))
        return out

    def rec(u: int) -> None:
        if u == g.n:
            cells.append(tuple(assigned))
            if len(cells) > max_cells:
                raise ValueError("refusing: more than %d cells" % max_cells)
            return
        for sub in subsets_for(u):
            assigned.append(sub)
            rec(u + 1)
            assigned.pop()

    rec(0)
    multihoms = sorted((MultiHom(c) for c in cells), key=lambda mh: mh.key())
    return FinitePoset(multihoms, lambda a, b: a.leq(b))


def hom_atoms(g: Graph, h: Graph, max_cells: int = 10 ** 6) -> list[MultiHom]:
    p = hom_poset(g, h, max_cells=max_cells)
    return [p.elements[i] for i in p.atoms()]


def neighbourhood_complex(g: Graph) -> SimplicialComplex:
    """Sets of vertices with a common neighbour."""
    faces = []
    for v in range(g.n):
        nb = frozenset(g.neighbours(v))
        if nb:
            faces.append(nb)
    return SimplicialComplex.from_faces(faces)


def order_complex(p: FinitePoset) -> SimplicialComplex:
    """Chains of the poset; facets are the maximal chains."""
    chains = p.maximal_chains()
    return SimplicialComplex.from_faces([frozenset(c) for c in chains])


def looped_one_skeleton(p: FinitePoset) -> Graph:
    """Reflexive graph on atoms; adjacent iff a common upper bound exists."""
    atoms = p.atoms()
    na = len(atoms)
    adj = [0] * na
    for a in range(na):
        for b in range(na):
            if p.above[atoms[a]] & p.above[atoms[b]]:
                adj[a] |= 1 << b
    return Graph(tuple(adj))


# ---------------------------------------------------------------------------
# the covector -> Hom map


def side_sets(s: SignVector) -> tuple[CircularSet, CircularSet]:
    """S_l(s) = {j : (-1)^j s_j = (-1)^l} for l = 0, 1."""
    m = len(s)
    masks = [0, 0]
    for j, v in enumerate(s):
        if v == 0:
            continue
        signed = v if j % 2 == 0 else -v
        masks[0 if signed == 1 else 1] |= 1 << j
    return CircularSet(m, masks[0]), CircularSet(m, masks[1])


def covector_to_hom(s: SignVector, n: int, k: int,
                    target: Optional[Graph] = None) -> MultiHom:
    """The cell of Hom(K_2, SG_{n,k}) attached to a covector.

    Each K_2 vertex l is sent to all stable n-sets inside S_l(s).  Order
    preserving in s; cocircuits land on atoms with interleaved sides.
    """
    m = 2 * n + k
    if len(s) != m:
        raise ValueError("sign vector length %d, expected m = %d" % (len(s), m))
    if not is_covector(s, k):
        raise ValueError("not a covector of C^{%d,%d}: %s"
                         % (m, k + 1, render_sign_vector(s)))
    if target is None:
        target = stable_kneser_graph(n, k)
    s0, s1 = side_sets(s)
    values = []
    for side in (s0, s1):
        inside = frozenset(i for i, lab in enumerate(target.labels)
                           if lab.mask & ~side.mask == 0)
        if not inside:
            raise ValueError("side %s carries no stable %d-set" % (side, n))
        values.append(inside)
    # cross pairs are edges automatically: the two sides sit inside the
    # disjoint index sets S_0(s) and S_1(s)
    return MultiHom(tuple(values))


def multihom_dihedral_act(mh: MultiHom, g: Graph, elem: DihedralElement) -> MultiHom:
    """Push a Hom(K_2, G) cell along the dihedral action on G's labels."""
    from .graphs import vertex_permutation
    perm = vertex_permutation(g, elem)
    return mh.act_vertices(perm)


def check_equivariance_combinatorial(n: int, k: int) -> dict:
    """Check the covector map intertwines both group actions, on every covector.

    sigma and rho act on sign vectors by the twisted shift/flip rules and on
    Hom(K_2, SG_{n,k}) through vertex labels; negation must match the K_2
    swap.  Returns a report whose violation list is expected empty.
    """
    m = 2 * n + k
    target = stable_kneser_graph(n, k)
    sigma = DihedralElement.sigma(m)
    rho = DihedralElement.rho(m)
    violations = []
    covs = enumerate_covectors(m, k)
    for s in covs:
        base = covector_to_hom(s, n, k, target)
        for name, elem in (("sigma", sigma), ("rho", rho)):
            lhs = covector_to_hom(dihedral_act_sign(s, elem), n, k, target)
            rhs = multihom_dihedral_act(base, target, elem)
            if lhs != rhs:
                violations.append((render_sign_vector(s), name))
        if covector_to_hom(negate(s), n, k, target) != base.swap():
            violations.append((render_sign_vector(s), "negation"))
    return {
        "n": n,
        "k": k,
        "m": m,
        "covectors_checked": len(covs),
        "violations": violations,
    }


def verify_nerve(n: int, k: int, max_set_size: Optional[int] = None,
                 max_vertices: int = 20) -> bool:
    """Nerve criterion: sign-pattern feasibility == common-neighbour existence.

    For every nonempty vertex family of SG_{n,k} (up to max_set_size), fixing
    s_j = (-1)^j on the union must be covector-extendable exactly when some
    stable set avoids the union.
    """
    m = 2 * n + k
    verts = [lab for lab in stable_kneser_graph(n, k).labels]
    nv = len(verts)
    if nv > max_vertices and max_set_size is None:
        raise ValueError("refusing 2^%d subsets; pass max_set_size" % nv)
    sizes = range(1, nv + 1) if max_set_size is None else range(1, max_set_size + 1)
    for size in sizes:
        for family in itertools.combinations(range(nv), size):
            union = 0
            for i in family:
                union |= verts[i].mask
            partial: list[Optional[int]] = []
            for j in range(m):
                if union >> j & 1:
                    partial.append(1 if j % 2 == 0 else -1)
                else:
                    partial.append(None)
            feasible = covector_extension_feasible(partial, k)
            has_common = any(v.mask & union == 0 for v in verts)
            if feasible != has_common:
                return False
    return True
