"""Orthogonal dihedral representations and trigonometric moment configurations.

The m configuration vectors in R^{k+1} realize the alternating oriented
matroid and intertwine the dihedral matrices with index shifts; every
floating-point check reports its maximum deviation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .graphs import CircularSet, DihedralElement, enumerate_stable_sets
from .matroid import (SignVector, enumerate_cocircuits, enumerate_covectors,
                      is_covector, render_sign_vector)


class RealizationError(RuntimeError):
    """A geometric check contradicted the combinatorial covector rule."""

    def __init__(self, message: str, report: dict):
        super().__init__(message)
        self.report = report


def _rotation(phi: float) -> np.ndarray:
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[c, -s], [s, c]])


@dataclass(frozen=True)
class OrthogonalRep:
    """The (k+1)-dimensional orthogonal right action of D_{2m}.

    x.g is matrix(g) @ x; tau acts by global negation.  For even k the
    shift generator is -diag(1, R_{2pi/m}, ..., R_{k pi/m}); for odd k it
    is -diag(R_{pi/m}, R_{3pi/m}, ..., R_{k pi/m}), with the reflection
    diag(1, [1,-1]...) resp. diag([1,-1]...).
    """

    n: int
    k: int
    sigma_matrix: np.ndarray
    rho_matrix: np.ndarray

    @property
    def m(self) -> int:
        return 2 * self.n + self.k

    @property
    def dim(self) -> int:
        return self.k + 1

    def matrix(self, g: DihedralElement) -> np.ndarray:
        if g.m != self.m:
            raise ValueError("modulus mismatch")
        out = np.linalg.matrix_power(self.sigma_matrix, g.shift % self.m)
        if g.flip:
            out = self.rho_matrix @ out
        return out

    def act(self, x: np.ndarray, g: DihedralElement) -> np.ndarray:
        return self.matrix(g) @ x

    def matrices_text(self, digits: int = 6) -> str:
        """Both generator matrices, printable for audit."""
        fmt = {"float_kind": lambda v: "% .*f" % (digits, v)}
        return "sigma =\n%s\nrho =\n%s\n" % (
            np.array2string(self.sigma_matrix, formatter=fmt),
            np.array2string(self.rho_matrix, formatter=fmt))

    def relation_deviations(self) -> dict[str, float]:
        eye = np.eye(self.dim)
        sig, rho = self.sigma_matrix, self.rho_matrix
        srs = rho @ sig
        return {
            "sigma_orthogonal": float(np.abs(sig.T @ sig - eye).max()),
            "rho_orthogonal": float(np.abs(rho.T @ rho - eye).max()),
            "sigma_order_m": float(np.abs(np.linalg.matrix_power(sig, self.m) - eye).max()),
            "rho_involution": float(np.abs(rho @ rho - eye).max()),
            "sigma_rho_involution": float(np.abs(srs @ srs - eye).max()),
        }


def representation(n: int, k: int) -> OrthogonalRep:
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    m = 2 * n + k
    dim = k + 1
    sigma = np.zeros((dim, dim))
    if k % 2 == 0:
        r = k // 2
        sigma[0, 0] = 1.0
        for l in range(1, r + 1):
            sigma[2 * l - 1: 2 * l + 1, 2 * l - 1: 2 * l + 1] = _rotation(2 * np.pi * l / m)
        rho_diag = [1.0] + [1.0, -1.0] * r
    else:
        r = (k - 1) // 2
        for l in range(r + 1):
            sigma[2 * l: 2 * l + 2, 2 * l: 2 * l + 2] = _rotation((2 * l + 1) * np.pi / m)
        rho_diag = [1.0, -1.0] * (r + 1)
    return OrthogonalRep(n, k, -sigma, np.diag(rho_diag))


@dataclass(frozen=True)
class MomentConfig:
    """Vectors v_0..v_{m-1} on the trigonometric moment curve in R^{k+1}."""

    m: int
    k: int
    vectors: np.ndarray

    @property
    def n(self) -> Optional[int]:
        return (self.m - self.k) // 2 if (self.m - self.k) % 2 == 0 else None

    def vector(self, j: int) -> np.ndarray:
        """v_j for any integer j via the curve formula (not reduced mod m)."""
        return _curve_point(float(j), self.m, self.k)


def _curve_point(t: float, m: int, k: int) -> np.ndarray:
    if k % 2 == 0:
        r = k // 2
        out = [1.0]
        for l in range(1, r + 1):
            ang = 2.0 * np.pi * l * t / m
            out += [np.cos(ang), np.sin(ang)]
    else:
        r = (k - 1) // 2
        out = []
        for l in range(r + 1):
            ang = (2 * l + 1) * np.pi * t / m
            out += [np.cos(ang), np.sin(ang)]
    return np.array(out)


def config_for(m: int, k: int) -> MomentConfig:
    """Configuration keyed on (m, k); n need not be integral here."""
    if m <= k:
        raise ValueError("need m > k")
    vecs = np.array([_curve_point(float(j), m, k) for j in range(m)])
    return MomentConfig(m, k, vecs)


def moment_vectors(n: int, k: int) -> MomentConfig:
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    return config_for(2 * n + k, k)


def eq3_deviations(config: MomentConfig, rep: OrthogonalRep) -> dict[str, float]:
    """Max deviations of the three shift identities over all j."""
    m = config.m
    v = config.vectors
    dev_sigma = max(
        float(np.linalg.norm(rep.sigma_matrix @ v[j] + config.vector(j + 1)))
        for j in range(m))
    dev_rho = max(
        float(np.linalg.norm(rep.rho_matrix @ v[j] - config.vector(-j)))
        for j in range(m))
    sign = -1.0 if m % 2 else 1.0
    dev_period = max(
        float(np.linalg.norm(config.vector(j + m) - sign * v[j]))
        for j in range(m))
    return {"sigma_shift": dev_sigma, "rho_flip": dev_rho, "periodicity": dev_period}


def sign_vector_of_point(x: np.ndarray, config: MomentConfig,
                         zero_tol: float = 1e-9) -> SignVector:
    vals = config.vectors @ np.asarray(x, dtype=float)
    return tuple(0 if abs(t) < zero_tol else (1 if t > 0 else -1) for t in vals)


def _nullspace_vector(rows: np.ndarray) -> np.ndarray:
    _, _, vt = np.linalg.svd(rows)
    return vt[-1]


def realize_cocircuit(s: SignVector, config: MomentConfig,
                      zero_tol: float = 1e-9) -> np.ndarray:
    """A unit point whose sign vector is s, via the exact zero-set solve."""
    zero_rows = [j for j, v in enumerate(s) if v == 0]
    if not zero_rows:
        raise ValueError("no zero entries to solve for; use a sampled point")
    x = _nullspace_vector(config.vectors[zero_rows])
    sv = sign_vector_of_point(x, config, zero_tol)
    if sv == s:
        return x
    if sv == tuple(-v for v in s):
        return -x
    raise RealizationError(
        "cocircuit %s not realized by its zero set" % render_sign_vector(s),
        {"cocircuit": render_sign_vector(s), "got": render_sign_vector(sv)})


def _tope_witness(s: SignVector, config: MomentConfig,
                  max_steps: int = 200000) -> Optional[np.ndarray]:
    """A point with sign vector s, or None.

    Perceptron iteration on the strict system s_j <x, v_j> > 0; converges
    whenever the open cone is nonempty, so a None for an actual covector
    would falsify the realization.
    """
    rows = np.array(s, dtype=float)[:, None] * config.vectors
    rows /= np.linalg.norm(rows, axis=1)[:, None]
    x, *_ = np.linalg.lstsq(config.vectors, np.array(s, dtype=float), rcond=None)
    if not np.linalg.norm(x):
        x = rows.sum(axis=0)
    for _ in range(max_steps):
        prods = rows @ x
        worst = int(np.argmin(prods))
        if prods[worst] > 1e-12:
            return x / np.linalg.norm(x)
        x = x + rows[worst]
    return None


def verify_realization(m: int, k: int, samples: int = 100000,
                       seed: int = 0, zero_tol: float = 1e-9) -> dict:
    """Cross-validate the covector rule against the geometric configuration.

    (a) every sampled generic sign vector satisfies the covector rule;
    (b) for m <= 8, k <= 4 the full-support sign patterns found (random
        samples plus one targeted witness per covector) are exactly the
        zero-free covectors;
    (c) every cocircuit is realized by solving its zero set.
    Any discrepancy raises RealizationError.
    """
    config = config_for(m, k)
    rng = np.random.default_rng(seed)
    report: dict = {"m": m, "k": k, "samples": samples, "seed": seed}

    zero_free = {s for s in enumerate_covectors(m, k) if 0 not in s}
    vals = rng.normal(size=(samples, k + 1)) @ config.vectors.T
    signs = np.where(np.abs(vals) < zero_tol, 0, np.sign(vals)).astype(int)
    full = signs[~np.any(signs == 0, axis=1)]
    patterns, counts = np.unique(full, axis=0, return_counts=True)
    seen = set()
    non_covector = 0
    for row, count in zip(patterns, counts):
        s = tuple(int(v) for v in row)
        seen.add(s)
        if not is_covector(s, k):
            non_covector += int(count)
    report["sampled_full_support_patterns"] = len(seen)
    report["non_covector_samples"] = non_covector
    if non_covector:
        raise RealizationError("sampled sign pattern violates the covector rule", report)

    if m <= 8 and k <= 4:
        for s in sorted(zero_free):
            if s in seen:
                continue
            x = _tope_witness(s, config)
            if x is not None and sign_vector_of_point(x, config, zero_tol) == s:
                seen.add(s)
        report["zero_free_covectors"] = len(zero_free)
        if seen != zero_free:
            report["missed"] = [render_sign_vector(s) for s in sorted(zero_free - seen)]
            report["extra"] = [render_sign_vector(s) for s in sorted(seen - zero_free)]
            raise RealizationError("full-support patterns != zero-free covectors", report)

    cocircuits = enumerate_cocircuits(m, k)
    if k > 0:
        for s in cocircuits:
            realize_cocircuit(s, config, zero_tol)
    report["cocircuits_realized"] = len(cocircuits) if k > 0 else 0
    report["status"] = "pass"
    return report


# ---------------------------------------------------------------------------
# the vertex map v(S) and Borsuk-graph experiments


def signed_sum(s: CircularSet, config: MomentConfig) -> np.ndarray:
    total = np.zeros(config.k + 1)
    for i in s.members():
        total += (-1) ** i * config.vectors[i]
    return total


def v_of_set(s: CircularSet, config: MomentConfig,
             min_norm: float = 1e-12) -> np.ndarray:
    """Normalized alternating sum over the set; never zero on stable sets."""
    total = signed_sum(s, config)
    nrm = float(np.linalg.norm(total))
    if nrm < min_norm:
        raise ValueError("alternating sum vanished on %s; "
                         "this contradicts stability" % s)
    return total / nrm


def min_vertex_norm(n: int, k: int) -> float:
    """Exact minimum of the unnormalized sums over all stable n-sets."""
    config = moment_vectors(n, k)
    m = config.m
    verts = enumerate_stable_sets(n, m)
    sums = np.array([signed_sum(s, config) for s in verts])
    return float(np.linalg.norm(sums, axis=1).min())


def max_edge_defect(n: int, k: int) -> float:
    """Max of ||v(S) + v(T)|| over the edges of SG_{n,k}."""
    config = moment_vectors(n, k)
    m = config.m
    verts = enumerate_stable_sets(n, m)
    sums = np.array([signed_sum(s, config) for s in verts])
    norms = np.linalg.norm(sums, axis=1)
    unit = sums / norms[:, None]
    gram = unit @ unit.T
    worst = 0.0
    masks = [s.mask for s in verts]
    for i in range(len(verts)):
        mi = masks[i]
        row = gram[i]
        for j in range(i + 1, len(verts)):
            if mi & masks[j] == 0:
                val = 2.0 + 2.0 * row[j]
                if val > worst:
                    worst = val
    return float(np.sqrt(max(worst, 0.0)))


def borsuk_adjacent(x: np.ndarray, y: np.ndarray, eps: float) -> bool:
    """Borsuk graph edge: within eps of each other's antipode."""
    return float(np.linalg.norm(np.asarray(x) + np.asarray(y))) < eps


def point_to_vertex(x: np.ndarray, l: int, n: int, k: int,
                    config: Optional[MomentConfig] = None,
                    zero_tol: float = 1e-9) -> CircularSet:
    """A stable n-set inside S_l of the point's sign vector.

    Deterministically the lexicographically least one.  Near-antipodal
    points with l = 0 map to disjoint (hence adjacent) vertices.
    """
    if l not in (0, 1):
        raise ValueError("l must be 0 or 1")
    if config is None:
        config = moment_vectors(n, k)
    m = config.m
    s = sign_vector_of_point(x, config, zero_tol)
    want = 1 if l == 0 else -1
    allowed = [j for j in range(m) if s[j] != 0 and
               (s[j] if j % 2 == 0 else -s[j]) == want]
    chosen = _first_stable_subset(allowed, n, m)
    if chosen is None:
        raise ValueError("no stable %d-subset inside S_%d = %s"
                         % (n, l, allowed))
    return CircularSet.from_members(m, chosen)


def _first_stable_subset(allowed: Sequence[int], n: int, m: int) -> Optional[list]:
    allowed = sorted(allowed)

    def rec(chosen: list, start: int) -> Optional[list]:
        if len(chosen) == n:
            return list(chosen)
        for idx in range(start, len(allowed)):
            j = allowed[idx]
            if chosen:
                if j - chosen[-1] < 2:
                    continue
                if (chosen[0] - j) % m < 2:  # wraparound with the first pick
                    continue
            chosen.append(j)
            got = rec(chosen, idx + 1)
            if got is not None:
                return got
            chosen.pop()
        return None

    return rec([], 0)


def vertex_images_csv(n: int, k: int) -> str:
    """The point set {v(S)} as CSV rows: members;coordinates."""
    config = moment_vectors(n, k)
    header = "members," + ",".join("x%d" % i for i in range(k + 1))
    lines = [header]
    for s in enumerate_stable_sets(n, config.m):
        point = v_of_set(s, config)
        lines.append("%s,%s" % ("|".join(str(j) for j in s.members()),
                                ",".join(repr(float(c)) for c in point)))
    return "\n".join(lines) + "\n"


def geometry_row(n: int, k: int) -> dict:
    """One sweep row: norms, defects and equivariance deviations."""
    rep = representation(n, k)
    config = moment_vectors(n, k)
    eq3 = eq3_deviations(config, rep)
    rel = rep.relation_deviations()
    return {
        "n": n,
        "k": k,
        "min_vertex_norm": min_vertex_norm(n, k),
        "max_edge_defect": max_edge_defect(n, k),
        "eq3_sigma_dev": eq3["sigma_shift"],
        "eq3_rho_dev": eq3["rho_flip"],
        "eq3_period_dev": eq3["periodicity"],
        "group_relation_dev": max(rel.values()),
    }
