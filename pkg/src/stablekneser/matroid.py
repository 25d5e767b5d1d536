"""The alternating oriented matroid on m points of the moment curve.

Sign vectors over {-1, 0, +1}; a covector is a sign pattern attained by a
real polynomial of degree <= k at m increasing points.  The membership test
is a closed-form minimal-degree count, validated elsewhere against an
exhaustive polynomial oracle and against the geometric realization.
"""

from __future__ import annotations

import itertools
from math import comb
from typing import Iterable, Optional, Sequence

from .graphs import DihedralElement

SignVector = tuple[int, ...]

_CHARS = {-1: "-", 0: "0", 1: "+"}
_VALS = {"-": -1, "0": 0, "+": 1}


def sign_vector(entries: Iterable[int]) -> SignVector:
    s = tuple(int(v) for v in entries)
    if any(v not in (-1, 0, 1) for v in s):
        raise ValueError("entries must be -1, 0 or +1")
    return s


def parse_sign_vector(text: str) -> SignVector:
    return tuple(_VALS[c] for c in text.strip())


def render_sign_vector(s: SignVector) -> str:
    return "".join(_CHARS[v] for v in s)


def negate(s: SignVector) -> SignVector:
    return tuple(-v for v in s)


def minimal_degree(s: SignVector) -> int:
    """Least degree of a real polynomial matching s at m increasing points.

    Each zero entry forces a root.  Between consecutive nonzero entries the
    forced roots flip the sign once each; when the flip parity disagrees
    with the required one, a single extra root is needed.
    """
    nz = [i for i, v in enumerate(s) if v != 0]
    if not nz:
        raise ValueError("zero sign vector")
    deg = len(s) - len(nz)
    for a, b in zip(nz, nz[1:]):
        zeros_between = b - a - 1
        differ = s[a] != s[b]
        if (differ and zeros_between % 2 == 0) or (not differ and zeros_between % 2 == 1):
            deg += 1
    return deg


def is_covector(s: SignVector, k: int) -> bool:
    if all(v == 0 for v in s):
        return False
    return minimal_degree(s) <= k


def is_cocircuit(s: SignVector, k: int) -> bool:
    return sum(1 for v in s if v == 0) == k and is_covector(s, k)


def enumerate_covectors(m: int, k: int) -> list[SignVector]:
    """All covectors of C^{m,k+1}, lexicographic in the order (-1, 0, +1).

    Depth-first over entries with degree pruning; the accumulated degree
    only grows along a prefix, so branches above k are cut early.
    """
    if m <= k:
        raise ValueError("need m > k")
    out: list[SignVector] = []
    prefix = [0] * m

    def rec(i: int, last_sign: int, zeros_since: int, deg: int, nonzero: bool) -> None:
        if deg > k:
            return
        if i == m:
            if nonzero:
                out.append(tuple(prefix))
            return
        for v in (-1, 0, 1):
            prefix[i] = v
            if v == 0:
                rec(i + 1, last_sign, zeros_since + 1, deg + 1, nonzero)
            else:
                d = deg
                if last_sign != 0:
                    differ = v != last_sign
                    if (differ and zeros_since % 2 == 0) or (not differ and zeros_since % 2 == 1):
                        d += 1
                rec(i + 1, v, 0, d, True)
        prefix[i] = 0

    rec(0, 0, 0, 0, False)
    return out


def enumerate_cocircuits(m: int, k: int) -> list[SignVector]:
    """Covectors with exactly k zeros; 2*C(m,k) of them.

    Built directly: pick the zero set, then the nonzero signs are forced up
    to a global flip by the sign-change-at-every-zero condition.
    """
    if m <= k:
        raise ValueError("need m > k")
    out = []
    for zeros in itertools.combinations(range(m), k):
        zs = set(zeros)
        nz = [i for i in range(m) if i not in zs]
        for eps in (-1, 1):
            s = [0] * m
            sign = eps
            prev = None
            for i in nz:
                if prev is not None:
                    gap = i - prev - 1
                    if gap % 2 == 1:
                        sign = -sign
                s[i] = sign
                prev = i
            out.append(tuple(s))
    out.sort()
    return out


def cocircuit_count(m: int, k: int) -> int:
    return 2 * comb(m, k)


def is_vector(s: SignVector, k: int) -> bool:
    """Vector of C^{m,k+1}: an alternating nonzero subsequence of length k+2.

    The longest alternating subsequence picks one entry per maximal block
    of equal consecutive signs, so it has the length of the block count.
    """
    if all(v == 0 for v in s):
        raise ValueError("zero sign vector")
    nz = [v for v in s if v != 0]
    blocks = 1 + sum(1 for a, b in zip(nz, nz[1:]) if a != b)
    return blocks >= k + 2


def covector_leq(s: SignVector, t: SignVector) -> bool:
    """Coordinatewise order: s_i = 0 or s_i = t_i."""
    if len(s) != len(t):
        raise ValueError("length mismatch")
    return all(a == 0 or a == b for a, b in zip(s, t))


def _extended_entry(s: SignVector, j: int) -> int:
    """s extended to Z by s_{j+m} = (-1)^m s_j."""
    m = len(s)
    q, r = divmod(j, m)
    val = s[r]
    if m % 2 == 1 and q % 2 != 0:
        val = -val
    return val


def _act_sigma(s: SignVector) -> SignVector:
    m = len(s)
    return tuple(-_extended_entry(s, j - 1) for j in range(m))


def _act_rho(s: SignVector) -> SignVector:
    m = len(s)
    return tuple(_extended_entry(s, -j) for j in range(m))


def dihedral_act_sign(s: SignVector, g: DihedralElement,
                      k: Optional[int] = None) -> SignVector:
    """Right dihedral action on sign vectors.

    Extend s to Z with the sign twist s_{j+m} = (-1)^m s_j, then
    (s.sigma)_j = -s_{j-1} and (s.rho)_j = s_{-j}.  Commutes with taking
    sign vectors of points under the moment-curve action and with the
    covector-to-Hom map.  When k is given the input must be a covector.
    """
    if len(s) != g.m:
        raise ValueError("length %d does not match modulus %d" % (len(s), g.m))
    if k is not None and not is_covector(s, k):
        raise ValueError("not a covector: %s" % render_sign_vector(s))
    out = s
    for _ in range(g.shift % g.m):
        out = _act_sigma(out)
    if g.flip:
        out = _act_rho(out)
    return out


FREE = None  # free slot marker in partial sign vectors


def covector_extension_feasible(partial: Sequence[Optional[int]], k: int) -> bool:
    """Can the free slots be filled so the result is a covector of C^{m,k+1}?

    Dynamic programme over positions; state is (sign of last nonzero entry,
    parity of zeros since it), value the least accumulated degree.  An
    all-free pattern is feasible for every k >= 0 (constant signs).
    """
    m = len(partial)
    if m <= k:
        raise ValueError("need m > k")
    # state: (last_sign, zero_parity, any_nonzero) -> min degree
    states = {(0, 0, False): 0}

    def step(st, val):
        (last, par, nonzero), deg = st, states[st]
        if val == 0:
            return (last, par ^ 1, nonzero), deg + 1
        d = deg
        if last != 0:
            differ = val != last
            if (differ and par == 0) or (not differ and par == 1):
                d += 1
        return (val, 0, True), d

    for entry in partial:
        choices = (-1, 0, 1) if entry is FREE else (entry,)
        nxt: dict = {}
        for st in states:
            for val in choices:
                key, deg = step(st, val)
                if deg <= k and (key not in nxt or deg < nxt[key]):
                    nxt[key] = deg
        states = nxt
        if not states:
            return False
    return any(nonzero for (_, _, nonzero) in states)


def covectors_to_json_dict(m: int, k: int,
                           covectors: Sequence[SignVector]) -> dict:
    return {
        "m": m,
        "k": k,
        "count": len(covectors),
        "covectors": [render_sign_vector(s) for s in covectors],
    }
