"""Principal-nilpotent and transgression-degree filtrations on h and on a."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .exact import ONE, ZERO, to_scalar
from .linalg import EchelonBasis, Vec, nullspace, rank
from .liealg import CatalogError, LieAlgebra, PosSystem, SymmetricPair, build_sl
from .invariants import Target, power_sum, primitives_p, restrict_to_p, transgress
from .hc import build_hc, hc_apply, hc_closed_form

Table = List[Tuple[int, int]]


@dataclass
class PrincipalNilpotent:
    g: LieAlgebra
    e: Vec

    def coadjoint(self, xi: Vec) -> Vec:
        """(ad*_e xi)(y) = -xi([e, y]) on functionals given by their values."""
        out: Vec = {}
        for j in range(self.g.dim):
            v = self.g.bracket_vec(self.e, {j: ONE})
            s = ZERO
            for k, c in v.items():
                x = xi.get(k)
                if x is not None:
                    s += x * c
            if s:
                out[j] = -s
        return out

    def ad(self, x: Vec) -> Vec:
        return self.g.bracket_vec(self.e, x)


def principal_nilpotent(g: LieAlgebra, scale_by=1) -> PrincipalNilpotent:
    """Sum of simple root vectors; sl(n) is self-dual so the dual algebra is g."""
    if not (g.name or "").startswith("sl(") or not g.n:
        raise CatalogError("principal nilpotent only implemented for type A")
    n = g.n
    c = to_scalar(scale_by)
    mat = {(i, i + 1): c for i in range(n - 1)}
    return PrincipalNilpotent(g, g.coordinates(mat))


def nilpotency_degree(pn: PrincipalNilpotent) -> int:
    """Least k with ad_e^k = 0 on g."""
    vecs = [{i: ONE} for i in range(pn.g.dim)]
    k = 0
    while any(vecs):
        vecs = [pn.ad(v) for v in vecs]
        k += 1
    return k


@lru_cache(maxsize=None)
def absolute_pair(n: int) -> SymmetricPair:
    """sl(n) viewed with k = 0, p = g, a = h (the equal-rank specialization)."""
    g = build_sl(n)
    lab = {l: i for i, l in enumerate(g.labels)}
    plus = [lab["E%d,%d" % (i + 1, j + 1)] for i in range(n) for j in range(i + 1, n)]
    minus = [lab["E%d,%d" % (j + 1, i + 1)] for i in range(n) for j in range(i + 1, n)]
    hs = [lab["H%d" % (i + 1)] for i in range(n - 1)]
    theta = [[-ONE if i == j else ZERO for j in range(g.dim)] for i in range(g.dim)]
    return SymmetricPair(id="sl%d" % n, g=g, theta=theta, kIdx=[], pIdx=list(range(g.dim)),
                         tIdx=[], aIdx=hs, groupGenerators=[],
                         posSystems=[PosSystem(plus, hs, minus)], tWeights=[],
                         family="absolute", primary=True, group_name="")


def _is_absolute(pair: SymmetricPair) -> bool:
    return pair.family == "absolute"


def _space_indices(pair: SymmetricPair, space: str) -> List[int]:
    if space == "A":
        return list(pair.aIdx)
    if space == "H":
        return list(pair.tIdx) + list(pair.aIdx)
    raise ValueError("space must be 'H' or 'A'")


def _resolve(pair: SymmetricPair, space: str) -> SymmetricPair:
    # H for a symmetric pair means the Cartan of its g, handled absolutely
    if space == "H" and not _is_absolute(pair):
        return absolute_pair(pair.g.n)
    return pair


def scriptF_subspaces(pair: SymmetricPair, space: str = "A", form_scale=1,
                      e_scale=1) -> List[List[Vec]]:
    """Kernel of (ad*_e)^{m+1} on B-dual functionals, for m = 0 .. max exponent."""
    pair = _resolve(pair, space)
    g = pair.g
    idx = _space_indices(pair, space if not _is_absolute(pair) else "A")
    pn = principal_nilpotent(g, e_scale)
    s = to_scalar(form_scale)
    # functional of x is s * B(x, -); it already vanishes on root spaces of h
    funcs = [{j: s * g.gram[i][j] for j in range(g.dim) if g.gram[i][j]} for i in idx]
    out = []
    for m in range(g.n):
        funcs = [pn.coadjoint(f) for f in funcs]
        cols = sorted({k for f in funcs for k in f})
        # kernel of x -> sum_i x_i funcs[i]
        rows = [{i: f.get(k, ZERO) for i, f in enumerate(funcs) if f.get(k)} for k in cols]
        out.append(nullspace(rows, list(range(len(idx)))))
    return out


def filtration_scriptF(pair: SymmetricPair, space: str = "A", form_scale=1, e_scale=1) -> Table:
    return [(m, len(b)) for m, b in enumerate(scriptF_subspaces(pair, space, form_scale, e_scale))]


def hc_primitive_images(pair: SymmetricPair, space: str = "A", w: int = 0) -> List[Tuple[int, Vec]]:
    """(exterior degree, HC_w image as an a-vector) for each primitive."""
    pair = _resolve(pair, space)
    out = []
    if _is_absolute(pair):
        g = pair.g
        for k in range(2, g.n + 1):
            x = restrict_to_p(pair, transgress(power_sum(g, k), Target.WEDGE, check=False))
            y = hc_closed_form(pair, x, w)
            out.append((2 * k - 1, y))
    else:
        hc = build_hc(pair, w)
        for p in primitives_p(pair):
            out.append((p.degree, hc_apply(hc, p.element)))
    vecs = []
    for d, y in out:
        if y.degrees() != [1]:
            raise AssertionError("HC image of a primitive is not linear")
        vecs.append((d, {m.bit_length() - 1: c for m, c in y.terms.items()}))
    return vecs


def F_subspaces(pair: SymmetricPair, space: str = "A", w: int = 0) -> List[List[Vec]]:
    imgs = hc_primitive_images(pair, space, w)
    n = _resolve(pair, space).g.n
    return [[v for d, v in imgs if d <= 2 * m + 1] for m in range(n)]


def filtration_F(pair: SymmetricPair, space: str = "A", w: int = 0) -> Table:
    return [(m, rank(vs)) for m, vs in enumerate(F_subspaces(pair, space, w))]


def jumps(table: Table) -> List[int]:
    out, prev = [], 0
    for m, d in table:
        out += [m] * (d - prev)
        prev = d
    return out


def same_span(a: Sequence[Vec], b: Sequence[Vec]) -> bool:
    ea, eb = EchelonBasis(track=False), EchelonBasis(track=False)
    for v in a:
        ea.add(v)
    for v in b:
        eb.add(v)
    return len(ea) == len(eb) and all(ea.contains(v) for v in b)


@dataclass
class FiltrationReport:
    pair: str
    space: str
    jumps_scriptF: Table
    jumps_F: Table
    equal: bool
    subspaces_equal: bool = False

    @property
    def jumps(self) -> List[int]:
        return jumps(self.jumps_F)

    def to_dict(self) -> dict:
        return {"pair": self.pair, "space": self.space,
                "jumps_scriptF": [list(t) for t in self.jumps_scriptF],
                "jumps_F": [list(t) for t in self.jumps_F],
                "jumps": self.jumps, "equal": self.equal,
                "subspaces_equal": self.subspaces_equal}


def verify_kostant(pair: SymmetricPair, space: Optional[str] = None) -> FiltrationReport:
    if space is None:
        space = "H" if _is_absolute(pair) else "A"
    sF = scriptF_subspaces(pair, space)
    F = F_subspaces(pair, space)
    t1 = [(m, len(b)) for m, b in enumerate(sF)]
    t2 = [(m, rank(vs)) for m, vs in enumerate(F)]
    subs = all(same_span(a, b) for a, b in zip(sF, F))
    rid = _resolve(pair, space).id
    return FiltrationReport(rid, space, t1, t2, t1 == t2, subs)
