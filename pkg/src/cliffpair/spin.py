"""Invariant subalgebras of Cl(p) and the projection algebra Pr(S).

Invariants are found by weight-space reduction: only monomials of total
t-weight zero can occur in a k-invariant, and among those the invariants are
exactly the vectors killed by the raising operators of k.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import ONE, ZERO, Scalar, frac
from .liealg import SymmetricPair, k_algebra
from .linalg import EchelonBasis, nullspace
from .clifford import (alpha, cliff_mul, cliff_prod, dual_basis, group_act, restrict_to_space,
                       space_of)
from .multivec import Multivector, UsageError, Vec, apply_linear, bits
from .invariants import Poly, SymmetricTensor, _padd, poly_mul

DESK_BOUND_P = 20


class Flavor(Enum):
    CL_K_LIE = "cl_k_lie"
    CL_K_GROUP = "cl_k_group"
    WEDGE_GRADED = "wedge_graded"


@dataclass
class InvariantBasis:
    pair_id: str
    flavor: Flavor
    elements: List[Multivector]
    gradedDims: List[int] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.elements)

    def to_dict(self) -> dict:
        return {"pair": self.pair_id, "flavor": self.flavor.value, "dim": self.dim,
                "graded_dims": self.gradedDims,
                "elements": [e.to_list() for e in self.elements]}


@dataclass
class ProjectionAlgebra:
    idempotents: List[Multivector]
    labels: List[str]
    eigenvalues: List[List[str]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"labels": self.labels, "eigenvalues": self.eigenvalues,
                "idempotents": [e.to_list() for e in self.idempotents]}


def _p_weights(pair: SymmetricPair) -> List[Tuple[Fraction, ...]]:
    return [tuple(x.to_fraction() for x in pair.tWeights[i]) for i in pair.pIdx]


def zero_weight_monomials(pair: SymmetricPair) -> List[int]:
    """All p-monomials with t-weight zero (meet in the middle over two halves)."""
    ws = _p_weights(pair)
    n = len(ws)
    h = n // 2
    nt = len(pair.tIdx)

    def table(lo: int, hi: int) -> Dict[tuple, List[int]]:
        out: Dict[tuple, List[int]] = {}
        idx = list(range(lo, hi))
        for r in range(len(idx) + 1):
            for combo in itertools.combinations(idx, r):
                w = tuple(sum((ws[i][l] for i in combo), Fraction(0)) for l in range(nt))
                m = 0
                for i in combo:
                    m |= 1 << i
                out.setdefault(w, []).append(m)
        return out

    low, high = table(0, h), table(h, n)
    res = []
    for w, ms in low.items():
        neg = tuple(-x for x in w)
        for m2 in high.get(neg, ()):
            res.extend(m | m2 for m in ms)
    return sorted(res, key=lambda m: (m.bit_count(), m))


def raising_operators(pair: SymmetricPair) -> List[int]:
    """k root vectors with lexicographically positive t-weight."""
    out = []
    for i in pair.kIdx:
        w = pair.tWeights[i]
        nz = next((x for x in w if x), None)
        if nz is not None and nz.re > 0:
            out.append(i)
    return out


def _check_bound(pair: SymmetricPair, bound: Optional[int]) -> None:
    b = DESK_BOUND_P if bound is None else bound
    if len(pair.pIdx) > b:
        raise UsageError("dim p = %d exceeds the desk bound %d" % (len(pair.pIdx), b))


def _lie_invariants(pair: SymmetricPair) -> List[Multivector]:
    cache = pair._cache.get("lie_invariants")
    if cache is not None:
        return cache
    sp = space_of(pair, "p")
    monos = zero_weight_monomials(pair)
    by_deg: Dict[int, List[int]] = {}
    for m in monos:
        by_deg.setdefault(m.bit_count(), []).append(m)
    ops = [sp.adjoint({i: ONE}) for i in raising_operators(pair)]
    out = []
    for d in sorted(by_deg):
        cols = by_deg[d]
        rows: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
        for oi, op in enumerate(ops):
            for m in cols:
                img = apply_linear(op, Multivector(sp, {m: ONE}), derivation=True)
                for r, c in img.terms.items():
                    rows.setdefault((oi, r), {})[m] = c
        for v in nullspace(rows.values(), cols):
            out.append(Multivector(sp, v))
    pair._cache["lie_invariants"] = out
    return out


def _group_fixed(pair: SymmetricPair, basis: List[Multivector]) -> List[Multivector]:
    if not pair.groupGenerators or not basis:
        return list(basis)
    sp = basis[0].space
    rows: Dict[int, Dict[int, Scalar]] = {}
    for gm in pair.groupGenerators:
        m = restrict_to_space(pair, gm, "p")
        for j, b in enumerate(basis):
            diff = group_act(m, b) - b
            for mono, c in diff.terms.items():
                rows.setdefault((id(gm), mono), {})[j] = c
    sols = nullspace(rows.values(), list(range(len(basis))))
    out = []
    for s in sols:
        acc = Multivector(sp)
        for j, c in sorted(s.items()):
            acc = acc + basis[j].scale(c)
        out.append(acc)
    return out


def invariants_cl(pair: SymmetricPair, flavor: Flavor = Flavor.CL_K_LIE,
                  bound: Optional[int] = None) -> InvariantBasis:
    """Basis of Cl(p)^k (or Cl(p)^K); symbols of invariants are invariant symbols."""
    _check_bound(pair, bound)
    base = _lie_invariants(pair)
    if flavor is Flavor.CL_K_GROUP:
        key = "group_invariants"
        if key not in pair._cache:
            pair._cache[key] = _group_fixed(pair, base)
        els = pair._cache[key]
    else:
        els = base
    basis = InvariantBasis(pair.id, flavor, list(els))
    basis.gradedDims = _graded(els)
    return basis


def _graded(els: Sequence[Multivector]) -> List[int]:
    dims: List[int] = []
    for e in els:
        d = e.max_degree()
        while len(dims) <= d:
            dims.append(0)
        dims[d] += 1
    return dims


def invariants_wedge_graded(pair: SymmetricPair, group: bool = False,
                            bound: Optional[int] = None) -> InvariantBasis:
    """Graded dimensions of the invariants of the exterior algebra of p."""
    b = invariants_cl(pair, Flavor.CL_K_GROUP if group else Flavor.CL_K_LIE, bound)
    return InvariantBasis(pair.id, Flavor.WEDGE_GRADED, b.elements, _graded(b.elements))


def symbol_filtration_dims(elements: Sequence[Multivector]) -> List[int]:
    """dim F_j / F_{j-1} for the span of the elements under max-degree filtration."""
    dims: List[int] = []
    vecs = [dict(e.terms) for e in elements]
    top = max((e.max_degree() for e in elements), default=0)
    prev = 0
    for j in range(top + 1):
        # F_j = span intersected with degree <= j: the rank of the top parts
        eb = EchelonBasis(track=False)
        # high-degree monomials first so pivots expose the filtration degree
        keyed = [{(-(m.bit_count()), m): c for m, c in v.items()} for v in vecs]
        for v in keyed:
            eb.add(v)
        cnt = sum(1 for p in eb.rows if -p[0] <= j)
        dims.append(cnt - prev)
        prev = cnt
    return dims


# projection algebra -----------------------------------------------------------

def casimir_image(pair: SymmetricPair) -> Multivector:
    """alpha of the quadratic Casimir of k (dual bases for the trace form on k)."""
    if "casimir" in pair._cache:
        return pair._cache["casimir"]
    kalg = k_algebra(pair)
    from .linalg import inverse
    ginv = inverse(kalg.gram)
    sp = space_of(pair, "p")
    al = [alpha(pair, {i: ONE}) for i in pair.kIdx]
    out = Multivector(sp)
    for a in range(len(al)):
        dual = Multivector(sp)
        for b in range(len(al)):
            if ginv[a][b]:
                dual = dual + al[b].scale(ginv[a][b])
        out = out + cliff_mul(al[a], dual)
    pair._cache["casimir"] = out
    return out


def _pfaffian_poly(pair: SymmetricPair) -> Poly:
    """Pf(J0 X) for X in k = so(2n), as a polynomial in the k coordinates."""
    kalg = k_algebra(pair)
    n = kalg.n
    lin: Dict[Tuple[int, int], Poly] = {}
    for i, m in enumerate(kalg.matrices):
        for (r, c), v in m.items():
            # (J0 X)[r', c] = X[n-1-r', c]
            lin.setdefault((n - 1 - r, c), {})
            _padd(lin[(n - 1 - r, c)], (i,), v)

    def pf(idx: Tuple[int, ...]) -> Poly:
        if not idx:
            return {(): ONE}
        first, rest = idx[0], idx[1:]
        out: Poly = {}
        for j, other in enumerate(rest):
            entry = lin.get((first, other))
            if not entry:
                continue
            sub = pf(rest[:j] + rest[j + 1:])
            sgn = ONE if j % 2 == 0 else -ONE
            for k, v in poly_mul(entry, sub).items():
                _padd(out, k, sgn * v)
        return out

    return pf(tuple(range(n)))


def central_image(pair: SymmetricPair, poly: Poly, degree: int) -> Multivector:
    """alpha of the symmetrization of a k-invariant polynomial (k* = k via B)."""
    kalg = k_algebra(pair)
    t = SymmetricTensor.from_poly(kalg, degree, poly)
    from .linalg import inverse
    ginv = inverse(kalg.gram)
    sp = space_of(pair, "p")
    al = [alpha(pair, {i: ONE}) for i in pair.kIdx]
    dual = []
    for a in range(len(al)):
        acc = Multivector(sp)
        for b in range(len(al)):
            if ginv[a][b]:
                acc = acc + al[b].scale(ginv[a][b])
        dual.append(acc)
    out = Multivector(sp)
    for key, c in sorted(t.terms.items()):
        for arr in sorted(set(itertools.permutations(key))):
            out = out + cliff_prod([dual[i] for i in arr], sp).scale(c)
    return out


def central_generators(pair: SymmetricPair) -> List[Tuple[str, Multivector]]:
    gens = [("casimir", casimir_image(pair))]
    if pair.family == "AI" and pair.g.n % 2 == 0:
        if "pfaffian_image" not in pair._cache:
            pair._cache["pfaffian_image"] = central_image(pair, _pfaffian_poly(pair), pair.g.n // 2)
        gens.append(("pfaffian", pair._cache["pfaffian_image"]))
    return gens


def minimal_polynomial(c: Multivector, unit: Multivector, max_deg: int = 16) -> List[Scalar]:
    """Monic minimal polynomial of c inside unit*A*unit (coefficients low to high)."""
    eb = EchelonBasis(track=True)
    powers = [unit]
    eb.add(dict(unit.terms))
    cur = unit
    for d in range(1, max_deg + 1):
        cur = cliff_mul(cur, c)
        coords = eb.coordinates(dict(cur.terms))
        if coords is not None:
            return [-coords.get(j, ZERO) for j in range(d)] + [ONE]
        eb.add(dict(cur.terms))
        powers.append(cur)
    raise AssertionError("minimal polynomial degree exceeds %d" % max_deg)


def _rational_roots(coeffs: List[Scalar]) -> List[Scalar]:
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(int(c.re.numerator), int(c.re.denominator)) * x ** k
               for k, c in enumerate(coeffs))
    if any(not c.is_real() for c in coeffs):
        raise AssertionError("complex minimal polynomial")
    _, facs = sympy.factor_list(expr, x)
    roots = []
    for f, e in facs:
        if e != 1:
            raise AssertionError("minimal polynomial is not semisimple")
        p = sympy.Poly(f, x)
        if p.degree() != 1:
            raise AssertionError("eigenvalues are not rational: %s" % f)
        a, b = p.all_coeffs()
        r = sympy.Rational(-b, a)
        roots.append(frac(int(r.p), int(r.q)))
    return sorted(roots, key=lambda r: r.to_fraction())


def isotypic_idempotents(pair: SymmetricPair) -> ProjectionAlgebra:
    """Spectral idempotents of the alpha-images of central elements of U(k)."""
    if "projections" in pair._cache:
        return pair._cache["projections"]
    sp = space_of(pair, "p")
    one = Multivector.scalar(sp)
    parts: List[Tuple[Multivector, List[str]]] = [(one, [])]
    for name, c in central_generators(pair):
        nxt = []
        for e, lab in parts:
            ce = cliff_mul(c, e)
            mp = minimal_polynomial(ce, e)
            roots = _rational_roots(mp)
            for r in roots:
                proj = e
                for s in roots:
                    if s == r:
                        continue
                    proj = cliff_mul(proj, ce - e.scale(s)).scale((r - s).inverse())
                nxt.append((proj, lab + ["%s=%s" % (name, r)]))
        parts = nxt
    idem = [p for p, _ in parts]
    labels = ["pr%d" % (i + 1) for i in range(len(idem))]
    out = ProjectionAlgebra(idem, labels, [lab for _, lab in parts])
    pair._cache["projections"] = out
    return out


def check_projection_algebra(pa: ProjectionAlgebra) -> bool:
    if not pa.idempotents:
        return False
    sp = pa.idempotents[0].space
    total = Multivector(sp)
    for i, e in enumerate(pa.idempotents):
        if cliff_mul(e, e) != e:
            return False
        for j, f in enumerate(pa.idempotents):
            if i != j and not cliff_mul(e, f).is_zero():
                return False
        total = total + e
    return total == Multivector.scalar(sp)


# image of U(k) under alpha ------------------------------------------------------

def alpha_image_basis(pair: SymmetricPair, max_len: Optional[int] = None) -> List[Multivector]:
    """Spanning products alpha(X_1)...alpha(X_j), j <= max_len, grown until stable."""
    key = ("alpha_image", max_len)
    if key in pair._cache:
        return pair._cache[key]
    sp = space_of(pair, "p")
    L = len(pair.pIdx) if max_len is None else max_len
    gens = [alpha(pair, {i: ONE}) for i in pair.kIdx]
    one = Multivector.scalar(sp)
    eb = EchelonBasis(track=False)
    eb.add(dict(one.terms))
    basis, frontier = [one], [one]
    for _ in range(L):
        new = []
        for x in gens:
            for v in frontier:
                y = cliff_mul(x, v)
                if eb.add(dict(y.terms)):
                    new.append(y)
        if not new:
            break
        basis += new
        frontier = new
    pair._cache[key] = basis
    return basis


def in_alpha_image(pair: SymmetricPair, y: Multivector, method: str = "span") -> bool:
    """Membership of y in alpha(U(k)).

    ``span``: exact solve against the span of alpha-words of length <= dim p.
    ``commutant``: alpha(U(k)) is semisimple with commutant Cl(p)^k, so an even
    y lies in it iff it commutes with the invariants (inside the even part when
    dim p is odd, where that part is the simple algebra).
    """
    if method == "span":
        eb = EchelonBasis(track=False)
        for b in alpha_image_basis(pair):
            eb.add(dict(b.terms))
        return eb.contains(dict(y.terms))
    if method != "commutant":
        raise UsageError("unknown method %r" % method)
    if any(m.bit_count() % 2 for m in y.terms):
        return False
    inv = invariants_cl(pair, Flavor.CL_K_LIE).elements
    if len(pair.pIdx) % 2:
        inv = [c for c in inv if c.max_degree() % 2 == 0]
    return all(cliff_mul(y, c) == cliff_mul(c, y) for c in inv)
