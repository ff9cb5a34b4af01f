"""Invariant polynomials, transgression and coinvariant quotients."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import ONE, ZERO, Scalar, frac, to_scalar
from .liealg import LieAlgebra, SymmetricPair, act_matrix, k_algebra
from .clifford import cliff_prod, dual_basis, g_space, group_act, restrict_to_space, space_of
from .multivec import Multivector, UsageError, Vec, bits, lie_derivative, mask_of, wedge

Key = Tuple[int, ...]
Poly = Dict[Key, Scalar]


class Target(Enum):
    WEDGE = "wedge"
    CLIFFORD = "clifford"


class QuotientMode(Enum):
    AT_RHO = "at_rho"
    GRADED = "graded"


def _mult_factor(key: Key) -> int:
    out = 1
    for c in Counter(key).values():
        out *= factorial(c)
    return out


def _padd(out: Poly, k: Key, c: Scalar) -> None:
    w = out.get(k)
    if w is None:
        if c:
            out[k] = c
    else:
        w = w + c
        if w:
            out[k] = w
        else:
            del out[k]


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            _padd(out, tuple(sorted(ka + kb)), ca * cb)
    return out


class SymmetricTensor:
    """Degree-d symmetric tensor on g; terms[M] = T(e_{m1}, ..., e_{md}) on sorted multisets."""

    def __init__(self, g: LieAlgebra, degree: int, terms: Optional[Poly] = None):
        self.g = g
        self.degree = degree
        self.terms: Poly = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def from_poly(cls, g: LieAlgebra, degree: int, poly: Poly) -> "SymmetricTensor":
        """From polynomial coefficients in the coordinates x_i of X = sum x_i e_i."""
        f = factorial(degree)
        return cls(g, degree, {k: c * frac(_mult_factor(k), f) for k, c in poly.items()})

    def poly(self) -> Poly:
        f = factorial(self.degree)
        return {k: c * frac(f, _mult_factor(k)) for k, c in self.terms.items()}

    def __mul__(self, other: "SymmetricTensor") -> "SymmetricTensor":
        if isinstance(other, SymmetricTensor):
            return SymmetricTensor.from_poly(self.g, self.degree + other.degree,
                                             poly_mul(self.poly(), other.poly()))
        c = to_scalar(other)
        return SymmetricTensor(self.g, self.degree, {k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __add__(self, other: "SymmetricTensor") -> "SymmetricTensor":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        out = dict(self.terms)
        for k, c in other.terms.items():
            _padd(out, k, c)
        return SymmetricTensor(self.g, self.degree, out)

    def __sub__(self, other):
        return self + other * (-ONE)

    def __eq__(self, other):
        return (isinstance(other, SymmetricTensor) and self.degree == other.degree
                and self.terms == other.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, x: Vec) -> Scalar:
        s = ZERO
        for k, c in self.poly().items():
            v = c
            for i in k:
                xi = x.get(i)
                if xi is None:
                    v = None
                    break
                v = v * xi
            if v is not None:
                s = s + v
        return s

    def derivation(self, x: Vec) -> "SymmetricTensor":
        """Coadjoint derivation: (D_X P)(Y) = d/dt P(Y + t[X, Y])."""
        cols = [self.g.bracket_vec(x, {j: ONE}) for j in range(self.g.dim)]
        out: Poly = {}
        for k, c in self.poly().items():
            # d/dx_i of the monomial times the i-th coordinate of [X, Y]
            for pos in sorted(set(k)):
                mult = k.count(pos)
                rest = list(k)
                rest.remove(pos)
                for j, col in enumerate(cols):
                    v = col.get(pos)
                    if v is not None:
                        _padd(out, tuple(sorted(rest + [j])), c * mult * v)
        return SymmetricTensor.from_poly(self.g, self.degree, out)

    def is_invariant(self) -> bool:
        return all(self.derivation({i: ONE}).is_zero() for i in range(self.g.dim))

    def transform(self, m: List[List[Scalar]]) -> "SymmetricTensor":
        """P o m for a linear map m of g (matrix acting on coordinates)."""
        out: Poly = {(): ONE}
        res: Poly = {}
        rows = [{j: m[i][j] for j in range(len(m)) if m[i][j]} for i in range(len(m))]
        for k, c in self.poly().items():
            acc: Poly = {(): c}
            for i in k:
                acc = poly_mul(acc, {(j,): v for j, v in rows[i].items()})
            for kk, v in acc.items():
                _padd(res, kk, v)
        return SymmetricTensor.from_poly(self.g, self.degree, res)

    def to_dict(self) -> dict:
        return {"degree": self.degree,
                "terms": [[list(k), str(self.terms[k])] for k in sorted(self.terms)]}


# power sums ----------------------------------------------------------------

def _power_sum_poly(g: LieAlgebra, k: int) -> Poly:
    if g.matrices is None:
        raise UsageError("power sums need the defining representation")
    n = g.n
    # X = sum x_i e_i as a matrix with linear polynomial entries
    lin: Dict[Tuple[int, int], Poly] = {}
    for i, m in enumerate(g.matrices):
        for rc, v in m.items():
            lin.setdefault(rc, {})
            _padd(lin[rc], (i,), v)
    acc = lin
    for _ in range(k - 1):
        nxt: Dict[Tuple[int, int], Poly] = {}
        by_row: Dict[int, List] = {}
        for (r, c), p in lin.items():
            by_row.setdefault(r, []).append((c, p))
        for (r, mid), p in acc.items():
            for c, q in by_row.get(mid, ()):
                tgt = nxt.setdefault((r, c), {})
                for kk, v in poly_mul(p, q).items():
                    _padd(tgt, kk, v)
        acc = {rc: p for rc, p in nxt.items() if p}
    out: Poly = {}
    for (r, c), p in acc.items():
        if r == c:
            for kk, v in p.items():
                _padd(out, kk, v)
    return out


def power_sum(g: LieAlgebra, k: int) -> SymmetricTensor:
    """Symmetrized trace (i1..ik) -> tr(e_i1 ... e_ik) in the defining representation."""
    if k < 2:
        raise UsageError("power sums start at degree 2")
    cache = g.__dict__.setdefault("_power_sums", {})
    if k not in cache:
        cache[k] = SymmetricTensor.from_poly(g, k, _power_sum_poly(g, k))
    return cache[k]


def restrict_to_k(pair: SymmetricPair, p: SymmetricTensor) -> SymmetricTensor:
    """Keep multisets supported on k (tensor over g with k-only keys)."""
    ks = set(pair.kIdx)
    return SymmetricTensor(p.g, p.degree, {k: c for k, c in p.terms.items() if all(i in ks for i in k)})


def restrict_to_k_local(pair: SymmetricPair, p: SymmetricTensor) -> SymmetricTensor:
    """Same restriction, re-indexed as a tensor on the Lie algebra k."""
    r = restrict_to_k(pair, p)
    loc = {g: j for j, g in enumerate(pair.kIdx)}
    return SymmetricTensor(k_algebra(pair), p.degree,
                           {tuple(sorted(loc[i] for i in k)): c for k, c in r.terms.items()})


def theta_action(pair: SymmetricPair, p: SymmetricTensor) -> SymmetricTensor:
    return p.transform(pair.theta)


def splitting(pair: SymmetricPair, j: int) -> SymmetricTensor:
    """Lift of the W_k-invariant sum_i y_i^{2j} to g: half the power sum of degree 2j."""
    return power_sum(pair.g, 2 * j) * frac(1, 2)


def k_generator(pair: SymmetricPair, j: int) -> SymmetricTensor:
    """The k-invariant extending sum_i y_i^{2j}: half the trace of Y^{2j} on k."""
    return power_sum(k_algebra(pair), 2 * j) * frac(1, 2)


def t_coordinates_poly(pair: SymmetricPair, p: SymmetricTensor) -> Dict[Tuple[int, ...], Scalar]:
    """Restrict a polynomial to t, in coordinates y_l (coefficient of T_l)."""
    ts = {g: j for j, g in enumerate(pair.tIdx)}
    out: Dict[Tuple[int, ...], Scalar] = {}
    for k, c in p.poly().items():
        if all(i in ts for i in k):
            _padd(out, tuple(sorted(ts[i] for i in k)), c)
    return out


# transgression ----------------------------------------------------------------

def _delta_images(g: LieAlgebra, keep: Optional[set] = None) -> List[Multivector]:
    """delta(e^i) = -1/2 sum_{a,b} c^i_ab e^a ^ e^b, moved to g through B.

    With ``keep`` only basis vectors in that set survive (restriction).
    """
    sp = g_space(g)
    duals = dual_basis(sp)  # e^a corresponds to the vector duals[a]
    dv = [Multivector.vector(sp, duals[a]) for a in range(g.dim)]
    out = []
    half = frac(-1, 2)
    kmask = mask_of(keep) if keep is not None else -1
    for i in range(g.dim):
        acc = Multivector(sp)
        for a in range(g.dim):
            for b in range(g.dim):
                if a == b:
                    continue
                c = g.bracket(a, b).get(i)
                if c is not None:
                    acc = acc + wedge(dv[a], dv[b]).scale(c * half)
        if keep is not None:
            acc = Multivector(sp, {m: c for m, c in acc.terms.items() if not (m & ~kmask)})
        out.append(acc)
    return out


def transgression_constant(m: int) -> Scalar:
    return frac(factorial(m) ** 2, factorial(2 * m + 1))


def transgress(p: SymmetricTensor, target: Target = Target.WEDGE, check: bool = True,
               keep: Optional[Sequence[int]] = None) -> Multivector:
    """Transgression of an invariant p of degree m+1 into the degree 2m+1 part.

    c_m times the sum over tensor entries and slot positions of the product of
    delta-images of all slots but one, times the plain generator in that slot.
    ``keep`` restricts every factor to the listed basis vectors (used for the
    relative version; products of monomials never cancel across supports, so
    restricting factors equals restricting the result).
    """
    g = p.g
    if check and not p.is_invariant():
        raise UsageError("transgression input is not invariant")
    m = p.degree - 1
    sp = g_space(g)
    keepset = set(keep) if keep is not None else None
    kmask = mask_of(keepset) if keepset is not None else -1
    deltas = _delta_cache(g, keepset)
    duals = dual_basis(sp)
    plain = []
    for i in range(g.dim):
        v = Multivector.vector(sp, duals[i])
        if keepset is not None:
            v = Multivector(sp, {mm: c for mm, c in v.terms.items() if not (mm & ~kmask)})
        plain.append(v)
    cm = transgression_constant(m)
    out = Multivector(sp)
    if target is Target.WEDGE:
        memo: Dict[Key, Multivector] = {(): Multivector.scalar(sp)}

        def dprod(key: Key) -> Multivector:
            r = memo.get(key)
            if r is None:
                r = wedge(dprod(key[:-1]), deltas[key[-1]])
                memo[key] = r
            return r

        acc: Dict[int, Scalar] = {}
        for key, t in sorted(p.terms.items()):
            for i0 in sorted(set(key)):
                if not plain[i0]:
                    continue
                rest = list(key)
                rest.remove(i0)
                rest = tuple(rest)
                if any(not deltas[r] for r in rest):
                    continue
                d = dprod(rest)
                if not d:
                    continue
                term = wedge(d, plain[i0]).scale(t * frac(1, _mult_factor(rest)))
                for mm, c in term.terms.items():
                    w = acc.get(mm, ZERO) + c
                    if w:
                        acc[mm] = w
                    else:
                        acc.pop(mm, None)
        out = Multivector(sp, acc).scale(cm * factorial(m + 1))
        return out
    # Clifford target: every ordered arrangement, slot order kept as written
    for key, t in sorted(p.terms.items()):
        for arr in sorted(set(itertools.permutations(key))):
            for j in range(len(arr)):
                factors = [plain[i] if s == j else deltas[i] for s, i in enumerate(arr)]
                if any(not f for f in factors):
                    continue
                out = out + cliff_prod(factors, sp).scale(t)
    return out.scale(cm)


def _delta_cache(g: LieAlgebra, keep: Optional[set]):
    cache = g.__dict__.setdefault("_delta_cache", {})
    key = tuple(sorted(keep)) if keep is not None else None
    if key not in cache:
        cache[key] = _delta_images(g, keep)
    return cache[key]


def restrict_to_p(pair: SymmetricPair, x: Multivector) -> Multivector:
    """Drop monomials with k-indices and re-index onto the p-space."""
    sp = space_of(pair, "p")
    loc = {g: j for j, g in enumerate(pair.pIdx)}
    kmask = mask_of(pair.kIdx)
    out = {}
    for m, c in x.terms.items():
        if m & kmask:
            continue
        out[mask_of(loc[i] for i in bits(m))] = c
    return Multivector(sp, out)


@dataclass
class Primitive:
    degree: int
    source_degree: int
    element: Multivector

    def to_dict(self) -> dict:
        return {"degree": self.degree, "power_sum": self.source_degree,
                "terms": self.element.to_list()}


def relative_transgression(pair: SymmetricPair, p: SymmetricTensor) -> Multivector:
    """-4^m times the restriction to p of the absolute transgression."""
    m = p.degree - 1
    x = transgress(p, Target.WEDGE, check=False, keep=pair.pIdx)
    return restrict_to_p(pair, x).scale(-(4 ** m))


def odd_power_sum_degrees(pair: SymmetricPair) -> List[int]:
    return [2 * j + 1 for j in range(1, len(pair.aIdx) + 1)]


def primitives_p(pair: SymmetricPair) -> List[Primitive]:
    """Primitive invariants of the exterior algebra of p, one per odd power sum."""
    cached = pair._cache.get("primitives")
    if cached is not None:
        return cached
    out = []
    for k in odd_power_sum_degrees(pair):
        ps = power_sum(pair.g, k)
        if not restrict_to_k(pair, ps).is_zero():
            raise AssertionError("odd power sum does not vanish on k")
        x = relative_transgression(pair, ps)
        out.append(Primitive(2 * k - 1, k, x))
    pair._cache["primitives"] = out
    return out


def is_k_invariant(pair: SymmetricPair, x: Multivector, group: bool = True) -> bool:
    for i in pair.kIdx:
        if not lie_derivative({i: ONE}, x).is_zero():
            return False
    if group:
        for m in pair.groupGenerators:
            if group_act(restrict_to_space(pair, m, "p"), x) != x:
                return False
    return True


# coinvariant quotients --------------------------------------------------------

@dataclass
class PolyQuotientReport:
    mode: str
    generators: List[str]
    generator_degrees: List[int]
    relations: List[str]
    dimension: int
    graded_dims: List[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"mode": self.mode, "generators": self.generators,
                "generator_degrees": self.generator_degrees, "relations": self.relations,
                "dimension": self.dimension, "graded_dims": self.graded_dims}


def weyl_k_kind(pair: SymmetricPair) -> str:
    """Type of the Weyl group of k acting on t: 'BC' or 'D'."""
    if pair.family == "AI" and pair.g.n % 2 == 0:
        return "D"
    return "BC"


def rho_t(pair: SymmetricPair) -> List[Scalar]:
    """rho of sl(n) in the t coordinates y_l (diagonal entries of the t part)."""
    n = pair.g.n
    return [frac(n + 1 - 2 * (l + 1), 2) for l in range(len(pair.tIdx))]


def coinvariant_quotient(pair: SymmetricPair, mode: QuotientMode = QuotientMode.AT_RHO,
                         max_vars: int = 3) -> PolyQuotientReport:
    """Quotient of C[t*]^{W_k} by restricted g-invariants (shifted at rho or top parts).

    Generators: z_j = sum_l y_l^{2j}; for even orthogonal k the last one is
    replaced by the Pfaffian y_1 ... y_n.  Restricted invariants are the even
    power sums 2 * sum_l y_l^{2j}, j = 1..n, written in the generators via
    Newton's identities.
    """
    import sympy

    nt = len(pair.tIdx)
    if nt > max_vars:
        raise UsageError("coinvariant quotient is limited to dim t <= %d" % max_vars)
    ys = sympy.symbols("y1:%d" % (nt + 1))
    kind = weyl_k_kind(pair)
    zs = sympy.symbols("z1:%d" % (nt + 1))
    gens_y = [sum(y ** (2 * j) for y in ys) for j in range(1, nt + 1)]
    degrees = [2 * j for j in range(1, nt + 1)]
    names = ["sum y^%d" % (2 * j) for j in range(1, nt + 1)]
    if kind == "D":
        gens_y[-1] = sympy.Mul(*ys)
        degrees[-1] = nt
        names[-1] = "pfaffian"
    # restricted g-invariants: 2 * sum y^{2j}; the middle coordinate (odd n) is zero
    restricted = [2 * sum(y ** (2 * j) for y in ys) for j in range(1, nt + 1)]
    exprs = [_express(r, gens_y, zs, ys, degrees) for r in restricted]
    rho = rho_t(pair)
    subs = {y: sympy.Rational(r.re.numerator, r.re.denominator) for y, r in zip(ys, rho)}
    rels = []
    for r, e in zip(restricted, exprs):
        if mode is QuotientMode.AT_RHO:
            rels.append(sympy.expand(e - r.subs(subs)))
        else:
            rels.append(sympy.expand(e))
    gb = sympy.groebner(rels, *zs, order="grevlex", domain=sympy.QQ) if rels else None
    lead = [sympy.Poly(p, *zs).monoms(order="grevlex")[0] for p in gb.exprs] if gb else []
    std = _standard_monomials(lead, nt)
    if std is None:
        raise UsageError("quotient is not finite dimensional")
    graded: List[int] = []
    if mode is QuotientMode.GRADED:
        for mono in std:
            d = sum(e * w for e, w in zip(mono, degrees))
            while len(graded) <= d:
                graded.append(0)
            graded[d] += 1
    return PolyQuotientReport(mode.value, names, degrees, [str(r) for r in rels], len(std), graded)


def _express(target, gens_y, zs, ys, degrees):
    """Write a symmetric polynomial in y as a polynomial in the generators.

    Solved by undetermined coefficients over weighted monomials in z.
    """
    import sympy

    deg = sympy.Poly(target, *ys).total_degree()
    monos = []
    for exps in itertools.product(*[range(deg // d + 1) for d in degrees]):
        if sum(e * d for e, d in zip(exps, degrees)) == deg:
            monos.append(exps)
    cs = sympy.symbols("c0:%d" % len(monos))
    expr_y = sum(c * sympy.Mul(*[g ** e for g, e in zip(gens_y, exps)]) for c, exps in zip(cs, monos))
    diff = sympy.Poly(sympy.expand(expr_y - target), *ys)
    sol = sympy.solve(diff.coeffs(), cs, dict=True)
    if not sol:
        raise AssertionError("restricted invariant not in the generator ring")
    sol = sol[0]
    return sympy.expand(sum(sol.get(c, 0) * sympy.Mul(*[z ** e for z, e in zip(zs, exps)])
                            for c, exps in zip(cs, monos)))


def _standard_monomials(lead: List[Tuple[int, ...]], nvars: int):
    """Monomials not divisible by any leading monomial; None if infinite."""
    bounds = []
    for v in range(nvars):
        pure = [m[v] for m in lead if m[v] > 0 and all(e == 0 for j, e in enumerate(m) if j != v)]
        if not pure:
            return None
        bounds.append(min(pure))
    out = []
    for exps in itertools.product(*[range(b) for b in bounds]):
        if any(all(e >= l for e, l in zip(exps, m)) for m in lead):
            continue
        out.append(exps)
    return sorted(out, key=lambda e: (sum(e), e))
