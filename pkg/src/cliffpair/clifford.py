"""Clifford products on symbols, the moment map and the Cartan 3-tensor.

Clifford elements are stored as their symbols (plain Multivectors), so the
quantization map is the identity on data.  Products are evaluated in a
rationally orthogonalized basis, where a product of monomials is a single
signed monomial; results are converted back to the original basis.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence

from .exact import ONE, ZERO, Scalar, frac, to_scalar
from .liealg import LieAlgebra, SymmetricPair, act_matrix
from .linalg import inverse
from .multivec import (Multivector, QuadraticSpace, SpaceMismatch, Terms, UsageError, Vec,
                       _add_into, _contract_terms, apply_linear, bits, wedge, wedge_sign)


def _orthogonalize(gram: List[List[Scalar]]):
    """Rational basis in which the form is diagonal.

    Returns (P, d): row i of P is the i-th new vector in old coordinates and
    d[i] its square.  Isotropic pairs e, f are replaced by e+f and its
    orthogonal complement, which keeps the change of basis sparse.
    """
    n = len(gram)

    def form(u, v):
        s = ZERO
        for i, a in u.items():
            row = gram[i]
            for j, b in v.items():
                if row[j]:
                    s = s + a * row[j] * b
        return s

    pending = [{i: ONE} for i in range(n)]
    out, diag = [], []
    while pending:
        pick = next((k for k, v in enumerate(pending) if form(v, v)), None)
        if pick is None:
            # every remaining vector is isotropic: combine the first with a partner
            v0 = pending[0]
            j = next((k for k in range(1, len(pending)) if form(v0, pending[k])), None)
            if j is None:
                raise ValueError("degenerate form")
            u = dict(v0)
            for k, c in pending[j].items():
                u[k] = u.get(k, ZERO) + c
                if not u[k]:
                    del u[k]
            pending[0] = u
            pick = 0
        u = pending.pop(pick)
        nu = form(u, u)
        rest = []
        for v in pending:
            c = form(u, v)
            if c:
                f = c / nu
                w = dict(v)
                for k, x in u.items():
                    y = w.get(k, ZERO) - f * x
                    if y:
                        w[k] = y
                    else:
                        w.pop(k, None)
                v = w
            rest.append(v)
        pending = rest
        out.append(u)
        diag.append(nu)
    return out, diag


class CliffordContext:
    """Fast product machinery for one quadratic space."""

    def __init__(self, space: QuadraticSpace):
        self.space = space
        n = space.dim
        rows, self.diag = _orthogonalize(space.gram)
        # old -> new: old e_j = sum_i Q[j][i] u_i with Q = P^{-1}
        P = [[r.get(j, ZERO) for j in range(n)] for r in rows]
        Q = inverse(P) if n else []
        # column j of the old->new map is the image of old e_j in new coordinates
        self._to_cols = [{i: Q[j][i] for i in range(n) if Q[j][i]} for j in range(n)]
        self._from_cols = [dict(r) for r in rows]
        self._new_space = QuadraticSpace([[self.diag[i] if i == j else ZERO for j in range(n)]
                                          for i in range(n)], name="orth")
        self._to_cache: Dict[int, Terms] = {0: {0: ONE}}
        self._from_cache: Dict[int, Terms] = {0: {0: ONE}}
        self._diag_prod: Dict[int, Scalar] = {0: ONE}

    def _convert(self, terms: Terms, cols, cache) -> Terms:
        def image(m: int) -> Terms:
            t = cache.get(m)
            if t is not None:
                return t
            low = m & -m
            i = low.bit_length() - 1
            rest = image(m ^ low)
            res: Terms = {}
            for j, g in cols[i].items():
                bit = 1 << j
                for r, x in rest.items():
                    if r & bit:
                        continue
                    y = g * x
                    if wedge_sign(bit, r) < 0:
                        y = -y
                    _add_into(res, r | bit, y)
            cache[m] = res
            return res

        out: Terms = {}
        for m, c in terms.items():
            for r, x in image(m).items():
                _add_into(out, r, c * x)
        return out

    def to_orth(self, terms: Terms) -> Terms:
        return self._convert(terms, self._to_cols, self._to_cache)

    def from_orth(self, terms: Terms) -> Terms:
        return self._convert(terms, self._from_cols, self._from_cache)

    def _dprod(self, m: int) -> Scalar:
        v = self._diag_prod.get(m)
        if v is None:
            v = ONE
            for i in bits(m):
                v = v * self.diag[i]
            self._diag_prod[m] = v
        return v

    def mul_orth(self, a: Terms, b: Terms) -> Terms:
        out: Terms = {}
        bt = list(b.items())
        dprod = self._dprod
        for ma, ca in a.items():
            for mb, cb in bt:
                n = 0
                x = ma >> 1
                while x:
                    n += (x & mb).bit_count()
                    x >>= 1
                c = ca * cb
                common = ma & mb
                if common:
                    c = c * dprod(common)
                if n & 1:
                    c = -c
                m = ma ^ mb
                w = out.get(m)
                if w is None:
                    out[m] = c
                else:
                    w = w + c
                    if w:
                        out[m] = w
                    else:
                        del out[m]
        return out


RECURSIVE_CUTOFF = 2048


def context(space: QuadraticSpace) -> CliffordContext:
    ctx = getattr(space, "_cliff_ctx", None)
    if ctx is None:
        ctx = CliffordContext(space)
        space._cliff_ctx = ctx
    return ctx


def cliff_mul(a: Multivector, b: Multivector) -> Multivector:
    """Symbol of q(a) q(b)."""
    if a.space is not b.space:
        raise SpaceMismatch("multivectors live in different spaces")
    # sparse low-degree factors: the change of basis would dominate
    if sum(1 << m.bit_count() for m in a.terms) * len(b.terms) <= RECURSIVE_CUTOFF:
        return cliff_mul_recursive(a, b)
    return cliff_mul_orth(a, b)


def cliff_mul_orth(a: Multivector, b: Multivector) -> Multivector:
    """Product through the orthogonalized basis."""
    if a.space is not b.space:
        raise SpaceMismatch("multivectors live in different spaces")
    ctx = context(a.space)
    r = ctx.mul_orth(ctx.to_orth(a.terms), ctx.to_orth(b.terms))
    return Multivector(a.space, ctx.from_orth(r))


def cliff_prod(items: Sequence[Multivector], space: Optional[QuadraticSpace] = None) -> Multivector:
    """Ordered Clifford product of several elements (converted once)."""
    if not items:
        return Multivector.scalar(space)
    sp = items[0].space
    ctx = context(sp)
    acc = ctx.to_orth(items[0].terms)
    for x in items[1:]:
        if x.space is not sp:
            raise SpaceMismatch("multivectors live in different spaces")
        acc = ctx.mul_orth(acc, ctx.to_orth(x.terms))
        if not acc:
            break
    return Multivector(sp, ctx.from_orth(acc))


def cliff_mul_recursive(a: Multivector, b: Multivector) -> Multivector:
    """Reference product: peel the least generator e_i off each monomial of a,

    mul(e_i ^ m, b) = (e_i ^ . + i_{e_i})(mul(m, b)) - mul(i_{e_i} m, b).
    """
    if a.space is not b.space:
        raise SpaceMismatch("multivectors live in different spaces")
    sp = a.space
    memo: Dict[int, Terms] = {}

    def left_vec(i: int, terms: Terms) -> Terms:
        bit = 1 << i
        below = bit - 1
        # e_i ^ m never collides across different m, so no accumulation needed
        out: Terms = {m | bit: (-c if (m & below).bit_count() & 1 else c)
                      for m, c in terms.items() if not m & bit}
        for m, c in _contract_terms(sp._rows[i], terms).items():
            _add_into(out, m, c)
        return out

    def mono(m: int) -> Terms:
        r = memo.get(m)
        if r is not None:
            return r
        if m == 0:
            r = dict(b.terms)
        else:
            low = m & -m
            i = low.bit_length() - 1
            rest = m ^ low
            r = left_vec(i, mono(rest))
            for mm, c in _contract_terms(sp._rows[i], {rest: ONE}).items():
                for k, v in mono(mm).items():
                    _add_into(r, k, -c * v)
        memo[m] = r
        return r

    out: Terms = {}
    for m, c in a.terms.items():
        for k, v in mono(m).items():
            v = c * v
            w = out.get(k)
            if w is None:
                out[k] = v
            elif w + v:
                out[k] = w + v
            else:
                del out[k]
    return Multivector(sp, out)


def commutator(a: Multivector, b: Multivector) -> Multivector:
    return cliff_mul(a, b) - cliff_mul(b, a)


def anticommutator(a: Multivector, b: Multivector) -> Multivector:
    return cliff_mul(a, b) + cliff_mul(b, a)


def graded_commutator(a: Multivector, b: Multivector) -> Multivector:
    """[a, b] for parity-homogeneous a, b (anticommutator when both odd)."""
    pa = {m.bit_count() & 1 for m in a.terms}
    pb = {m.bit_count() & 1 for m in b.terms}
    if len(pa) > 1 or len(pb) > 1:
        raise UsageError("graded commutator needs parity-homogeneous inputs")
    if pa == {1} and pb == {1}:
        return anticommutator(a, b)
    return commutator(a, b)


def filtration_degree(a: Multivector) -> int:
    return a.max_degree()


# spaces attached to Lie data

def g_space(g: LieAlgebra) -> QuadraticSpace:
    sp = getattr(g, "_qspace", None)
    if sp is None:
        sp = QuadraticSpace(g.gram, g.labels, lie=g, idx=range(g.dim), name=g.name or "g")
        g._qspace = sp
    return sp


def space_of(pair: SymmetricPair, which: str = "p") -> QuadraticSpace:
    key = "space_" + which
    sp = pair._cache.get(key)
    if sp is None:
        idx = {"p": pair.pIdx, "k": pair.kIdx, "a": pair.aIdx, "t": pair.tIdx,
               "g": list(range(pair.g.dim))}[which]
        gram = [[pair.g.gram[i][j] for j in idx] for i in idx]
        sp = QuadraticSpace(gram, [pair.g.labels[i] for i in idx], lie=pair.g, idx=idx, name=which)
        pair._cache[key] = sp
    return sp


def dual_basis(space: QuadraticSpace) -> List[Vec]:
    """f_i with B(e_i, f_j) = delta_ij, in local coordinates."""
    cache = getattr(space, "_dual", None)
    if cache is None:
        inv = inverse(space.gram)
        cache = [{j: inv[i][j] for j in range(space.dim) if inv[i][j]} for i in range(space.dim)]
        space._dual = cache
    return cache


def _moment(space: QuadraticSpace, x: Vec, clifford: bool) -> Multivector:
    cols = space.adjoint(x)
    duals = dual_basis(space)
    quarter = frac(1, 4)
    out = Multivector(space)
    for i in range(space.dim):
        if not cols[i]:
            continue
        u = Multivector.vector(space, cols[i])
        f = Multivector.vector(space, duals[i])
        out = out + (cliff_mul(u, f) if clifford else wedge(u, f))
    return out.scale(quarter)


def _in_k(pair: SymmetricPair, x: Vec) -> None:
    ks = set(pair.kIdx)
    if any(i not in ks for i in x):
        raise UsageError("alpha is defined on k only")


def alpha(pair: SymmetricPair, x: Vec) -> Multivector:
    """Quantum moment map k -> Cl(p): 1/4 sum [X, e_i] f_i."""
    _in_k(pair, x)
    return _moment(space_of(pair, "p"), x, clifford=True)


def alpha_word(pair: SymmetricPair, word: Sequence[Vec]) -> Multivector:
    sp = space_of(pair, "p")
    return cliff_prod([alpha(pair, x) for x in word], sp)


def lam(space: QuadraticSpace, x: Vec) -> Multivector:
    """Classical moment map: 1/4 sum [X, e_i] ^ f_i."""
    return _moment(space, x, clifford=False)


def cartan_three_tensor(g: LieAlgebra) -> Multivector:
    """phi = 1/3 sum_i lambda(e_i) ^ f_i in the exterior algebra of g."""
    sp = g_space(g)
    duals = dual_basis(sp)
    out = Multivector(sp)
    for i in range(g.dim):
        out = out + wedge(lam(sp, {i: ONE}), Multivector.vector(sp, duals[i]))
    return out.scale(frac(1, 3))


def preserves_form(m: List[List[Scalar]], gram: List[List[Scalar]]) -> bool:
    n = len(gram)
    for i in range(n):
        for j in range(n):
            s = ZERO
            for k in range(n):
                if m[k][i]:
                    for l in range(n):
                        if m[l][j] and gram[k][l]:
                            s = s + m[k][i] * gram[k][l] * m[l][j]
            if s != gram[i][j]:
                return False
    return True


def group_act(m: List[List[Scalar]], a: Multivector, check: bool = True) -> Multivector:
    """Algebra automorphism of the exterior/Clifford algebra induced by m."""
    sp = a.space
    m = [[to_scalar(x) for x in row] for row in m]
    if check and not preserves_form(m, sp.gram):
        raise UsageError("matrix does not preserve the form")
    cols = [{i: m[i][j] for i in range(sp.dim) if m[i][j]} for j in range(sp.dim)]
    return apply_linear(cols, a, derivation=False)


def restrict_to_space(pair: SymmetricPair, m: List[List[Scalar]], which: str = "p"):
    """Restrict a g-matrix that preserves the subspace to its local block."""
    sp = space_of(pair, which)
    loc = {g: j for j, g in enumerate(sp.idx)}
    out = [[ZERO] * sp.dim for _ in range(sp.dim)]
    for jl, jg in enumerate(sp.idx):
        img = act_matrix(m, {jg: ONE})
        for ig, v in img.items():
            if ig not in loc:
                raise UsageError("matrix does not preserve %s" % which)
            out[loc[ig]][jl] = v
    return out
