"""Sparse exterior algebra over a quadratic space.

A monomial ``e_{i1} ^ ... ^ e_{ik}`` with ``i1 < ... < ik`` is the bitmask with
those bits set.  Contraction follows the odd-derivation convention
``i_v(v1) = +B(v, v1)``.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exact import ONE, ZERO, Scalar, to_scalar

Terms = Dict[int, Scalar]
Vec = Dict[int, Scalar]


class SpaceMismatch(ValueError):
    pass


class UsageError(ValueError):
    pass


class QuadraticSpace:
    """A span of basis vectors of a Lie algebra, with the restricted form.

    ``idx`` lists the ambient indices; a standalone space has ``lie=None``.
    """

    def __init__(self, gram: Sequence[Sequence], labels: Optional[Sequence[str]] = None,
                 lie=None, idx: Optional[Sequence[int]] = None, name: str = ""):
        self.gram = [[to_scalar(x) for x in row] for row in gram]
        self.dim = len(self.gram)
        self.labels = list(labels) if labels else ["e%d" % (i + 1) for i in range(self.dim)]
        self.lie = lie
        self.idx = list(idx) if idx is not None else list(range(self.dim))
        self.name = name
        self._local = {g: j for j, g in enumerate(self.idx)}
        self._rows = [{j: v for j, v in enumerate(row) if v} for row in self.gram]
        self._ad_cache: Dict[Tuple, List[Vec]] = {}

    def form(self, u: Vec, v: Vec) -> Scalar:
        s = ZERO
        for i, a in u.items():
            row = self._rows[i]
            for j, b in v.items():
                g = row.get(j)
                if g is not None:
                    s = s + a * g * b
        return s

    def lower(self, v: Vec) -> Vec:
        """Coefficients of B(v, -) as a vector: (G v)_j."""
        out: Vec = {}
        for i, a in v.items():
            for j, g in self._rows[i].items():
                w = out.get(j, ZERO) + a * g
                if w:
                    out[j] = w
                else:
                    out.pop(j, None)
        return out

    def adjoint(self, x: Vec) -> List[Vec]:
        """Columns of ad(x) restricted to this space; x in ambient coordinates."""
        key = tuple(sorted((k, str(v)) for k, v in x.items()))
        cols = self._ad_cache.get(key)
        if cols is not None:
            return cols
        if self.lie is None:
            raise UsageError("space has no Lie algebra action")
        cols = []
        for g_i in self.idx:
            img = self.lie.bracket_vec(x, {g_i: ONE})
            col = {}
            for k, v in img.items():
                j = self._local.get(k)
                if j is None:
                    raise UsageError("ad(X) does not preserve the space %s" % self.name)
                col[j] = v
            cols.append(col)
        self._ad_cache[key] = cols
        return cols

    def __repr__(self):
        return "QuadraticSpace(%s, dim=%d)" % (self.name or "?", self.dim)


def popcount(m: int) -> int:
    return m.bit_count()


def bits(m: int) -> List[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def wedge_sign(a: int, b: int) -> int:
    """Sign of sorting the concatenation of a and b (disjoint) ascending."""
    n = 0
    a >>= 1
    while a:
        n += (a & b).bit_count()
        a >>= 1
    return -1 if n & 1 else 1


def _add_into(out: Terms, m: int, c: Scalar) -> None:
    w = out.get(m)
    if w is None:
        out[m] = c
    else:
        w = w + c
        if w:
            out[m] = w
        else:
            del out[m]


class Multivector:
    __slots__ = ("space", "terms")

    def __init__(self, space: QuadraticSpace, terms: Optional[Terms] = None):
        self.space = space
        self.terms: Terms = {m: c for m, c in (terms or {}).items() if c}

    # constructors
    @classmethod
    def scalar(cls, space, c=1) -> "Multivector":
        return cls(space, {0: to_scalar(c)})

    @classmethod
    def vector(cls, space, v: Vec) -> "Multivector":
        return cls(space, {1 << i: to_scalar(c) for i, c in v.items()})

    @classmethod
    def basis(cls, space, *indices: int) -> "Multivector":
        """Wedge of basis vectors in the given order."""
        out = cls.scalar(space)
        for i in indices:
            out = wedge(out, cls(space, {1 << i: ONE}))
        return out

    # linear structure
    def _check(self, other: "Multivector") -> None:
        if other.space is not self.space:
            raise SpaceMismatch("multivectors live in different spaces")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(out, m, c)
        return Multivector(self.space, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(out, m, -c)
        return Multivector(self.space, out)

    def __neg__(self):
        return Multivector(self.space, {m: -c for m, c in self.terms.items()})

    def scale(self, c) -> "Multivector":
        c = to_scalar(c)
        if not c:
            return Multivector(self.space)
        return Multivector(self.space, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, c):
        if isinstance(c, Multivector):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.space is other.space and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # grading
    def degrees(self) -> List[int]:
        return sorted({m.bit_count() for m in self.terms})

    def max_degree(self) -> int:
        return max((m.bit_count() for m in self.terms), default=-1)

    def grade(self, k: int) -> "Multivector":
        return Multivector(self.space, {m: c for m, c in self.terms.items() if m.bit_count() == k})

    def scalar_part(self) -> Scalar:
        return self.terms.get(0, ZERO)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def support_indices(self) -> int:
        m = 0
        for k in self.terms:
            m |= k
        return m

    # rendering
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (m.bit_count(), m)):
            c = self.terms[m]
            if m == 0:
                parts.append(str(c))
            else:
                parts.append("%s·%s" % (c, "^".join(self.space.labels[i] for i in bits(m))))
        return " + ".join(parts)

    __repr__ = __str__

    def to_list(self) -> list:
        return [[bits(m), str(self.terms[m])]
                for m in sorted(self.terms, key=lambda m: (m.bit_count(), m))]

    @classmethod
    def from_list(cls, space, data) -> "Multivector":
        return cls(space, {mask_of(ix): to_scalar(c) for ix, c in data})


def _same(a: Multivector, b: Multivector) -> None:
    if a.space is not b.space:
        raise SpaceMismatch("multivectors live in different spaces")


def wedge(a: Multivector, b: Multivector) -> Multivector:
    _same(a, b)
    out: Terms = {}
    bt = list(b.terms.items())
    for ma, ca in a.terms.items():
        for mb, cb in bt:
            if ma & mb:
                continue
            c = ca * cb
            if wedge_sign(ma, mb) < 0:
                c = -c
            _add_into(out, ma | mb, c)
    return Multivector(a.space, out)


def wedge_all(items: Sequence[Multivector], space: QuadraticSpace) -> Multivector:
    out = Multivector.scalar(space)
    for x in items:
        out = wedge(out, x)
    return out


def _contract_terms(bv: Vec, terms: Terms) -> Terms:
    """i_v on raw terms given bv[j] = B(v, e_j)."""
    out: Terms = {}
    for m, c in terms.items():
        hit = m
        for j, g in bv.items():
            bit = 1 << j
            if not (hit & bit):
                continue
            below = (m & (bit - 1)).bit_count()
            x = c * g
            if below & 1:
                x = -x
            _add_into(out, m ^ bit, x)
    return out


def contract(v, a: Multivector) -> Multivector:
    """Contraction i_v a; ``v`` is a vector dict or a degree-1 Multivector."""
    if isinstance(v, Multivector):
        _same(v, a)
        if any(m.bit_count() != 1 for m in v.terms):
            raise UsageError("contract expects a vector")
        v = {bits(m)[0]: c for m, c in v.terms.items()}
    bv = a.space.lower(v)
    return Multivector(a.space, _contract_terms(bv, a.terms))


def contract_ext(a: Multivector, b: Multivector) -> Multivector:
    """i_a b with i_{x^y} = i_x o i_y, extended bilinearly."""
    _same(a, b)
    sp = b.space
    lowered = [sp._rows[i] for i in range(sp.dim)]
    out: Terms = {}
    for ma, ca in a.terms.items():
        cur = dict(b.terms)
        for i in reversed(bits(ma)):
            cur = _contract_terms(lowered[i], cur)
            if not cur:
                break
        for m, c in cur.items():
            _add_into(out, m, ca * c)
    return Multivector(sp, out)


def transpose(a: Multivector) -> Multivector:
    out = {}
    for m, c in a.terms.items():
        k = m.bit_count()
        out[m] = -c if (k * (k - 1) // 2) & 1 else c
    return Multivector(a.space, out)


def involution(a: Multivector) -> Multivector:
    """Parity automorphism: (-1)^deg."""
    return Multivector(a.space, {m: (-c if m.bit_count() & 1 else c) for m, c in a.terms.items()})


def lower_ext(a: Multivector) -> Multivector:
    """Exterior power of the Gram map v -> B(v, -) applied to a."""
    sp = a.space
    cache: Dict[int, Terms] = {0: {0: ONE}}

    def image(m: int) -> Terms:
        t = cache.get(m)
        if t is not None:
            return t
        low = m & -m
        i = low.bit_length() - 1
        rest = image(m ^ low)
        res: Terms = {}
        for j, g in sp._rows[i].items():
            bit = 1 << j
            for r, c in rest.items():
                if r & bit:
                    continue
                x = g * c
                if wedge_sign(bit, r) < 0:
                    x = -x
                _add_into(res, r | bit, x)
        cache[m] = res
        return res

    out: Terms = {}
    for m, c in a.terms.items():
        for r, x in image(m).items():
            _add_into(out, r, c * x)
    return Multivector(sp, out)


def form_Btilde(a: Multivector, b: Multivector) -> Scalar:
    """Degree-0 part of i_a b."""
    _same(a, b)
    la = lower_ext(a)
    s = ZERO
    for m, c in la.terms.items():
        d = b.terms.get(m)
        if d is not None:
            k = m.bit_count()
            x = c * d
            s = s - x if (k * (k - 1) // 2) & 1 else s + x
    return s


def form_B(a: Multivector, b: Multivector) -> Scalar:
    """Degree-0 part of i_{a^T} b."""
    return form_Btilde(transpose(a), b)


def apply_linear(cols: Sequence[Vec], a: Multivector, derivation: bool) -> Multivector:
    """Extend a linear map of V (given by image columns) to the exterior algebra.

    ``derivation=True`` gives the derivation extension (a Lie algebra action),
    otherwise the algebra automorphism extension (a group action).
    """
    sp = a.space
    out: Terms = {}
    if derivation:
        for m, c in a.terms.items():
            for i in bits(m):
                rest = m ^ (1 << i)
                for l, v in cols[i].items():
                    bit = 1 << l
                    if rest & bit:
                        continue
                    # move the new factor from slot of e_i to its sorted slot
                    lo, hi = (i, l) if i < l else (l, i)
                    between = (rest & ((1 << hi) - 1) & ~((1 << (lo + 1)) - 1)).bit_count()
                    x = c * v
                    if between & 1:
                        x = -x
                    _add_into(out, rest | bit, x)
        return Multivector(sp, out)
    cache: Dict[int, Terms] = {0: {0: ONE}}

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

    for m, c in a.terms.items():
        for r, x in image(m).items():
            _add_into(out, r, c * x)
    return Multivector(sp, out)


def lie_derivative(x: Vec, a: Multivector) -> Multivector:
    """L_X a: derivation extension of ad(X); X in ambient Lie algebra coordinates."""
    return apply_linear(a.space.adjoint(x), a, derivation=True)


def basis_vectors(space: QuadraticSpace) -> List[Multivector]:
    return [Multivector(space, {1 << i: ONE}) for i in range(space.dim)]


def all_monomials(dim: int, degree: Optional[int] = None) -> List[int]:
    if degree is None:
        return list(range(1 << dim))
    return [m for m in range(1 << dim) if m.bit_count() == degree]
