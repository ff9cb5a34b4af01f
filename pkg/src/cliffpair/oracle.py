"""Brute-force reference computations, used only by the tests.

Everything here is deliberately naive: Fraction arithmetic, tuple monomials,
dense Gaussian elimination, literal rewriting with the Clifford relation. None
of it shares code paths with the optimized modules beyond reading structure
constants and the form.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import Scalar, to_scalar
from .liealg import LieAlgebra, SymmetricPair
from .multivec import Multivector

ORACLE_MAX_P = 10

Mono = Tuple[int, ...]
Elem = Dict[Mono, Fraction]


class OracleTooLarge(ValueError):
    pass


def _fr(x) -> Fraction:
    if isinstance(x, Scalar):
        return x.to_fraction()
    return Fraction(x)


class DenseMatrix:
    """Exact dense matrix with a textbook row reduction."""

    def __init__(self, rows: int, cols: int, entries: Optional[List[List[Fraction]]] = None):
        self.rows = rows
        self.cols = cols
        self.entries = entries if entries is not None else [[Fraction(0)] * cols for _ in range(rows)]

    def rank(self) -> int:
        a = [list(r) for r in self.entries]
        r = 0
        for c in range(self.cols):
            piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            for i in range(len(a)):
                if i != r and a[i][c] != 0:
                    f = a[i][c] / a[r][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == len(a):
                break
        return r

    def nullity(self) -> int:
        return self.cols - self.rank()


def _sort_sign(seq: Sequence[int]) -> Tuple[int, Mono]:
    """Sign of the sorting permutation, or 0 on a repeated index."""
    if len(set(seq)) != len(seq):
        return 0, ()
    s = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s, tuple(sorted(seq))


def _ad_on_p(pair: SymmetricPair, x: int) -> List[Dict[int, Fraction]]:
    """Columns of ad(x) restricted to p, in local p coordinates."""
    loc = {g: j for j, g in enumerate(pair.pIdx)}
    cols = []
    for gj in pair.pIdx:
        v = pair.g.bracket_vec({x: to_scalar(1)}, {gj: to_scalar(1)})
        col = {}
        for k, c in v.items():
            if k not in loc:
                raise AssertionError("[k, p] left p")
            col[loc[k]] = _fr(c)
        cols.append(col)
    return cols


def _derivation(cols: List[Dict[int, Fraction]], mono: Mono) -> Elem:
    out: Elem = {}
    for pos, i in enumerate(mono):
        for l, c in cols[i].items():
            seq = list(mono)
            seq[pos] = l
            s, key = _sort_sign(seq)
            if s:
                out[key] = out.get(key, Fraction(0)) + s * c
    return {k: v for k, v in out.items() if v}


def oracle_invariants_graded(pair: SymmetricPair) -> List[int]:
    """Per-degree dims of the k-invariants of the exterior algebra of p."""
    n = len(pair.pIdx)
    if n > ORACLE_MAX_P:
        raise OracleTooLarge("oracle limited to dim p <= %d" % ORACLE_MAX_P)
    ops = [_ad_on_p(pair, x) for x in pair.kIdx]
    dims = []
    for d in range(n + 1):
        monos = list(itertools.combinations(range(n), d))
        rows: List[List[Fraction]] = []
        for cols in ops:
            block: Dict[Mono, List[Fraction]] = {}
            for j, m in enumerate(monos):
                for key, c in _derivation(cols, m).items():
                    block.setdefault(key, [Fraction(0)] * len(monos))[j] += c
            rows.extend(block.values())
        dims.append(DenseMatrix(len(rows), len(monos), rows).nullity())
    return dims


def oracle_invariants(pair: SymmetricPair) -> int:
    """dim of the k-invariants; since alpha(k) acts by L_X this is dim Cl(p)^k."""
    return sum(oracle_invariants_graded(pair))


# PBW-order Harish-Chandra projection ---------------------------------------

def _gram(pair: SymmetricPair) -> List[List[Fraction]]:
    return [[_fr(pair.g.gram[i][j]) for j in pair.pIdx] for i in pair.pIdx]


def _normal_order(words: Dict[Mono, Fraction], key, G) -> Dict[Mono, Fraction]:
    """Rewrite words until each is strictly increasing in ``key``."""
    done: Dict[Mono, Fraction] = {}
    todo = list(words.items())
    while todo:
        w, c = todo.pop()
        if c == 0:
            continue
        pos = next((i for i in range(len(w) - 1) if key(w[i]) >= key(w[i + 1])), None)
        if pos is None:
            done[w] = done.get(w, Fraction(0)) + c
            continue
        u, v = w[pos], w[pos + 1]
        if u == v:
            todo.append((w[:pos] + w[pos + 2:], c * G[u][v]))
        else:
            todo.append((w[:pos] + (v, u) + w[pos + 2:], -c))
            if G[u][v]:
                todo.append((w[:pos] + w[pos + 2:], 2 * c * G[u][v]))
    return {w: c for w, c in done.items() if c}


def _quantize(x: Multivector) -> Dict[Mono, Fraction]:
    """Skew-symmetrization of each wedge monomial into Clifford words."""
    out: Dict[Mono, Fraction] = {}
    for m, c in x.terms.items():
        idx = [i for i in range(m.bit_length()) if m >> i & 1]
        k = len(idx)
        for perm in itertools.permutations(range(k)):
            s, _ = _sort_sign(list(perm))
            w = tuple(idx[p] for p in perm)
            out[w] = out.get(w, Fraction(0)) + s * _fr(c) / factorial(k)
    return out


def _words_to_symbol(words: Dict[Mono, Fraction], G) -> Dict[Mono, Fraction]:
    """Ordered Clifford words back to wedge symbols via v.s = v^s + i_v s."""
    out: Dict[Mono, Fraction] = {}
    for w, c in words.items():
        cur: Dict[Mono, Fraction] = {(): Fraction(1)}
        for v in reversed(w):
            nxt: Dict[Mono, Fraction] = {}
            for mono, a in cur.items():
                s, key = _sort_sign([v] + list(mono))
                if s:
                    nxt[key] = nxt.get(key, Fraction(0)) + s * a
                for j, u in enumerate(mono):
                    if G[v][u]:
                        key = mono[:j] + mono[j + 1:]
                        nxt[key] = nxt.get(key, Fraction(0)) + (-1) ** j * G[v][u] * a
            cur = nxt
        for mono, a in cur.items():
            out[mono] = out.get(mono, Fraction(0)) + c * a
    return {k: v for k, v in out.items() if v}


def oracle_hc(pair: SymmetricPair, w: int, x: Multivector) -> Dict[Mono, Fraction]:
    """HC_w by rewriting into f..a..e order and dropping words with e or f.

    Returns wedge symbols over a, keyed by tuples of positions in pair.aIdx.
    """
    n = len(pair.pIdx)
    if n > ORACLE_MAX_P:
        raise OracleTooLarge("oracle limited to dim p <= %d" % ORACLE_MAX_P)
    G = _gram(pair)
    ps = pair.posSystems[w]
    loc = {g: j for j, g in enumerate(pair.pIdx)}
    cls = {}
    for g in ps.minus:
        cls[loc[g]] = 0
    for g in ps.a:
        cls[loc[g]] = 1
    for g in ps.plus:
        cls[loc[g]] = 2
    ordered = _normal_order(_quantize(x), lambda i: (cls[i], i), G)
    kept = {wd: c for wd, c in ordered.items() if all(cls[i] == 1 for i in wd)}
    sym = _words_to_symbol(kept, G)
    apos = {loc[g]: j for j, g in enumerate(pair.aIdx)}
    return {tuple(sorted(apos[i] for i in k)): c for k, c in sym.items()}


def multivector_as_tuples(x: Multivector) -> Dict[Mono, Fraction]:
    return {tuple(i for i in range(m.bit_length()) if m >> i & 1): _fr(c) for m, c in x.terms.items()}


# transgression and power sums ----------------------------------------------

def _ad_on_g(g: LieAlgebra, x: int) -> List[Dict[int, Fraction]]:
    return [{k: _fr(c) for k, c in g.bracket_vec({x: to_scalar(1)}, {j: to_scalar(1)}).items()}
            for j in range(g.dim)]


def oracle_transgression_invariance(P, result: Multivector) -> bool:
    """Checks the transgression output of P (an invariant or a list of factors).

    A product of two or more positive-degree invariants must give 0. Otherwise
    the result must be homogeneous of degree 2 deg P - 1, nonzero, and killed by
    L_X for every basis vector X of g, computed densely.
    """
    factors = list(P) if isinstance(P, (list, tuple)) else [P]
    factors = [f for f in factors if f.degree > 0]
    if len(factors) >= 2:
        return result.is_zero()
    p = factors[0]
    g = p.g
    if result.is_zero() or result.degrees() != [2 * p.degree - 1]:
        return False
    elem = multivector_as_tuples(result)
    for x in range(g.dim):
        cols = _ad_on_g(g, x)
        acc: Elem = {}
        for mono, c in elem.items():
            for k, v in _derivation(cols, mono).items():
                acc[k] = acc.get(k, Fraction(0)) + c * v
        if any(acc.values()):
            return False
    return True


def naive_power_sum(g: LieAlgebra, k: int, x: Dict[int, Scalar]) -> Fraction:
    """tr(X^k) by dense matrix powers of the defining representation."""
    n = g.n
    M = [[Fraction(0)] * n for _ in range(n)]
    for i, c in x.items():
        for (r, s), v in g.matrices[i].items():
            M[r][s] += _fr(c) * _fr(v)
    P = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(k):
        P = [[sum(P[i][l] * M[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
    return sum(P[i][i] for i in range(n))


# Hilbert series counting ----------------------------------------------------

def _series_mul(a: List[int], b: List[int], n: int) -> List[int]:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[:n - i]):
                out[i + j] += x * y
    return out


def complete_intersection_series(gen_degrees: Sequence[int], rel_degrees: Sequence[int],
                                 terms: int = 64) -> List[int]:
    """Coefficients of prod(1 - t^e) / prod(1 - t^d), trimmed of trailing zeros."""
    s = [1] + [0] * (terms - 1)
    for e in rel_degrees:
        f = [0] * terms
        f[0] = 1
        if e < terms:
            f[e] = -1
        s = _series_mul(s, f, terms)
    for d in gen_degrees:
        geo = [1 if i % d == 0 else 0 for i in range(terms)]
        s = _series_mul(s, geo, terms)
    while len(s) > 1 and s[-1] == 0:
        s.pop()
    if any(c < 0 for c in s) or len(s) >= terms - max(list(gen_degrees) + [1]):
        raise ValueError("not a finite complete-intersection quotient")
    return s


def weyl_degrees_k(pair: SymmetricPair) -> List[int]:
    """Fundamental degrees of the Weyl group of k, from its type and rank."""
    r = len(pair.tIdx)
    if pair.family == "AI" and pair.g.n % 2 == 0:
        return [2 * j for j in range(1, r)] + [r]
    return [2 * j for j in range(1, r + 1)]


def oracle_coinvariant_graded(pair: SymmetricPair) -> List[int]:
    """Graded dims of C[t]^{W_k} / (restricted even power sums), by series."""
    rel = [2 * j for j in range(1, pair.g.n // 2 + 1)]
    return complete_intersection_series(weyl_degrees_k(pair), rel)


def _det(m: List[List[Fraction]]) -> Fraction:
    n = len(m)
    if n == 0:
        return Fraction(1)
    a = [list(r) for r in m]
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def naive_Btilde(x: Multivector, y: Multivector) -> Fraction:
    """Degree-0 part of i_x y as a sum of signed Gram minors over monomial pairs."""
    G = [[_fr(c) for c in row] for row in x.space.gram]
    total = Fraction(0)
    for S, a in multivector_as_tuples(x).items():
        for T, b in multivector_as_tuples(y).items():
            if len(S) != len(T):
                continue
            k = len(S)
            sign = -1 if (k * (k - 1) // 2) % 2 else 1
            total += sign * a * b * _det([[G[i][j] for j in T] for i in S])
    return total
