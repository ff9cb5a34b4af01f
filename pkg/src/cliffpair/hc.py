"""Harish-Chandra projections Cl(p) -> Cl(a) and the main-theorem checks."""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .exact import ONE, ZERO, Scalar, frac
from .liealg import SymmetricPair, half_weight_sum
from .linalg import EchelonBasis, determinant, rank
from .clifford import (alpha, cliff_mul, cliff_prod, graded_commutator, space_of)
from .multivec import Multivector, UsageError, bits, contract_ext, form_Btilde, mask_of
from .invariants import QuotientMode, coinvariant_quotient, primitives_p
from .spin import Flavor, invariants_cl, invariants_wedge_graded, isotypic_idempotents


@dataclass
class HCMap:
    pair: SymmetricPair
    w: int
    Pw: Multivector
    claBasis: List[int]
    conjugatedBasis: List[Multivector]
    _eb: EchelonBasis = field(repr=False, default=None)

    def a_space(self):
        return space_of(self.pair, "a")


def _local(pair: SymmetricPair, idx: Sequence[int]) -> List[int]:
    return [pair.p_local(i) for i in idx]


def projector(pair: SymmetricPair, w: int = 0) -> Multivector:
    """P_w = 2^{-p} e_1 ... e_p f_p ... f_1 with B(e_i, f_j) = delta_ij."""
    sp = space_of(pair, "p")
    ps = pair.posSystems[w]
    es, fs = [], []
    for i, j in zip(ps.plus, ps.minus):
        c = pair.g.gram[i][j]
        es.append(Multivector(sp, {1 << pair.p_local(i): ONE}))
        fs.append(Multivector(sp, {1 << pair.p_local(j): c.inverse()}))
    if not es:
        return Multivector.scalar(sp)
    return cliff_prod(es + fs[::-1], sp).scale(frac(1, 2 ** len(es)))


def build_hc(pair: SymmetricPair, w: int = 0) -> HCMap:
    key = ("hc", w)
    if key in pair._cache:
        return pair._cache[key]
    if w >= len(pair.posSystems):
        raise UsageError("no stored positive system %d" % w)
    sp = space_of(pair, "p")
    P = projector(pair, w)
    if cliff_mul(P, P) != P:
        raise AssertionError("P_w is not idempotent")
    ps = pair.posSystems[w]
    for i in ps.plus:
        if not cliff_mul(Multivector(sp, {1 << pair.p_local(i): ONE}), P).is_zero():
            raise AssertionError("p+ does not annihilate P_w")
    for i in ps.minus:
        if not cliff_mul(P, Multivector(sp, {1 << pair.p_local(i): ONE})).is_zero():
            raise AssertionError("P_w does not annihilate p-")
    aloc = _local(pair, ps.a)
    monos = sorted((mask_of(c) for r in range(len(aloc) + 1)
                    for c in itertools.combinations(aloc, r)), key=lambda m: (m.bit_count(), m))
    conj = [cliff_prod([P, Multivector(sp, {m: ONE}), P], sp) for m in monos]
    eb = EchelonBasis(track=True)
    for c in conj:
        if not eb.add(dict(c.terms)):
            raise AssertionError("conjugated Cl(a) basis is dependent")
    hc = HCMap(pair, w, P, monos, conj, eb)
    pair._cache[key] = hc
    return hc


def _to_a(pair: SymmetricPair, terms: Dict[int, Scalar]) -> Multivector:
    asp = space_of(pair, "a")
    loc = {pair.p_local(g): j for j, g in enumerate(pair.aIdx)}
    out = {}
    for m, c in terms.items():
        out[mask_of(loc[i] for i in bits(m))] = c
    return Multivector(asp, out)


def hc_apply_full(hc: HCMap, x: Multivector) -> Tuple[Multivector, bool]:
    """(HC_w(x), exact) where exact means P x P lies in the conjugated span."""
    sp = space_of(hc.pair, "p")
    y = cliff_prod([hc.Pw, x, hc.Pw], sp)
    coords, residual = hc._eb.decompose(dict(y.terms))
    ok = not residual
    terms = {hc.claBasis[i]: c for i, c in coords.items() if c}
    return _to_a(hc.pair, terms), ok


def hc_apply(hc: HCMap, x: Multivector) -> Multivector:
    return hc_apply_full(hc, x)[0]


def a_embed(pair: SymmetricPair, y: Multivector) -> Multivector:
    """Cl(a) element as an element of Cl(p)."""
    sp = space_of(pair, "p")
    loc = [pair.p_local(g) for g in pair.aIdx]
    return Multivector(sp, {mask_of(loc[i] for i in bits(m)): c for m, c in y.terms.items()})


def primitive_gram(pair: SymmetricPair, check: bool = True) -> List[List[Scalar]]:
    """B~(phi_i, phi_j); checks that graded commutators equal 2 B~ times 1."""
    prims = [p.element for p in primitives_p(pair)]
    n = len(prims)
    G = [[form_Btilde(prims[i], prims[j]) for j in range(n)] for i in range(n)]
    if check:
        sp = space_of(pair, "p")
        for i in range(n):
            for j in range(n):
                c = graded_commutator(prims[i], prims[j])
                if c != Multivector.scalar(sp, 2 * G[i][j]):
                    raise AssertionError("commutator of primitives is not 2 B~")
        if determinant(G) == ZERO:
            raise AssertionError("primitive Gram matrix is degenerate")
    return G


def primitive_products(pair: SymmetricPair) -> List[Multivector]:
    """Ordered Clifford products phi_{i1} ... phi_{ik}, i1 < ... < ik."""
    if "prim_products" in pair._cache:
        return pair._cache["prim_products"]
    sp = space_of(pair, "p")
    prims = [p.element for p in primitives_p(pair)]
    out = []
    for r in range(len(prims) + 1):
        for combo in itertools.combinations(range(len(prims)), r):
            out.append(cliff_prod([prims[i] for i in combo], sp) if combo else Multivector.scalar(sp))
    pair._cache["prim_products"] = out
    return out


def in_span(basis: Sequence[Multivector], xs: Sequence[Multivector]) -> bool:
    eb = EchelonBasis(track=False)
    for b in basis:
        eb.add(dict(b.terms))
    return all(eb.contains(dict(x.terms)) for x in xs)


def span_rank(xs: Sequence[Multivector]) -> int:
    return rank(dict(x.terms) for x in xs)


# main theorem ----------------------------------------------------------------

@dataclass
class PartResult:
    passed: bool
    witnesses: Dict[str, object] = field(default_factory=dict)
    dims: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"pass": self.passed, "witnesses": self.witnesses, "dims": self.dims}


@dataclass
class MainTheoremReport:
    pair: str
    parts: Dict[str, PartResult]
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.parts.values())

    def to_dict(self, timings: bool = False) -> dict:
        d = {"pair": self.pair, "pass": self.passed,
             "parts": {k: self.parts[k].to_dict() for k in sorted(self.parts)}}
        if timings:
            d["timings"] = {k: round(v, 3) for k, v in sorted(self.timings.items())}
        return d


def _guard(fn: Callable[[], PartResult]) -> PartResult:
    try:
        return fn()
    except Exception as exc:  # sub-check failures are reported, not raised
        return PartResult(False, {"error": "%s: %s" % (type(exc).__name__, exc)})


def check_part_a(pair: SymmetricPair) -> PartResult:
    inv = invariants_cl(pair, Flavor.CL_K_GROUP)
    prods = primitive_products(pair)
    na = len(pair.aIdx)
    w = {}
    w["products_invariant"] = in_span(inv.elements, prods)
    w["products_rank"] = span_rank(prods)
    w["invariant_dim"] = inv.dim
    G = primitive_gram(pair, check=False)
    sp = space_of(pair, "p")
    prims = [p.element for p in primitives_p(pair)]
    rel_ok = True
    for i in range(len(prims)):
        for j in range(len(prims)):
            c = graded_commutator(prims[i], prims[j])
            if c != Multivector.scalar(sp, 2 * G[i][j]):
                rel_ok = False
    w["clifford_relations"] = rel_ok
    det = determinant(G)
    w["gram"] = [[str(x) for x in row] for row in G]
    w["gram_det"] = str(det)
    hc_ok = True
    hc_images = []
    for wi in range(len(pair.posSystems)):
        hc = build_hc(pair, wi)
        imgs = [hc_apply(hc, p) for p in prims]
        if any(y.degrees() != [1] for y in imgs) or span_rank(imgs) != len(imgs):
            hc_ok = False
        hc_images.append([y.to_list() for y in imgs])
    w["hc_primitives_linear_independent"] = hc_ok
    w["hc_primitive_images"] = hc_images
    hc = build_hc(pair, 0)
    bij_rank = span_rank([hc_apply(hc, x) for x in inv.elements])
    w["hc_rank_on_invariants"] = bij_rank
    passed = (w["products_invariant"] and w["products_rank"] == inv.dim == 2 ** na
              and rel_ok and det != ZERO and hc_ok and bij_rank == 2 ** na)
    return PartResult(passed, w, {"a": na, "primitives": len(prims), "invariants_K": inv.dim,
                                  "primitive_degrees": [p.degree for p in primitives_p(pair)]})


def check_part_b(pair: SymmetricPair) -> PartResult:
    inv = invariants_cl(pair, Flavor.CL_K_LIE)
    pa = isotypic_idempotents(pair)
    prods = primitive_products(pair)
    sp = space_of(pair, "p")
    combos = [cliff_mul(x, e) for x in prods for e in pa.idempotents]
    w = {"products_invariant": in_span(inv.elements, combos),
         "rank": span_rank(combos), "invariant_dim": inv.dim,
         "idempotents": len(pa.idempotents), "eigenvalues": pa.eigenvalues}
    passed = w["products_invariant"] and w["rank"] == inv.dim == len(combos)
    return PartResult(passed, w, {"invariants_k": inv.dim, "idempotents": len(pa.idempotents)})


def check_part_c(pair: SymmetricPair) -> PartResult:
    q = coinvariant_quotient(pair, QuotientMode.AT_RHO)
    pa = isotypic_idempotents(pair)
    w = {"quotient": q.to_dict(), "idempotents": len(pa.idempotents)}
    return PartResult(q.dimension == len(pa.idempotents), w,
                      {"quotient": q.dimension, "W1": len(pa.idempotents)})


def hilbert_product(prim_degrees: Sequence[int], graded: Sequence[int]) -> List[int]:
    """prod_i (1 + t^{d_i}) times sum_j graded[j] t^{2j}."""
    poly = [1]
    for d in prim_degrees:
        nxt = [0] * (len(poly) + d)
        for i, c in enumerate(poly):
            nxt[i] += c
            nxt[i + d] += c
        poly = nxt
    doubled = [0] * (2 * len(graded) - 1 if graded else 1)
    for j, c in enumerate(graded):
        doubled[2 * j] += c
    out = [0] * (len(poly) + len(doubled) - 1)
    for i, a in enumerate(poly):
        for j, b in enumerate(doubled):
            out[i + j] += a * b
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def check_part_d(pair: SymmetricPair) -> PartResult:
    wg = invariants_wedge_graded(pair)
    q = coinvariant_quotient(pair, QuotientMode.GRADED)
    degs = [p.degree for p in primitives_p(pair)]
    rhs = hilbert_product(degs, q.graded_dims)
    lhs = list(wg.gradedDims)
    while len(lhs) > 1 and lhs[-1] == 0:
        lhs.pop()
    return PartResult(lhs == rhs, {"wedge_invariants": lhs, "predicted": rhs,
                                   "graded_quotient": q.graded_dims},
                      {"total": sum(lhs)})


def verify_main_theorem(pair: SymmetricPair, threads: int = 1) -> MainTheoremReport:
    checks = [("a", check_part_a), ("b", check_part_b), ("c", check_part_c), ("d", check_part_d)]
    timings: Dict[str, float] = {}

    def run(item):
        name, fn = item
        t0 = time.perf_counter()
        res = _guard(lambda: fn(pair))
        timings[name] = time.perf_counter() - t0
        return name, res

    # shared prerequisites first so parallel parts do not duplicate them
    for fn in (lambda: invariants_cl(pair, Flavor.CL_K_GROUP), lambda: primitives_p(pair)):
        try:
            fn()
        except Exception:
            pass
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(run, checks))
    else:
        results = [run(c) for c in checks]
    return MainTheoremReport(pair.id, dict(results), timings)


# properties used by the acceptance suite --------------------------------------

def hc_alpha_check(pair: SymmetricPair, w: int = 0) -> Tuple[bool, List[str], List[str]]:
    """HC_w(alpha(H)) against the half weight sum, on the t basis."""
    hc = build_hc(pair, w)
    rho = half_weight_sum(pair, w)
    got = []
    for l, t in enumerate(pair.tIdx):
        y = hc_apply(hc, alpha(pair, {t: ONE}))
        got.append(y.scalar_part() if y.degrees() in ([0], []) else None)
    ok = all(g is not None and g == r for g, r in zip(got, rho))
    return ok, [str(g) for g in got], [str(r) for r in rho]


def contraction_derivation_check(pair: SymmetricPair) -> bool:
    """i_phi = 1/2 [q(phi), -] on Cl(p)^K for every primitive."""
    inv = invariants_cl(pair, Flavor.CL_K_GROUP)
    for p in primitives_p(pair):
        for x in inv.elements:
            if not x.is_homogeneous():
                raise AssertionError("invariant basis element is not homogeneous")
            lhs = contract_ext(p.element, x)
            rhs = graded_commutator(p.element, x).scale(frac(1, 2))
            if lhs != rhs:
                return False
    return True


def hc_closed_form(pair: SymmetricPair, x: Multivector, w: int = 0) -> Multivector:
    """HC_w via the wedge symbol of x, without Clifford products.

    The p+/p- pairs and a are mutually orthogonal blocks, so the quantization of
    a monomial factors over blocks. Unpaired root vectors can be moved to the
    killed side; a full pair e^f contributes B(e, f).
    """
    ps = pair.posSystems[w]
    plus = [pair.p_local(i) for i in ps.plus]
    minus = [pair.p_local(i) for i in ps.minus]
    for a, i in enumerate(ps.plus):
        for b, j in enumerate(ps.minus):
            if a != b and pair.g.gram[i][j]:
                raise UsageError("positive system is not in dual position")
    pm = mask_of(plus)
    mm = mask_of(minus)
    partner = {e: f for e, f in zip(plus, minus)}
    weight = {e: pair.g.gram[i][j] for e, i, j in zip(plus, ps.plus, ps.minus)}
    amask = mask_of(pair.p_local(i) for i in ps.a)
    out: Dict[int, Scalar] = {}
    for m, c in x.terms.items():
        es = m & pm
        fs = m & mm
        if es.bit_count() != fs.bit_count():
            continue
        if fs != mask_of(partner[e] for e in bits(es)):
            continue
        # reorder to (e1 ^ f1) ^ (e2 ^ f2) ^ ... ^ a-part, tracking the sign
        order = []
        for e in bits(es):
            order += [e, partner[e]]
        order += bits(m & amask)
        sign = _perm_sign(order)
        coef = c if sign > 0 else -c
        for e in bits(es):
            coef = coef * weight[e]
        key = m & amask
        out[key] = out.get(key, ZERO) + coef
    return _to_a(pair, {k: v for k, v in out.items() if v})


def _perm_sign(seq: Sequence[int]) -> int:
    """Sign taking the ascending order of seq to seq."""
    s = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s
