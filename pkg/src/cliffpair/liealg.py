"""Classical Lie algebras and the symmetric pairs of the catalog.

Everything is realized inside gl(n) with the trace form ``B(X, Y) = tr(XY)``.
Orthogonal algebras are skew about the antidiagonal so that the diagonal
Cartan of sl(n) splits into a part ``t`` inside k and a part ``a`` inside p.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import ONE, ZERO, Scalar, to_scalar
from .linalg import EchelonBasis, axpy

Mat = Dict[Tuple[int, int], Scalar]
Vec = Dict[int, Scalar]


class CatalogError(ValueError):
    """Requested algebra or pair is not available."""


def mat_mul(a: Mat, b: Mat) -> Mat:
    rows: Dict[int, List[Tuple[int, Scalar]]] = {}
    for (r, c), v in b.items():
        rows.setdefault(r, []).append((c, v))
    out: Mat = {}
    for (r, k), v in a.items():
        for c, w in rows.get(k, ()):
            key = (r, c)
            x = out.get(key, ZERO) + v * w
            if x:
                out[key] = x
            else:
                out.pop(key, None)
    return out


def mat_comm(a: Mat, b: Mat) -> Mat:
    out = dict(mat_mul(a, b))
    for k, v in mat_mul(b, a).items():
        x = out.get(k, ZERO) - v
        if x:
            out[k] = x
        else:
            out.pop(k, None)
    return out


def mat_trace(a: Mat) -> Scalar:
    return sum((v for (r, c), v in a.items() if r == c), ZERO)


class LieAlgebra:
    """Structure constants ``[e_i, e_j] = sum_k c^k_ij e_k`` and a Gram matrix.

    ``matrices`` holds the defining representation when known; power sums
    need it.
    """

    def __init__(self, labels: Sequence[str], brackets: Dict[Tuple[int, int], Vec],
                 gram: List[List[Scalar]], matrices: Optional[List[Mat]] = None,
                 n: Optional[int] = None, name: str = ""):
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.name = name
        self.gram = [[to_scalar(x) for x in row] for row in gram]
        self.matrices = matrices
        self.n = n
        self._br: Dict[Tuple[int, int], Vec] = {}
        for (i, j), v in brackets.items():
            if i == j or not v:
                continue
            self._br[(i, j)] = dict(v)
            self._br[(j, i)] = {k: -c for k, c in v.items()}
        self._gram_inv = None

    @classmethod
    def from_matrices(cls, mats: Sequence[Mat], labels: Sequence[str], n: int,
                      name: str = "") -> "LieAlgebra":
        coords = _Coordinates(mats)
        br = {}
        for i, j in itertools.combinations(range(len(mats)), 2):
            c = mat_comm(mats[i], mats[j])
            if c:
                br[(i, j)] = coords(c)
        gram = [[mat_trace(mat_mul(x, y)) for y in mats] for x in mats]
        alg = cls(labels, br, gram, list(mats), n, name)
        alg._coords = coords
        return alg

    def bracket(self, i: int, j: int) -> Vec:
        return self._br.get((i, j), {})

    def bracket_vec(self, x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        for i, a in x.items():
            for j, b in y.items():
                v = self._br.get((i, j))
                if v:
                    axpy(out, a * b, v)
        return out

    def form(self, x: Vec, y: Vec) -> Scalar:
        s = ZERO
        for i, a in x.items():
            row = self.gram[i]
            for j, b in y.items():
                g = row[j]
                if g:
                    s = s + a * b * g
        return s

    def gram_inverse(self) -> List[List[Scalar]]:
        if self._gram_inv is None:
            from .linalg import inverse
            self._gram_inv = inverse(self.gram)
        return self._gram_inv

    def dual_vector(self, i: int) -> Vec:
        """The vector f_i with B(f_i, e_j) = delta_ij."""
        row = self.gram_inverse()[i]
        return {j: v for j, v in enumerate(row) if v}

    def to_matrix(self, x: Vec) -> Mat:
        out: Mat = {}
        for i, a in x.items():
            for k, v in self.matrices[i].items():
                w = out.get(k, ZERO) + a * v
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        return out

    def coordinates(self, m: Mat) -> Vec:
        coords = getattr(self, "_coords", None)
        if coords is None:
            coords = self._coords = _Coordinates(self.matrices)
        return coords(m)

    def ad(self, x: Vec) -> List[Vec]:
        """Columns of ad(x): column j is [x, e_j]."""
        return [self.bracket_vec(x, {j: ONE}) for j in range(self.dim)]

    # checks
    def check_antisymmetry(self) -> bool:
        return all(self.bracket(j, i) == {k: -c for k, c in v.items()}
                   for (i, j), v in self._br.items())

    def check_jacobi(self) -> bool:
        for i, j, k in itertools.combinations(range(self.dim), 3):
            ei, ej, ek = {i: ONE}, {j: ONE}, {k: ONE}
            s: Vec = {}
            axpy(s, ONE, self.bracket_vec(ei, self.bracket_vec(ej, ek)))
            axpy(s, ONE, self.bracket_vec(ej, self.bracket_vec(ek, ei)))
            axpy(s, ONE, self.bracket_vec(ek, self.bracket_vec(ei, ej)))
            if s:
                return False
        return True

    def check_form(self) -> bool:
        n = self.dim
        if any(self.gram[i][j] != self.gram[j][i] for i in range(n) for j in range(n)):
            return False
        from .linalg import rank
        if rank({j: v for j, v in enumerate(row) if v} for row in self.gram) != n:
            return False
        for i in range(n):
            for j in range(n):
                bij = self.bracket(i, j)
                for k in range(n):
                    a = self.form(bij, {k: ONE})
                    b = self.form({j: ONE}, self.bracket(i, k))
                    if a + b:
                        return False
        return True

    # serialization
    def to_dict(self) -> dict:
        br = []
        for (i, j), v in sorted(self._br.items()):
            if i < j:
                for k in sorted(v):
                    br.append([i, j, k, str(v[k])])
        d = {
            "name": self.name,
            "labels": self.labels,
            "brackets": br,
            "gram": [[str(x) for x in row] for row in self.gram],
        }
        if self.matrices is not None:
            d["n"] = self.n
            d["matrices"] = [[[r, c, str(v)] for (r, c), v in sorted(m.items())]
                             for m in self.matrices]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "LieAlgebra":
        br: Dict[Tuple[int, int], Vec] = {}
        for i, j, k, c in d["brackets"]:
            br.setdefault((i, j), {})[k] = to_scalar(c)
        mats = None
        if "matrices" in d:
            mats = [{(r, c): to_scalar(v) for r, c, v in m} for m in d["matrices"]]
        gram = [[to_scalar(x) for x in row] for row in d["gram"]]
        return cls(d["labels"], br, gram, mats, d.get("n"), d.get("name", ""))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "LieAlgebra":
        return cls.from_dict(json.loads(text))

    def same_data(self, other: "LieAlgebra") -> bool:
        return (self.labels == other.labels and self.gram == other.gram
                and self._br == other._br)


class _Coordinates:
    """Express a matrix in a basis of matrices (exact, tracked elimination)."""

    def __init__(self, mats: Sequence[Mat]):
        self.eb = EchelonBasis(track=True)
        for m in mats:
            if not self.eb.add(dict(m)):
                raise ValueError("basis matrices are dependent")

    def __call__(self, m: Mat) -> Vec:
        c = self.eb.coordinates(dict(m))
        if c is None:
            raise ValueError("matrix not in the span of the basis")
        return c


def _unit(a: int, b: int, c: Scalar = ONE) -> Mat:
    return {(a, b): c}


def _add(*terms: Tuple[Scalar, Mat]) -> Mat:
    out: Mat = {}
    for c, m in terms:
        for k, v in m.items():
            w = out.get(k, ZERO) + to_scalar(c) * v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
    return out


def build_sl(n: int) -> LieAlgebra:
    """sl(n): root vectors E_ij then the simple coroots H_i = E_ii - E_{i+1,i+1}."""
    if n < 2:
        raise CatalogError("sl(n) needs n >= 2")
    mats, labels = [], []
    for i in range(n):
        for j in range(n):
            if i < j:
                mats.append(_unit(i, j))
                labels.append("E%d,%d" % (i + 1, j + 1))
    for i in range(n):
        for j in range(n):
            if i > j:
                mats.append(_unit(i, j))
                labels.append("E%d,%d" % (i + 1, j + 1))
    for i in range(n - 1):
        mats.append(_add((ONE, _unit(i, i)), (-ONE, _unit(i + 1, i + 1))))
        labels.append("H%d" % (i + 1))
    return LieAlgebra.from_matrices(mats, labels, n, "sl(%d)" % n)


def _reflect(n: int, a: int) -> int:
    return n - 1 - a


def _eps(n: int, a: int) -> int:
    return 1 if a < n // 2 else -1


def _theta_so(n: int, a: int, b: int) -> Tuple[int, Tuple[int, int]]:
    # minus transpose about the antidiagonal
    return -1, (_reflect(n, b), _reflect(n, a))


def _theta_sp(n: int, a: int, b: int) -> Tuple[int, Tuple[int, int]]:
    # X -> J X^t J with J antidiagonal, signs +1 (top half) and -1 (bottom half)
    return _eps(n, _reflect(n, b)) * _eps(n, a), (_reflect(n, b), _reflect(n, a))


def _eigen_offdiag(n: int, rule):
    """Split off-diagonal matrix units into (+1, -1) eigenvectors of the rule."""
    plus, minus = [], []
    seen = set()
    for a in range(n):
        for b in range(n):
            if a == b or (a, b) in seen:
                continue
            s, (c, d) = rule(n, a, b)
            seen.add((a, b))
            seen.add((c, d))
            if (c, d) == (a, b):
                (plus if s == 1 else minus).append(((a, b), _unit(a, b)))
                continue
            plus.append(((a, b), _add((ONE, _unit(a, b)), (Scalar(s), _unit(c, d)))))
            minus.append(((a, b), _add((ONE, _unit(a, b)), (Scalar(-s), _unit(c, d)))))
    return plus, minus


def _t_basis(n: int) -> List[Mat]:
    return [_add((ONE, _unit(i, i)), (-ONE, _unit(_reflect(n, i), _reflect(n, i))))
            for i in range(n // 2)]


def _a_basis(n: int) -> List[Mat]:
    h = n // 2
    sym = [_add((ONE, _unit(i, i)), (ONE, _unit(_reflect(n, i), _reflect(n, i))))
           for i in range(h)]
    out = [_add((ONE, sym[i]), (-ONE, sym[i + 1])) for i in range(h - 1)]
    if n % 2:
        m = h
        out.append(_add((ONE, sym[h - 1]), (Scalar(-2), _unit(m, m))))
    return out


def build_so(n: int) -> LieAlgebra:
    """so(n) as matrices skew about the antidiagonal."""
    if n < 3:
        raise CatalogError("so(n) needs n >= 3")
    plus, _ = _eigen_offdiag(n, _theta_so)
    mats = [m for _, m in plus] + _t_basis(n)
    labels = ["K%d,%d" % (a + 1, b + 1) for (a, b), _ in plus]
    labels += ["T%d" % (i + 1) for i in range(n // 2)]
    return LieAlgebra.from_matrices(mats, labels, n, "so(%d)" % n)


def build_sp(n2: int) -> LieAlgebra:
    """sp(2n) preserving the antidiagonal form with signs (+,...,+,-,...,-)."""
    if n2 < 2 or n2 % 2:
        raise CatalogError("sp needs an even size >= 2")
    plus, _ = _eigen_offdiag(n2, _theta_sp)
    mats = [m for _, m in plus] + _t_basis(n2)
    labels = ["K%d,%d" % (a + 1, b + 1) for (a, b), _ in plus]
    labels += ["T%d" % (i + 1) for i in range(n2 // 2)]
    return LieAlgebra.from_matrices(mats, labels, n2, "sp(%d)" % n2)


@dataclass
class PosSystem:
    """Index partition p = p+ (+) a (+) p- ; plus[j] pairs with minus[j] under B."""

    plus: List[int]
    a: List[int]
    minus: List[int]


@dataclass
class SymmetricPair:
    id: str
    g: LieAlgebra
    theta: List[List[Scalar]]
    kIdx: List[int]
    pIdx: List[int]
    tIdx: List[int]
    aIdx: List[int]
    groupGenerators: List[List[List[Scalar]]]
    posSystems: List[PosSystem]
    tWeights: List[Tuple[Scalar, ...]]
    family: str = ""
    primary: bool = True
    group_name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def dims(self) -> Dict[str, int]:
        return {"g": self.g.dim, "k": len(self.kIdx), "p": len(self.pIdx),
                "t": len(self.tIdx), "a": len(self.aIdx)}

    def p_local(self, i: int) -> int:
        """Position of g-index ``i`` inside the p basis."""
        m = self._cache.get("p_local")
        if m is None:
            m = self._cache["p_local"] = {g: j for j, g in enumerate(self.pIdx)}
        return m[i]

    def k_local(self, i: int) -> int:
        m = self._cache.get("k_local")
        if m is None:
            m = self._cache["k_local"] = {g: j for j, g in enumerate(self.kIdx)}
        return m[i]

    def to_dict(self) -> dict:
        mat = lambda m: [[str(x) for x in row] for row in m]
        return {
            "id": self.id,
            "family": self.family,
            "primary": self.primary,
            "group": self.group_name,
            "g": self.g.to_dict(),
            "theta": mat(self.theta),
            "k": self.kIdx, "p": self.pIdx, "t": self.tIdx, "a": self.aIdx,
            "group_generators": [mat(m) for m in self.groupGenerators],
            "pos_systems": [{"plus": w.plus, "a": w.a, "minus": w.minus}
                            for w in self.posSystems],
            "t_weights": [[str(x) for x in w] for w in self.tWeights],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SymmetricPair":
        mat = lambda m: [[to_scalar(x) for x in row] for row in m]
        return cls(
            id=d["id"], g=LieAlgebra.from_dict(d["g"]), theta=mat(d["theta"]),
            kIdx=list(d["k"]), pIdx=list(d["p"]), tIdx=list(d["t"]), aIdx=list(d["a"]),
            groupGenerators=[mat(m) for m in d["group_generators"]],
            posSystems=[PosSystem(list(w["plus"]), list(w["a"]), list(w["minus"]))
                        for w in d["pos_systems"]],
            tWeights=[tuple(to_scalar(x) for x in w) for w in d["t_weights"]],
            family=d.get("family", ""), primary=d.get("primary", True),
            group_name=d.get("group", ""),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "SymmetricPair":
        return cls.from_dict(json.loads(text))


# catalog: id -> (family, n, stretch)
CATALOG = {
    "sl3-so3": ("AI", 3, False),
    "sl5-so5": ("AI", 5, False),
    "sl7-so7": ("AI", 7, True),
    "sl4-sp4": ("AII", 4, False),
    "sl6-sp6": ("AII", 6, True),
    "sl6-o6": ("AI", 6, True),
}

EXCLUDED = {"e6-f4": "(e6, f4) is out of catalog: exceptional algebras are not constructed"}


def pair_from_id(pid: str) -> SymmetricPair:
    if pid in EXCLUDED:
        raise CatalogError(EXCLUDED[pid])
    if pid not in CATALOG:
        raise CatalogError("unknown pair %r; known: %s" % (pid, ", ".join(sorted(CATALOG))))
    fam, n, _ = CATALOG[pid]
    return build_pair(fam, n)


def _lex_positive(w: Sequence[Scalar]) -> bool:
    for x in w:
        if x:
            return x.re > 0
    return False


def build_pair(family: str, n: int) -> SymmetricPair:
    """Symmetric pair (sl(n), k).

    ``AI``: k = so(n); for odd n the group is SO(n), for even n it is O(n).
    ``AII``: n even, k = sp(n), group Sp(n).
    """
    fam = family.upper()
    if fam in ("EIV", "E6", "E6-F4", "E6/F4"):
        raise CatalogError(EXCLUDED["e6-f4"])
    if fam == "AI":
        if n < 3:
            raise CatalogError("AI needs n >= 3")
        rule = _theta_so
        kname = "so(%d)" % n
    elif fam == "AII":
        if n < 4 or n % 2:
            raise CatalogError("AII needs even n >= 4")
        rule = _theta_sp
        kname = "sp(%d)" % n
    else:
        raise CatalogError("unsupported family %r (out of catalog)" % family)

    kroots, proots = _eigen_offdiag(n, rule)
    tb, ab = _t_basis(n), _a_basis(n)
    mats = tb + [m for _, m in kroots] + [m for _, m in proots] + ab
    labels = ["T%d" % (i + 1) for i in range(len(tb))]
    labels += ["K%d,%d" % (a + 1, b + 1) for (a, b), _ in kroots]
    labels += ["P%d,%d" % (a + 1, b + 1) for (a, b), _ in proots]
    labels += ["A%d" % (i + 1) for i in range(len(ab))]
    g = LieAlgebra.from_matrices(mats, labels, n, "sl(%d)" % n)

    nt, nkr, npr = len(tb), len(kroots), len(proots)
    tIdx = list(range(nt))
    kIdx = list(range(nt + nkr))
    pIdx = list(range(nt + nkr, g.dim))
    aIdx = list(range(nt + nkr + npr, g.dim))
    theta = [[ONE if i == j and i in kIdx else (-ONE if i == j else ZERO)
              for j in range(g.dim)] for i in range(g.dim)]

    weights = []
    for j in range(g.dim):
        w = []
        for t in tIdx:
            v = g.bracket(t, j)
            if not v:
                w.append(ZERO)
                continue
            if set(v) != {j}:
                raise AssertionError("basis vector %s is not a t-weight vector" % labels[j])
            w.append(v[j])
        weights.append(tuple(w))

    even_o = fam == "AI" and n % 2 == 0
    flips = [False, True] if even_o else [False]
    systems = []
    proot_idx = [i for i in pIdx if i not in aIdx]
    for flip in flips:
        plus = []
        for i in proot_idx:
            w = list(weights[i])
            if flip:
                w[-1] = -w[-1]
            if _lex_positive(w):
                plus.append(i)
        minus = []
        for i in plus:
            partner = [j for j in proot_idx if g.gram[i][j]]
            if len(partner) != 1:
                raise AssertionError("p+ vector without a unique B-partner")
            minus.append(partner[0])
        systems.append(PosSystem(plus, list(aIdx), minus))

    gens = []
    group_name = {"AI": "SO(%d)", "AII": "Sp(%d)"}[fam] % n
    if even_o:
        group_name = "O(%d)" % n
        # reflection preserving the antidiagonal form; conjugate to diag(1,..,1,-1)
        h = n // 2
        perm = {(i, i): ONE for i in range(n) if i not in (h - 1, h)}
        perm[(h - 1, h)] = ONE
        perm[(h, h - 1)] = ONE
        cols = []
        for j in range(g.dim):
            cols.append(g.coordinates(mat_mul(mat_mul(perm, g.matrices[j]), perm)))
        gens.append([[cols[j].get(i, ZERO) for j in range(g.dim)] for i in range(g.dim)])

    pid = "sl%d-%s%d" % (n, {"AI": "o" if even_o else "so", "AII": "sp"}[fam], n)
    return SymmetricPair(pid, g, theta, kIdx, pIdx, tIdx, aIdx, gens, systems,
                         weights, family=fam, primary=not even_o, group_name=group_name)


def half_weight_sum(pair: SymmetricPair, w: int = 0) -> Tuple[Scalar, ...]:
    """Half the sum of the t-weights of the p+ basis of system ``w``."""
    plus = pair.posSystems[w].plus
    nt = len(pair.tIdx)
    total = [ZERO] * nt
    for i in plus:
        total = [x + y for x, y in zip(total, pair.tWeights[i])]
    return tuple(x / 2 for x in total)


def k_algebra(pair: SymmetricPair) -> LieAlgebra:
    """k as a Lie algebra in its own right (indices local to kIdx)."""
    if "k_alg" in pair._cache:
        return pair._cache["k_alg"]
    g, loc = pair.g, {i: j for j, i in enumerate(pair.kIdx)}
    br = {}
    for a, i in enumerate(pair.kIdx):
        for b, j in enumerate(pair.kIdx):
            if a < b:
                v = g.bracket(i, j)
                if v:
                    br[(a, b)] = {loc[k]: c for k, c in v.items()}
    gram = [[g.gram[i][j] for j in pair.kIdx] for i in pair.kIdx]
    mats = [g.matrices[i] for i in pair.kIdx] if g.matrices else None
    alg = LieAlgebra([g.labels[i] for i in pair.kIdx], br, gram, mats, g.n, "k")
    pair._cache["k_alg"] = alg
    return alg


def act_matrix(m: List[List[Scalar]], x: Vec) -> Vec:
    out: Vec = {}
    for j, c in x.items():
        for i in range(len(m)):
            v = m[i][j]
            if v:
                w = out.get(i, ZERO) + v * c
                if w:
                    out[i] = w
                else:
                    del out[i]
    return out
