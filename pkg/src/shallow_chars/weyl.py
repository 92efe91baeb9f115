"""Affine Weyl group action and the intertwining checks built on it.

Elements are stored as a linear part (exact integer matrices on root and
coroot coordinates) plus a coroot-lattice translation, together with the
generating word they were built from.  Words use affine labels: letter 0
is the reflection through the level-one hyperplane of the highest root,
letters 1..l are the finite simple reflections.

The condition-star search is exact whenever its witness polytope is
bounded: boundedness is decided by Fourier-Motzkin elimination over
rationals, and in the bounded case every orbit point inside the polytope
is enumerated.  Otherwise the search is a bounded translation sweep and
a negative outcome is reported as inconclusive, never extrapolated.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

from .affine_roots import (
    AffineRoot,
    Point,
    barycenter,
    depth,
    simple_affine_roots,
)
from .characters import ShallowCharacter, char_depth, validate
from .context import Context
from .root_system import RootSystem, Root

Matrix = Tuple[Tuple[int, ...], ...]


def _eye(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _apply(m: Matrix, v: Sequence[int]) -> Tuple[int, ...]:
    n = len(m)
    return tuple(sum(m[i][j] * v[j] for j in range(n)) for i in range(n))


def _coroot_coords(rs: RootSystem, b: Root) -> Tuple[int, ...]:
    """Coordinates of b-dual over the simple coroots."""
    db = rs.length_sq(b) // 2
    out = []
    for i, c in enumerate(b):
        x = Fraction(c * rs.lengths[i], db)
        assert x.denominator == 1
        out.append(int(x))
    return tuple(out)


class AffineWeylElement:
    """t_translation composed with the product of the word's reflections."""

    def __init__(
        self,
        rs: RootSystem,
        root_map: Matrix,
        root_map_inv: Matrix,
        coroot_map: Matrix,
        coroot_map_inv: Matrix,
        translation: Tuple[int, ...],
        word: Tuple[int, ...],
        word_translation: Tuple[int, ...],
    ):
        self.rs = rs
        self.root_map = root_map
        self.root_map_inv = root_map_inv
        self.coroot_map = coroot_map
        self.coroot_map_inv = coroot_map_inv
        self.translation = translation
        self.word = word
        self.word_translation = word_translation

    # -- constructors --------------------------------------------------

    @classmethod
    def identity(cls, rs: RootSystem) -> "AffineWeylElement":
        eye = _eye(rs.rank)
        zero = (0,) * rs.rank
        return cls(rs, eye, eye, eye, eye, zero, (), zero)

    @classmethod
    def simple(cls, rs: RootSystem, i: int) -> "AffineWeylElement":
        l = rs.rank
        if not 0 <= i <= l:
            raise ValueError(f"no simple reflection {i} in rank {l}")
        zero = (0,) * l
        if i == 0:
            theta = rs.highest_root
            theta_co = _coroot_coords(rs, theta)
            rmap = tuple(
                tuple(
                    int(p == j) - rs.pairing(_unit(l, j), theta) * theta[p]
                    for j in range(l)
                )
                for p in range(l)
            )
            cmap = tuple(
                tuple(
                    int(p == j) - rs.pairing(theta, _unit(l, j)) * theta_co[p]
                    for j in range(l)
                )
                for p in range(l)
            )
            return cls(rs, rmap, rmap, cmap, cmap, theta_co, (0,), zero)
        f = i - 1
        rmap = tuple(
            tuple(int(p == j) - (rs.cartan[f][j] if p == f else 0) for j in range(l))
            for p in range(l)
        )
        cmap = tuple(
            tuple(int(p == j) - (rs.cartan[j][f] if p == f else 0) for j in range(l))
            for p in range(l)
        )
        return cls(rs, rmap, rmap, cmap, cmap, zero, (i,), zero)

    @classmethod
    def from_word(cls, rs: RootSystem, word: Sequence[int]) -> "AffineWeylElement":
        out = cls.identity(rs)
        for i in word:
            out = out.compose(cls.simple(rs, i))
        return out

    @classmethod
    def translation_by(cls, rs: RootSystem, k: Sequence[int]) -> "AffineWeylElement":
        eye = _eye(rs.rank)
        k = tuple(int(x) for x in k)
        return cls(rs, eye, eye, eye, eye, k, (), k)

    # -- group structure -----------------------------------------------

    def compose(self, other: "AffineWeylElement") -> "AffineWeylElement":
        k = tuple(
            a + b
            for a, b in zip(self.translation, _apply(self.coroot_map, other.translation))
        )
        return AffineWeylElement(
            self.rs,
            _mul(self.root_map, other.root_map),
            _mul(other.root_map_inv, self.root_map_inv),
            _mul(self.coroot_map, other.coroot_map),
            _mul(other.coroot_map_inv, self.coroot_map_inv),
            k,
            self.word + other.word,
            tuple(
                a + b
                for a, b in zip(
                    self.word_translation,
                    _apply(self.coroot_map, other.word_translation),
                )
            ),
        )

    def inverse(self) -> "AffineWeylElement":
        k = tuple(-x for x in _apply(self.coroot_map_inv, self.translation))
        wt = tuple(-x for x in _apply(self.coroot_map_inv, self.word_translation))
        return AffineWeylElement(
            self.rs,
            self.root_map_inv,
            self.root_map,
            self.coroot_map_inv,
            self.coroot_map,
            k,
            tuple(reversed(self.word)),
            wt,
        )

    def key(self) -> Tuple:
        return (self.root_map, self.translation)

    def is_identity(self) -> bool:
        return self.key() == AffineWeylElement.identity(self.rs).key()

    # -- actions ---------------------------------------------------------

    def act_on_root(self, alpha: AffineRoot) -> AffineRoot:
        a = _apply(self.root_map, alpha.gradient)
        assert self.rs.is_root(a)
        shift = sum(
            k * sum(a[p] * self.rs.cartan[j][p] for p in range(self.rs.rank))
            for j, k in enumerate(self.translation)
        )
        return AffineRoot(a, alpha.level - shift)

    def act_on_point(self, mu: Point) -> Point:
        l = self.rs.rank
        out = []
        for i in range(l):
            v = sum(self.root_map_inv[p][i] * mu[p] for p in range(l))
            v += sum(
                k * self.rs.cartan[j][i] for j, k in enumerate(self.translation)
            )
            out.append(Fraction(v))
        return tuple(out)

    def sign(self, pinning, alpha: AffineRoot) -> int:
        """Sign of the conjugation u_alpha(x) -> u_{w alpha}(eta x).

        Computed from this element's word, folding one reflection at a
        time; the translation part acts by +1.  The value depends on the
        chosen word and lift convention, not just on the group element.
        """
        gradient = alpha.gradient
        eta = 1
        for letter in reversed(self.word):
            if letter == 0:
                r = tuple(-c for c in self.rs.highest_root)
                f = AffineWeylElement.simple(self.rs, 0)
                eta *= pinning.reflection_sign(r, gradient)
                gradient = _apply(f.root_map, gradient)
            else:
                r = _unit(self.rs.rank, letter - 1)
                eta *= pinning.reflection_sign(r, gradient)
                gradient = self.rs.simple_reflect(letter - 1, gradient)
        return eta

    def to_json(self) -> Dict:
        return {
            "word": list(self.word),
            "translation": list(self.word_translation),
        }

    def __repr__(self) -> str:
        return f"AffineWeylElement(word={self.word}, t={self.word_translation})"


def _unit(l: int, j: int) -> Tuple[int, ...]:
    return tuple(int(p == j) for p in range(l))


def act_on_root(w: AffineWeylElement, alpha: AffineRoot) -> AffineRoot:
    return w.act_on_root(alpha)


def act_on_point(w: AffineWeylElement, mu) -> Point:
    return w.act_on_point(tuple(Fraction(x) for x in mu))


# ----------------------------------------------------------------------
# finite enumeration helpers

def _finite_elements(rs: RootSystem, cap: int = 100_000) -> List[AffineWeylElement]:
    """The finite Weyl group, breadth first, words in letters 1..l."""
    out = [AffineWeylElement.identity(rs)]
    seen = {out[0].key()}
    frontier = list(out)
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(1, rs.rank + 1):
                child = w.compose(AffineWeylElement.simple(rs, i))
                if child.key() not in seen:
                    seen.add(child.key())
                    nxt.append(child)
        out.extend(nxt)
        frontier = nxt
        assert len(out) <= cap, "finite Weyl group enumeration too large"
    return out


def _ball(rs: RootSystem, radius: int) -> List[AffineWeylElement]:
    """All affine Weyl elements of word length at most radius, BFS order."""
    out = [AffineWeylElement.identity(rs)]
    seen = {out[0].key()}
    frontier = list(out)
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for i in range(rs.rank + 1):
                child = w.compose(AffineWeylElement.simple(rs, i))
                if child.key() not in seen:
                    seen.add(child.key())
                    nxt.append(child)
        out.extend(nxt)
        frontier = nxt
    return out


def long_element(rs: RootSystem, subset) -> AffineWeylElement:
    """Longest element of the standard parabolic on the given letters.

    The subset must be a proper nonempty part of {0, ..., l}, so the
    parabolic is finite.  The result is checked to send every listed
    simple affine root to a negative one.
    """
    letters = sorted(set(subset))
    if not letters:
        raise ValueError("subset of simple reflections must be nonempty")
    if len(letters) > rs.rank or any(i < 0 or i > rs.rank for i in letters):
        raise ValueError("subset must be a proper part of the affine diagram")
    elements = [AffineWeylElement.identity(rs)]
    seen = {elements[0].key()}
    frontier = list(elements)
    while frontier:
        nxt = []
        for w in frontier:
            for i in letters:
                child = w.compose(AffineWeylElement.simple(rs, i))
                if child.key() not in seen:
                    seen.add(child.key())
                    nxt.append(child)
        elements.extend(nxt)
        frontier = nxt
        assert len(elements) <= 100_000, "parabolic subgroup enumeration too large"
    last_level = len(elements[-1].word)
    longest = [w for w in elements if len(w.word) == last_level]
    assert len(longest) == 1, "longest element must be unique"
    w = longest[0]
    simples = simple_affine_roots(rs)
    from .affine_roots import is_positive_affine

    for i in letters:
        image = w.act_on_root(simples[i])
        assert not is_positive_affine(rs, image), "long element postcondition"
    return w


# ----------------------------------------------------------------------
# support spaces and condition (*)

def support(ctx: Context, mu, s) -> FrozenSet[AffineRoot]:
    """Shallow roots (at the context's point) with alpha(mu) >= s."""
    mu = tuple(Fraction(x) for x in mu)
    s = Fraction(s)
    return frozenset(r for r in ctx.roots if depth(r, mu) >= s)


InequalityRows = List[Tuple[Tuple[Fraction, ...], Fraction]]


def _fm_eliminate(rows: InequalityRows, var: int) -> InequalityRows:
    zero, pos, neg = [], [], []
    for coeffs, rhs in rows:
        c = coeffs[var]
        if c == 0:
            zero.append((coeffs, rhs))
        elif c > 0:
            pos.append((coeffs, rhs))
        else:
            neg.append((coeffs, rhs))
    out = list(zero)
    for cp, bp in pos:
        for cn, bn in neg:
            a, c = cp[var], cn[var]
            coeffs = tuple(-c * x + a * y for x, y in zip(cp, cn))
            out.append((coeffs, -c * bp + a * bn))
    return out


def _fm_feasible(rows: InequalityRows, nvars: int) -> bool:
    for var in range(nvars):
        rows = _fm_eliminate(rows, var)
    return all(rhs >= 0 for _, rhs in rows)


class _Infeasible(Exception):
    pass


def _fm_interval(
    rows: InequalityRows, nvars: int, keep: int
) -> Tuple[Optional[Fraction], Optional[Fraction]]:
    for var in range(nvars):
        if var != keep:
            rows = _fm_eliminate(rows, var)
    lo, hi = None, None
    for coeffs, rhs in rows:
        c = coeffs[keep]
        if c > 0:
            bound = rhs / c
            hi = bound if hi is None else min(hi, bound)
        elif c < 0:
            bound = rhs / c
            lo = bound if lo is None else max(lo, bound)
        elif rhs < 0:
            raise _Infeasible
    return lo, hi


def _polytope_bounded(gradients: List[Root], rank: int) -> bool:
    """Is {mu : a(mu) <= const for all listed gradients} bounded?

    Equivalent to the recession cone {a(mu) <= 0} being trivial, tested
    one coordinate direction at a time.
    """
    cone: InequalityRows = [
        (tuple(Fraction(c) for c in a), Fraction(0)) for a in gradients
    ]
    for i in range(rank):
        for sgn in (1, -1):
            ray = cone + [
                (tuple(Fraction(-sgn if p == i else 0) for p in range(rank)), Fraction(-1))
            ]
            if _fm_feasible(ray, rank):
                return False
    return True


class StarVerdict(NamedTuple):
    status: str  # "holds" | "fails" | "inconclusive"
    witness: Optional[AffineWeylElement]
    bounded: bool
    radius: Optional[int]

    def to_json(self) -> Dict:
        return {
            "condition_star": self.status,
            "witness": self.witness.to_json() if self.witness else None,
            "polytope_bounded": self.bounded,
            "radius": self.radius,
        }


def _orbit_witness_ranges(
    ctx: Context,
    w_fin: AffineWeylElement,
    rows_mu: InequalityRows,
    radius: Optional[int],
) -> Optional[List[range]]:
    """Integer k-ranges with w_fin(lambda) + k of possible interest."""
    rs = ctx.rs
    l = rs.rank
    nu = w_fin.act_on_point(ctx.point)
    rows_k: InequalityRows = []
    for coeffs, rhs in rows_mu:
        # coefficients in k_j of a(nu + sum k_j a_j-dual)
        kc = tuple(
            sum(coeffs[i] * rs.cartan[j][i] for i in range(l)) for j in range(l)
        )
        rows_k.append((kc, rhs - sum(c * x for c, x in zip(coeffs, nu))))
    ranges = []
    for j in range(l):
        try:
            lo, hi = _fm_interval(rows_k, l, j)
        except _Infeasible:
            return [range(0)] * l
        if radius is None:
            if lo is None or hi is None:
                return None
            ranges.append(range(math.ceil(lo), math.floor(hi) + 1))
        else:
            lo = -radius if lo is None else max(-radius, math.ceil(lo))
            hi = radius if hi is None else min(radius, math.floor(hi))
            ranges.append(range(lo, hi + 1))
    return ranges


def condition_star(chi: ShallowCharacter, radius: int = 4) -> StarVerdict:
    """Search for w with w(lambda) != lambda avoiding chi's deep supports.

    A witness is an orbit point mu = w(lambda) with alpha(mu) <= depth(chi)
    for every shallow alpha carrying a nontrivial parameter.  If the
    polytope those inequalities cut out is bounded, the whole orbit
    inside it is enumerated and the verdict is exact; otherwise only
    translations up to the radius are swept.
    """
    ctx = chi.context
    rs = ctx.rs
    supp = [r for r, c in zip(ctx.roots, chi.vector) if c]
    if not supp:
        raise ValueError("condition (*) is degenerate for the trivial character")
    r = char_depth(chi)
    rows_mu: InequalityRows = [
        (tuple(Fraction(c) for c in a.gradient), r - a.level) for a in supp
    ]
    bounded = _polytope_bounded([a.gradient for a in supp], rs.rank)
    sweep = None if bounded else radius

    for w_fin in _finite_elements(rs):
        ranges = _orbit_witness_ranges(ctx, w_fin, rows_mu, sweep)
        assert ranges is not None
        for k in itertools.product(*ranges):
            w = AffineWeylElement(
                rs,
                w_fin.root_map,
                w_fin.root_map_inv,
                w_fin.coroot_map,
                w_fin.coroot_map_inv,
                tuple(k),
                w_fin.word,
                tuple(k),
            )
            mu = w.act_on_point(ctx.point)
            if mu == ctx.point:
                continue
            if all(depth(a, mu) <= r for a in supp):
                return StarVerdict("fails", w, bounded, None if bounded else radius)
    if bounded:
        return StarVerdict("holds", None, True, None)
    return StarVerdict("inconclusive", None, False, radius)


class BarycenterReport(NamedTuple):
    all_simple_nontrivial: bool
    star: StarVerdict


def barycenter_criterion(chi: ShallowCharacter) -> BarycenterReport:
    """All simple parameters nontrivial?  Cross-checked against condition (*).

    Only defined for a validated character of minimal positive depth at
    the barycenter, where the two verdicts must agree.
    """
    ctx = chi.context
    if ctx.point != barycenter(ctx.rs):
        raise ValueError("criterion applies at the barycenter only")
    h = ctx.rs.coxeter_number
    if char_depth(chi) != Fraction(1, h):
        raise ValueError("criterion applies to minimal-depth characters only")
    if not validate(chi).ok:
        raise ValueError("character must satisfy the relations")
    simples = simple_affine_roots(ctx.rs)
    value = all(chi.vector[ctx.index[a]] for a in simples)
    star = condition_star(chi)
    assert star.status in ("holds", "fails")
    assert (star.status == "holds") == value, "criterion and condition (*) disagree"
    return BarycenterReport(value, star)


# ----------------------------------------------------------------------
# intertwining

class ReductionVerdict(NamedTuple):
    compatible: bool
    violated: Optional[AffineRoot]

    def __bool__(self) -> bool:
        return self.compatible


def intertwining_reduction(chi: ShallowCharacter, w: AffineWeylElement) -> ReductionVerdict:
    """Compare chi with its w-conjugate on the roots where both live.

    For each affine root beta with beta(lambda) > 0 and (w beta)(lambda) > 0,
    the parameters must satisfy c_{w beta} = eta c_beta, where eta is the
    conjugation sign and parameters of non-shallow roots are zero.  The
    first violating beta (sorted by gradient then level) is reported.
    """
    ctx = chi.context
    winv = w.inverse()
    candidates = set(ctx.roots) | {winv.act_on_root(r) for r in ctx.roots}
    f = ctx.field

    def param(alpha: AffineRoot) -> int:
        pos = ctx.index.get(alpha)
        return chi.vector[pos] if pos is not None else 0

    for beta in sorted(candidates):
        if depth(beta, ctx.point) <= 0:
            continue
        image = w.act_on_root(beta)
        if depth(image, ctx.point) <= 0:
            continue
        eta = w.sign(ctx.pinning, beta)
        if param(image) != f.mul(f.from_int(eta), param(beta)):
            return ReductionVerdict(False, beta)
    return ReductionVerdict(True, None)


class ScanResult(NamedTuple):
    verdict: str  # "collapses_to_P_chi" | "counterexample" | "inconclusive"
    witness: Optional[AffineWeylElement]
    radius: int
    moved_checked: int
    stabilizer: Tuple[AffineWeylElement, ...]

    def to_json(self) -> Dict:
        return {
            "intertwining": self.verdict,
            "witness": self.witness.to_json() if self.witness else None,
            "radius": self.radius,
            "moved_checked": self.moved_checked,
            "stabilizer_size": len(self.stabilizer),
        }


def intertwining_scan(chi: ShallowCharacter, radius: int = 8) -> ScanResult:
    """Sweep the word-length ball; look for a compatible w moving lambda.

    Every element moving lambda but conjugating chi compatibly is a
    counterexample to the collapse; if all moved elements are violated,
    the collapse verdict holds for the scanned ball (the radius is part
    of the answer).  Elements fixing lambda and chi form the reported
    stabilizer shadow.
    """
    ctx = chi.context
    if not validate(chi).ok:
        raise ValueError("scan requires a character satisfying the relations")
    stabilizer = []
    moved = 0
    for w in _ball(ctx.rs, radius):
        fixes = w.act_on_point(ctx.point) == ctx.point
        verdict = intertwining_reduction(chi, w)
        if fixes:
            if verdict.compatible:
                stabilizer.append(w)
            continue
        moved += 1
        if verdict.compatible:
            return ScanResult("counterexample", w, radius, moved, tuple(stabilizer))
    if moved == 0:
        return ScanResult("inconclusive", None, radius, 0, tuple(stabilizer))
    return ScanResult("collapses_to_P_chi", None, radius, moved, tuple(stabilizer))
