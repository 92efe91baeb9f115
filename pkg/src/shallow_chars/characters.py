"""Characters of the shallow quotient, their relations, and the solution space.

A character is a parameter vector: one element of F_q per shallow root,
with chi(u_alpha(x)) = psi(c_alpha * x) for the fixed additive character
psi = exp(2 pi i Tr(.) / p).  It extends to a homomorphism exactly when,
for every non-parallel pair of shallow roots, the product of its values
over the shallow commutator targets is trivial as a function of the two
generator parameters.

The solver turns those product conditions into an F_p-linear system.
Over F_q the condition for a pair is that a polynomial function in two
variables vanishes identically; writing the trace as a sum of Frobenius
twists and reducing exponents modulo q - 1 splits it into one F_q-linear
equation per reduced monomial, hence m rows over F_p each.  A brute
oracle that filters all q^N parameter vectors through the validator
cross-checks the solver on small contexts.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .affine_roots import AffineRoot, is_indecomposable, point_to_json
from .context import Context
from .finite_field import char_product_trivial


class ShallowCharacter:
    def __init__(self, context: Context, params: Dict[AffineRoot, int]):
        if set(params) != set(context.roots):
            raise ValueError("params must be defined on exactly the shallow roots")
        self.context = context
        self.vector: Tuple[int, ...] = tuple(params[r] for r in context.roots)
        for v in self.vector:
            if not 0 <= v < context.q:
                raise ValueError(f"parameter {v} outside F_{context.q}")
        f = context.field
        # per-root lookup chi(u_alpha(x)), filled once
        self.table: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(f.trace(f.mul(c, x)) for x in f.elements()) for c in self.vector
        )

    @classmethod
    def from_vector(cls, context: Context, vector: Sequence[int]) -> "ShallowCharacter":
        return cls(context, dict(zip(context.roots, vector)))

    @property
    def params(self) -> Dict[AffineRoot, int]:
        return dict(zip(self.context.roots, self.vector))

    def is_trivial(self) -> bool:
        return not any(self.vector)

    def root_eval(self, position: int, x: int) -> int:
        return self.table[position][x]

    def to_json(self) -> Dict:
        return {
            "lambda": point_to_json(self.context.point),
            "q": self.context.q,
            "params": [
                {"root": r.to_json(), "c": c}
                for r, c in zip(self.context.roots, self.vector)
            ],
        }

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ShallowCharacter)
            and self.context is other.context
            and self.vector == other.vector
        )

    def __hash__(self) -> int:
        return hash(self.vector)

    def __repr__(self) -> str:
        return f"ShallowCharacter({self.vector})"


def character_from_json(context: Context, data: Dict) -> ShallowCharacter:
    params = {}
    for entry in data["params"]:
        root = AffineRoot(tuple(entry["root"]["gradient"]), entry["root"]["level"])
        params[root] = entry["c"]
    return ShallowCharacter(context, params)


class ValidationResult(NamedTuple):
    ok: bool
    violations: Tuple[Tuple[AffineRoot, AffineRoot], ...]

    def __bool__(self) -> bool:
        return self.ok


def validate(chi: ShallowCharacter) -> ValidationResult:
    """Check every pair relation; collect the pairs that fail."""
    ctx = chi.context
    bad: List[Tuple[AffineRoot, AffineRoot]] = []
    for p1 in range(ctx.n_roots):
        for p2 in range(p1 + 1, ctx.n_roots):
            terms = ctx.expansion_terms(p1, p2)
            if not terms:
                continue
            packed = [(chi.vector[pos], (i, j), c) for pos, i, j, c in terms]
            if not char_product_trivial(ctx.field, packed):
                bad.append((ctx.roots[p1], ctx.roots[p2]))
    return ValidationResult(not bad, tuple(bad))


def char_depth(chi: ShallowCharacter) -> Fraction:
    """Largest depth carrying a non-trivial parameter; 0 for the trivial map."""
    depths = [
        d for d, c in zip(chi.context.depths, chi.vector) if c
    ]
    return max(depths, default=Fraction(0))


def indecomposable_extension(
    context: Context, partial: Dict[AffineRoot, int]
) -> ShallowCharacter:
    """Extend values on the indecomposable shallow roots by zero.

    Every commutator target splits as a sum of two shallow roots, so the
    relations only constrain decomposable parameters; the zero extension
    is therefore always valid, whatever the prescribed values.
    """
    indec = {
        r for r in context.roots if is_indecomposable(context.rs, r, context.facet)
    }
    if set(partial) != indec:
        raise ValueError("partial map must be defined on exactly the indecomposables")
    params = {r: partial.get(r, 0) for r in context.roots}
    chi = ShallowCharacter(context, params)
    result = validate(chi)
    assert result.ok, "zero extension must satisfy all relations"
    return chi


# ----------------------------------------------------------------------
# linear algebra mod p

def _rref(rows: List[List[int]], p: int) -> Tuple[List[List[int]], List[int]]:
    mat = [row[:] for row in rows]
    pivots: List[int] = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = next((k for k in range(r, len(mat)) if mat[k][col] % p), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = pow(mat[r][col], -1, p)
        mat[r] = [(v * inv) % p for v in mat[r]]
        for k in range(len(mat)):
            if k != r and mat[k][col]:
                factor = mat[k][col]
                mat[k] = [(a - factor * b) % p for a, b in zip(mat[k], mat[r])]
        pivots.append(col)
        r += 1
    return mat[:r], pivots


def _nullspace(rows: List[List[int]], ncols: int, p: int) -> List[Tuple[int, ...]]:
    reduced, pivots = _rref(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for row, pc in zip(reduced, pivots):
            vec[pc] = (-row[fc]) % p
        basis.append(tuple(vec))
    return basis


def _in_span(rows: List[List[int]], vec: Sequence[int], p: int) -> bool:
    before, _ = _rref(rows, p)
    after, _ = _rref(rows + [list(vec)], p)
    return len(after) == len(before)


# ----------------------------------------------------------------------
# the solution space

class CharacterSpace(NamedTuple):
    context: Context
    basis: Tuple[ShallowCharacter, ...]
    dimension: int
    filtration: Tuple[Tuple[Fraction, int], ...]
    cross_checked: bool

    @property
    def epipelagic_dimension(self) -> int:
        return self.filtration[0][1] if self.filtration else 0

    def elements(self) -> Iterator[ShallowCharacter]:
        """All F_p-combinations of the basis."""
        ctx = self.context
        f = ctx.field
        for coeffs in itertools.product(range(f.p), repeat=len(self.basis)):
            vec = [0] * ctx.n_roots
            for coeff, chi in zip(coeffs, self.basis):
                if coeff:
                    scale = f.from_int(coeff)
                    for t, c in enumerate(chi.vector):
                        vec[t] = f.add(vec[t], f.mul(scale, c))
            yield ShallowCharacter.from_vector(ctx, vec)

    def to_json(self) -> Dict:
        return {
            "context": self.context.to_json(),
            "dimension": self.dimension,
            "filtration": [[str(d), n] for d, n in self.filtration],
            "cross_checked": self.cross_checked,
            "basis": [chi.to_json() for chi in self.basis],
        }


def _reduce_exponent(k: int, q: int) -> int:
    assert k >= 1
    return (k - 1) % (q - 1) + 1 if q > 2 else 1


def relation_rows(ctx: Context) -> List[List[int]]:
    """F_p-linear rows cutting out the valid parameter vectors.

    Variables are the F_p-coordinates of the parameters, m per shallow
    root.  For each pair relation, each Frobenius twist of each term is
    binned by its reduced monomial; a bin must vanish as an element of
    F_q, giving m rows.
    """
    f = ctx.field
    p, m, q = f.p, f.m, f.q
    nvars = ctx.n_roots * m
    rows: List[List[int]] = []
    for p1 in range(ctx.n_roots):
        for p2 in range(p1 + 1, ctx.n_roots):
            terms = ctx.expansion_terms(p1, p2)
            if not terms:
                continue
            bins: Dict[Tuple[int, int], List[Tuple[int, int, int]]] = {}
            for pos, i, j, c in terms:
                if c % p == 0:
                    continue
                for e in range(m):
                    mono = (
                        _reduce_exponent(i * p**e, q),
                        _reduce_exponent(j * p**e, q),
                    )
                    bins.setdefault(mono, []).append((pos, e, c % p))
            for contributions in bins.values():
                block = [[0] * nvars for _ in range(m)]
                for pos, e, c in contributions:
                    for d in range(m):
                        image = f.mul(f.from_int(c), f.pow(p**d, p**e))
                        for r, coeff in enumerate(f.coeffs(image)):
                            col = pos * m + d
                            block[r][col] = (block[r][col] + coeff) % p
                rows.extend(row for row in block if any(row))
    return rows


def _vector_from_coords(ctx: Context, coords: Sequence[int]) -> Tuple[int, ...]:
    m = ctx.field.m
    p = ctx.field.p
    out = []
    for t in range(ctx.n_roots):
        out.append(sum(coords[t * m + d] * p**d for d in range(m)))
    return tuple(out)


def enumerate_valid(ctx: Context) -> Iterator[ShallowCharacter]:
    """Brute-force oracle: filter every parameter vector through validate."""
    for vec in itertools.product(range(ctx.q), repeat=ctx.n_roots):
        chi = ShallowCharacter.from_vector(ctx, vec)
        if validate(chi).ok:
            yield chi


def solve_space(ctx: Context, cross_check: Optional[bool] = None) -> CharacterSpace:
    """Solve the relation system; return a filtration-adapted basis.

    The basis is ordered so that its first dim V_r vectors span the
    subspace of characters of depth at most r, for each depth r in the
    enumeration.  cross_check=None enumerates all q^N vectors when that
    is at most 2**12; True forces the oracle (error above 2**20); False
    skips it.
    """
    f = ctx.field
    p, m = f.p, f.m
    total = ctx.q**ctx.n_roots
    if cross_check is None:
        cross_check = total <= 2**12
    elif cross_check and total > 2**20:
        raise ValueError("context too large for the exhaustive oracle")
    nvars = ctx.n_roots * m
    rows = relation_rows(ctx)

    levels = sorted(set(ctx.depths))
    adapted: List[Tuple[int, ...]] = []
    filtration: List[Tuple[Fraction, int]] = []
    for level in levels:
        forced = list(rows)
        for t, d in enumerate(ctx.depths):
            if d > level:
                for e in range(m):
                    extra = [0] * nvars
                    extra[t * m + e] = 1
                    forced.append(extra)
        space = _nullspace(forced, nvars, p)
        for vec in space:
            if not _in_span([list(v) for v in adapted], vec, p):
                adapted.append(vec)
        filtration.append((level, len(space)))
    assert not filtration or len(adapted) == filtration[-1][1]

    basis = tuple(
        ShallowCharacter.from_vector(ctx, _vector_from_coords(ctx, coords))
        for coords in adapted
    )
    for chi in basis:
        assert validate(chi).ok, "solver produced an invalid character"

    checked = False
    if cross_check:
        space = CharacterSpace(ctx, basis, len(basis), tuple(filtration), False)
        spanned = sorted(chi.vector for chi in space.elements())
        brute = sorted(chi.vector for chi in enumerate_valid(ctx))
        assert spanned == brute, "linear solver disagrees with the oracle"
        checked = True

    return CharacterSpace(ctx, basis, len(basis), tuple(filtration), checked)


def scalar_act(z: int, chi: ShallowCharacter) -> ShallowCharacter:
    """Precompose with scaling of all generator parameters by z.

    Scaling u_alpha(x) to u_alpha(zx) pulls the character back to the
    parameters z^{-1} c_alpha.  The output is revalidated: over prime
    fields the relation system is F_p-linear so this never fires, but
    the check is kept in the contract.
    """
    ctx = chi.context
    f = ctx.field
    if z not in f.units():
        raise ValueError(f"{z} is not a unit in F_{f.q}")
    if not validate(chi).ok:
        raise ValueError("scalar action is only defined on valid characters")
    zinv = f.inv(z)
    out = ShallowCharacter.from_vector(
        ctx, tuple(f.mul(zinv, c) for c in chi.vector)
    )
    result = validate(out)
    assert result.ok, "scaled character failed revalidation"
    return out
