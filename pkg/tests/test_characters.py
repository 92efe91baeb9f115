import itertools
from fractions import Fraction

import pytest

from shallow_chars.affine_roots import AffineRoot, barycenter
from shallow_chars.characters import (
    ShallowCharacter,
    char_depth,
    character_from_json,
    enumerate_valid,
    indecomposable_extension,
    scalar_act,
    solve_space,
    validate,
)
from shallow_chars.context import Context
from shallow_chars.root_system import build_root_system

from conftest import SP4_PARAMS


def _flip_a12(ctx):
    params = dict(SP4_PARAMS)
    params[ctx.roots[4]] = 0
    return ShallowCharacter(ctx, params)


def test_domain_validation(c2_ctx):
    missing = dict(SP4_PARAMS)
    missing.pop(AffineRoot((1, 0), 0))
    with pytest.raises(ValueError):
        ShallowCharacter(c2_ctx, missing)
    extra = dict(SP4_PARAMS)
    extra[AffineRoot((1, 0), 1)] = 1
    with pytest.raises(ValueError):
        ShallowCharacter(c2_ctx, extra)
    out_of_range = dict(SP4_PARAMS)
    out_of_range[AffineRoot((1, 0), 0)] = 2
    with pytest.raises(ValueError):
        ShallowCharacter(c2_ctx, out_of_range)
    with pytest.raises(ValueError):
        ShallowCharacter.from_vector(c2_ctx, (1, 0, 0))


def test_sp4_example_is_valid(sp4_example):
    assert validate(sp4_example).ok
    assert not sp4_example.is_trivial()
    assert char_depth(sp4_example) == Fraction(3, 4)


def test_single_violation_reported(c2_ctx):
    result = validate(_flip_a12(c2_ctx))
    assert not result.ok
    assert result.violations == ((c2_ctx.roots[1], c2_ctx.roots[2]),)


def test_c2_q2_solution_space(c2_ctx):
    space = solve_space(c2_ctx)
    assert space.cross_checked  # small enough for the automatic oracle
    assert space.dimension == 5
    assert space.filtration == (
        (Fraction(1, 4), 3),
        (Fraction(1, 2), 3),
        (Fraction(3, 4), 5),
    )
    assert space.epipelagic_dimension == 3
    for chi in space.basis[:3]:
        assert char_depth(chi) == Fraction(1, 4)
    seen = set()
    for chi in space.elements():
        v = chi.vector
        assert v[4] == v[7] and v[3] == v[6] and v[5] == 0
        assert validate(chi).ok
        seen.add(v)
    assert len(seen) == 32
    assert sorted(seen) == sorted(chi.vector for chi in enumerate_valid(c2_ctx))


def test_a2_solution_spaces(a2, a2_ctx):
    assert solve_space(a2_ctx).dimension == 3
    ctx3 = Context(a2, barycenter(a2), q=3)
    space3 = solve_space(ctx3)
    assert space3.dimension == 3
    # every parameter on a decomposable root is forced to vanish
    for chi in space3.basis:
        assert all(v == 0 for v in chi.vector[3:])


def test_c2_q3_solution_space(c2):
    ctx = Context(c2, barycenter(c2), q=3)
    space = solve_space(ctx, cross_check=True)
    assert space.cross_checked
    assert space.dimension == 3
    assert space.filtration == (
        (Fraction(1, 4), 3),
        (Fraction(1, 2), 3),
        (Fraction(3, 4), 3),
    )
    for chi in space.basis:
        assert all(v == 0 for v in chi.vector[3:])


def test_cross_check_flag(c2_ctx):
    assert not solve_space(c2_ctx, cross_check=False).cross_checked
    g2 = build_root_system("G2")
    big = Context(g2, barycenter(g2), q=4)
    with pytest.raises(ValueError):
        solve_space(big, cross_check=True)  # 4^12 vectors is past the cap


def test_valid_set_closed_under_addition(c2_ctx):
    space = solve_space(c2_ctx, cross_check=False)
    f = c2_ctx.field
    members = {chi.vector for chi in space.elements()}
    for u in list(members)[:8]:
        for w in list(members)[:8]:
            s = tuple(f.add(a, b) for a, b in zip(u, w))
            assert s in members


def test_scalar_action(c2, c2_ctx, sp4_example):
    assert scalar_act(1, sp4_example) == sp4_example
    with pytest.raises(ValueError):
        scalar_act(0, sp4_example)
    with pytest.raises(ValueError):
        scalar_act(1, _flip_a12(c2_ctx))
    ctx3 = Context(c2, barycenter(c2), q=3)
    chi = ShallowCharacter.from_vector(ctx3, (1, 2, 1, 0, 0, 0, 0, 0))
    acted = scalar_act(2, chi)
    # z = 2 is its own inverse mod 3, so parameters double
    assert acted.vector == (2, 1, 2, 0, 0, 0, 0, 0)
    assert scalar_act(2, acted) == chi


def test_trivial_character(c2_ctx):
    chi = ShallowCharacter.from_vector(c2_ctx, (0,) * 8)
    assert chi.is_trivial()
    assert char_depth(chi) == Fraction(0)
    assert validate(chi).ok


def test_indecomposable_extension(c2, c2_ctx):
    simples = c2_ctx.roots[:3]
    for bits in itertools.product((0, 1), repeat=3):
        chi = indecomposable_extension(c2_ctx, dict(zip(simples, bits)))
        assert chi.vector[:3] == bits
        assert chi.vector[3:] == (0,) * 5
        assert validate(chi).ok
    with pytest.raises(ValueError):
        indecomposable_extension(c2_ctx, {simples[0]: 1})
    with pytest.raises(ValueError):
        indecomposable_extension(
            c2_ctx, dict.fromkeys(list(simples) + [c2_ctx.roots[4]], 1)
        )


def test_json_roundtrip(c2_ctx, sp4_example):
    data = sp4_example.to_json()
    assert data["q"] == 2
    assert data["lambda"] == ["1/4", "1/4"]
    assert character_from_json(c2_ctx, data) == sp4_example


def test_space_json(c2_ctx):
    data = solve_space(c2_ctx, cross_check=False).to_json()
    assert data["dimension"] == 5
    assert data["filtration"] == [["1/4", 3], ["1/2", 3], ["3/4", 5]]
    assert len(data["basis"]) == 5
