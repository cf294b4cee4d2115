import dataclasses

import numpy as np
import pytest
from sympy.polys.domains import QQ

from stringnet.backends.fixtures import bundled_backend
from stringnet.backends.groups import cyclic_group, symmetric_group
from stringnet.core import exact
from stringnet.core.errors import CompositionError, LawViolation, StringNetError, UniversalityError
from stringnet.core.morphism import Morphism
from stringnet.monad.center import center_count, circle_hom_dimension, distinct_solutions
from stringnet.monad.coend import build_coend, make_coend
from stringnet.monad.halfbraiding import (
    check_halfbraiding,
    halfbraiding_hom_basis,
    halfbraiding_to_module,
    module_to_halfbraiding,
    solve_halfbraidings,
)
from stringnet.monad.karoubi import karoubi_compare
from stringnet.monad.kleisli import KleisliMorphism, forget, induction, kleisli_compose, kleisli_identity
from stringnet.monad.modules import (
    TModule,
    check_module,
    endomorphism_dimensions,
    free_module,
    module_defects,
    module_hom_basis,
)
from stringnet.monad.monad import central_monad, compare_twistings
from stringnet.monad.presheaf import (
    functoriality_defect,
    module_from_presheaf,
    module_round_trip,
    presheaf_from_module,
    representability_check,
    split_pair_presheaf,
)
from stringnet.monad.twisting import from_powers, twisting
from tests.helpers import random_morphism

SEED = 5
RIGID_BACKENDS = ["vect-z2", "vect-s3", "hopf-z2", "hopf-h4"]


def _objects(backend):
    generators = [w for w in backend.generators() if w.dim <= 2][:3]
    return [backend.unit()] + generators + [backend.tensor_all(*generators[:2])]


def _random_kleisli(monad, x, y, rng) -> KleisliMorphism:
    return KleisliMorphism(x, y, random_morphism(monad.backend, x, monad.T(y), rng))


def _conjugacy_classes(table):
    n = len(table)
    inverse = [next(j for j in range(n) if table[i][j] == 0) for i in range(n)]
    classes, seen = [], set()
    for g in range(n):
        if g in seen:
            continue
        orbit = {table[table[h][g]][inverse[h]] for h in range(n)}
        seen |= orbit
        classes.append(sorted(orbit))
    return classes


def _drinfeld_center_size(table):
    """Sum over conjugacy classes of the number of classes of the centralizer."""
    total = 0
    for orbit in _conjugacy_classes(table):
        g = orbit[0]
        centralizer = [h for h in range(len(table)) if table[h][g] == table[g][h]]
        index = {h: i for i, h in enumerate(centralizer)}
        sub = [[index[table[a][b]] for b in centralizer] for a in centralizer]
        total += len(_conjugacy_classes(sub))
    return total


@pytest.mark.parametrize("n, powers", [(1, (0, 0)), (2, (-1, 0)), (0, (1, 0)), (-1, (1, -1)), (-3, (1, -3))])
def test_twisting_powers(n, powers):
    twist = twisting(n)
    assert (twist.f_power, twist.g_power) == powers
    assert twist.g_power - twist.f_power == n - 1
    assert twist.seam_shift == n - 2
    assert from_powers(*powers) == twist


@pytest.mark.parametrize("backend_id", RIGID_BACKENDS)
def test_monad_laws(backend_id):
    backend = bundled_backend(backend_id, QQ)
    monad = central_monad(backend, 1)
    objects = _objects(backend)
    for y in objects:
        monad.coend.verify_universality(y)
        monad.coend.verify_dinaturality(y)
    monad.check_laws(objects)


@pytest.mark.parametrize("backend_id", ["vect-z2", "hopf-h4"])
@pytest.mark.parametrize("n", [-1, 0, 2])
def test_twisted_monad_laws(backend_id, n):
    backend = bundled_backend(backend_id, QQ)
    monad = central_monad(backend, n)
    objects = _objects(backend)
    for y in objects:
        monad.coend.verify_universality(y)
    monad.check_laws(objects)


def test_both_engines_agree_on_graded_spaces(vect_z2):
    semisimple = make_coend(vect_z2, twisting(1))
    hopf = make_coend(vect_z2, twisting(1), "hopf")
    assert semisimple.strategy == "SemisimpleCoend"
    assert hopf.strategy == "HopfCoend"
    for y in vect_z2.generators():
        assert semisimple.obj(y).dim == hopf.obj(y).dim
        hopf.verify_universality(y)


def test_unknown_strategy(vect_z2):
    with pytest.raises(ValueError):
        make_coend(vect_z2, twisting(1), "spectral")


def test_build_coend(vect_z2, hopf_h4):
    _, g = vect_z2.generators()
    assert build_coend(0, 0, g, vect_z2).obj.dim == 2
    H = hopf_h4.module_word("H")
    assert build_coend(0, 0, H, hopf_h4).obj.dim == 16


def test_too_few_probes_are_caught(hopf_h4):
    k = hopf_h4.module_word("k")
    coend = make_coend(hopf_h4, twisting(1), probes=[hopf_h4.realize(k)])
    with pytest.raises(UniversalityError):
        coend.verify_universality(k)


def test_naturality(monad_s3, monad_h4):
    rng = np.random.default_rng(SEED)
    for monad in (monad_s3, monad_h4):
        objects = _objects(monad.backend)
        for x in objects:
            for y in objects:
                f = random_morphism(monad.backend, x, y, rng)
                assert monad.naturality_defect(f) is None, (x, y)


def test_broken_multiplication_is_reported(vect_z2):
    monad = central_monad(vect_z2, 1)
    _, g = vect_z2.generators()
    mu = monad.multiplication(g)
    monad._mu[g] = mu.scaled(QQ(2))
    assert "left unit" in monad.law_defects(g)
    with pytest.raises(LawViolation) as info:
        monad.check_laws([g])
    assert info.value.law == "left unit"


@pytest.mark.parametrize("monad_name", ["monad_z2", "monad_s3", "monad_h4"])
def test_kleisli_category(request, monad_name):
    monad = request.getfixturevalue(monad_name)
    rng = np.random.default_rng(SEED)
    objects = _objects(monad.backend)[1:3]
    for _ in range(3):
        x, y, z, w = (objects[int(i)] for i in rng.integers(0, len(objects), 4))
        f = _random_kleisli(monad, x, y, rng)
        g = _random_kleisli(monad, y, z, rng)
        h = _random_kleisli(monad, z, w, rng)
        assert kleisli_compose(monad, kleisli_identity(monad, y), f) == f
        assert kleisli_compose(monad, f, kleisli_identity(monad, x)) == f
        assert kleisli_compose(monad, h, kleisli_compose(monad, g, f)) == kleisli_compose(
            monad, kleisli_compose(monad, h, g), f
        )


def test_induction_is_a_functor(monad_h4, hopf_h4):
    rng = np.random.default_rng(SEED)
    k, s = hopf_h4.module_word("k"), hopf_h4.module_word("s")
    H = hopf_h4.module_word("H")
    f = random_morphism(hopf_h4, H, k, rng)
    g = random_morphism(hopf_h4, s, H, rng)
    assert kleisli_compose(monad_h4, induction(monad_h4, f), induction(monad_h4, g)) == induction(
        monad_h4, hopf_h4.compose(f, g)
    )
    assert exact.equal(forget(monad_h4, induction(monad_h4, f)).matrix, monad_h4.functor(f).matrix)


def test_kleisli_composition_checks_types(monad_z2, vect_z2):
    e, g = vect_z2.generators()
    with pytest.raises(CompositionError):
        kleisli_compose(monad_z2, kleisli_identity(monad_z2, e), kleisli_identity(monad_z2, g))


@pytest.mark.parametrize("monad_name", ["monad_z2", "monad_s3", "monad_h4"])
def test_free_modules(request, monad_name):
    monad = request.getfixturevalue(monad_name)
    for c in _objects(monad.backend)[1:3]:
        assert check_module(monad, free_module(monad, c))


def test_module_defects_are_named(monad_z2, vect_z2):
    _, g = vect_z2.generators()
    free = free_module(monad_z2, g)
    doubled = TModule(free.obj, free.action.scaled(QQ(2)), "doubled")
    assert "unit" in module_defects(monad_z2, doubled)
    mistyped = TModule(g, Morphism(g, g, exact.identity(1, QQ)))
    assert module_defects(monad_z2, mistyped) == ["typing"]


def test_free_module_maps(monad_z2, vect_z2):
    e, g = vect_z2.generators()
    assert len(module_hom_basis(monad_z2, free_module(monad_z2, g), free_module(monad_z2, g))) == 2
    assert len(module_hom_basis(monad_z2, free_module(monad_z2, e), free_module(monad_z2, g))) == 0


@pytest.mark.parametrize(
    "monad_name, label, count",
    [("monad_z2", "e", 2), ("monad_z2", "g", 2), ("monad_s3", "e", 2), ("monad_s3", "(23)", 0), ("monad_s3", "(123)", 0)],
)
def test_halfbraidings_on_simples(request, monad_name, label, count):
    monad = request.getfixturevalue(monad_name)
    x = next(w for w in monad.backend.generators() if str(w) == f"({label})")
    solutions = solve_halfbraidings(monad, x)
    assert len(solutions.modules) == count
    assert solutions.irrational == 0
    for module, hb in zip(solutions.modules, solutions.halfbraidings):
        check_halfbraiding(monad, hb)
        back = halfbraiding_to_module(monad, hb)
        assert exact.equal(back.action.matrix, module.action.matrix)
        again = module_to_halfbraiding(monad, back)
        assert all(exact.equal(a.matrix, b.matrix) for a, b in zip(again.components, hb.components))


def test_distinct_halfbraidings_are_not_isomorphic(monad_z2, vect_z2):
    _, g = vect_z2.generators()
    plus, minus = solve_halfbraidings(monad_z2, g).modules
    assert len(module_hom_basis(monad_z2, plus, minus)) == 0
    assert len(module_hom_basis(monad_z2, plus, plus)) == 1


def test_solver_needs_rationals():
    monad = central_monad(bundled_backend("vect-z2", exact.parse_field("GF(7)")), 1)
    with pytest.raises(StringNetError):
        solve_halfbraidings(monad, monad.backend.generators()[1])


@pytest.mark.parametrize("monad_name", ["monad_z2", "monad_s3"])
def test_presheaf_round_trips(request, monad_name):
    monad = request.getfixturevalue(monad_name)
    probes = monad.backend.generators()
    modules = [free_module(monad, c) for c in probes[:2]]
    modules += solve_halfbraidings(monad, probes[0]).modules
    rng = np.random.default_rng(SEED)
    for module in modules:
        assert module_round_trip(monad, module, probes)
        F = presheaf_from_module(monad, module, probes)
        assert functoriality_defect(monad, F, rng) is None


def test_split_pairs_are_represented_by_their_coequalizer(monad_z2, vect_z2):
    probes = vect_z2.generators()
    module = solve_halfbraidings(monad_z2, probes[1]).modules[0]
    F = split_pair_presheaf(monad_z2, module, probes)
    found = representability_check(monad_z2, F)
    assert found.representable
    assert found.obj == module.obj
    assert functoriality_defect(monad_z2, F, np.random.default_rng(SEED)) is None
    rebuilt = module_from_presheaf(monad_z2, F)
    assert rebuilt.obj == module.obj
    assert check_module(monad_z2, rebuilt)


def test_unrepresentable_presheaf_has_a_witness(monad_z2, vect_z2):
    e, g = vect_z2.generators()
    free = free_module(monad_z2, g)
    # relations that kill everything on g but nothing on e
    F = presheaf_from_module(monad_z2, free, [e, g])
    F = dataclasses.replace(
        F, relations=lambda c: vect_z2.hom_basis(c, F.ambient) if c == g else [], representing=None, label="partial"
    )
    found = representability_check(monad_z2, F)
    assert not found.representable
    assert found.witness is not None
    with pytest.raises(UniversalityError):
        module_from_presheaf(monad_z2, F)


@pytest.mark.parametrize("group, monad_name", [(cyclic_group(2), "monad_z2"), (symmetric_group(3), "monad_s3")])
def test_center_counts(request, group, monad_name):
    monad = request.getfixturevalue(monad_name)
    count = center_count(monad)
    assert count.simples == _drinfeld_center_size([list(row) for row in group.table])
    assert count.radical_dimension == 0


def test_center_count_values(monad_z2, monad_s3):
    z2 = center_count(monad_z2)
    assert z2.simples == 4
    # every simple of Z(Vect_Z2) sits on a simple object
    assert len(z2.solved) == 4
    assert z2.unsolved == ()
    s3 = center_count(monad_s3)
    assert s3.simples == 8
    assert len(s3.solved) == 2
    assert all(label.startswith("(e)#") for label in s3.solved)
    assert s3.unsolved == ()


def test_center_count_without_solved_objects(monad_z2):
    count = center_count(monad_z2, objects=[])
    assert count.solved == ()
    assert count.simples == 4


def test_distinct_solutions_drop_repeats(monad_z2, vect_z2):
    _, g = vect_z2.generators()
    plus, minus = solve_halfbraidings(monad_z2, g).modules
    again = dataclasses.replace(plus, label="again")
    kept = distinct_solutions(monad_z2, [plus, minus, again])
    assert [str(m) for m in kept] == [str(plus), str(minus)]
    dims = endomorphism_dimensions(monad_z2, [plus, minus])
    assert dims == {
        (str(plus), str(plus)): 1,
        (str(plus), str(minus)): 0,
        (str(minus), str(plus)): 0,
        (str(minus), str(minus)): 1,
    }


def test_halfbraiding_maps_agree_with_module_maps(monad_s3, vect_s3):
    e = next(w for w in vect_s3.generators() if str(w) == "(e)")
    modules = [free_module(monad_s3, c) for c in vect_s3.generators()[:3]]
    modules += solve_halfbraidings(monad_s3, e).modules
    braided = [module_to_halfbraiding(monad_s3, m) for m in modules]
    for a, ha in zip(modules, braided):
        for b, hb in zip(modules, braided):
            maps = halfbraiding_hom_basis(monad_s3, ha, hb)
            assert len(maps) == len(module_hom_basis(monad_s3, a, b))
            for f in maps:
                lhs = exact.matmul(f.matrix, a.action.matrix)
                assert exact.equal(lhs, exact.matmul(b.action.matrix, monad_s3.functor(f).matrix))


def test_center_count_of_the_group_algebra(hopf_z2):
    assert center_count(central_monad(hopf_z2, 1)).simples == 4


def test_center_count_needs_rationals():
    monad = central_monad(bundled_backend("vect-z2", exact.parse_field("GF(7)")), 1)
    with pytest.raises(StringNetError):
        center_count(monad)


def test_circle_hom_dimensions(monad_z2, monad_s3, vect_z2, vect_s3):
    e, g = vect_z2.generators()
    assert circle_hom_dimension(monad_z2, g, g) == 2
    assert circle_hom_dimension(monad_z2, e, g) == 0
    by_name = {str(w)[1:-1]: w for w in vect_s3.generators()}
    assert circle_hom_dimension(monad_s3, by_name["e"], by_name["e"]) == 6
    assert circle_hom_dimension(monad_s3, by_name["(23)"], by_name["(23)"]) == 2
    assert circle_hom_dimension(monad_s3, by_name["(12)"], by_name["(23)"]) == 2
    assert circle_hom_dimension(monad_s3, by_name["(123)"], by_name["(23)"]) == 0


def test_karoubi_gap_for_sweedler(monad_h4, hopf_h4):
    report = karoubi_compare(monad_h4, hopf_h4.generators())
    assert report.witnesses
    assert not report.all_retracts


def test_karoubi_all_retracts_for_s3(monad_s3, vect_s3):
    report = karoubi_compare(monad_s3, vect_s3.generators()[:4])
    assert report.entries
    assert report.all_retracts


def test_twistings_differ_for_sweedler(hopf_h4):
    comparisons = [compare_twistings(hopf_h4, 0, 1, y) for y in _objects(hopf_h4)]
    assert not all(c.agree for c in comparisons)


@pytest.mark.parametrize("m", [-1, 0, 2])
def test_twistings_agree_for_graded_spaces(vect_z2, m):
    for y in _objects(vect_z2):
        comparison = compare_twistings(vect_z2, 1, m, y)
        assert comparison.agree, comparison
