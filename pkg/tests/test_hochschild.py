"""Tests for bar complexes, their dual side, form images, and averaging."""

from fractions import Fraction
from itertools import product
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qforms.cyclotomic import CycField
from qforms.errors import ParameterError
from qforms.freealg import FreeAlgebra, words_of_weight
from qforms.hochschild import (
    HochBasisLabel,
    UnfoldedDatum,
    basis_labels,
    build_complex,
    build_complex_f,
    build_dual_complex,
    degree_labels,
    fibre_permutations,
    fold_element,
    lift_weight,
    refinements,
    s_chain_maps,
    slot_maps,
    symmetrize_average,
    symmetrize_complex_maps,
    tensor_action,
    tor_dims,
)
from qforms.linalg import CycMatrix
from qforms.rootdata import CartanDatum
from qforms.verma import VermaModule, weight_bracket

A1 = CartanDatum.preset("A1")
A2 = CartanDatum.preset("A2")
B2 = CartanDatum.preset("B2")


def algebra(datum, l, k=1):
    return FreeAlgebra(CycField(l=l, k=k, varpi=datum.varpi), datum)


def term_dims_oracle(datum, n, nu):
    """Independent dimension count for every degree, by convolving the
    weight-space dimensions of the free algebra: degree -r holds r strictly
    positive algebra factors and n unrestricted ones."""
    mults = nu.multiplicities

    def convolve(a, b):
        out = {}
        for ka, va in a.items():
            for kb, vb in b.items():
                key = tuple(x + y for x, y in zip(ka, kb))
                if all(x <= m for x, m in zip(key, mults)):
                    out[key] = out.get(key, 0) + va * vb
        return out

    below = [
        tuple(ms)
        for ms in product(*(range(m + 1) for m in mults))
    ]
    full = {ms: len(words_of_weight(datum, datum.root_vec(ms))) for ms in below}
    positive = {ms: d for ms, d in full.items() if any(ms)}
    dims = []
    for r in range(nu.depth + 1):
        acc = {(0,) * datum.n: 1}
        for _ in range(r):
            acc = convolve(acc, positive)
        for _ in range(n):
            acc = convolve(acc, full)
        dims.append(acc.get(tuple(mults), 0))
    return tuple(dims)  # indexed by r, i.e. reading degrees 0, -1, ..., -depth


def coinvariants_dim(alg, weights, nu):
    """Second route to the degree-zero cohomology: quotient the nu weight
    space of the module tuple by everything hit from one step below."""
    datum = alg.datum
    modules = [VermaModule(alg, lam) for lam in weights]
    n = len(modules)
    top = degree_labels(datum, n, 0, nu)
    index = {lbl: k for k, lbl in enumerate(top)}
    rows = []
    for i in datum.colours:
        mults = list(nu.multiplicities)
        if mults[i] == 0:
            continue
        mults[i] -= 1
        for lbl in degree_labels(datum, n, 0, datum.root_vec(mults)):
            image = tensor_action(
                alg.monomial((i,)), modules, [alg.monomial(w) for w in lbl]
            )
            row = [alg.field.zero] * len(top)
            for key, c in image.items():
                row[index[key]] = c
            rows.append(row)
    if not rows:
        return len(top)
    mat = CycMatrix(alg.field, rows)
    return len(top) - mat.rank()


# -- the action ------------------------------------------------------------------


def test_single_module_action_is_left_multiplication():
    alg = algebra(A2, 5)
    V = VermaModule(alg, A2.weight([2, 1]))
    out = tensor_action(alg.monomial((0, 1)), [V], [alg.monomial((1,))])
    assert out == {((0, 1, 1),): alg.field.one}


def test_two_factor_action_crossing_coefficient():
    alg = algebra(A1, 5)
    lam0, lam1 = A1.weight([1]), A1.weight([2])
    mods = [VermaModule(alg, lam0), VermaModule(alg, lam1)]
    vac = alg.monomial(())
    out = tensor_action(alg.monomial((0,)), mods, [vac, vac])
    # the piece crossing the first factor picks up zeta^(-<lam0, alpha_i>)
    crossing = alg.field.zeta_pow(-lam0.dot_root(A1.unit_root(0)))
    assert out[((0,), ())] == alg.field.one
    assert out[((), (0,))] == crossing


def test_action_errors():
    alg = algebra(A1, 5)
    V = VermaModule(alg, A1.weight([1]))
    with pytest.raises(ParameterError):
        tensor_action(alg.monomial((0,)), [], [])
    with pytest.raises(ParameterError):
        tensor_action(alg.monomial((0,)), [V], [])


@settings(max_examples=30, deadline=None)
@given(
    st.lists(st.integers(0, 1), min_size=1, max_size=2),
    st.lists(st.integers(0, 1), min_size=1, max_size=2),
    st.lists(st.integers(0, 1), min_size=0, max_size=2),
    st.lists(st.integers(0, 1), min_size=0, max_size=2),
)
def test_action_is_associative(wa, wb, y0, y1):
    alg = algebra(A2, 5)
    mods = [VermaModule(alg, A2.weight([1, 1])), VermaModule(alg, A2.weight([2, 0]))]
    vecs = [alg.monomial(tuple(y0)), alg.monomial(tuple(y1))]
    a, b = alg.monomial(tuple(wa)), alg.monomial(tuple(wb))
    once = tensor_action(a * b, mods, vecs)
    inner = tensor_action(b, mods, vecs)
    twice = {}
    for key, c in inner.items():
        for key2, c2 in tensor_action(a, mods, [alg.monomial(w) for w in key]).items():
            acc = twice.get(key2)
            contrib = c * c2
            twice[key2] = contrib if acc is None else acc + contrib
    twice = {k: v for k, v in twice.items() if not v.is_zero()}
    assert once == twice


# -- basis labels ----------------------------------------------------------------


def test_degree_labels_sl2_depth_two():
    nu = A1.root_vec([2])
    assert degree_labels(A1, 1, 0, nu) == ((((0, 0),),))
    assert degree_labels(A1, 1, 1, nu) == (((0,), (0,)), ((0, 0), ()))
    assert degree_labels(A1, 1, 2, nu) == (((0,), (0,), ()),)


def test_degree_labels_match_convolution_counts():
    for datum, n, mults in [
        (A1, 1, (3,)),
        (A1, 2, (2,)),
        (A2, 1, (1, 1)),
        (A2, 2, (2, 1)),
        (B2, 1, (1, 1)),
    ]:
        nu = datum.root_vec(mults)
        expect = term_dims_oracle(datum, n, nu)
        for r in range(nu.depth + 1):
            assert len(degree_labels(datum, n, r, nu)) == expect[r]


def test_degree_labels_out_of_range():
    nu = A1.root_vec([2])
    assert degree_labels(A1, 1, 3, nu) == ()
    with pytest.raises(ParameterError):
        degree_labels(A1, 0, 0, nu)


def test_slot_label_roundtrip_matches_word_labels():
    # on a set of labelled points the (slots, order) pairs and the word
    # tuples are two descriptions of the same basis
    points = UnfoldedDatum(A1, (0, 0, 0))
    chi = points.point_weight
    for n in (1, 2):
        for r in range(4):
            from_words = set(degree_labels(points, n, r, chi))
            labels = basis_labels(3, n, r)
            as_words = {lbl.words() for lbl in labels}
            assert from_words == as_words
            assert len(labels) == len(as_words)
            for lbl in labels:
                assert HochBasisLabel.from_words(lbl.words(), n) == lbl


def test_slot_maps_and_refinements_counts():
    # every positive slot occupied; refinement count is the product of
    # factorials of the slot sizes
    assert slot_maps(2, 1, 2) == ((1, 2), (2, 1))
    rho = (1, 1, 0)
    assert len(refinements(rho)) == 2
    total = sum(len(refinements(r)) for r in slot_maps(3, 1, 1))
    assert total == len(degree_labels(UnfoldedDatum(A1, (0, 0, 0)), 1, 1,
                                      UnfoldedDatum(A1, (0, 0, 0)).point_weight))


def test_hoch_basis_label_validation():
    with pytest.raises(ParameterError):
        HochBasisLabel((1, 2), (2, 1), 1)  # tau must refine rho
    with pytest.raises(ParameterError):
        HochBasisLabel((2, 2), (1, 2), 1)  # slot 1 unoccupied
    with pytest.raises(ParameterError):
        HochBasisLabel((0, 1), (1, 1), 1)  # tau not a bijection
    with pytest.raises(ParameterError):
        HochBasisLabel((-1, 1), (1, 2), 1)  # module slot below range
    lbl = HochBasisLabel((1, 0), (2, 1), 1)
    assert lbl.r == 1 and lbl.words() == ((0,), (1,))


# -- the primal complex ----------------------------------------------------------


def test_sl2_complex_dims_and_exactness():
    alg = algebra(A1, 5)
    bar = build_complex(alg, [A1.weight([1])], A1.root_vec([2]))
    assert bar.dims == (1, 2, 1)
    assert bar.min_degree == -2
    assert bar.cohomology_dims() == {-2: 0, -1: 0, 0: 0}


def test_complex_at_weight_zero():
    alg = algebra(A1, 5)
    bar = build_complex(alg, [A1.weight([1])], A1.root_vec([0]))
    assert bar.dims == (1,)
    assert bar.cohomology_dims() == {0: 1}
    assert tor_dims(alg, [A1.weight([1])], A1.root_vec([0])) == (1,)


def test_free_modules_have_no_higher_tor():
    # a single highest-weight module is free, and so is a tuple of them:
    # away from weight zero only degree 0 survives, with dimension counting
    # the (n-1)-fold products of algebra weight spaces
    alg = algebra(A1, 5)
    for coords in ([1], [5]):
        assert tor_dims(alg, [A1.weight(coords)], A1.unit_root(0)) == (0, 0)
        assert tor_dims(alg, [A1.weight(coords)], A1.root_vec([2])) == (0, 0, 0)
    two = [A1.weight([1]), A1.weight([2])]
    for depth in (1, 2, 3):
        nu = A1.root_vec([depth])
        dims = tor_dims(alg, two, nu)
        assert dims[0] == len(words_of_weight(A1, nu))
        assert all(d == 0 for d in dims[1:])
    alg2 = algebra(A2, 5)
    pair = [A2.weight([1, 1]), A2.weight([2, 1])]
    nu = A2.root_vec([1, 1])
    dims = tor_dims(alg2, pair, nu)
    assert dims[0] == len(words_of_weight(A2, nu))
    assert all(d == 0 for d in dims[1:])


def test_degree_zero_agrees_with_direct_coinvariants():
    alg = algebra(A2, 5)
    weights = [A2.weight([1, 1]), A2.weight([2, 0])]
    for mults in [(1, 0), (1, 1), (2, 1)]:
        nu = A2.root_vec(mults)
        assert tor_dims(alg, weights, nu)[0] == coinvariants_dim(alg, weights, nu)


def test_complex_construction_sweep():
    # d*d = 0 is asserted inside the builder; the sweep gives it teeth
    alg = algebra(A1, 5)
    lam = A1.weight([2])
    for depth in range(1, 6):
        build_complex(alg, [lam], A1.root_vec([depth]))
    for n, depth in [(2, 4), (3, 3)]:
        build_complex(alg, [lam] * n, A1.root_vec([depth]))
    alg2 = algebra(A2, 5)
    for n in (1, 2):
        build_complex(alg2, [A2.weight([1, 2])] * n, A2.root_vec([2, 1]))
    algb = algebra(B2, 5)
    build_complex(algb, [B2.weight([1, 1]), B2.weight([0, 2])], B2.root_vec([1, 1]))


def test_labels_and_index_access():
    alg = algebra(A1, 5)
    bar = build_complex(alg, [A1.weight([1])], A1.root_vec([2]))
    assert bar.labels(-1) == (((0,), (0,)), ((0, 0), ()))
    assert bar.label_index(-1, ((0, 0), ())) == 1
    with pytest.raises(ParameterError):
        bar.label_index(-1, ((0,), (0, 0)))


# -- the dual complex ------------------------------------------------------------


def test_dual_complex_one_step_is_the_weight_bracket():
    alg = algebra(A1, 5)
    for coords in ([1], [2], [5]):
        lam = A1.weight(coords)
        dual = build_dual_complex(alg, [lam], A1.unit_root(0))
        expect = weight_bracket(alg, lam, 0)
        assert dual.diffs[0].rows == ((expect,),)


def test_dual_complex_detects_degenerate_weights():
    # [<i,lam>] = 0 exactly when <i,lam> is divisible by l: then both
    # cohomology groups jump from 0 to 1
    alg = algebra(A1, 5)
    nu = A1.unit_root(0)
    generic = build_dual_complex(alg, [A1.weight([1])], nu)
    assert generic.cohomology_dims() == {-1: 0, 0: 0}
    degenerate = build_dual_complex(alg, [A1.weight([5])], nu)
    assert degenerate.cohomology_dims() == {-1: 1, 0: 1}


def test_dual_complex_sweep():
    alg = algebra(A1, 5)
    for coords, depth in [([1], 3), ([4], 4), ([5], 2)]:
        build_dual_complex(alg, [A1.weight(coords)], A1.root_vec([depth]))
    build_dual_complex(alg, [A1.weight([1]), A1.weight([2])], A1.root_vec([2]))
    alg2 = algebra(A2, 5)
    build_dual_complex(alg2, [A2.weight([1, 1]), A2.weight([2, 1])], A2.root_vec([1, 1]))


# -- form maps and the image complex ----------------------------------------------


def test_form_maps_are_symmetric_and_degree_zero_is_the_gram_matrix():
    alg = algebra(A1, 5)
    lam = A1.weight([2])
    nu = A1.root_vec([2])
    bar = build_complex(alg, [lam], nu)
    maps = s_chain_maps(bar)
    for m in maps:
        assert m == m.transpose()
    V = VermaModule(alg, lam)
    assert maps[-1] == V.gram(nu)
    with pytest.raises(ParameterError):
        s_chain_maps(build_dual_complex(alg, [lam], nu))


def test_image_complex_equals_full_complex_for_nondegenerate_weights():
    # away from the bad locus every form is invertible and nothing collapses
    alg = algebra(A1, 7)
    lam = A1.weight([3])
    for depth in (1, 2, 3):
        nu = A1.root_vec([depth])
        full = build_complex(alg, [lam], nu)
        image = build_complex_f(alg, [lam], nu)
        assert image.dims == full.dims


def test_image_complex_at_weight_zero():
    alg = algebra(A1, 5)
    image = build_complex_f(alg, [A1.weight([3])], A1.root_vec([0]))
    assert image.dims == (1,)
    assert image.cohomology_dims() == {0: 1}


def test_image_complex_steinberg_is_exact_away_from_zero():
    # at the Steinberg weight the quotient module is free of rank one over
    # the quotient algebra, so cohomology is a single line at weight zero
    for l in (3, 5):
        alg = algebra(A1, l)
        lam = A1.weight([l - 1])
        for depth in range(1, l):
            coh = build_complex_f(alg, [lam], A1.root_vec([depth]))
            assert all(d == 0 for d in coh.cohomology_dims().values())


def test_image_complex_trivial_module_has_periodic_tor():
    # for <i,lam> = 0 mod l the simple quotient is the trivial module and
    # the quotient algebra is a truncated polynomial algebra: its classical
    # minimal resolution alternates theta and theta^(l-1), so Tor_r sits in
    # weight (r//2)*l + r%2 and nowhere else
    l = 3
    alg = algebra(A1, l)
    lam = A1.weight([l])
    tor_weight = {r: (r // 2) * l + r % 2 for r in range(6)}
    for depth in range(5):
        coh = build_complex_f(alg, [lam], A1.root_vec([depth])).cohomology_dims()
        for degree, dim in coh.items():
            expect = 1 if tor_weight.get(-degree) == depth else 0
            assert dim == expect, (depth, degree, dim)


def test_image_complex_steinberg_pair_kunneth():
    # a tensor square of Steinberg modules is free over the quotient
    # algebra; generator weights follow from dividing Poincare series,
    # which for two Steinberg factors at sl2 is the series of the algebra
    l = 3
    alg = algebra(A1, l)
    lam = A1.weight([l - 1])
    f_dims = {0: 1, 1: 1, 2: 1}
    for depth in range(5):
        coh = build_complex_f(alg, [lam, lam], A1.root_vec([depth])).cohomology_dims()
        assert coh[0] == f_dims.get(depth, 0)
        assert all(dim == 0 for degree, dim in coh.items() if degree < 0)


def test_image_complex_checks_multi_module_chain_maps():
    # building the image verifies degreewise that the forms intertwine the
    # two differentials; a convention error anywhere would raise
    alg = algebra(A1, 5)
    build_complex_f(alg, [A1.weight([1]), A1.weight([2])], A1.root_vec([3]))
    build_complex_f(alg, [A1.weight([1]), A1.weight([1]), A1.weight([2])],
                    A1.root_vec([2]))
    alg2 = algebra(A2, 5)
    build_complex_f(alg2, [A2.weight([1, 1]), A2.weight([2, 1])], A2.root_vec([1, 1]))
    algb = algebra(B2, 5)
    build_complex_f(algb, [B2.weight([1, 1]), B2.weight([2, 0])], B2.root_vec([1, 1]))


# -- labelled points and averaging -------------------------------------------------


def test_unfolded_datum_basics():
    points = UnfoldedDatum(A2, (0, 1, 0))
    assert points.n == 3
    assert points.dot[0][2] == A2.dot[0][0]
    assert points.dot[0][1] == A2.dot[0][1]
    assert points.d(1) == A2.d(1)
    assert points.cartan(0, 2) == 2  # same colour twice pairs like a double bond
    assert points.cartan(0, 1) == A2.cartan(0, 1)
    folded = points.folded(points.point_weight)
    assert folded.multiplicities == (2, 1)
    with pytest.raises(ParameterError):
        UnfoldedDatum(A2, ())
    with pytest.raises(ParameterError):
        UnfoldedDatum(A2, (0, 3))


def test_lift_weight_repeats_coordinates():
    points = UnfoldedDatum(A2, (1, 0, 1))
    lam = A2.weight([2, 5])
    lifted = lift_weight(points, lam)
    assert lifted.coords == (Fraction(5), Fraction(2), Fraction(5))
    with pytest.raises(ParameterError):
        lift_weight(points, B2.weight([1, 1]))


def test_symmetrize_single_letter():
    alg = algebra(A1, 5)
    out = symmetrize_average(alg.theta(0), (0,))
    assert out.terms == {(0,): alg.field.one}


def test_symmetrize_square_and_fold():
    alg = algebra(A1, 5)
    x = alg.monomial((0, 0), 3)
    spread = symmetrize_average(x, (0, 0))
    assert spread.terms == {(0, 1): alg.field.num(3), (1, 0): alg.field.num(3)}
    assert fold_element(spread, alg).terms == {(0, 0): alg.field.num(6)}


def test_symmetrize_multiplicity_free_keeps_coefficients():
    alg = algebra(A2, 5)
    z = alg.field.zeta_pow(1)
    x = alg.monomial((0, 1)) + alg.monomial((1, 0)).scale(z)
    spread = symmetrize_average(x, (0, 1))
    assert spread.terms == {(0, 1): alg.field.one, (1, 0): z}


def test_symmetrize_after_fold_sums_over_symmetries():
    alg = algebra(A1, 5)
    points = UnfoldedDatum(A1, (0, 0))
    palg = FreeAlgebra(alg.field, points)
    y = palg.monomial((0, 1), 2)
    folded = fold_element(y, alg)
    spread = symmetrize_average(folded, (0, 0))
    sigma_sum = {}
    for sigma in fibre_permutations((0, 0)):
        for w, c in y.terms.items():
            key = tuple(sigma[j] for j in w)
            acc = sigma_sum.get(key)
            sigma_sum[key] = c if acc is None else acc + c
    assert spread.terms == sigma_sum


def test_symmetrize_errors():
    alg = algebra(A2, 5)
    with pytest.raises(ParameterError):
        symmetrize_average(alg.monomial((0, 1)), (0, 0))  # wrong colour counts
    with pytest.raises(ParameterError):
        symmetrize_average(alg.zero(), (0,))
    points = UnfoldedDatum(A2, (0, 1))
    palg = FreeAlgebra(alg.field, points)
    with pytest.raises(ParameterError):
        symmetrize_average(palg.monomial((0, 1)), (0, 1))
    with pytest.raises(ParameterError):
        fold_element(alg.monomial((0,)))


def test_fibre_permutations_order():
    assert fibre_permutations((0, 0)) == ((0, 1), (1, 0))
    assert len(fibre_permutations((0, 0, 1))) == 2
    assert len(fibre_permutations((0, 0, 0, 1, 1))) == 12


@settings(max_examples=25, deadline=None)
@given(
    st.permutations([0, 0, 1]),
    st.integers(-3, 3).filter(bool),
)
def test_fold_after_symmetrize_scales(word, coeff):
    alg = algebra(A2, 5)
    x = alg.monomial(tuple(word), coeff)
    spread = symmetrize_average(x, (0, 0, 1))
    assert fold_element(spread, alg).terms == x.scale(2).terms


def _averaging_setup(datum, l, coords, fibre, n=1, dual=False):
    alg = algebra(datum, l)
    points = UnfoldedDatum(datum, fibre)
    palg = FreeAlgebra(alg.field, points)
    lam = datum.weight(coords)
    nu = datum.root_vec([fibre.count(c) for c in datum.colours])
    builder = build_dual_complex if dual else build_complex
    src = builder(alg, [lam] * n, nu)
    dst = builder(palg, [lift_weight(points, lam)] * n, points.point_weight)
    return src, dst


@pytest.mark.parametrize(
    "datum,coords,fibre,n,dual",
    [
        (A1, [2], (0, 0), 1, False),
        (A1, [2], (0, 0), 2, False),
        (A1, [1], (0, 0, 0), 1, False),
        (A1, [2], (0, 0), 1, True),
        (A2, [1, 1], (0, 1), 2, False),
        (A2, [2, 1], (0, 0, 1), 1, False),
    ],
)
def test_averaging_is_a_chain_map_with_adjoint_fold(datum, coords, fibre, n, dual):
    src, dst = _averaging_setup(datum, 5, coords, fibre, n, dual)
    field = src.field
    A = symmetrize_complex_maps(src, dst)
    order = field.num(1)
    counts = [fibre.count(c) for c in datum.colours]
    for m in counts:
        order = order * field.num(factorial(m))
    for p in range(len(A) - 1):
        assert dst.diffs[p] @ A[p] == A[p + 1] @ src.diffs[p]
    sigmas = fibre_permutations(fibre)
    for p, a in enumerate(A):
        # folding is adjoint to spreading: together they scale by the
        # symmetry order on one side and sum over symmetries on the other
        assert a.transpose() @ a == CycMatrix.identity(field, a.ncols).scale(order)
        degree = src.min_degree + p
        sigma_sum = CycMatrix.zero(field, a.nrows, a.nrows)
        for sigma in sigmas:
            entries = {}
            for col, lbl in enumerate(dst.labels(degree)):
                moved = tuple(tuple(sigma[j] for j in w) for w in lbl)
                entries[(dst.label_index(degree, moved), col)] = field.one
            sigma_sum = sigma_sum + CycMatrix.from_entries(
                field, a.nrows, a.nrows, entries
            )
        assert a @ a.transpose() == sigma_sum


@pytest.mark.parametrize(
    "coords,fibre",
    [
        ([2], (0, 0)),
        ([1], (0, 0, 0)),
        ([2], (0, 0, 0, 0)),
    ],
)
def test_averaging_intertwines_the_forms_sl2(coords, fibre):
    src, dst = _averaging_setup(A1, 5, coords, fibre)
    A = symmetrize_complex_maps(src, dst)
    s_src = s_chain_maps(src)
    s_dst = s_chain_maps(dst)
    for p in range(len(A)):
        assert s_dst[p] @ A[p] == A[p] @ s_src[p]


def test_averaging_intertwines_the_forms_rank_two():
    src, dst = _averaging_setup(A2, 5, [1, 2], (0, 0, 1))
    A = symmetrize_complex_maps(src, dst)
    s_src = s_chain_maps(src)
    s_dst = s_chain_maps(dst)
    for p in range(len(A)):
        assert s_dst[p] @ A[p] == A[p] @ s_src[p]


def test_averaging_validation():
    alg = algebra(A1, 5)
    lam = A1.weight([2])
    nu = A1.root_vec([2])
    src = build_complex(alg, [lam], nu)
    with pytest.raises(ParameterError):
        symmetrize_complex_maps(src, src)  # target not over labelled points
    points = UnfoldedDatum(A1, (0, 0))
    palg = FreeAlgebra(alg.field, points)
    dual_dst = build_dual_complex(palg, [lift_weight(points, lam)], points.point_weight)
    with pytest.raises(ParameterError):
        symmetrize_complex_maps(src, dual_dst)  # primal against dual
    wrong_weight = build_complex(palg, [points.weight([1, 1])], points.point_weight)
    with pytest.raises(ParameterError):
        symmetrize_complex_maps(src, wrong_weight)  # module weights not lifted
