"""End-to-end checks of the published numeric tables and identities.

One test per headline table or identity; each asserts exact values, so a
single `pytest -v tests/test_acceptance.py` reads as a pass/fail scorecard.
"""

import random
from fractions import Fraction

from conftest import random_braid, random_presentation
from test_floer import predicted_dims, truncated_dims

from plumbtau import seeds
from plumbtau.floer import (
    AlexanderFiltration,
    FloerComplex,
    correction_term,
    dualize,
    homology_minus,
    image_classes,
    is_theta_supported,
    random_complex,
    tau_alpha,
    tau_bot,
    tau_top,
    verify_axioms,
)
from plumbtau.obstruct import (
    FIRES,
    conjugation_obstruction,
    integrality_obstruction,
    metaboliser_obstruction,
    pl_genus_lower_bound,
    profile_from_link,
)
from plumbtau.plumbing import (
    PlumbingTree,
    class_of,
    d_invariant,
    form_from_tree,
    solve_square,
    spinc_classes,
)
from plumbtau.surgery import (
    CurveDatum,
    SurgeryComponent,
    SurgeryPresentation,
    bennequin_euler,
    chern_evaluation,
    self_intersection,
    self_intersection_pairing,
    self_linking_braid,
    tau_from_curve,
    tau_qp_braid,
)
from plumbtau.tau import d_zero_subset, leaf_link, tau, tau_extrema

FORM_92 = form_from_tree(PlumbingTree.path(-5, -2))
FORM_41 = form_from_tree(PlumbingTree.path(-4))


def chain_link(k):
    """k parallel copies of the knot dual to the -5 vertex of the (-5,-2) tree."""
    return leaf_link(FORM_92, {"v1": k})


def torus_link(d):
    """2d parallel copies of the core dual to the single -4 vertex."""
    return leaf_link(FORM_41, {"v1": 2 * d})


def two_bridge_presentation(copies, rot):
    """Surgery diagram with boundary L(9,2): tb = -4 and tb = -1 unknots,
    linking once, plus `copies` parallel push-offs of the first component."""
    return SurgeryPresentation(
        components=(
            SurgeryComponent(kind="surgery", tb=-4, rot=rot),
            SurgeryComponent(kind="surgery", tb=-1, rot=0),
        ),
        linking=((0, 1), (1, 0)),
        link_vectors=tuple((1, 0) for _ in range(copies)),
    )


def lens_presentation(copies, rot):
    """Single tb = -3 unknot (boundary L(4,1)) with parallel push-offs."""
    return SurgeryPresentation(
        components=(SurgeryComponent(kind="surgery", tb=-3, rot=rot),),
        linking=((0,),),
        link_vectors=tuple((1,) for _ in range(copies)),
    )


def test_three_chain_tau_values():
    link = chain_link(3)
    assert [tau(FORM_92, link, s) for s in d_zero_subset(FORM_92)] == [2, 1, 0]


def test_chain_link_family_tau_formulas():
    for k in range(1, 31):
        link = chain_link(k)
        got = [tau(FORM_92, link, s) for s in d_zero_subset(FORM_92)]
        assert got == [
            Fraction(k * k + 3 * k, 9),
            Fraction(k * k, 9),
            Fraction(k * k - 3 * k, 9),
        ]


def test_torus_link_family_tau_and_genus_bound():
    for d in range(1, 11):
        link = torus_link(d)
        got = [tau(FORM_41, link, s) for s in d_zero_subset(FORM_41)]
        assert got == [Fraction(d * (d + 1), 2), Fraction(d * (d - 1), 2)]
        hi, lo = tau_extrema(FORM_41, link)
        assert hi - lo == d
        bound = pl_genus_lower_bound(profile_from_link(FORM_41, link))
        assert bound.genus == (d + 1) // 2 and bound.raw == Fraction(d, 2)


def test_square_minus_two_solutions():
    got = solve_square(FORM_92, -2)
    assert set(got) == {(-3, 0), (-1, 2), (1, -2), (3, 0)}


def test_zero_d_class_counts():
    assert len(spinc_classes(FORM_41)) == 4
    assert len(d_zero_subset(FORM_41)) == 2
    assert len(spinc_classes(FORM_92)) == 9
    assert len(d_zero_subset(FORM_92)) == 3


def test_presentation_self_intersection_and_chern():
    for d in range(1, 11):
        for sign in (1, -1):
            lens = lens_presentation(2 * d, 2 * sign)
            assert self_intersection(lens) == Fraction(-d * d)
            assert chern_evaluation(lens) == Fraction(sign * d)
            bridge = two_bridge_presentation(3 * d, 3 * sign)
            assert self_intersection(bridge) == Fraction(-2 * d * d)
            assert chern_evaluation(bridge) == Fraction(2 * sign * d)


def test_self_intersection_routes_agree():
    rng = random.Random(seeds.property_seed())
    for _ in range(100):
        p = random_presentation(rng, max_components=4)
        assert self_intersection(p) == self_intersection_pairing(p)


def test_curve_route_matches_lattice_route():
    for k in range(1, 10):
        link = chain_link(k)
        for rot in (-3, 3):
            p = two_bridge_presentation(k, rot)
            datum = CurveDatum(
                chi=k,
                chern=chern_evaluation(p),
                self_int=self_intersection(p),
                boundary=k,
            )
            assert tau_from_curve(datum) == tau(FORM_92, link, class_of(FORM_92, (rot, 0)))


def test_filtered_complex_suite():
    c = FloerComplex(
        generators=("a", "b", "c"),
        gradings={"a": 0, "b": -1, "c": -2},
        entries={("b", "a"): 1, ("b", "c"): 0},
    )
    filt = AlexanderFiltration({"a": 1, "b": 0, "c": -1})
    assert verify_axioms(c).ok
    assert correction_term(c) == 0
    assert tau_top(c, filt) == 1
    dual, dfilt = dualize(c, filt)
    assert tau_bot(dual, dfilt) == -1

    rng = random.Random(seeds.property_seed())
    for _ in range(200):
        rc, rfilt = random_complex(rng)
        assert verify_axioms(rc).ok
        top, _, _ = image_classes(rc)
        assert is_theta_supported(rc, top)
        assert tau_top(rc, rfilt) <= tau_alpha(rc, rfilt, top)
        rdual, rdfilt = dualize(rc, rfilt)
        assert tau_top(rc, rfilt) == -tau_bot(rdual, rdfilt)
        if len(rc.generators) <= 5:
            assert truncated_dims(rc) == predicted_dims(homology_minus(rc))


def test_obstruction_verdicts_on_chain_links():
    down = class_of(FORM_92, (3, 0))
    for k in range(1, 31):
        profile = profile_from_link(FORM_92, chain_link(k))
        assert metaboliser_obstruction(profile, down).verdict == FIRES
        fires = integrality_obstruction(profile.tau_at(down)).verdict == FIRES
        assert fires == (k % 3 != 0)
    m3 = profile_from_link(FORM_92, chain_link(3))
    assert conjugation_obstruction(m3, class_of(FORM_92, (-3, 0))).verdict == FIRES


def test_quasi_positive_tau_chain():
    rng = random.Random(seeds.property_seed())
    for _ in range(50):
        b = random_braid(rng)
        value = tau_qp_braid(b)
        assert value == Fraction(self_linking_braid(b) + b.components, 2)
        datum = CurveDatum(
            chi=bennequin_euler(b.strands, b.writhe),
            chern=Fraction(0),
            self_int=Fraction(0),
            boundary=b.components,
        )
        assert value == tau_from_curve(datum)
