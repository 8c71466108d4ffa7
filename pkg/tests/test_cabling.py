import pytest

from zcolor.cabling import (
    CableError,
    CableSpec,
    insert_full_twist,
    linking_equals_writhe,
    parallel,
    two_parallel_untwisted,
)
from zcolor.diagram import isomorphic, linking_number, parse_pd, validate, writhe
from zcolor.generate import random_knot_diagram, seeded_rng
from zcolor.moves import DiagramBuilder, R2Remove, apply_move
from zcolor.diagram import same_diagram

TREFOIL = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
HOPF = parse_pd("X[4,1,3,2] X[2,3,1,4]")


def comp_of(d):
    out = {}
    for k, cyc in enumerate(d.components):
        for e in cyc:
            out[e] = k
    return out


def test_crossing_count_formula():
    t2 = parallel(TREFOIL, CableSpec(multiplicities=(2,)))
    assert len(t2.crossings) == 12
    h32 = parallel(HOPF, CableSpec(multiplicities=(3, 2)))
    assert len(h32.crossings) == 12
    h44 = parallel(HOPF, CableSpec(multiplicities=(4, 4)))
    assert len(h44.crossings) == 32


def test_component_counts():
    assert parallel(TREFOIL, CableSpec(multiplicities=(4,))).num_components == 4
    assert parallel(HOPF, CableSpec(multiplicities=(3, 2))).num_components == 5


def test_identity_cabling_isomorphic():
    one = parallel(TREFOIL, CableSpec(multiplicities=(1,)))
    assert isomorphic(one, TREFOIL)


def test_multiplicity_length_checked():
    with pytest.raises(CableError):
        parallel(TREFOIL, CableSpec(multiplicities=(2, 2)))


def test_grid_signs_inherit_base(corpus):
    for d in corpus.values():
        if not d.crossings or d.num_components > 2:
            continue
        spec = CableSpec(multiplicities=(2,) * d.num_components)
        cabled = parallel(d, spec)
        assert validate(cabled) == []
        for region in cabled.cable.regions.values():
            for row in region.grid:
                for cid in row:
                    assert cabled.crossing(cid).sign == region.base_sign


def test_two_parallel_needs_writhe_zero(corpus):
    with pytest.raises(CableError) as err:
        two_parallel_untwisted(TREFOIL)
    assert "-3" in str(err.value)
    u2 = two_parallel_untwisted(corpus["unknot_writhe0"])
    assert linking_number(u2, 0, 1) == 0
    t2 = two_parallel_untwisted(corpus["trefoil_writhe0"])
    assert len(t2.crossings) == 24
    assert linking_number(t2, 0, 1) == 0


def test_linking_equals_writhe_corpus(corpus):
    for name, d in corpus.items():
        if len(d.components) != 1 or d.free_loops:
            continue
        w, lk, equal = linking_equals_writhe(d)
        assert equal, name
        assert w == writhe(d)


def test_linking_equals_writhe_positive_kink():
    k = parse_pd("X[1,1,2,2]")
    assert linking_equals_writhe(k) == (1, 1, True)


def test_linking_equals_writhe_random():
    rng = seeded_rng()
    for _ in range(25):
        d = random_knot_diagram(rng, n_ops=5)
        assert len(d.components) == 1
        w, lk, equal = linking_equals_writhe(d)
        assert equal, (w, lk)


def test_inter_component_grid_crossings_carry_base_sign():
    u2 = parallel(parse_pd("X[1,1,2,2]"), CableSpec(multiplicities=(2,)))
    comp = comp_of(u2)
    inter = [x for x in u2.crossings
             if comp[x.under_in] != comp[x.over_in]]
    assert len(inter) == 2
    assert all(x.sign == 1 for x in inter)


def test_full_twist_insertion():
    u2 = two_parallel_untwisted(parse_pd("X[1,3,2,2] X[3,4,4,1]"))
    tw = insert_full_twist(u2, base_edge=1, sign=1)
    assert len(tw.crossings) == len(u2.crossings) + 2
    assert validate(tw) == []
    assert linking_number(tw, 0, 1) == 1
    back = insert_full_twist(tw, base_edge=1, sign=-1)
    assert linking_number(back, 0, 1) == 0


def test_twist_then_mirror_cancels_by_two_r2_moves():
    u2 = two_parallel_untwisted(parse_pd("X[1,3,2,2] X[3,4,4,1]"))
    tw = insert_full_twist(u2, base_edge=1, sign=1)
    both = insert_full_twist(tw, base_edge=1, sign=-1)
    (site1, pair1), (site2, pair2) = both.cable.twists
    # the adjacent opposite twists cancel: the middle two crossings form a
    # bigon, and removing it exposes a second one
    builder = DiagramBuilder(both)
    apply_move(builder, R2Remove(cid1=pair1[1], cid2=pair2[0]))
    apply_move(builder, R2Remove(cid1=pair1[0], cid2=pair2[1]))
    assert same_diagram(builder.diagram(), u2)


def test_twist_recolors_pair_affinely():
    """A positive full twist sends the pair (a, a+1) to (a-2, a-1)."""
    u2 = two_parallel_untwisted(parse_pd("X[1,3,2,2] X[3,4,4,1]"))
    st = u2.cable
    pre1, pre2 = st.copy_edges[(2, 1)], st.copy_edges[(2, 2)]
    tw = insert_full_twist(u2, base_edge=2, sign=1)
    post1 = tw.cable.copy_edges[(2, 1)]
    post2 = tw.cable.copy_edges[(2, 2)]
    cids = set(tw.cable.twists[0][1])

    gamma = {pre1: 0, pre2: 1}
    changed = True
    while changed:  # propagate across the twist crossings only
        changed = False
        for cid in cids:
            x = tw.crossing(cid)
            if x.over_in in gamma and x.over_out not in gamma:
                gamma[x.over_out] = gamma[x.over_in]
                changed = True
            if x.over_in in gamma and x.under_in in gamma and x.under_out not in gamma:
                gamma[x.under_out] = 2 * gamma[x.over_in] - gamma[x.under_in]
                changed = True
    assert gamma[post1] == -2 and gamma[post2] == -1
