import json

import pytest

from vdgraph import verify
from vdgraph.auteng import automorphism_group
from vdgraph.families import build, complement_map, complete, cycle, johnson, kneser
from vdgraph.graph import Graph, bipartite_double, bipartition
from vdgraph.grassmann import perp_automorphism
from vdgraph.perm import Permutation, closure
from vdgraph.verify import (
    TheoremViolation,
    VerifyReport,
    check_attached,
    check_bipartition_behavior,
    check_pointwise_fix,
    check_s_u_isomorphism,
    check_semidirect_structure,
    check_semilinear_action,
    expected_aut_order,
    is_stable,
    johnson_neighbor_counts,
    layer_swap,
    stability_criterion,
    verify_family,
    weichsel_check,
    xab_structure,
)


def k_mn(m, n):
    return Graph(m + n, [(i, m + j) for i in range(m) for j in range(n)])


def relabel(g, n):
    """A copy of ``g`` usable as the attached graph on the first n vertices."""
    return Graph(n, g.edges())


def test_refuted_report_needs_witness():
    with pytest.raises(ValueError):
        VerifyReport("aut-order", "x", conclusion_status="refuted")


@pytest.mark.parametrize("spec", ["cycle:6", "bipartite-kneser:4,1", "doubled-grassmann:2,3,1"])
def test_bipartition_behavior_verified(spec):
    g = build(spec) if spec != "cycle:6" else cycle(6)
    r = check_bipartition_behavior(g, spec)
    assert r.verified
    assert r.evidence["checked"] >= 100


def test_bipartition_behavior_not_applicable():
    r = check_bipartition_behavior(cycle(5))
    assert r.hypothesis_status == "not-applicable"
    assert check_bipartition_behavior(Graph(4, [(0, 1), (2, 3)])).hypothesis_status == "not-applicable"


def test_pointwise_fix_examples():
    assert check_pointwise_fix(build("bipartite-kneser:4,1")).verified
    r = check_pointwise_fix(k_mn(2, 3))
    assert r.hypothesis_status == "not-applicable" and "vd" in r.evidence["reason"]
    assert check_pointwise_fix(bipartite_double(cycle(5)), U=range(5)).verified


def test_attached_examples():
    h = build("bipartite-kneser:5,2")
    j = johnson(5, 2)
    assert check_attached(h, range(10), j).verified
    b = bipartite_double(j)
    assert check_attached(b, range(10), relabel(j, 10)).verified


def test_attached_refuted_on_c8_with_edgeless_side():
    c8 = cycle(8)
    r = check_attached(c8, [0, 2, 4, 6], Graph(4))
    assert r.refuted
    assert r.witness["image_order"] == 8 and r.witness["aut_g1_order"] == 24
    assert isinstance(r.witness["not_extendable"], Permutation)


def test_attached_refuted_when_restriction_breaks_g1():
    # path on the even side of C8 is not preserved by the rotation by 2
    r = check_attached(cycle(8), [0, 2, 4, 6], Graph(4, [(0, 1), (1, 2), (2, 3)]))
    assert r.refuted and "generator" in r.witness


def test_s_u_isomorphism_examples():
    h = build("bipartite-kneser:5,2")
    r = check_s_u_isomorphism(h, range(10), johnson(5, 2))
    assert r.verified and r.evidence["stabilizer_order"] == r.evidence["aut_g1_order"] == 120
    p = kneser(5, 2)
    r = check_s_u_isomorphism(bipartite_double(p), range(10), relabel(p, 10))
    assert r.verified and r.evidence["stabilizer_order"] == 120


def test_s_u_isomorphism_not_applicable_without_attached_graph():
    s = build("doubled-grassmann:2,3,1")
    k7 = complete(7)
    att = check_attached(s, range(7), k7)
    assert att.refuted
    assert att.witness["image_order"] == 168 and att.witness["aut_g1_order"] == 5040
    assert check_s_u_isomorphism(s, range(7), k7).hypothesis_status == "not-applicable"


def test_attached_implies_s_u_isomorphism():
    for spec, n, k in [("bnk:5,2", 5, 2), ("set-inclusion:6,2,4", 6, 2), ("bipartite-kneser:6,2", 6, 2)]:
        g = build(spec)
        U = bipartition(g)[0]
        if check_attached(g, U, johnson(n, k)).verified:
            assert check_s_u_isomorphism(g, U, johnson(n, k)).verified


def test_semidirect_examples():
    h = build("bipartite-kneser:4,1")
    r = check_semidirect_structure(h, range(4), complement_map(4, 1))
    assert r.verified and r.evidence["aut_order"] == 48 and r.evidence["t_commutes_with_stabilizer"]
    s = build("doubled-grassmann:2,3,1")
    r = check_semidirect_structure(s, range(7), perp_automorphism(2, 3, 1))
    assert r.verified and r.evidence["aut_order"] == 336
    b = bipartite_double(cycle(5))
    r = check_semidirect_structure(b, range(5), layer_swap(5))
    assert r.verified and r.evidence["aut_order"] == 20


def test_semidirect_preconditions():
    c6 = cycle(6)
    rot = Permutation([1, 2, 3, 4, 5, 0])
    assert check_semidirect_structure(c6, [0, 2, 4], rot).hypothesis_status == "not-applicable"  # not an involution
    bad = Permutation([1, 0, 2, 3, 4, 5])
    assert check_semidirect_structure(c6, [0, 2, 4], bad).hypothesis_status == "not-applicable"
    ident = Permutation.identity(6)
    assert check_semidirect_structure(c6, [0, 2, 4], ident).hypothesis_status == "not-applicable"


def test_semilinear_action():
    r = check_semilinear_action("grassmann:2,4,2")
    assert r.verified and r.evidence["induced_order"] == 20160
    assert check_semilinear_action("johnson:5,2").hypothesis_status == "not-applicable"


def test_stability_criterion_examples():
    v = stability_criterion(cycle(5))
    assert (v.criterion, v.a0) == ("holds", 0)
    v = stability_criterion(johnson(6, 2))
    assert v.criterion == "inconclusive" and v.witness["c"] == 4
    v = stability_criterion(kneser(5, 2))
    assert (v.criterion, v.a0) == ("holds", 0)
    v = stability_criterion(johnson(7, 2))
    assert (v.criterion, v.a0) == ("holds", 5)
    assert stability_criterion(cycle(6)).witness["reason"] == "bipartite"
    assert stability_criterion(Graph(3, [(0, 1)])).witness["reason"] == "not connected"
    assert stability_criterion(Graph(3, [(0, 1), (1, 2)])).criterion == "inconclusive"


def test_is_stable_examples():
    v = is_stable(cycle(5))
    assert (v.aut_order, v.double_aut_order, v.stable) == (10, 20, True)
    v = is_stable(cycle(7))
    assert v.stable and v.criterion == "inconclusive" and (v.aut_order, v.double_aut_order) == (14, 28)
    with pytest.raises(ValueError):
        is_stable(Graph(3, [(0, 1)]))


def test_is_stable_j62_measured_orders():
    v = is_stable(johnson(6, 2))
    assert (v.aut_order, v.double_aut_order) == (720, 40320)
    assert v.criterion == "inconclusive" and not v.stable


def test_double_of_j63_order_by_closure():
    # independent confirmation of |Aut(B(J(6,3)))| by enumerating every element
    b = bipartite_double(johnson(6, 3))
    A = automorphism_group(b)
    elements = closure(list(A.generators), b.n, limit=10**4)
    assert len(elements) == A.order == 5760
    assert all(b.is_automorphism(e.images) for e in elements)


def test_theorem_violation_is_loud(monkeypatch):
    real = verify.automorphism_group

    def fake(g, timeout=None):
        grp = real(g, timeout=timeout)
        if g.n == 10:
            grp.order = 60  # pretend Aut(C5 double) is larger than 2|Aut(C5)|
        return grp

    monkeypatch.setattr(verify, "automorphism_group", fake)
    with pytest.raises(TheoremViolation):
        is_stable(cycle(5))


def test_stability_verdict_json():
    data = is_stable(kneser(5, 2)).to_json()
    assert data == {"a0": 0, "criterion": "holds", "witness": None, "aut_order": "120", "double_aut_order": "240", "stable": True}
    json.dumps(data)


def test_johnson_neighbor_counts_examples():
    r = johnson_neighbor_counts(7, 3)
    assert r.verified and r.evidence["counts_by_distance"] == {1: [5], 2: [4], 3: [0]}
    r = johnson_neighbor_counts(6, 2)
    assert r.verified and r.evidence["adjacent_equals_distance2"]
    r = johnson_neighbor_counts(5, 2)
    assert r.evidence["counts_by_distance"] == {1: [3], 2: [4]}
    assert johnson_neighbor_counts(5, 1).hypothesis_status == "not-applicable"


def test_xab_named_instances():
    r = xab_structure(6, 2)
    assert r.verified
    assert r.evidence["samples"]["edge_pair"]["isolated"] == ["({2,3},0)"]
    assert r.evidence["samples"]["nonedge_pair"]["isolated"] == []
    assert r.evidence["pairs"] == 105


def test_xab_j63_scan_finds_counterexamples():
    r = xab_structure(6, 3)
    assert r.refuted
    t = r.evidence["tally"]
    # adjacent pairs never show an isolated vertex; distance-3 pairs always do
    assert t["adjacent_with_isolated"] == 0 and t["nonadjacent_with_isolated"] == 10


def test_weichsel_examples():
    assert weichsel_check(complete(3), complete(2)).evidence["components"] == 1
    assert weichsel_check(cycle(4), complete(2)).evidence["components"] == 2
    assert weichsel_check(cycle(5), cycle(7)).verified
    assert weichsel_check(Graph(1), cycle(5)).hypothesis_status == "not-applicable"


@pytest.mark.parametrize(
    "spec, order",
    [("johnson:5,2", 120), ("johnson:4,2", 48), ("doubled-grassmann:2,3,1", 336), ("set-inclusion:4,1,3", 48),
     ("kneser:5,2", 120), ("complete:5", 120), ("cycle:7", 14), ("bnk:5,2", 240), ("grassmann:2,4,2", 40320)],
)
def test_expected_aut_order(spec, order):
    assert expected_aut_order(spec) == order


def test_verify_family_examples():
    r = verify_family("johnson:5,2")
    assert r.verified and r.evidence["computed"] == 120
    r = verify_family("grassmann:2,4,2")
    assert r.verified and r.evidence["computed"] == 40320
    r = verify_family("bipartite-kneser:4,1")
    assert r.verified and r.evidence["computed"] == 48
    assert not r.refuted
    ids = {c.theorem_id for c in r.children}
    assert {"vd", "bipartition-behavior", "pointwise-fix", "attached-graph", "stabilizer-iso", "semidirect"} <= ids


def test_verify_family_wrong_expected_order():
    r = verify_family("johnson:5,2", expected_order=121)
    assert r.refuted and r.witness == {"computed": 120, "expected": 121}


def test_report_json_is_serializable():
    r = verify_family("doubled-grassmann:2,3,1")
    text = json.dumps(r.to_json(), sort_keys=True)
    assert "semilinear-action" in text


def test_check_statements_cover_ids():
    assert set(verify.DEFAULT_FAMILY_CHECKS) <= set(verify.CHECKS)
