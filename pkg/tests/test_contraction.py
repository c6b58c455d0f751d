from fractions import Fraction as F

import pytest

from blowdown import (
    ChainLabel,
    ClassGroupReport,
    GeometryError,
    NotContractibleError,
    QDivisor,
    SingClass,
    contract,
    hirzebruch_jung_type,
    new_quadric,
)


def test_reference_contraction_target_rank(ref):
    assert ref.contraction.target_rank == 1
    assert ref.contraction.contracted == (
        "C", "F1", "F2", "F3", "G1", "H1", "G2", "H2", "G3", "H3",
    )


def test_empty_contraction_is_identity(ref):
    con = contract(ref.model, [])
    assert con.target_rank == ref.model.rank
    d = QDivisor({"E1": 1})
    assert con.pullback(d) == d
    assert con.pushforward(d) == d
    assert con.class_group() == ClassGroupReport(rank=11, torsion=())


def test_contract_fiber_rejected():
    m = new_quadric()
    m.declare_curve("F", (1, 0))
    with pytest.raises(NotContractibleError, match="not contractible"):
        contract(m, ["F"])


def test_contract_validation():
    m = new_quadric()
    m.declare_curve("F", (1, 0))
    with pytest.raises(GeometryError, match="unknown curve"):
        contract(m, ["missing"])
    with pytest.raises(GeometryError, match="distinct"):
        contract(m, ["F", "F"])


def test_pullback_of_canonical(ref):
    pullback = ref.contraction.pullback(ref.k_target)
    expected = {"C": F(1, 3), "F1": F(1, 3), "F2": F(1, 3), "F3": F(1, 3)}
    assert pullback.named == expected
    assert pullback.residual == ref.model.canonical_class
    # orthogonality against every contracted curve, exactly
    for name in ref.contraction.contracted:
        assert ref.model.intersect(pullback, name) == 0


def test_pullback_of_ample_divisor(ref):
    expansion = ref.contraction.pullback(-ref.ample)
    assert expansion.named == {
        "E1": 1, "F1": F(1, 3), "H1": F(2, 3), "G1": F(1, 3),
        "E2": -1, "F2": F(-1, 3), "H2": F(-2, 3), "G2": F(-1, 3),
        "E3": -1, "F3": F(-1, 3), "H3": F(-2, 3), "G3": F(-1, 3),
        "C": F(-1, 3),
    }


def test_pullback_requires_support_off_contracted(ref):
    with pytest.raises(GeometryError, match="contracted"):
        ref.contraction.pullback(QDivisor({"C": 1}))
    # an explicitly zero coefficient on a contracted curve is fine
    assert ref.contraction.pullback(QDivisor({"C": 0, "E1": 1})).coefficient("E1") == 1


def test_pullback_disjoint_divisor_is_unchanged():
    m = new_quadric()
    m.declare_curve("F", (1, 0))
    m.blow_up("E")  # general point, not on F
    con = contract(m, ["E"])
    d = QDivisor({"F": 1})
    assert con.pullback(d) == d


def test_pullback_is_independent_of_representative(ref):
    # the fibre class f_x and 3*E1 differ by F1 + G1 + 2*H1 (all contracted),
    # so they represent the same divisor on the target and must pull back to
    # the same total class
    con = ref.contraction
    fiber_class = QDivisor({}, (1, 0) + (0,) * 9)
    triple_e1 = QDivisor({"E1": 3})
    assert ref.model.total_class(fiber_class) != ref.model.total_class(triple_e1)
    pb1 = ref.model.total_class(con.pullback(fiber_class))
    pb2 = ref.model.total_class(con.pullback(triple_e1))
    assert pb1 == pb2


def test_pushforward(ref):
    con = ref.contraction
    assert con.pushforward(QDivisor({"C": 1})) == QDivisor({})
    mixed = QDivisor({"E2": 1, "E3": 1, "E1": -1, "C": 7})
    assert con.pushforward(mixed) == ref.ample
    for d in (ref.ample, QDivisor({"E1": 2}, residual=(1, 0) + (0,) * 9)):
        assert con.pushforward(con.pullback(d)) == d


def test_discrepancies_reference(ref):
    discreps, classification = ref.contraction.discrepancies()
    assert classification is SingClass.KLT
    for name in ("C", "F1", "F2", "F3"):
        assert discreps[name] == F(-1, 3)
    for name in ("G1", "H1", "G2", "H2", "G3", "H3"):
        assert discreps[name] == 0
    assert min(discreps.values()) == F(-1, 3)


def test_discrepancy_single_minus_one_curve():
    m = new_quadric()
    m.blow_up("E")
    discreps, classification = contract(m, ["E"]).discrepancies()
    assert discreps == {"E": 1}
    assert classification is SingClass.TERMINAL


def test_discrepancy_single_minus_two_curve():
    m = new_quadric()
    m.blow_up("E")
    m.blow_up("E2", [("E", 1)])
    assert m.intersect("E", "E") == -2
    discreps, classification = contract(m, ["E"]).discrepancies()
    assert discreps == {"E": 0}
    assert classification is SingClass.CANONICAL


@pytest.mark.parametrize("n", range(2, 10))
def test_discrepancy_single_minus_n_curve(n):
    # fiber blown up n times becomes a (-n)-curve; adjunction oracle:
    # a solves (K + a*F).F = 0 up to sign, i.e. a = -1 + 2/n
    m = new_quadric()
    m.declare_curve("F", (1, 0))
    for step in range(n):
        m.blow_up(f"P{step}", [("F", 1)])
    assert m.intersect("F", "F") == -n
    discreps, _ = contract(m, ["F"]).discrepancies()
    k_dot_f = m.intersect(m.canonical_divisor(), "F")
    oracle = -(-k_dot_f / F(-n))  # a = -K.F / F^2, negated into discrepancy
    assert discreps["F"] == oracle == F(-1) + F(2, n)


class TestClassifySingularities:
    def test_reference_census(self, ref):
        reports = ref.contraction.classify_singularities()
        assert len(reports) == 7
        by_type = {}
        for r in reports:
            by_type.setdefault(r.hj_type, []).append(r)
        assert len(by_type[(3, 1)]) == 4
        assert len(by_type[(3, 2)]) == 3
        components_31 = sorted(r.component for r in by_type[(3, 1)])
        assert components_31 == [("C",), ("F1",), ("F2",), ("F3",)]
        for r in by_type[(3, 2)]:
            assert r.self_intersections == (2, 2)
            assert r.label is ChainLabel.A_N_CHAIN
        for r in by_type[(3, 1)]:
            assert r.self_intersections == (3,)
            assert r.label is ChainLabel.WEIGHTED_CYCLIC

    def test_minus_one_curve_contracts_to_smooth_point(self):
        m = new_quadric()
        m.blow_up("E")
        assert contract(m, ["E"]).classify_singularities() == []

    def test_branch_vertex_rejected(self):
        # D4 configuration: a (-2)-curve meeting three disjoint (-2)-curves
        m = new_quadric()
        m.declare_curve("D", (1, 1))
        for i in (1, 2, 3):
            m.blow_up(f"X{i}", [("D", 1)])
            m.blow_up(f"Y{i}", [(f"X{i}", 1)])
        m.blow_up("Z", [("D", 1)])
        assert m.intersect("D", "D") == -2
        con = contract(m, ["D", "X1", "X2", "X3"])
        with pytest.raises(GeometryError, match="not a chain"):
            con.classify_singularities()

    def test_cycle_rejected(self):
        # triangle of (-3)-curves: contractible but not a chain
        m = new_quadric()
        m.declare_curve("T1", (1, 1))
        m.declare_curve("T2", (1, 0))
        m.declare_curve("T3", (0, 1))
        for step in range(5):
            m.blow_up(f"A{step}", [("T1", 1)])
        for step in range(3):
            m.blow_up(f"B{step}", [("T2", 1)])
        for step in range(3):
            m.blow_up(f"C{step}", [("T3", 1)])
        con = contract(m, ["T1", "T2", "T3"])
        assert con.gram == ((-3, 1, 1), (1, -3, 1), (1, 1, -3))
        with pytest.raises(GeometryError, match="not a chain"):
            con.classify_singularities()

    def test_double_intersection_rejected(self):
        m = new_quadric()
        m.declare_curve("D1", (1, 1))
        m.declare_curve("D2", (1, 1))
        for step in range(5):
            m.blow_up(f"A{step}", [("D1", 1)])
        for step in range(5):
            m.blow_up(f"B{step}", [("D2", 1)])
        con = contract(m, ["D1", "D2"])
        assert m.intersect("D1", "D2") == 2
        with pytest.raises(GeometryError, match="reduced chains"):
            con.classify_singularities()


class TestHirzebruchJung:
    @pytest.mark.parametrize("k", range(1, 7))
    def test_du_val_chains(self, k):
        assert hirzebruch_jung_type([2] * k) == (k + 1, k)

    def test_single_curves(self):
        assert hirzebruch_jung_type([3]) == (3, 1)
        assert hirzebruch_jung_type([1]) == (1, 0)

    def test_orientation_canonicalized(self):
        assert hirzebruch_jung_type([2, 3]) == hirzebruch_jung_type([3, 2]) == (5, 2)

    def test_empty_chain_rejected(self):
        with pytest.raises(GeometryError):
            hirzebruch_jung_type([])


def test_class_group_reference(ref):
    group = ref.contraction.class_group()
    assert group == ClassGroupReport(rank=1, torsion=(3, 3, 3))


def test_class_group_single_blow_down():
    m = new_quadric()
    m.blow_up("E")
    group = contract(m, ["E"]).class_group()
    assert group == ClassGroupReport(rank=2, torsion=())


class TestRankOnePositivity:
    def test_degrees(self, ref):
        con = ref.contraction
        assert con.degree_against(-ref.k_target) == 1
        assert con.degree_against(QDivisor({"E1": 1})) == 1
        assert con.degree_against(ref.ample) == 1
        assert con.is_ample_rank1(ref.ample)
        assert not con.is_ample_rank1(ref.k_target)

    def test_requires_rank_one(self, ref):
        con = contract(ref.model, [])
        with pytest.raises(GeometryError, match="rank"):
            con.degree_against(ref.ample)

    def test_contracted_witness_rejected(self, ref):
        with pytest.raises(GeometryError, match="witness"):
            ref.contraction.degree_against(ref.ample, witness="C")

    def test_explicit_witness(self, ref):
        # a surviving (-1)-curve works as a witness up to scale
        assert ref.contraction.degree_against(ref.ample, witness="E1") != 0

    def test_anticanonical_is_numerically_a_surviving_curve(self, ref):
        r = ref.contraction.numerically_proportional(
            -ref.k_target, QDivisor({"E1": 1})
        )
        assert r == 1

    def test_numerically_proportional(self, ref):
        con = ref.contraction
        assert con.numerically_proportional(ref.k_target, ref.ample) == -1
        assert con.numerically_proportional(ref.ample, ref.ample) == 1
        assert con.numerically_proportional(QDivisor({}), ref.ample) == 0
        assert con.numerically_proportional(ref.ample, QDivisor({})) is None


class TestRelativeNef:
    def test_zero_divisor(self, ref):
        nef, degrees = ref.contraction.is_relatively_nef(QDivisor({}))
        assert nef and all(v == 0 for v in degrees.values())

    def test_negated_exceptional_class_fails(self, ref):
        neg_e1 = [0] * 11
        neg_e1[ref.model.basis_labels.index("E1")] = -1
        nef, degrees = ref.contraction.is_relatively_nef(neg_e1)
        assert not nef
        assert degrees["H1"] == -1

    def test_floor_of_ample_pullback(self, ref):
        floor = ref.contraction.pullback(-ref.ample).floor()
        nef, degrees = ref.contraction.is_relatively_nef(floor)
        assert nef
        assert degrees == {
            "C": 2, "F1": 1, "H1": 1, "G1": 0,
            "F2": 2, "H2": 0, "G2": 1,
            "F3": 2, "H3": 0, "G3": 1,
        }
