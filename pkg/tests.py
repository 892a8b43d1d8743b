"""
Тесты для FairSmith

Небольшие примеры для каждой операции, уменьшенные наборы проверок и свойства
на случайных экземплярах (hypothesis).
"""

import itertools
import json
import os
import random
import tempfile
import unittest
from fractions import Fraction
from unittest.mock import patch

from hypothesis import given, settings, strategies as st
from sympy import Matrix

from FairSmith.cli import main
from FairSmith.config import Budget
from FairSmith.core import (AdditiveValuation, Allocation, Instance, Report, Signal, SignalSpace, Sum, TableValuation,
                            bundle_from_items, const, iter_submasks, perceived_profile, sig,
                            verify_valuation_axioms)
from FairSmith.counterexamples import (SetCoverValuation, adversarial_signal, base_profile, impossibility_audit,
                                       impossibility_instance, set_cover_value, subadditive_incompatibility_check,
                                       xos_gap_instance, xos_mms_gap_check, xos_mms_gap_report)
from FairSmith.data_types import ConstraintSense, FairnessNotion, LPStatus, MechanismKind, ValuationClass, ValuationKind
from FairSmith.equilibrium import audit_equilibria, enumerate_pne, verify_pne
from FairSmith.errors import BudgetExceededError, DomainError, InputError, InvariantViolation
from FairSmith.fairness import (audit, audit_at, compute_aps, envy_check, iter_partitions, mms_partition, mms_share,
                                partition_count, plaut_roughgarden_cut, prop_share, two_part_maximin,
                                worst_leftover_value, xos_prop_prices)
from FairSmith.fairness.audit import FairnessReport, Verdict
from FairSmith.core.valuation import BaseValuation, BundleValuation
from FairSmith.lp.margin import strict_unaffordability_margin
from FairSmith.lp.simplex import Constraint, LinearProgram, lp_maximize, to_fraction, to_rational
from FairSmith.mechanisms import (BlackBoxMechanism, BruteForceFair, CutAndChoose, PriceAndChoose, RoundRobin,
                                  blackbox_mechanism, build_mechanism, cutter_guarantee, price_and_choose_family)
from FairSmith.mechanisms.base_mechanism import BaseMechanism, Outcome
from FairSmith.outcome_cache import OutcomeCache, cache_outcome, outcome_cache
from FairSmith.rational import as_rational, format_rational
from FairSmith.serialization import instance_from_dict, instance_to_dict, reports_from_dict
from FairSmith.suites import (aps_corollary_suite, blackbox_suite, cut_and_choose_suite, price_and_choose_suite,
                              random_additive_instance, share_consistency_suite)

EF, EF1, EFX = FairnessNotion.EF, FairnessNotion.EF1, FairnessNotion.EFX
PROP, MMS, APS = FairnessNotion.PROP, FairnessNotion.MMS, FairnessNotion.APS
HALF = Fraction(1, 2)


def additive_instance(*rows, entitlements=None) -> Instance:
    """Экземпляр с постоянными аддитивными оценками и одноэлементными пространствами"""
    n, m = len(rows), len(rows[0])
    entitlements = entitlements or tuple(Fraction(1, n) for _ in range(n))
    valuations = tuple(AdditiveValuation(tuple(const(value) for value in row)) for row in rows)
    return Instance(n, m, tuple(entitlements), tuple(SignalSpace.singleton() for _ in range(n)), valuations)


def ones_instance(m: int, n: int = 2, entitlements=None) -> Instance:
    return additive_instance(*([1] * m for _ in range(n)), entitlements=entitlements)


def truth(instance: Instance):
    return tuple(space.signals[0] for space in instance.spaces)


def interdependent_instance() -> Instance:
    """Два агента, два предмета; агент 0 ценит предметы по сигналу агента 1, агент 1 — по сумме сигналов"""
    spaces = (SignalSpace.vectors([[1, 0], [0, 1]]), SignalSpace.vectors([[1, 0], [2, 1]]))
    first = AdditiveValuation(tuple(sig(1, j) for j in range(2)))
    second = AdditiveValuation(tuple(Sum((sig(0, j), sig(1, j))) for j in range(2)))
    return Instance(2, 2, (HALF, HALF), spaces, (first, second))


class RowValuation(BaseValuation):
    """Одна строка значений без проверки монотонности, как у внешнего оракула"""
    kind = ValuationKind.TABLE

    def __init__(self, row):
        self.row = tuple(Fraction(value) for value in row)

    @property
    def m(self):
        return len(self.row).bit_length() - 1

    def value(self, profile, bundle):
        return self.row[bundle]

    def to_jsonable(self):
        return {"kind": self.kind.value, "values": [[format_rational(value) for value in self.row]]}


class MatchingPennies(BaseMechanism):
    """Единственный предмет получает агент 0 при совпадении ставок, иначе агент 1: равновесий нет"""
    kind = MechanismKind.CUT_AND_CHOOSE
    name = "matching-pennies"
    SIDES = (Signal.token("heads"), Signal.token("tails"))

    def bid_space(self, agent):
        return self.SIDES

    def truthful_guess(self, true_signals):
        return tuple(Report(true_signals[agent], self.SIDES[0]) for agent in self.instance.agents)

    def _allocate(self, reports):
        winner = 0 if reports[0].bid == reports[1].bid else 1
        return Outcome(Allocation.everything_to(winner, 2, self.instance.m))


@st.composite
def small_programs(draw):
    """ЛП с 1-3 неотрицательными переменными, ограниченная условием sum x <= 5"""
    k = draw(st.integers(min_value=1, max_value=3))
    coefficient = st.integers(min_value=-3, max_value=3).map(Fraction)
    row = st.lists(coefficient, min_size=k, max_size=k).map(tuple)
    constraints = draw(st.lists(st.tuples(row, st.sampled_from(list(ConstraintSense)), coefficient), max_size=3))
    constraints = [Constraint(*constraint) for constraint in constraints]
    constraints.append(Constraint(tuple([Fraction(1)] * k), ConstraintSense.LE, Fraction(5)))
    return LinearProgram(k, draw(row), tuple(constraints))


def vertices(program: LinearProgram):
    """Допустимые вершины: решения всех квадратных систем из ограничений и границ x_i = 0"""
    k = program.num_vars
    rows = [(constraint.coefficients, constraint.rhs) for constraint in program.constraints]
    rows += [(tuple(Fraction(int(i == j)) for j in range(k)), Fraction(0)) for i in range(k)]
    found = set()
    for chosen in itertools.combinations(rows, k):
        matrix = Matrix([[to_rational(c) for c in coefficients] for coefficients, _ in chosen])
        if matrix.det() == 0:
            continue
        solution = matrix.LUsolve(Matrix([to_rational(rhs) for _, rhs in chosen]))
        point = tuple(to_fraction(value) for value in solution)
        if program.is_satisfied(point):
            found.add(point)
    return found


class TestRationalAndTypes(unittest.TestCase):
    """Тесты для рациональных чисел и перечислений"""

    def test_as_rational(self):
        self.assertEqual(as_rational("3/6"), Fraction(1, 2))
        self.assertEqual(as_rational(4), Fraction(4))
        self.assertEqual(format_rational(Fraction(2, 4)), "1/2")
        self.assertEqual(format_rational(Fraction(3)), "3")

    def test_decimal_and_bool_rejected(self):
        with self.assertRaises(InputError):
            as_rational("0.5")
        with self.assertRaises(InputError):
            as_rational(True)
        with self.assertRaises(InputError):
            as_rational("1/0")

    def test_notions(self):
        self.assertEqual(FairnessNotion.parse(" mms "), MMS)
        self.assertEqual(FairnessNotion.ordered({APS, EF, PROP}), [EF, PROP, APS])
        self.assertTrue(EF1.is_envy_based)
        self.assertTrue(APS.is_share_based)
        with self.assertRaises(InputError):
            FairnessNotion.parse("WMMS")

    def test_mechanism_kinds(self):
        self.assertTrue(MechanismKind.CUT_AND_CHOOSE.accepts(2))
        self.assertFalse(MechanismKind.PRICE_AND_CHOOSE.accepts(3))
        self.assertTrue(MechanismKind.BLACKBOX.accepts(3))
        self.assertFalse(MechanismKind.BLACKBOX.accepts(2))
        self.assertEqual(ValuationClass.parse("XOS-consistent"), ValuationClass.XOS)

    def test_budget(self):
        budget = Budget.from_dict({"max_items": 4, "max_pairs": None})
        self.assertEqual(budget.max_items, 4)
        self.assertEqual(budget.max_pairs, Budget().max_pairs)
        self.assertEqual(budget.with_overrides(max_items=None, max_lp_items=3).max_lp_items, 3)
        with self.assertRaises(InputError):
            Budget.from_dict({"max_apples": 1})
        with self.assertRaises(InputError):
            Budget.from_dict({"max_items": -1})
        with self.assertRaises(BudgetExceededError):
            budget.check_items(5)


class TestModel(unittest.TestCase):
    """Тесты для наборов, сигналов и оценок"""

    def test_submasks_ascending(self):
        self.assertEqual(list(iter_submasks(0b101)), [0, 1, 4, 5])
        self.assertEqual(list(iter_submasks(0)), [0])

    def test_allocation_must_be_complete(self):
        with self.assertRaises(InputError):
            Allocation((1, 0), 2)
        with self.assertRaises(InputError):
            Allocation((3, 1), 2)
        self.assertEqual(Allocation.two_way(0b01, 2).to_lists(), [[0], [1]])
        self.assertEqual(Allocation.from_items([[2], [0, 1]], 3).bundles, (4, 3))
        with self.assertRaises(InputError):
            bundle_from_items([0, 0], 2)

    def test_eval_value(self):
        instance = ones_instance(4)
        profile = truth(instance)
        self.assertEqual(instance.eval_value(0, profile, 0b0011), 2)
        self.assertEqual(instance.eval_value(1, profile, 0), 0)

    def test_xos_value(self):
        instance = xos_gap_instance()
        self.assertEqual(instance.eval_value(0, truth(instance), 0b0011), 2)
        self.assertEqual(instance.eval_value(1, truth(instance), 0b0011), 1)

    def test_interdependent_value(self):
        instance = interdependent_instance()
        profile = (Signal.vector([0, 1]), Signal.vector([2, 1]))
        self.assertEqual(instance.eval_value(0, profile, 0b11), 3)
        self.assertEqual(instance.eval_value(1, profile, 0b01), 2)
        with self.assertRaises(InputError):
            instance.eval_value(0, (Signal.vector([5, 5]), Signal.vector([2, 1])), 1)

    def test_perceived_profile(self):
        x, y, z = Signal.token("x"), Signal.token("y"), Signal.token("z")
        reports = (Report(y, z), Report(z, y))
        self.assertEqual(perceived_profile(0, x, reports), (x, z))
        self.assertEqual(perceived_profile(1, z, reports), (y, z))

    def test_perceived_profile_truthful_guess(self):
        instance = impossibility_instance(3, "EF1")
        profile = base_profile(instance)
        reports = BlackBoxMechanism(instance, RoundRobin()).truthful_guess(profile)
        for agent in instance.agents:
            self.assertEqual(perceived_profile(agent, profile[agent], reports), profile)

    def test_instance_validation(self):
        with self.assertRaises(InputError):
            ones_instance(2, entitlements=(Fraction(1, 3), Fraction(1, 3)))
        with self.assertRaises(InputError):
            Instance(1, 0, (Fraction(1),), (SignalSpace.singleton(),),
                     (AdditiveValuation(()),))

    def test_table_valuation(self):
        spaces = (SignalSpace.vectors([[0], [1]]), SignalSpace.singleton())
        table = TableValuation(((Fraction(0), Fraction(1)), (Fraction(0), Fraction(5))), spaces)
        instance = Instance(2, 1, (HALF, HALF), spaces, (table, table))
        self.assertEqual(instance.eval_value(0, (Signal.vector([1]), spaces[1].signals[0]), 1), 5)
        with self.assertRaises(InputError):
            TableValuation(((Fraction(1), Fraction(1)),), spaces)

    def test_table_valuation_must_be_monotone(self):
        spaces = (SignalSpace.singleton(), SignalSpace.singleton())
        row = tuple(Fraction(value) for value in (0, 0, 1, 0, 2, 2, 0, 0))
        with self.assertRaises(InputError) as context:
            TableValuation((row,), spaces)
        self.assertIn("not monotone", str(context.exception))
        self.assertIn("v(3) = 0 < v(2) = 1", str(context.exception))

    def test_monotone_violation(self):
        values = [Fraction(value) for value in (0, 2, 0, 1)]
        self.assertEqual(BundleValuation.from_values(2, values).monotone_violation(), (0b01, 0b11))
        self.assertEqual(BundleValuation.from_values(1, [Fraction(-1), Fraction(0)]).monotone_violation(), (0, None))
        self.assertIsNone(BundleValuation.additive([Fraction(1), Fraction(0)]).monotone_violation())

    def test_independence_flags(self):
        self.assertTrue(ones_instance(2).is_additive)
        self.assertTrue(all(ones_instance(2).is_independent(agent) for agent in range(2)))
        instance = interdependent_instance()
        self.assertFalse(instance.is_independent(0))
        self.assertFalse(instance.is_independent(1))
        self.assertFalse(xos_gap_instance().is_additive)
        spaces = (SignalSpace.vectors([[0], [1]]), SignalSpace.singleton())
        table = TableValuation(((Fraction(0), Fraction(1)), (Fraction(0), Fraction(5))), spaces)
        self.assertFalse(Instance(2, 1, (HALF, HALF), spaces, (table, table)).is_independent(0))

    def test_check_notion(self):
        self.assertTrue(MMS.requires_equal_entitlements)
        self.assertFalse(APS.requires_equal_entitlements)
        instance = ones_instance(3, entitlements=(Fraction(1, 3), Fraction(2, 3)))
        instance.check_notion(APS)
        with self.assertRaises(DomainError) as context:
            instance.check_notion(MMS)
        self.assertIn("MMS", str(context.exception))

    def test_scaled_valuations(self):
        instance = xos_gap_instance()
        profile = truth(instance)
        scaled = instance.valuations[0].scaled(Fraction(3))
        self.assertEqual(scaled.value(profile, 0b0011), 6)
        self.assertEqual(AdditiveValuation((const(2),)).scaled(HALF).value(profile, 1), 1)
        with self.assertRaises(DomainError):
            instance.valuations[1].scaled(Fraction(0))


class TestValuationAxioms(unittest.TestCase):
    """Тесты для проверки классов оценок"""

    def test_additive_is_monotone_and_additive(self):
        instance = ones_instance(3)
        self.assertTrue(verify_valuation_axioms(instance, ValuationClass.MONOTONE).holds)
        self.assertTrue(verify_valuation_axioms(instance, ValuationClass.ADDITIVE).holds)
        self.assertTrue(verify_valuation_axioms(instance, ValuationClass.SUBADDITIVE).holds)

    def test_monotonicity_witness(self):
        spaces = (SignalSpace.singleton(), SignalSpace.singleton())
        valuation = RowValuation((0, 2, 0, 1))
        instance = Instance(2, 2, (HALF, HALF), spaces, (valuation, valuation))
        check = verify_valuation_axioms(instance, ValuationClass.MONOTONE)
        self.assertFalse(check.holds)
        agent, _, smaller, larger = check.witness
        self.assertEqual((agent, smaller, larger), (0, 0b01, 0b11))

    def test_xos_gap_is_xos_not_additive(self):
        instance = xos_gap_instance()
        self.assertTrue(verify_valuation_axioms(instance, ValuationClass.XOS).holds)
        self.assertFalse(verify_valuation_axioms(instance, ValuationClass.ADDITIVE).holds)

    def test_set_cover_subadditive_sampled(self):
        spaces = (SignalSpace.singleton(), SignalSpace.singleton())
        valuation = SetCoverValuation(6)
        instance = Instance(2, 63, (HALF, HALF), spaces, (valuation, valuation))
        check = verify_valuation_axioms(instance, ValuationClass.SUBADDITIVE, sample=200)
        self.assertTrue(check.holds)
        self.assertFalse(check.exhaustive)

    def test_exhaustive_pairs_respect_budget(self):
        with self.assertRaises(BudgetExceededError):
            verify_valuation_axioms(ones_instance(8), ValuationClass.SUBADDITIVE, Budget(max_pairs=10))


class TestLinearProgramming(unittest.TestCase):
    """Тесты для точного симплекса и запаса недоступности"""

    def test_single_binding_constraint(self):
        program = LinearProgram(1, (Fraction(1),), (Constraint((Fraction(1),), ConstraintSense.LE, Fraction(0)),),
                                frozenset({0}))
        result = lp_maximize(program)
        self.assertTrue(result.is_optimal)
        self.assertEqual(result.value, 0)

    def test_symmetric_margin(self):
        one, zero = Fraction(1), Fraction(0)
        constraints = (Constraint((one, one, zero), ConstraintSense.EQ, one),
                       Constraint((one, zero, -one), ConstraintSense.GE, HALF),
                       Constraint((zero, one, -one), ConstraintSense.GE, HALF))
        result = lp_maximize(LinearProgram(3, (zero, zero, one), constraints, frozenset({2})))
        self.assertEqual(result.value, 0)
        self.assertEqual(result.witness, (HALF, HALF, 0))

    def test_infeasible(self):
        one = Fraction(1)
        constraints = (Constraint((one,), ConstraintSense.EQ, one), Constraint((one,), ConstraintSense.LE, HALF))
        self.assertEqual(lp_maximize(LinearProgram(1, (one,), constraints)).status, LPStatus.INFEASIBLE)

    def test_unbounded(self):
        program = LinearProgram(1, (Fraction(1),), ())
        self.assertEqual(lp_maximize(program).status, LPStatus.UNBOUNDED)

    def test_dimension_mismatch(self):
        program = LinearProgram(2, (Fraction(1),), ())
        with self.assertRaises(InputError):
            lp_maximize(program)

    def test_no_variables(self):
        self.assertEqual(lp_maximize(LinearProgram(0, (), ())).value, 0)
        program = LinearProgram(0, (), (Constraint((), ConstraintSense.GE, Fraction(1)),))
        self.assertEqual(lp_maximize(program).status, LPStatus.INFEASIBLE)

    def test_unused_variable_reported_as_zero(self):
        one, zero = Fraction(1), Fraction(0)
        program = LinearProgram(2, (one, zero), (Constraint((one, zero), ConstraintSense.LE, HALF),))
        result = lp_maximize(program)
        self.assertEqual((result.value, result.witness), (HALF, (HALF, zero)))

    @settings(max_examples=60, deadline=None)
    @given(small_programs())
    def test_witness_is_feasible_and_optimal(self, program):
        result = lp_maximize(program)
        self.assertNotEqual(result.status, LPStatus.UNBOUNDED)
        if result.is_optimal:
            self.assertTrue(program.is_satisfied(result.witness))
            self.assertEqual(program.objective_value(result.witness), result.value)

    @settings(max_examples=40, deadline=None)
    @given(small_programs())
    def test_optimum_matches_best_vertex(self, program):
        result = lp_maximize(program)
        found = vertices(program)
        if not found:
            self.assertEqual(result.status, LPStatus.INFEASIBLE)
        else:
            self.assertTrue(result.is_optimal)
            self.assertEqual(result.value, max(program.objective_value(point) for point in found))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=1, max_value=3).flatmap(
        lambda m: st.tuples(st.just(m), st.lists(st.integers(min_value=1, max_value=(1 << m) - 1), min_size=1,
                                                 max_size=4),
                            st.integers(min_value=1, max_value=(1 << m) - 1))),
           st.sampled_from([Fraction(1, 3), HALF, Fraction(2, 3)]))
    def test_margin_monotone_in_high_sets(self, data, alpha):
        m, high, extra = data
        base = strict_unaffordability_margin(high, alpha, m)
        more = strict_unaffordability_margin(high + [extra], alpha, m)
        self.assertLessEqual(more.margin, base.margin)
        if more.prices is not None:
            self.assertEqual(sum(more.prices), 1)
            self.assertTrue(all(sum(more.prices[j] for j in range(m) if bundle >> j & 1) >= alpha + more.margin
                                for bundle in high + [extra]))

    def test_empty_set_never_unaffordable(self):
        result = strict_unaffordability_margin([0], HALF, 2)
        self.assertEqual(result.margin, -HALF)
        self.assertFalse(result.strict)

    def test_singletons_margin_zero(self):
        result = strict_unaffordability_margin([0b01, 0b10], HALF, 2)
        self.assertEqual(result.margin, 0)
        self.assertEqual(result.prices, (HALF, HALF))

    def test_pairs_cannot_all_be_expensive(self):
        result = strict_unaffordability_margin([0b011, 0b101, 0b110], Fraction(2, 3), 3)
        self.assertLessEqual(result.margin, 0)

    def test_affordable_set_infeasible(self):
        # {a} должен стоить больше 1/2 и одновременно не больше 1/2
        result = strict_unaffordability_margin([0b01], HALF, 2, affordable_set=0b01)
        self.assertFalse(result.strict)


class TestShares(unittest.TestCase):
    """Тесты для оракулов PROP, MMS, APS"""

    def test_prop(self):
        self.assertEqual(prop_share(0, truth(ones_instance(4)), ones_instance(4)), 2)
        zero = additive_instance([0, 0], [0, 0])
        self.assertEqual(prop_share(1, truth(zero), zero), 0)

    def test_prop_set_cover(self):
        self.assertEqual(set_cover_value(6, (1 << 63) - 1), 6)
        self.assertEqual(HALF * set_cover_value(6, (1 << 63) - 1), 3)

    def test_mms(self):
        instance = ones_instance(4)
        self.assertEqual(mms_share(0, truth(instance), instance), 2)
        instance = additive_instance([1, 1, 0, 0], [1, 1, 0, 0])
        self.assertEqual(mms_share(0, truth(instance), instance), 1)
        instance = ones_instance(1)
        self.assertEqual(mms_share(1, truth(instance), instance), 0)

    def test_mms_needs_equal_entitlements(self):
        instance = ones_instance(3, entitlements=(Fraction(1, 3), Fraction(2, 3)))
        with self.assertRaises(DomainError):
            mms_share(0, truth(instance), instance)

    def test_mms_budget(self):
        bv = BundleValuation.additive([Fraction(1)] * 6)
        with self.assertRaises(BudgetExceededError):
            mms_partition(bv, 3, Budget(max_partitions=10))

    def test_mms_cached_on_valuation(self):
        bv = BundleValuation.additive([Fraction(1)] * 4)
        first = mms_partition(bv, 2)
        self.assertIn(('mms', 2), bv.derived)
        self.assertIs(mms_partition(bv, 2), first)

    def test_aps(self):
        self.assertEqual(compute_aps(BundleValuation.additive([Fraction(1)]), HALF).value, 0)
        self.assertEqual(compute_aps(BundleValuation.additive([Fraction(1)] * 2), HALF).value, 1)
        self.assertEqual(compute_aps(BundleValuation.additive([Fraction(1)] * 3), Fraction(2, 3)).value, 2)

    def test_aps_witness_certifies_rejection(self):
        result = compute_aps(BundleValuation.additive([Fraction(1)] * 3), Fraction(2, 3))
        self.assertEqual(result.rejected_threshold, 3)
        self.assertEqual(sum(result.witness), 1)

    def test_aps_lp_budget(self):
        with self.assertRaises(BudgetExceededError):
            compute_aps(BundleValuation.additive([Fraction(1)] * 5), HALF, Budget(max_lp_items=4))

    def test_budget_checked_before_cached_share(self):
        bv = BundleValuation.additive([Fraction(1)] * 6)
        mms_partition(bv, 3)
        compute_aps(bv, HALF)
        with self.assertRaises(BudgetExceededError):
            mms_partition(bv, 3, Budget(max_partitions=10))
        with self.assertRaises(BudgetExceededError):
            compute_aps(bv, HALF, Budget(max_lp_items=4))

    def test_xos_prop_prices(self):
        one, three = Fraction(1), Fraction(3)
        self.assertEqual(xos_prop_prices(((one, three), (2 * one, one))), (Fraction(1, 4), Fraction(3, 4)))
        self.assertEqual(xos_prop_prices(((0, 0),)), (HALF, HALF))
        self.assertEqual(xos_prop_prices(()), ())

    def test_xos_prop_prices_protect_pricer(self):
        instance = xos_gap_instance()
        profile = truth(instance)
        for agent in instance.agents:
            bv = instance.valuation_at(agent, profile)
            prices = xos_prop_prices(instance.valuations[agent].clause_values(profile))
            self.assertEqual(sum(prices), 1)
            self.assertGreaterEqual(worst_leftover_value(bv, prices, HALF), prop_share(agent, profile, instance))

    def test_balanced_cut(self):
        self.assertEqual(plaut_roughgarden_cut(BundleValuation.additive([Fraction(1)] * 4)), 0b0011)
        self.assertEqual(plaut_roughgarden_cut(BundleValuation.additive([Fraction(1)])), 0b1)
        instance = xos_gap_instance()
        cut = plaut_roughgarden_cut(instance.valuation_at(0, truth(instance)))
        self.assertIn(cut, (0b0011, 0b1100))

    def test_balanced_cut_rejects_non_monotone(self):
        # v(∅) = 2 больше MMS = 1: удаление предмета из {a} или {b} нарушает условие разреза
        bv = BundleValuation.from_values(2, [Fraction(2), Fraction(1), Fraction(1), Fraction(0)])
        self.assertEqual(two_part_maximin(bv), 1)
        with self.assertRaises(InvariantViolation):
            plaut_roughgarden_cut(bv)

    def test_partition_count(self):
        self.assertEqual(partition_count(4, 2), 8)
        self.assertEqual(partition_count(0, 3), 1)
        self.assertEqual(partition_count(9, 3), 3281)

    @given(st.integers(min_value=0, max_value=6), st.integers(min_value=1, max_value=4))
    def test_partition_enumeration_matches_count(self, m, n):
        partitions = list(iter_partitions(m, n))
        self.assertEqual(len(partitions), partition_count(m, n))
        self.assertEqual(len(set(partitions)), len(partitions))
        for parts in partitions:
            self.assertEqual(sum(parts), (1 << m) - 1)

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.integers(min_value=0, max_value=5), min_size=0, max_size=4))
    def test_share_order_for_additive(self, values):
        bv = BundleValuation.additive([Fraction(value) for value in values])
        prop = HALF * bv(bv.full)
        mms = two_part_maximin(bv)
        aps = compute_aps(bv, HALF).value
        self.assertLessEqual(mms, aps)
        self.assertLessEqual(aps, prop)


class TestFairnessAudit(unittest.TestCase):
    """Тесты для envy-проверок и аудита"""

    def test_envy_equal_split(self):
        instance = ones_instance(4)
        allocation = Allocation((0b0011, 0b1100), 4)
        self.assertTrue(envy_check(allocation, 0, truth(instance), EF, instance).holds)

    def test_envy_lattice_example(self):
        instance = ones_instance(3)
        allocation = Allocation((0b001, 0b110), 3)
        profile = truth(instance)
        ef = envy_check(allocation, 0, profile, EF, instance)
        self.assertFalse(ef.holds)
        self.assertEqual(ef.witness, (0, 1, None))
        self.assertTrue(envy_check(allocation, 0, profile, EF1, instance).holds)
        self.assertTrue(envy_check(allocation, 0, profile, EFX, instance).holds)

    def test_efx_witness_names_good(self):
        instance = additive_instance([1, 2, 0], [1, 1, 1])
        allocation = Allocation((0b001, 0b110), 3)
        check = envy_check(allocation, 0, truth(instance), EFX, instance)
        self.assertFalse(check.holds)
        self.assertEqual(check.witness, (0, 1, 2))

    def test_no_items(self):
        instance = ones_instance(0)
        allocation = Allocation((0, 0), 0)
        report = audit_at(allocation, truth(instance), set(FairnessNotion), instance)
        self.assertTrue(report.all_fair)
        self.assertEqual(set(report.shares(0).values()), {0})

    def test_audit_all_ones(self):
        instance = ones_instance(4)
        allocation = Allocation((0b0011, 0b1100), 4)
        report = audit(allocation, [truth(instance)] * 2, {EF, MMS, PROP}, instance)
        self.assertTrue(report.all_fair)
        self.assertEqual(report.shares(0), {PROP: 2, MMS: 2})

    def test_audit_per_agent_notions(self):
        instance = ones_instance(3)
        allocation = Allocation((0b001, 0b110), 3)
        report = audit_at(allocation, truth(instance), {0: {EF1}, 1: {EF}}, instance)
        self.assertEqual(len(report.verdicts), 2)
        self.assertTrue(report.all_fair)

    def test_audit_adversarial_scenario(self):
        instance = impossibility_instance(2, "MMS")
        allocation = Allocation((0b0011, 0b1100), 4)
        profile = adversarial_signal(allocation, instance)
        report = audit_at(allocation, profile, {MMS}, instance)
        verdict = report.verdict(1, MMS)
        self.assertFalse(verdict.holds)
        self.assertEqual((verdict.value, verdict.share), (0, 1))

    def test_audit_mms_unequal(self):
        instance = ones_instance(3, entitlements=(Fraction(1, 3), Fraction(2, 3)))
        with self.assertRaises(DomainError):
            audit_at(Allocation((1, 6), 3), truth(instance), {MMS}, instance)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(min_value=0, max_value=4), min_size=3, max_size=3),
           st.lists(st.integers(min_value=0, max_value=1), min_size=3, max_size=3))
    def test_envy_lattice(self, values, owners):
        instance = additive_instance(values, [1, 1, 1])
        first = sum(1 << j for j, owner in enumerate(owners) if owner == 0)
        report = audit_at(Allocation.two_way(first, 3), truth(instance), {EF, EFX, EF1}, instance)
        self.assertEqual(report.lattice_violations(), [])


class TestCutAndChoose(unittest.TestCase):
    """Тесты для Cut-&-Choose"""

    def test_identical_all_ones(self):
        instance = ones_instance(4)
        mechanism = CutAndChoose(instance)
        outcome = mechanism.allocate(mechanism.truthful_guess(truth(instance)))
        self.assertEqual(outcome.allocation.bundles, (0b1100, 0b0011))
        self.assertEqual(outcome.trace["branch"], "balanced-cut")
        self.assertEqual(outcome.trace["chooser_took"], "offered")

    def test_xi_branch(self):
        instance = additive_instance([2, 1, 1], [1, 1, 2])
        mechanism = CutAndChoose(instance)
        outcome = mechanism.allocate(mechanism.truthful_guess(truth(instance)))
        self.assertEqual(outcome.trace["branch"], "xi")
        self.assertEqual(outcome.trace["xi"], "3")
        self.assertEqual(outcome.allocation.to_lists(), [[0, 1], [2]])
        self.assertEqual(cutter_guarantee(mechanism, truth(instance)), 3)

    def test_no_items(self):
        instance = ones_instance(0)
        mechanism = CutAndChoose(instance)
        self.assertEqual(mechanism.allocate(mechanism.truthful_guess(truth(instance))).allocation.bundles, (0, 0))

    def test_needs_two_agents(self):
        with self.assertRaises(DomainError):
            CutAndChoose(ones_instance(3, n=3))

    def test_cut_is_cached(self):
        instance = ones_instance(4)
        mechanism = CutAndChoose(instance)
        reports = mechanism.truthful_guess(truth(instance))
        mechanism.allocate(reports)
        mechanism.allocate(reports)
        self.assertEqual(outcome_cache(mechanism, 'cut').hits, 1)

    def test_bid_outside_space(self):
        instance = interdependent_instance()
        mechanism = CutAndChoose(instance)
        reports = (Report(Signal.vector([1, 0]), Signal.vector([1, 0])),
                   Report(Signal.vector([1, 0]), Signal.vector([7, 7])))
        with self.assertRaises(InputError):
            mechanism.allocate(reports)

    def test_truthful_guess_is_equilibrium(self):
        instance = interdependent_instance()
        mechanism = CutAndChoose(instance)
        for profile in instance.profiles():
            reports = mechanism.truthful_guess(profile)
            self.assertTrue(verify_pne(mechanism, instance, profile, reports).is_pne)
            self.assertIn(reports, [found for found, _ in enumerate_pne(mechanism, instance, profile)])

    def test_fair_equilibrium_exists(self):
        instance = ones_instance(4)
        result = audit_equilibria(CutAndChoose(instance), instance, truth(instance), {0: {MMS, EFX}, 1: {MMS, EF}})
        self.assertTrue(result.exists_fair_pne)
        self.assertIsNotNone(result.fair_witness)

    @settings(max_examples=10, deadline=None)
    @given(st.integers(min_value=0, max_value=10 ** 6), st.integers(min_value=0, max_value=3))
    def test_truthful_guess_random(self, seed, m):
        rng = random.Random(seed)
        instance = random_additive_instance(rng, m, space_size=2)
        mechanism = CutAndChoose(instance)
        profile = tuple(rng.choice(space.signals) for space in instance.spaces)
        self.assertTrue(verify_pne(mechanism, instance, profile, mechanism.truthful_guess(profile)).is_pne)


class TestPriceAndChoose(unittest.TestCase):
    """Тесты для Price-&-Choose"""

    def test_family_and_allocation(self):
        instance = ones_instance(3, entitlements=(Fraction(1, 3), Fraction(2, 3)))
        profile = truth(instance)
        self.assertEqual(price_and_choose_family(instance, *profile), [0b011, 0b101, 0b110])
        mechanism = PriceAndChoose(instance)
        outcome = mechanism.allocate(mechanism.truthful_guess(profile))
        self.assertEqual(outcome.allocation.bundles, (0b100, 0b011))
        self.assertEqual(sum(outcome.prices), 1)
        self.assertLessEqual(outcome.prices[0] + outcome.prices[1], Fraction(2, 3))
        self.assertEqual(compute_aps(instance.valuation_at(1, profile), Fraction(2, 3)).value, 2)

    def test_single_good(self):
        instance = ones_instance(1, entitlements=(Fraction(1, 3), Fraction(2, 3)))
        profile = truth(instance)
        self.assertEqual(price_and_choose_family(instance, *profile), [0])
        mechanism = PriceAndChoose(instance)
        self.assertEqual(mechanism.allocate(mechanism.truthful_guess(profile)).allocation.bundles, (1, 0))

    def test_no_items(self):
        instance = ones_instance(0)
        mechanism = PriceAndChoose(instance)
        outcome = mechanism.allocate(mechanism.truthful_guess(truth(instance)))
        self.assertEqual((outcome.allocation.bundles, outcome.prices), ((0, 0), ()))

    def test_lp_budget(self):
        instance = ones_instance(3)
        mechanism = PriceAndChoose(instance, Budget(max_lp_items=2))
        with self.assertRaises(BudgetExceededError):
            mechanism.allocate(mechanism.truthful_guess(truth(instance)))

    def test_truthful_guess_is_equilibrium(self):
        instance = interdependent_instance()
        mechanism = PriceAndChoose(instance)
        for profile in instance.profiles():
            self.assertTrue(verify_pne(mechanism, instance, profile, mechanism.truthful_guess(profile)).is_pne)

    def test_equilibria_give_aps_for_independent_values(self):
        instance = additive_instance([3, 1, 2], [1, 2, 2], entitlements=(Fraction(2, 5), Fraction(3, 5)))
        result = audit_equilibria(PriceAndChoose(instance), instance, truth(instance), {APS})
        self.assertTrue(result.all_pne_fair)
        self.assertTrue(result.equilibria)


class TestBlackBox(unittest.TestCase):
    """Тесты для механизма чёрного ящика"""

    def setUp(self):
        spaces = (SignalSpace.vectors([[1, 1, 1], [1, 0, 0], [0, 1, 1]]),
                  SignalSpace.singleton(), SignalSpace.singleton())
        valuation = AdditiveValuation(tuple(sig(0, j) for j in range(3)))
        third = Fraction(1, 3)
        self.instance = Instance(3, 3, (third, third, third), spaces, (valuation,) * 3)
        self.mechanism = BlackBoxMechanism(self.instance, RoundRobin())
        self.star = spaces[1].signals[0]

    def profile(self, coords):
        return Signal.vector(coords), self.star, self.star

    def test_unanimous_runs_algorithm_at_bid(self):
        profile = self.profile([0, 1, 1])
        outcome = self.mechanism.allocate(self.mechanism.truthful_guess(profile))
        self.assertEqual(outcome.allocation.bundles, (0b010, 0b100, 0b001))
        self.assertTrue(outcome.trace["consensus"])

    def test_one_deviation_keeps_allocation(self):
        profile = self.profile([1, 1, 1])
        reports = self.mechanism.truthful_guess(profile)
        expected = self.mechanism.allocate(reports).allocation
        deviation = Report(Signal.vector([1, 0, 0]), self.profile([0, 1, 1]))
        deviated = (deviation,) + reports[1:]
        self.assertEqual(self.mechanism.allocate(deviated).allocation, expected)

    def test_no_agreement_gives_default(self):
        bids = [self.profile([1, 1, 1]), self.profile([1, 0, 0]), self.profile([0, 1, 1])]
        reports = tuple(Report(bid[agent], bid) for agent, bid in enumerate(bids))
        outcome = self.mechanism.allocate(reports)
        self.assertEqual(outcome.allocation.bundles, (0b111, 0, 0))
        self.assertTrue(outcome.trace["default"])

    def test_function_form_uses_given_default(self):
        default = Allocation.everything_to(2, 3, 3)
        bids = [self.profile([1, 1, 1]), self.profile([1, 0, 0]), self.profile([0, 1, 1])]
        reports = tuple(Report(bid[agent], bid) for agent, bid in enumerate(bids))
        self.assertEqual(blackbox_mechanism(self.instance, RoundRobin(), default, reports), default)
        unanimous = self.mechanism.truthful_guess(self.profile([0, 1, 1]))
        self.assertEqual(blackbox_mechanism(self.instance, RoundRobin(), None, unanimous).bundles,
                         (0b010, 0b100, 0b001))

    def test_needs_three_agents(self):
        with self.assertRaises(DomainError):
            BlackBoxMechanism(ones_instance(2), RoundRobin())

    def test_brute_force_ef1_gives_two_goods_each(self):
        instance = impossibility_instance(3, "EF1")
        bid = base_profile(instance)
        mechanism = BlackBoxMechanism(instance, BruteForceFair(EF1))
        allocation = mechanism.run_algorithm(bid)
        self.assertEqual([len(items) for items in allocation.to_lists()], [2, 2, 2])

    def test_all_ef1_allocations_are_balanced(self):
        instance = impossibility_instance(3, "EF1")
        profile = base_profile(instance)
        for owners in itertools.product(range(3), repeat=6):
            bundles = tuple(sum(1 << j for j, owner in enumerate(owners) if owner == agent) for agent in range(3))
            allocation = Allocation(bundles, 6)
            if audit_at(allocation, profile, {EF1}, instance).all_fair:
                self.assertEqual([len(items) for items in allocation.to_lists()], [2, 2, 2])

    def test_brute_force_mms_needs_equal_entitlements(self):
        instance = ones_instance(3, n=3, entitlements=(Fraction(1, 6), Fraction(1, 3), HALF))
        mechanism = BlackBoxMechanism(instance, BruteForceFair(MMS))
        with self.assertRaises(DomainError):
            mechanism.run_algorithm(truth(instance))
        allocation = BlackBoxMechanism(instance, BruteForceFair(PROP)).run_algorithm(truth(instance))
        self.assertEqual(allocation.m, 3)

    def test_registry(self):
        self.assertIsInstance(build_mechanism("blackbox-mms", self.instance), BlackBoxMechanism)
        with self.assertRaises(InputError):
            build_mechanism("serial-dictatorship", self.instance)


class TestEquilibria(unittest.TestCase):
    """Тесты для проверки и перебора равновесий"""

    def test_singleton_spaces(self):
        instance = ones_instance(2)
        mechanism = CutAndChoose(instance)
        reports = mechanism.truthful_guess(truth(instance))
        certificate = verify_pne(mechanism, instance, truth(instance), reports)
        self.assertTrue(certificate.is_pne)
        self.assertEqual(certificate.checked, 0)
        self.assertEqual([found for found, _ in enumerate_pne(mechanism, instance, truth(instance))], [reports])

    def test_certificate_replays(self):
        instance = interdependent_instance()
        mechanism = CutAndChoose(instance)
        profile = next(iter(instance.profiles()))
        for reports in itertools.product(*(list(mechanism.report_space(agent)) for agent in instance.agents)):
            certificate = verify_pne(mechanism, instance, profile, reports)
            if not certificate.is_pne:
                self.assertGreater(certificate.gap, 0)
                self.assertTrue(certificate.replay(mechanism, reports))

    def test_enumeration_budget(self):
        instance = interdependent_instance()
        with self.assertRaises(BudgetExceededError):
            enumerate_pne(CutAndChoose(instance), instance, next(iter(instance.profiles())),
                          Budget(max_report_space=3))

    def test_zero_valuations_all_fair(self):
        instance = additive_instance([0, 0], [0, 0])
        result = audit_equilibria(CutAndChoose(instance), instance, truth(instance), set(FairnessNotion))
        self.assertTrue(result.all_pne_fair)

    def test_no_equilibrium_is_not_all_fair(self):
        instance = ones_instance(1)
        mechanism = MatchingPennies(instance)
        self.assertEqual(enumerate_pne(mechanism, instance, truth(instance)), [])
        result = audit_equilibria(mechanism, instance, truth(instance), {EF1})
        self.assertFalse(result.exists_fair_pne)
        self.assertIsNone(result.all_pne_fair)
        document = result.to_jsonable()
        self.assertEqual((document["pne_count"], document["all_pne_fair"]), (0, None))


class TestInvariances(unittest.TestCase):
    """Свойства: масштабирование оценок и вложение независимых оценок"""

    @settings(max_examples=15, deadline=None)
    @given(st.lists(st.tuples(st.integers(min_value=0, max_value=4), st.integers(min_value=0, max_value=4)),
                    max_size=3),
           st.integers(min_value=1, max_value=6), st.integers(min_value=1, max_value=6))
    def test_positive_scaling(self, items, numerator, denominator):
        factor = Fraction(numerator, denominator)
        instance = additive_instance([first for first, _ in items], [second for _, second in items])
        scaled = Instance(2, instance.m, instance.entitlements, instance.spaces,
                          (instance.valuations[0].scaled(factor), instance.valuations[1]))
        profile = truth(instance)
        self.assertEqual(prop_share(0, profile, scaled), factor * prop_share(0, profile, instance))
        self.assertEqual(mms_share(0, profile, scaled), factor * mms_share(0, profile, instance))
        self.assertEqual(compute_aps(scaled.valuation_at(0, profile), HALF).value,
                         factor * compute_aps(instance.valuation_at(0, profile), HALF).value)
        for mechanism_type in (CutAndChoose, PriceAndChoose):
            original, rescaled = mechanism_type(instance), mechanism_type(scaled)
            allocation = original.allocate(original.truthful_guess(profile)).allocation
            self.assertEqual(rescaled.allocate(rescaled.truthful_guess(profile)).allocation, allocation)
            before = audit_at(allocation, profile, set(FairnessNotion), instance)
            after = audit_at(allocation, profile, set(FairnessNotion), scaled)
            self.assertEqual([verdict.holds for verdict in before.verdicts],
                             [verdict.holds for verdict in after.verdicts])

    @settings(max_examples=15, deadline=None)
    @given(st.lists(st.integers(min_value=0, max_value=4), min_size=1, max_size=3),
           st.lists(st.integers(min_value=0, max_value=4), min_size=1, max_size=3))
    def test_singleton_signals_are_private_values(self, first, second):
        width = min(len(first), len(second))
        rows = (first[:width], second[:width])
        instance = additive_instance(*rows)
        self.assertTrue(all(instance.is_independent(agent) for agent in instance.agents))
        profile = truth(instance)
        for agent, row in enumerate(rows):
            private = BundleValuation.additive([Fraction(value) for value in row])
            self.assertEqual(instance.valuation_at(agent, profile).values(), private.values())
            self.assertEqual(mms_share(agent, profile, instance), two_part_maximin(private))
            self.assertEqual(compute_aps(instance.valuation_at(agent, profile), HALF).value,
                             compute_aps(private, HALF).value)
        mechanism = CutAndChoose(instance)
        reports = mechanism.truthful_guess(profile)
        self.assertEqual([found for found, _ in enumerate_pne(mechanism, instance, profile)], [reports])

    @settings(max_examples=10, deadline=None)
    @given(st.integers(min_value=0, max_value=10 ** 6), st.integers(min_value=0, max_value=3))
    def test_independent_values_ignore_reports(self, seed, m):
        rng = random.Random(seed)
        instance = random_additive_instance(rng, m, space_size=3, independent=True)
        self.assertTrue(all(instance.is_independent(agent) for agent in instance.agents))
        profile = tuple(rng.choice(space.signals) for space in instance.spaces)
        mechanism = CutAndChoose(instance)
        for reports in itertools.product(*(list(mechanism.report_space(agent)) for agent in instance.agents)):
            for agent in instance.agents:
                perceived = perceived_profile(agent, profile[agent], reports)
                self.assertEqual(instance.valuation_at(agent, perceived).values(),
                                 instance.valuation_at(agent, profile).values())


class TestCounterexamples(unittest.TestCase):
    """Тесты для конструкций невозможности и контрпримеров"""

    def test_impossibility_instance(self):
        instance = impossibility_instance(2, "MMS")
        self.assertEqual(instance.m, 4)
        self.assertEqual(mms_share(0, base_profile(instance), instance), 2)
        self.assertEqual(impossibility_instance(3, "EF1").m, 6)
        with self.assertRaises(DomainError):
            impossibility_instance(3, "EFX")

    def test_zero_signal_everything_fair(self):
        instance = impossibility_instance(2, "MMS")
        profile = base_profile(instance, Signal.vector([0] * 4))
        report = audit_at(Allocation.everything_to(1, 2, 4), profile, {MMS, EF1}, instance)
        self.assertTrue(report.all_fair)

    def test_adversarial_signal(self):
        instance = impossibility_instance(2, "MMS")
        self.assertEqual(adversarial_signal(Allocation((0b0011, 0b1100), 4), instance)[0], Signal.vector([1, 1, 0, 0]))
        self.assertEqual(adversarial_signal(Allocation((0b1111, 0), 4), instance)[0], Signal.vector([1] * 4))
        self.assertEqual(adversarial_signal(Allocation((0, 0b1111), 4), instance)[0], Signal.vector([0] * 4))

    def test_cut_and_choose_chain(self):
        for variant in ("MMS", "EF1"):
            result = impossibility_audit("cut-and-choose", 2, variant)
            self.assertTrue(result.reproduced, result.steps)
            self.assertTrue(result.adversarial_certificate.is_pne)
            self.assertFalse(result.unfair_report.all_fair)
            self.assertEqual(result.lattice_violations, [])
            self.assertEqual(result.to_jsonable()["lattice_violations"], [])

    def test_lattice_failures_are_labelled(self):
        allocation = Allocation((0b01, 0b10), 2)
        report = FairnessReport(allocation, (Verdict(0, EF, True, Fraction(1)), Verdict(0, EF1, False, Fraction(1)),
                                             Verdict(1, EF, True, Fraction(1))))
        self.assertEqual(report.lattice_failures("adversarial signal"),
                         ["adversarial signal, agent 0: EF holds but EF1 fails"])

    def test_blackbox_round_robin_ef1_chain(self):
        result = impossibility_audit("blackbox-round-robin", 3, "EF1")
        self.assertTrue(result.reproduced, result.steps)

    def test_blackbox_mms_chain(self):
        result = impossibility_audit("blackbox-mms", 3, "MMS")
        self.assertTrue(result.reproduced, result.steps)
        for agent in (1, 2):
            verdict = result.unfair_report.verdict(agent, MMS)
            self.assertEqual((verdict.value, verdict.share), (0, 1))

    def test_zero_base_signal_not_reproduced(self):
        result = impossibility_audit("cut-and-choose", 2, "MMS", base=Signal.vector([0] * 4))
        self.assertFalse(result.reproduced)
        self.assertIsNotNone(result.failing_step)

    def test_xos_gap(self):
        self.assertTrue(xos_mms_gap_check())
        self.assertFalse(xos_mms_gap_check(identical=True))
        report = xos_mms_gap_report()
        self.assertEqual(report.mms, (2, 2))
        self.assertEqual(report.allocations_checked, 16)
        self.assertIn(Allocation((0b0011, 0b1100), 4), xos_mms_gap_report(identical=True).double_mms_allocations)

    def test_set_cover_construction(self):
        report = subadditive_incompatibility_check(6, random_bundles=50, random_prices=10, seed=1)
        self.assertTrue(report.passed, report.to_jsonable())
        self.assertEqual(report.uniform_outside_price, Fraction(32, 63))
        self.assertEqual((report.prop_share, report.aps_lower_bound), (3, 4))

    def test_set_cover_domain(self):
        with self.assertRaises(DomainError):
            set_cover_value(5, 1)
        self.assertEqual(set_cover_value(6, 0), 0)


class TestSuites(unittest.TestCase):
    """Уменьшенные случайные наборы проверок"""

    def test_cut_and_choose_suite(self):
        report = cut_and_choose_suite(count=5, max_items=3)
        self.assertTrue(report.passed, report.failures)

    def test_price_and_choose_suite(self):
        report = price_and_choose_suite(count=4, max_items=3)
        self.assertTrue(report.passed, report.failures)
        self.assertEqual(price_and_choose_suite.__defaults__[2], 5)

    def test_aps_corollary_suite(self):
        self.assertTrue(aps_corollary_suite(count=3, max_items=2).passed)

    def test_blackbox_suite(self):
        self.assertTrue(blackbox_suite(count=3, max_items=3).passed)

    def test_share_consistency_suite(self):
        report = share_consistency_suite(count=20, max_items=3, price_samples=10)
        self.assertTrue(report.passed, report.failures)


class TestSerialization(unittest.TestCase):
    """Тесты для формата файлов"""

    DATA = {"n": 2, "m": 2, "entitlements": ["1/3", "2/3"],
            "signal_spaces": [{"kind": "vectors", "vectors": [["0", "1"], ["1", "1/2"]]}, {"kind": "singleton"}],
            "valuations": [{"kind": "additive", "items": [{"sig": [0, 0]}, {"add": ["1", {"sig": [0, 1]}]}]},
                           {"kind": "xos", "clauses": [["1", "0"], ["0", {"max": ["1/2", {"sig": [0, 1]}]}]]}]}

    def test_instance_round_trip(self):
        instance = instance_from_dict(self.DATA)
        self.assertEqual(instance.entitlements, (Fraction(1, 3), Fraction(2, 3)))
        self.assertEqual(instance_from_dict(instance_to_dict(instance)), instance)
        profile = (Signal.vector([1, HALF]), instance.spaces[1].signals[0])
        self.assertEqual(instance.eval_value(0, profile, 0b11), Fraction(5, 2))
        self.assertEqual(instance.eval_value(1, profile, 0b10), HALF)

    def test_error_locations(self):
        data = dict(self.DATA, entitlements=["1/2", "0.5"])
        with self.assertRaises(InputError) as context:
            instance_from_dict(data)
        self.assertEqual(context.exception.location, "entitlements[1]")
        data = dict(self.DATA, valuations=[{"kind": "additive", "items": [{"pow": [1, 2]}, "1"]}] * 2)
        with self.assertRaises(InputError) as context:
            instance_from_dict(data)
        self.assertEqual(context.exception.location, "valuations[0].items[0]")
        with self.assertRaises(InputError):
            instance_from_dict(dict(self.DATA, valuations=[{"kind": "additive", "items": [{"sig": [1, 0]}, "1"]}] * 2))

    def test_reports(self):
        instance = instance_from_dict(self.DATA)
        parsed = reports_from_dict({"reports": [{"signal": ["0", "1"], "bid": "*"},
                                                {"signal": "*", "bid": ["1", "1/2"]}],
                                    "true_signals": [["1", "1/2"], "*"]}, instance, MechanismKind.CUT_AND_CHOOSE)
        self.assertEqual(parsed.reports[1].bid, Signal.vector([1, HALF]))
        self.assertEqual(parsed.true_signals[0], Signal.vector([1, HALF]))
        with self.assertRaises(InputError):
            reports_from_dict({"reports": [{"signal": ["3", "3"], "bid": "*"}, {"signal": "*", "bid": ["0", "1"]}]},
                              instance, MechanismKind.CUT_AND_CHOOSE)


class TestOutcomeCache(unittest.TestCase):
    """Тесты для кэша шагов механизма"""

    def test_cache_outcome(self):
        class Dummy:
            calls = 0

            @cache_outcome()
            def step(self, value):
                Dummy.calls += 1
                return value * 2

        dummy = Dummy()
        self.assertEqual(dummy.step(2), 4)
        self.assertEqual(dummy.step(2), 4)
        self.assertEqual(Dummy.calls, 1)
        Dummy().step(2)
        self.assertEqual(Dummy.calls, 2)

    def test_separate_cache_per_method(self):
        class Dummy:
            @cache_outcome(maxsize=1)
            def first(self, value):
                return value

            @cache_outcome()
            def second(self, value):
                return -value

        dummy = Dummy()
        dummy.first(1)
        dummy.first(2)
        for value in (1, 2, 3, 1):
            dummy.second(value)
        self.assertEqual((outcome_cache(dummy, 'first').maxsize, len(outcome_cache(dummy, 'first'))), (1, 1))
        self.assertEqual((outcome_cache(dummy, 'second').maxsize, len(outcome_cache(dummy, 'second'))), (None, 3))
        self.assertEqual(outcome_cache(dummy, 'second').hits, 1)
        self.assertIsNone(outcome_cache(Dummy(), 'first'))

    def test_maxsize(self):
        cache = OutcomeCache(maxsize=1)
        cache.set("f", (1,), "a")
        cache.set("f", (2,), "b")
        self.assertEqual(cache.get("f", (1,)), (False, None))
        self.assertEqual(cache.get("f", (2,)), (True, "b"))
        self.assertEqual((cache.hits, cache.misses), (1, 1))


class TestCli(unittest.TestCase):
    """Тесты для командной строки"""

    ONES = {"n": 2, "m": 4, "entitlements": ["1/2", "1/2"],
            "signal_spaces": [{"kind": "singleton"}, {"kind": "singleton"}],
            "valuations": [{"kind": "additive", "items": ["1", "1", "1", "1"]}] * 2}

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.out, self.err = [], []

    def tearDown(self):
        self.directory.cleanup()

    def write(self, name, data):
        path = os.path.join(self.directory.name, name)
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(data, handle)
        return path

    def run_cli(self, *argv):
        code = main(list(argv), stdout=self.out.append, stderr=self.err.append)
        return code, (json.loads(self.out[-1]) if self.out else None)

    def test_shares(self):
        code, document = self.run_cli("shares", "--instance", self.write("ones.json", self.ONES), "--agent", "0")
        self.assertEqual(code, 0)
        self.assertEqual(document["shares"], [{"agent": 0, "PROP": "2", "MMS": "2", "APS": "2"}])

    def test_shares_refused_by_budget(self):
        data = dict(self.ONES, m=63, valuations=[{"kind": "set_cover", "k": 6}] * 2)
        code, document = self.run_cli("shares", "--instance", self.write("cover.json", data), "--agent", "0")
        self.assertEqual(code, 2)
        row = document["shares"][0]
        self.assertEqual(row["PROP"], "3")
        self.assertIn("refused", row["APS"])

    def test_run_and_audit(self):
        reports = {"reports": [{"signal": "*", "bid": "*"}] * 2, "true_signals": ["*", "*"]}
        code, document = self.run_cli("run", "--instance", self.write("ones.json", self.ONES), "--mechanism",
                                      "cut-and-choose", "--reports", self.write("reports.json", reports),
                                      "--notions", "EF,MMS")
        self.assertEqual(code, 0)
        self.assertEqual(document["outcome"]["allocation"], [[2, 3], [0, 1]])
        self.assertTrue(document["fairness"]["all_fair"])

    def test_pne_verify(self):
        reports = {"reports": [{"signal": "*", "bid": "*"}] * 2, "true_signals": ["*", "*"]}
        code, document = self.run_cli("pne", "verify", "--instance", self.write("ones.json", self.ONES),
                                      "--mechanism", "price-and-choose", "--reports", self.write("r.json", reports))
        self.assertEqual(code, 0)
        self.assertTrue(document["is_pne"])

    def test_repro_xos_gap(self):
        code, document = self.run_cli("--timings", "repro", "xos-gap")
        self.assertEqual(code, 0)
        self.assertTrue(document["holds"])
        self.assertIn("timings", document)

    def test_input_error_exit_code(self):
        code, document = self.run_cli("shares", "--instance", self.write("bad.json", dict(self.ONES, n=1)))
        self.assertEqual(code, 2)
        self.assertIsNone(document)
        self.assertTrue(self.err[-1].startswith("error:"))

    def test_non_monotone_table_exit_code(self):
        data = {"n": 2, "m": 3, "entitlements": ["1/2", "1/2"],
                "signal_spaces": [{"kind": "singleton"}, {"kind": "singleton"}],
                "valuations": [{"kind": "table", "values": [["0", "0", "1", "0", "2", "2", "0", "0"]]}] * 2}
        reports = {"reports": [{"signal": "*", "bid": "*"}] * 2, "true_signals": ["*", "*"]}
        code, document = self.run_cli("run", "--instance", self.write("table.json", data), "--mechanism",
                                      "cut-and-choose", "--reports", self.write("reports.json", reports),
                                      "--notions", "EF,MMS")
        self.assertEqual(code, 2)
        self.assertIsNone(document)
        self.assertIn("not monotone", self.err[-1])

    def test_invariant_violation_prints_json(self):
        with patch("FairSmith.cli.load_instance", side_effect=InvariantViolation("broken vertex")):
            code, document = self.run_cli("shares", "--instance", "any.json")
        self.assertEqual(code, 1)
        self.assertEqual(document, {"error": "broken vertex", "kind": "invariant"})
        self.assertTrue(self.err[-1].startswith("internal invariant violated"))

    def test_shares_mms_refused_for_unequal_entitlements(self):
        data = dict(self.ONES, entitlements=["1/3", "2/3"])
        code, document = self.run_cli("shares", "--instance", self.write("unequal.json", data), "--agent", "1",
                                      "--notions", "PROP,MMS")
        self.assertEqual(code, 2)
        self.assertEqual(document["shares"][0]["PROP"], "8/3")
        self.assertIn("equal entitlements", document["shares"][0]["MMS"]["refused"])

    def test_unknown_mechanism(self):
        with self.assertRaises(SystemExit) as context:
            self.run_cli("run", "--instance", "x.json", "--mechanism", "lottery", "--reports", "r.json")
        self.assertEqual(context.exception.code, 2)


def run_tests():
    """Запуск всех тестов"""
    # Создание тестового набора
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()

    # Добавление тестов
    for case in (TestRationalAndTypes, TestModel, TestValuationAxioms, TestLinearProgramming, TestShares,
                 TestFairnessAudit, TestCutAndChoose, TestPriceAndChoose, TestBlackBox, TestEquilibria,
                 TestInvariances, TestCounterexamples, TestSuites, TestSerialization, TestOutcomeCache, TestCli):
        suite.addTests(loader.loadTestsFromTestCase(case))

    # Запуск тестов
    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    return result.wasSuccessful()


if __name__ == "__main__":
    print("FairSmith Tests")
    print("=" * 50)

    success = run_tests()

    if success:
        print("Все тесты пройдены успешно!")
    else:
        print("Некоторые тесты не прошли!")
