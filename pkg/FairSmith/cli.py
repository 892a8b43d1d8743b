"""
Командная строка FairSmith

Коды выхода: 0 — свойство выполнено, 1 — нарушено или не воспроизведено,
2 — ошибка входных данных или бюджета. JSON-документ печатается в stdout,
краткая сводка — в stderr.
"""

import argparse
import json
import logging
import sys
import time
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from FairSmith import __version__
from FairSmith.config import Budget
from FairSmith.core.instance import Instance
from FairSmith.core.signals import SignalProfile
from FairSmith.counterexamples import (impossibility_audit, subadditive_incompatibility_check,
                                       xos_mms_gap_report)
from FairSmith.data_types import FairnessNotion
from FairSmith.equilibrium import audit_equilibria, enumerate_pne, verify_pne
from FairSmith.errors import BudgetExceededError, DomainError, FairSmithError, InputError, InvariantViolation
from FairSmith.fairness import audit, compute_aps, mms_partition, prop_share_value
from FairSmith.mechanisms import MECHANISMS, build_mechanism
from FairSmith.serialization import dump_json, dump_profile, load_instance, load_reports, profile_from_json
from FairSmith.suites import SUITES

logger = logging.getLogger("FairSmith")

EXIT_OK, EXIT_VIOLATED, EXIT_ERROR = 0, 1, 2

Result = Tuple[int, Dict[str, Any], str]

IMPOSSIBILITY_DEFAULTS = {"mms-impossibility": ("MMS", "blackbox-mms"),
                          "ef1-impossibility": ("EF1", "blackbox-round-robin")}


def _notions(text: str) -> List[FairnessNotion]:
    return FairnessNotion.ordered(FairnessNotion.parse_many(text.split(',')))


def _budget(args: argparse.Namespace) -> Budget:
    return Budget.from_dict({"max_items": args.budget_items, "max_lp_items": args.budget_lp_items,
                             "max_partitions": args.budget_partitions, "max_report_space": args.budget_reports,
                             "max_pairs": args.budget_pairs})


def _profile(raw: Optional[str], instance: Instance, flag: str) -> Optional[SignalProfile]:
    if raw is None:
        return None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as error:
        raise InputError(f"not valid JSON: {error.msg}", flag) from None
    return profile_from_json(data, instance, flag)


def cmd_shares(args: argparse.Namespace, budget: Budget) -> Result:
    """PROP / MMS / APS агентов; отказ оракула записывается в вывод"""
    instance = load_instance(args.instance)
    profile = _profile(args.profile, instance, "--profile") or next(iter(instance.profiles()))
    agents = [args.agent] if args.agent is not None else list(instance.agents)
    rows, refused = [], []
    for agent in agents:
        if not 0 <= agent < instance.n:
            raise InputError(f"agent {agent} out of range 0..{instance.n - 1}", "--agent")
        bv = instance.valuation_at(agent, profile)
        alpha = instance.entitlements[agent]
        row: Dict[str, Any] = {"agent": agent}
        for notion in _notions(args.notions):
            try:
                if notion is FairnessNotion.PROP:
                    row[notion.value] = prop_share_value(bv, alpha)
                elif notion is FairnessNotion.MMS:
                    instance.check_notion(notion)
                    row[notion.value] = mms_partition(bv, instance.n, budget)[0]
                elif notion is FairnessNotion.APS:
                    row[notion.value] = compute_aps(bv, alpha, budget).value
                else:
                    raise InputError(f"{notion.value} is not a share notion", "--notions")
            except (BudgetExceededError, DomainError) as error:
                row[notion.value] = {"refused": str(error)}
                refused.append(f"agent {agent} {notion.value}: {error}")
        rows.append(row)
    summary = "; ".join(
        ", ".join(f"{key}={value}" for key, value in row.items() if key != "agent" and not isinstance(value, dict))
        for row in rows)
    if refused:
        summary += " | refused: " + "; ".join(refused)
    return (EXIT_ERROR if refused else EXIT_OK), {"profile": dump_profile(profile), "shares": rows}, summary


def cmd_run(args: argparse.Namespace, budget: Budget) -> Result:
    """Запуск механизма на профиле отчётов и (по желанию) аудит"""
    instance = load_instance(args.instance)
    mechanism = build_mechanism(args.mechanism, instance, budget)
    data = load_reports(args.reports, instance, mechanism.kind)
    if data.reports is None:
        raise InputError("reports file has no 'reports' field", args.reports)
    outcome = mechanism.allocate(data.reports)
    document: Dict[str, Any] = {"mechanism": mechanism.name, "outcome": outcome.to_jsonable()}
    summary = f"allocation {outcome.allocation.to_lists()}"
    code = EXIT_OK
    if args.notions and (data.evaluation_profiles or data.true_signals):
        profiles = data.evaluation_profiles or [data.true_signals] * instance.n
        report = audit(outcome.allocation, profiles, set(_notions(args.notions)), instance, budget)
        document["fairness"] = report.to_jsonable()
        summary += f", fair: {report.all_fair}"
        code = EXIT_OK if report.all_fair else EXIT_VIOLATED
    if outcome.trace.get("default"):
        summary += " (default allocation: no consensus)"
    return code, document, summary


def _true_signals(args: argparse.Namespace, instance: Instance, from_file: Optional[SignalProfile]) -> SignalProfile:
    profile = _profile(args.true_signals, instance, "--true-signals") or from_file
    if profile is None:
        raise InputError("true signals are required (--true-signals or 'true_signals' in the reports file)")
    return profile


def cmd_pne(args: argparse.Namespace, budget: Budget) -> Result:
    """Проверка профиля или перебор всех равновесий"""
    instance = load_instance(args.instance)
    mechanism = build_mechanism(args.mechanism, instance, budget)
    data = load_reports(args.reports, instance, mechanism.kind) if args.reports else None
    truth = _true_signals(args, instance, data.true_signals if data else None)
    if args.pne_command == "verify":
        if data is None or data.reports is None:
            raise InputError("pne verify needs a reports file with 'reports'")
        certificate = verify_pne(mechanism, instance, truth, data.reports, budget)
        summary = "is a PNE" if certificate.is_pne else (
            f"agent {certificate.agent} gains {certificate.gap} by deviating")
        return (EXIT_OK if certificate.is_pne else EXIT_VIOLATED), certificate.to_jsonable(), summary

    if args.notions:
        result = audit_equilibria(mechanism, instance, truth, _notions(args.notions), budget)
        document = dict(result.to_jsonable(), true_signals=dump_profile(truth))
        summary = (f"{len(result.equilibria)} equilibria, fair PNE exists: {result.exists_fair_pne}, "
                   f"all fair: {result.all_pne_fair}")
        return (EXIT_OK if result.exists_fair_pne else EXIT_VIOLATED), document, summary
    equilibria = [{"reports": [report.to_jsonable() for report in reports], "allocation": allocation.to_lists()}
                  for reports, allocation in enumerate_pne(mechanism, instance, truth, budget)]
    document = {"true_signals": dump_profile(truth), "pne_count": len(equilibria), "equilibria": equilibria}
    return (EXIT_OK if equilibria else EXIT_VIOLATED), document, f"{len(equilibria)} equilibria"


def cmd_repro(args: argparse.Namespace, budget: Budget) -> Result:
    """Воспроизведение конструкций и наборов проверок одной командой"""
    target = args.target
    if target in IMPOSSIBILITY_DEFAULTS:
        variant, default_mechanism = IMPOSSIBILITY_DEFAULTS[target]
        result = impossibility_audit(args.mechanism or default_mechanism, args.n, variant, budget=budget)
        summary = "reproduced" if result.reproduced else f"not reproduced: {result.failing_step}"
        return (EXIT_OK if result.reproduced else EXIT_VIOLATED), result.to_jsonable(), summary
    if target == "xos-gap":
        gap = xos_mms_gap_report()
        return (EXIT_OK if gap.holds else EXIT_VIOLATED), gap.to_jsonable(), "verified" if gap.holds else "failed"
    if target == "subadditive-aps":
        report = subadditive_incompatibility_check(args.k, args.bundles, args.prices, args.seed)
        return (EXIT_OK if report.passed else EXIT_VIOLATED), report.to_jsonable(), (
            "all checks pass" if report.passed else "checks failed")
    suite = SUITES[target]
    kwargs = {"seed": args.seed, "budget": budget}
    if args.count is not None:
        kwargs["count"] = args.count
    report = suite(**kwargs)
    summary = (f"{report.cases} cases, {len(report.failures)} failures, "
               f"{len(report.lattice_violations) + len(report.prop_violations)} lattice violations")
    return (EXIT_OK if report.passed else EXIT_VIOLATED), report.to_jsonable(), summary


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fairsmith",
                                     description="Fair division with interdependent values: mechanisms, "
                                                 "share oracles and equilibrium audits")
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    parser.add_argument('-v', '--verbose', action='count', default=0, help="-v for progress, -vv for debug")
    parser.add_argument('--timings', action='store_true', help="add wall-clock timings to the JSON output")
    parser.add_argument('--budget-items', type=int, help="max items for 2^m enumeration (default 10)")
    parser.add_argument('--budget-lp-items', type=int, help="max items for LP oracles (default 12)")
    parser.add_argument('--budget-partitions', type=int, help="max partitions for MMS")
    parser.add_argument('--budget-reports', type=int, help="max report profiles / deviations")
    parser.add_argument('--budget-pairs', type=int, help="max bundle pairs for subadditivity checks")
    commands = parser.add_subparsers(dest="command", required=True)

    shares = commands.add_parser("shares", help="compute PROP, MMS and APS")
    shares.add_argument('--instance', required=True)
    shares.add_argument('--agent', type=int)
    shares.add_argument('--profile', help="signal profile as JSON (default: first profile)")
    shares.add_argument('--notions', default="PROP,MMS,APS")
    shares.set_defaults(handler=cmd_shares)

    run = commands.add_parser("run", help="run a mechanism on a report profile")
    run.add_argument('--instance', required=True)
    run.add_argument('--mechanism', required=True, choices=sorted(MECHANISMS))
    run.add_argument('--reports', required=True)
    run.add_argument('--notions', help="audit the allocation, e.g. EF,MMS")
    run.set_defaults(handler=cmd_run)

    pne = commands.add_parser("pne", help="verify or enumerate pure Nash equilibria")
    pne.add_argument('pne_command', choices=["verify", "enumerate"])
    pne.add_argument('--instance', required=True)
    pne.add_argument('--mechanism', required=True, choices=sorted(MECHANISMS))
    pne.add_argument('--reports')
    pne.add_argument('--true-signals', help="true signal profile as JSON")
    pne.add_argument('--notions', help="audit every equilibrium at the true signals")
    pne.set_defaults(handler=cmd_pne)

    repro = commands.add_parser("repro", help="reproduce a construction or run a randomized suite")
    repro.add_argument('target', choices=sorted(list(IMPOSSIBILITY_DEFAULTS) + ["xos-gap", "subadditive-aps"]
                                                + list(SUITES)))
    repro.add_argument('--n', type=int, default=3)
    repro.add_argument('--mechanism', choices=sorted(MECHANISMS))
    repro.add_argument('--k', type=int, default=6)
    repro.add_argument('--seed', type=int, default=0)
    repro.add_argument('--count', type=int)
    repro.add_argument('--bundles', type=int, default=10 ** 4)
    repro.add_argument('--prices', type=int, default=10 ** 3)
    repro.set_defaults(handler=cmd_repro)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        logger.addHandler(handler)
    logger.setLevel(level)


def main(argv: Optional[Sequence[str]] = None,
         stdout: Optional[Callable[[str], Any]] = None, stderr: Optional[Callable[[str], Any]] = None) -> int:
    """
    Точка входа fairsmith

    :param argv: Аргументы командной строки (по умолчанию sys.argv[1:])
    :return: Код выхода
    """
    out = stdout or (lambda text: print(text, file=sys.stdout))
    err = stderr or (lambda text: print(text, file=sys.stderr))
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    started = time.perf_counter()
    try:
        budget = _budget(args)
        code, document, summary = args.handler(args, budget)
    except InvariantViolation as error:
        out(dump_json({"error": str(error), "kind": "invariant"}))
        err(f"internal invariant violated: {error}")
        return EXIT_VIOLATED
    except FairSmithError as error:
        err(f"error: {error}")
        return EXIT_ERROR
    if args.timings:
        document = dict(document, timings={"seconds": round(time.perf_counter() - started, 3)})
    out(dump_json(document))
    err(summary)
    return code


if __name__ == "__main__":
    sys.exit(main())
