"""
Чтение экземпляров и отчётов из JSON и вывод результатов

Рациональные числа везде записываются строками "p/q". Ошибки формата
сообщаются как InputError с JSON-путём.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from FairSmith.core.bundle import Allocation
from FairSmith.core.expressions import parse_expression
from FairSmith.core.instance import Instance
from FairSmith.core.signals import Report, ReportProfile, Signal, SignalProfile, SignalSpace
from FairSmith.core.valuation import AdditiveValuation, BaseValuation, TableValuation, XOSValuation
from FairSmith.counterexamples.set_cover import SetCoverValuation
from FairSmith.data_types import MechanismKind, ValuationKind
from FairSmith.errors import DomainError, InputError
from FairSmith.rational import as_rational, format_rational


def _require(data: Dict[str, Any], key: str, location: str) -> Any:
    if not isinstance(data, dict):
        raise InputError("expected an object", location)
    if key not in data:
        raise InputError(f"missing field {key!r}", location)
    return data[key]


def _list(value: Any, location: str) -> list:
    if not isinstance(value, list):
        raise InputError("expected an array", location)
    return value


def _int(value: Any, location: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError("expected an integer", location)
    return value


def signal_space_from_dict(data: Dict[str, Any], location: str) -> SignalSpace:
    kind = _require(data, "kind", location)
    if kind == "singleton":
        label = data.get("label", "*")
        if not isinstance(label, str):
            raise InputError("singleton label must be a string", f"{location}.label")
        return SignalSpace.singleton(label)
    if kind == "vectors":
        vectors = _list(_require(data, "vectors", location), f"{location}.vectors")
        signals = tuple(Signal.vector(_list(vector, f"{location}.vectors[{i}]"), f"{location}.vectors[{i}]")
                        for i, vector in enumerate(vectors))
        try:
            return SignalSpace(signals, "vectors")
        except InputError as error:
            raise InputError(str(error), location) from None
    raise InputError(f"unknown signal space kind {kind!r}", f"{location}.kind")


def valuation_from_dict(data: Dict[str, Any], spaces: Tuple[SignalSpace, ...], location: str) -> BaseValuation:
    kind = ValuationKind.parse(_require(data, "kind", location), f"{location}.kind")
    try:
        if kind is ValuationKind.ADDITIVE:
            items = _list(_require(data, "items", location), f"{location}.items")
            return AdditiveValuation(tuple(parse_expression(item, f"{location}.items[{j}]")
                                           for j, item in enumerate(items)))
        if kind is ValuationKind.XOS:
            clauses = _list(_require(data, "clauses", location), f"{location}.clauses")
            return XOSValuation(tuple(
                tuple(parse_expression(item, f"{location}.clauses[{c}][{j}]")
                      for j, item in enumerate(_list(clause, f"{location}.clauses[{c}]")))
                for c, clause in enumerate(clauses)))
        if kind is ValuationKind.TABLE:
            rows = _list(_require(data, "values", location), f"{location}.values")
            return TableValuation(tuple(
                tuple(as_rational(value, f"{location}.values[{r}][{b}]")
                      for b, value in enumerate(_list(row, f"{location}.values[{r}]")))
                for r, row in enumerate(rows)), spaces)
        return SetCoverValuation(_int(_require(data, "k", location), f"{location}.k"))
    except DomainError as error:
        raise InputError(str(error), location) from None
    except InputError as error:
        if error.location:
            raise
        raise InputError(str(error), location) from None


def instance_from_dict(data: Dict[str, Any]) -> Instance:
    """
    Создает Instance из словаря формата файла экземпляра

    :param data: {"n", "m", "entitlements", "signal_spaces", "valuations"}
    :return: Instance
    """
    n = _int(_require(data, "n", "$"), "n")
    m = _int(_require(data, "m", "$"), "m")
    entitlements = tuple(as_rational(value, f"entitlements[{i}]")
                         for i, value in enumerate(_list(_require(data, "entitlements", "$"), "entitlements")))
    spaces = tuple(signal_space_from_dict(space, f"signal_spaces[{i}]")
                   for i, space in enumerate(_list(_require(data, "signal_spaces", "$"), "signal_spaces")))
    valuations = tuple(valuation_from_dict(valuation, spaces, f"valuations[{i}]")
                       for i, valuation in enumerate(_list(_require(data, "valuations", "$"), "valuations")))
    return Instance(n, m, entitlements, spaces, valuations)


def instance_to_dict(instance: Instance) -> Dict[str, Any]:
    spaces = []
    for space in instance.spaces:
        if space.kind == "singleton":
            spaces.append({"kind": "singleton", "label": space.signals[0].label})
        else:
            spaces.append({"kind": "vectors", "vectors": [signal.to_jsonable() for signal in space]})
    return {"n": instance.n, "m": instance.m,
            "entitlements": [format_rational(alpha) for alpha in instance.entitlements],
            "signal_spaces": spaces,
            "valuations": [valuation.to_jsonable() for valuation in instance.valuations]}


def _read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as error:
        raise InputError(f"cannot read {path}: {error.strerror}") from None
    except json.JSONDecodeError as error:
        raise InputError(f"{path} is not valid JSON: {error.msg} at line {error.lineno}") from None


def load_instance(path: str) -> Instance:
    return instance_from_dict(_read_json(path))


def profile_from_json(raw: Any, instance: Instance, location: str) -> SignalProfile:
    entries = _list(raw, location)
    if len(entries) != instance.n:
        raise InputError(f"expected {instance.n} signals, got {len(entries)}", location)
    return tuple(space.resolve(entry, f"{location}[{agent}]")
                 for agent, (space, entry) in enumerate(zip(instance.spaces, entries)))


@dataclass(frozen=True)
class ReportsFile:
    """Содержимое файла отчётов"""
    reports: Optional[ReportProfile]
    true_signals: Optional[SignalProfile]
    evaluation_profiles: Optional[Tuple[SignalProfile, ...]]


def reports_from_dict(data: Dict[str, Any], instance: Instance, kind: MechanismKind) -> ReportsFile:
    """
    Разбирает файл отчётов для механизма вида kind

    Ставка в Cut-&-Choose и Price-&-Choose — сигнал другого агента, в
    чёрном ящике — полный профиль сигналов.
    """
    if not isinstance(data, dict):
        raise InputError("expected an object", "$")
    reports = None
    if "reports" in data:
        entries = _list(data["reports"], "reports")
        if len(entries) != instance.n:
            raise InputError(f"expected {instance.n} reports, got {len(entries)}", "reports")
        parsed: List[Report] = []
        for agent, entry in enumerate(entries):
            location = f"reports[{agent}]"
            signal = instance.spaces[agent].resolve(_require(entry, "signal", location), f"{location}.signal")
            raw_bid = _require(entry, "bid", location)
            if kind is MechanismKind.BLACKBOX:
                bid = profile_from_json(raw_bid, instance, f"{location}.bid")
            else:
                bid = instance.spaces[1 - agent].resolve(raw_bid, f"{location}.bid")
            parsed.append(Report(signal, bid))
        reports = tuple(parsed)
    true_signals = None
    if "true_signals" in data:
        true_signals = profile_from_json(data["true_signals"], instance, "true_signals")
    evaluation = None
    if "evaluation_profiles" in data:
        raw = _list(data["evaluation_profiles"], "evaluation_profiles")
        if len(raw) != instance.n:
            raise InputError(f"expected {instance.n} evaluation profiles", "evaluation_profiles")
        evaluation = tuple(profile_from_json(profile, instance, f"evaluation_profiles[{i}]")
                           for i, profile in enumerate(raw))
    return ReportsFile(reports, true_signals, evaluation)


def load_reports(path: str, instance: Instance, kind: MechanismKind) -> ReportsFile:
    return reports_from_dict(_read_json(path), instance, kind)


def to_jsonable(value: Any) -> Any:
    """Приводит результаты библиотеки к JSON-совместимому виду"""
    if hasattr(value, "to_jsonable"):
        return value.to_jsonable()
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Allocation):
        return value.to_lists()
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    return value


def dump_json(value: Any) -> str:
    """JSON с отсортированными ключами: одинаковый вход даёт одинаковый вывод"""
    return json.dumps(to_jsonable(value), sort_keys=True, indent=2, ensure_ascii=False)


def dump_profile(profile: Sequence[Signal]) -> List[Any]:
    return [signal.to_jsonable() for signal in profile]
