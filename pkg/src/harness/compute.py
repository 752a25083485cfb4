"""sigma and rho for one group spec: formulas first, constructions for upper
bounds, the solver for exactness, every disagreement fatal."""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass
from pathlib import Path

from algebra.errors import ConsistencyError, GuardExceeded
from algebra.group import Group, Subgroup
from algebra.lattice import all_subgroups
from algebra.structure import frobenius_witness, is_cyclic
from particover_utils import (append_record, get_cache_path, get_max_order, lookup_record,
                              save_certificate)
from search.branch import SearchBudget
from search.certificates import PartitionCertificate, partition_problem
from search.constructions import (check_linear_params, elementary_abelian_partition,
                                  frobenius_partition, psl_pgl_partition)
from search.solver import SearchResult, rho, rho_lower_bound, sigma
from theory.formulas import (Estimate, SigmaRhoReport, rho_formula, sigma_formula,
                             suzuki_report)

from . import __version__
from .spec import GroupSpec, build_group, format_spec, group_order, parse_spec


class InexactResult(RuntimeError):
    """--exact-only was requested and a value is only known up to an interval."""


@dataclass(frozen=True)
class ResultRecord:
    spec: str
    order: int
    sigma: int | str | None
    rho: int | str | None
    sigma_source: str | None
    rho_source: str | None
    cert_digest: str
    version: str
    seconds: float

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, record: dict) -> "ResultRecord":
        return cls(**{k: record[k] for k in cls.__dataclass_fields__})

    @classmethod
    def from_report(cls, report: SigmaRhoReport, seconds: float) -> "ResultRecord":
        cert = report.certificate
        return cls(
            spec=format_spec(report.spec),
            order=report.order,
            sigma=report.sigma.to_json() if report.sigma else None,
            rho=report.rho.to_json() if report.rho else None,
            sigma_source=report.sigma.source if report.sigma else None,
            rho_source=report.rho.source if report.rho else None,
            cert_digest=cert.digest() if cert else "",
            version=__version__,
            seconds=round(seconds, 3),
        )


def _show(label: str, value) -> None:
    print(f"  {label:<22} {value}")


def _outcome(result: SearchResult) -> str:
    if result.exact:
        return "none" if result.value is None else str(result.value)
    upper = "?" if result.value is None else result.value
    return f"[{result.lower_bound},{upper}] (budget exhausted after {result.nodes:,} nodes)"


# --- sigma ------------------------------------------------------------------

def _sigma_estimate(spec: GroupSpec, G: Group, subgroups, budget: SearchBudget):
    f = sigma_formula(spec, G)
    _show("sigma formula", "n/a" if f is None else f)
    if subgroups is None:
        return (Estimate(f, "formula"), None) if f is not None else (None, None)

    result = sigma(G, budget, subgroups)
    _show("sigma solver", _outcome(result))
    if f is not None:
        if result.exact and result.value != f:
            raise ConsistencyError(f"{spec}: sigma formula {f} but solver proved {result.value}")
        if not result.exact and not result.lower_bound <= f <= result.value:
            raise ConsistencyError(f"{spec}: sigma formula {f} outside solver interval "
                                   f"[{result.lower_bound},{result.value}]")
        return Estimate(f, "formula"), result.certificate if result.value == f else None
    if result.exact:
        return Estimate(result.value, "solver-exact"), result.certificate
    return Estimate(None, "solver-interval", (int(result.lower_bound), result.value)), result.certificate


# --- rho --------------------------------------------------------------------

def construction_for(spec: GroupSpec, G: Group, max_order: int) -> PartitionCertificate | None:
    """An explicit partition of G when one of the known families applies."""
    family, params = spec.family, spec.params
    cert = None
    if family == "Cp^n" and params[1] >= 2:
        cert = elementary_abelian_partition(*params)
    elif family in ("PSL2", "PGL2"):
        try:
            check_linear_params(params[0], family[:3])
        except ValueError:
            pass
        else:
            cert = psl_pgl_partition(params[0], family[:3])
    if cert is None and G.order <= max_order:
        w = frobenius_witness(G, max_order)
        if w is not None:
            cert = frobenius_partition(G, w)
    if cert is not None:
        problem = partition_problem(G, cert)
        if problem:
            raise ConsistencyError(f"{spec}: construction does not partition the built group: {problem}")
    return cert


def _rho_estimate(spec: GroupSpec, G: Group, subgroups, budget: SearchBudget, max_order: int):
    f = rho_formula(spec, G)
    construction = construction_for(spec, G, max_order)
    _show("rho formula", "n/a" if f is None else f)
    _show("rho construction", "n/a" if construction is None else construction.size)
    if f is not None and construction is not None and construction.size < f:
        raise ConsistencyError(f"{spec}: construction of size {construction.size} beats rho formula {f}")

    result = None
    if subgroups is not None:
        result = rho(G, budget, subgroups, seed=construction)
        _show("rho solver", _outcome(result))

    if result is not None and result.exact:
        if f is not None and result.value != f:
            raise ConsistencyError(f"{spec}: rho formula {f} but solver proved {result.value}")
        if construction is not None and result.value is None:
            raise ConsistencyError(f"{spec}: solver found no partition but a construction exists")
    elif result is not None and f is not None:
        upper = result.value if result.value is not None else f
        if not result.lower_bound <= f <= upper:
            raise ConsistencyError(f"{spec}: rho formula {f} outside solver interval [{result.lower_bound},{upper}]")

    candidates = [c for c in (result.certificate if result else None, construction) if c is not None]
    if f is not None:
        match = next((c for c in candidates if c.size == f), None)
        return Estimate(f, "formula"), match
    if result is not None and result.exact:
        return Estimate(result.value, "solver-exact"), result.certificate

    best = min(candidates, key=lambda c: c.size, default=None)
    if best is None:
        return None, None
    lower = max(int(result.lower_bound) if result else 0, rho_lower_bound(G))
    source = "construction-upper" if result is None or best is construction else "solver-interval"
    return Estimate(None, source, (lower, best.size)), best


# --- reports ----------------------------------------------------------------

def _suzuki(spec: GroupSpec, want_sigma: bool, want_rho: bool) -> SigmaRhoReport:
    m = (spec.params[0].bit_length() - 2) // 2
    report = suzuki_report(m)
    _show("sigma formula", report.sigma)
    _show("rho lower bound", report.rho_lower)
    _show("partition size", report.psi_size)
    if not report.ok:
        raise ConsistencyError(f"{spec}: Suzuki identities fail: {report}")
    return SigmaRhoReport(
        spec=spec, order=report.order,
        sigma=Estimate(report.sigma, "formula") if want_sigma else None,
        rho=Estimate(None, "construction-upper", (report.rho_lower, report.psi_size)) if want_rho else None,
    )


def compute_report(spec: GroupSpec, want_sigma: bool = True, want_rho: bool = True,
                   budget: SearchBudget | None = None) -> SigmaRhoReport:
    budget = budget or SearchBudget.from_environment()
    if spec.family == "Sz":
        return _suzuki(spec, want_sigma, want_rho)

    max_order = get_max_order()
    G = build_group(spec)
    if is_cyclic(G):
        return SigmaRhoReport(spec=spec, order=G.order,
                              sigma=Estimate(float("inf"), "formula") if want_sigma else None,
                              rho=Estimate(None, "formula") if want_rho else None)

    subgroups: list[Subgroup] | None = None
    if G.order <= max_order:
        subgroups = all_subgroups(G, max_order)
        print(f"  {len(subgroups):,} subgroups")
    else:
        print(f"  Warning: order {G.order} exceeds PARTICOVER_MAX_ORDER={max_order}, solver skipped")

    sigma_est = cover = rho_est = partition = None
    if want_sigma:
        sigma_est, cover = _sigma_estimate(spec, G, subgroups, budget)
    if want_rho:
        rho_est, partition = _rho_estimate(spec, G, subgroups, budget, max_order)

    report = SigmaRhoReport(spec=spec, order=G.order, sigma=sigma_est, rho=rho_est,
                            cover=cover, partition=partition)
    report.check()
    return report


def cmd_compute(text: str, want_sigma: bool = True, want_rho: bool = True,
                budget: SearchBudget | None = None, exact_only: bool = False,
                cache_path: Path | None = None, use_cache: bool = True) -> ResultRecord:
    """Compute, print and cache the ResultRecord for one spec."""
    spec = parse_spec(text)
    canonical = format_spec(spec)
    cache_path = Path(cache_path) if cache_path else get_cache_path()

    print(f"\n=== {canonical} (order {group_order(spec):,}) ===")
    if use_cache:
        cached = lookup_record(canonical, __version__, cache_path)
        missing = cached is not None and ((want_sigma and cached["sigma"] is None)
                                          or (want_rho and cached["rho"] is None))
        if cached is not None and not missing:
            record = ResultRecord.from_dict(cached)
            _require_exact(record, exact_only, want_sigma, want_rho)
            print(f"  Cached: sigma {record.sigma}, rho {record.rho}")
            return record

    if exact_only and spec.family == "Sz" and want_rho:
        raise InexactResult(f"{canonical}: rho of a Suzuki group is only known as an interval")

    started = time.monotonic()
    try:
        report = compute_report(spec, want_sigma, want_rho, budget)
    except GuardExceeded as e:
        raise GuardExceeded(f"{canonical}: {e}") from e
    record = ResultRecord.from_report(report, time.monotonic() - started)

    print(f"  sigma = {record.sigma} ({record.sigma_source}), rho = {record.rho} ({record.rho_source})")
    _require_exact(record, exact_only, want_sigma, want_rho)

    if report.certificate is not None:
        save_certificate(record.cert_digest, report.certificate.id_lists(), cache_path)
    append_record(record.to_dict(), cache_path)
    return record


def _require_exact(record: ResultRecord, exact_only: bool, want_sigma: bool, want_rho: bool) -> None:
    if not exact_only:
        return
    for name, wanted in (("sigma", want_sigma), ("rho", want_rho)):
        value = getattr(record, name)
        if wanted and (value is None or isinstance(value, str) and value.startswith("[")):
            raise InexactResult(f"{record.spec}: {name} is {value}, not exact")
