"""Parameter sweeps over chains and the two-level system."""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from functools import partial
from typing import Dict, List, Optional

from pydantic import ValidationError

from entanglement_engine import __version__
from entanglement_engine.config import get_settings
from entanglement_engine.errors import SpinRadarError
from entanglement_engine.logging_config import scan_logger
from entanglement_engine.models import (
    ChainSpec,
    ModelKind,
    Observable,
    PointError,
    ScanMetadata,
    ScanSeries,
    ScanSpec,
    TLSModel,
    column_key,
)
from entanglement_engine.scans.analysis import derivative_series, refined_spec
from entanglement_engine.solvers import (
    build_rdm,
    pair_correlators,
    solve_chain,
    tls_concurrence,
    total_order,
    wootters,
)


@dataclass
class PointResult:
    """Everything one grid point contributes to a series."""

    values: Dict[str, Optional[float]] = field(default_factory=dict)
    branches: Dict[str, Optional[str]] = field(default_factory=dict)
    zero_modes: int = 0
    negative_invariants: List[str] = field(default_factory=list)
    errors: List[PointError] = field(default_factory=list)


def _pair_label(pair) -> str:
    return f"{pair[0]}-{pair[1]}"


def _error(index: int, parameter: float, exc: Exception, where: str = "") -> PointError:
    kind = type(exc).__name__
    if isinstance(exc, ValidationError):
        kind = "InputError"
    message = f"{where}: {exc}" if where else str(exc)
    return PointError(index=index, parameter=parameter, kind=kind, message=message)


def evaluate_chain_point(spec: ScanSpec, index: int, lam: float) -> PointResult:
    """Full free-fermion pipeline at one lambda."""
    result = PointResult()
    try:
        chain = ChainSpec(n_sites=spec.n_sites, lam=lam, kappa=spec.kappa_at(lam))
        modes, cm, _ = solve_chain(chain)
    except (SpinRadarError, ValidationError) as exc:
        result.errors.append(_error(index, lam, exc))
        return result

    result.zero_modes = modes.zero_modes
    for pair in spec.pairs:
        label = _pair_label(pair)
        try:
            pc = pair_correlators(cm, *pair)
            rdm = build_rdm(pc)
            outcome = wootters(rdm)
        except SpinRadarError as exc:
            result.errors.append(_error(index, lam, exc, where=f"pair {label}"))
            result.branches[label] = None
            continue

        result.branches[label] = outcome.branch.value
        if rdm.i1 < 0.0 or rdm.i2 < 0.0:
            result.negative_invariants.append(label)

        observed = {
            Observable.C: outcome.c,
            Observable.C_STAR: outcome.c_star,
            Observable.TOTAL_ORDER: total_order(pc),
            Observable.XX: pc.xx,
            Observable.YY: pc.yy,
            Observable.ZZ: pc.zz,
            Observable.ZI: pc.zi,
            Observable.ZJ: pc.zj,
            Observable.I1: rdm.i1,
            Observable.I2: rdm.i2,
        }
        for observable in spec.outputs:
            result.values[column_key(observable, pair)] = observed[observable]
    return result


def evaluate_tls_point(spec: ScanSpec, index: int, alpha: float) -> PointResult:
    """Closed-form two-level system at one alpha."""
    result = PointResult()
    try:
        model = TLSModel(
            delta=spec.delta,
            alpha=alpha,
            omega_c=spec.omega_c,
            c0=spec.c0,
            c1=spec.c1,
            c2=spec.c2,
            kt_window=spec.kt_window,
            kt_overlay=spec.kt_overlay,
        )
        outcome = tls_concurrence(model)
    except (SpinRadarError, ValidationError) as exc:
        result.errors.append(_error(index, alpha, exc))
        return result

    result.branches["tls"] = outcome.branch.value
    observed = {
        Observable.ENERGY: outcome.energy,
        Observable.SIGMA_X: outcome.sigma_x,
        Observable.CONCURRENCE: outcome.concurrence,
    }
    for observable in spec.outputs:
        result.values[column_key(observable)] = observed[observable]
    # Kept for the monotonicity check even when not requested
    result.values["_concurrence"] = outcome.concurrence
    return result


def _evaluate(spec: ScanSpec, indexed) -> PointResult:
    index, parameter = indexed
    if spec.model is ModelKind.CHAIN:
        return evaluate_chain_point(spec, index, parameter)
    return evaluate_tls_point(spec, index, parameter)


class ScanRunner:
    """Evaluate scans point by point, optionally on a process pool."""

    def __init__(self, workers: Optional[int] = None, richardson: Optional[bool] = None):
        settings = get_settings()
        self.workers = workers or settings.workers
        self.richardson = settings.richardson if richardson is None else richardson

    def run(self, spec: ScanSpec) -> ScanSeries:
        """Run a scan; attach derivative columns when requested."""
        series = self._run_points(spec)
        if spec.derivative:
            series = self.with_derivatives(series)
        return series

    def with_derivatives(self, series: ScanSeries) -> ScanSeries:
        """Add ``d_<column>`` for every requested observable."""
        refined = self._run_points(refined_spec(series.spec)) if self.richardson else None
        columns = dict(series.columns)
        for observable in series.spec.outputs:
            derived = derivative_series(series, observable, refined=refined)
            columns.update(derived.columns)
        return series.model_copy(update={"columns": columns})

    def _map(self, spec: ScanSpec) -> List[PointResult]:
        points = list(enumerate(spec.grid))
        evaluate = partial(_evaluate, spec)
        if self.workers > 1 and len(points) > 1:
            chunksize = max(1, len(points) // (4 * self.workers))
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                return list(pool.map(evaluate, points, chunksize=chunksize))
        return [evaluate(point) for point in points]

    def _run_points(self, spec: ScanSpec) -> ScanSeries:
        started = time.perf_counter()
        log = scan_logger(__name__, spec.label or spec.model.value)
        log.info(
            f"Running {spec.model.value} scan over {len(spec.grid)} points "
            f"({self.workers} worker{'s' if self.workers > 1 else ''})"
        )
        results = self._map(spec)

        keys = spec.column_keys()
        columns: Dict[str, List[Optional[float]]] = {
            key: [r.values.get(key) for r in results] for key in keys
        }

        if spec.model is ModelKind.CHAIN:
            labels = [_pair_label(pair) for pair in spec.pairs]
        else:
            labels = ["tls"]
        branches = {label: [r.branches.get(label) for r in results] for label in labels}

        negative = {label: 0 for label in labels if spec.model is ModelKind.CHAIN}
        for r in results:
            for label in r.negative_invariants:
                negative[label] += 1

        warnings: List[str] = []
        zero_modes = [r.zero_modes for r in results]
        if any(zero_modes):
            warnings.append(f"zero modes clamped at {sum(1 for z in zero_modes if z)} points")
        for label, count in negative.items():
            if count:
                warnings.append(f"pair {label}: I1 or I2 negative at {count} points")
        if spec.model is ModelKind.TLS:
            warnings.extend(self._monotonicity_warnings(spec, results))

        errors = [e for r in results for e in r.errors]
        for message in warnings:
            log.warning(message)
        for error in errors:
            log.warning(f"point {error.index} ({error.parameter:g}) failed: {error.message}")

        metadata = ScanMetadata(
            code_version=__version__,
            created_at=datetime.now(timezone.utc).isoformat(),
            n_sites=spec.n_sites,
            kappa_rule=spec.kappa_rule if spec.model is ModelKind.CHAIN else None,
            branches=branches,
            zero_modes=zero_modes,
            degenerate=[z > 0 for z in zero_modes],
            negative_invariants=negative,
            warnings=warnings,
            errors=errors,
        )
        log.debug(f"Scan finished in {time.perf_counter() - started:.2f}s")
        return ScanSeries(
            spec=spec,
            parameter=list(spec.grid),
            columns=columns,
            metadata=metadata,
        )

    @staticmethod
    def _monotonicity_warnings(spec: ScanSpec, results: List[PointResult]) -> List[str]:
        warnings = []
        previous = None
        for alpha, r in zip(spec.grid, results):
            current = r.values.get("_concurrence")
            if current is None:
                continue
            if previous is not None and current > previous[1] * (1.0 + 1e-12):
                warnings.append(
                    f"concurrence increases from alpha={previous[0]:g} to alpha={alpha:g}"
                )
            previous = (alpha, current)
        return warnings


def run_scan(
    spec: ScanSpec,
    workers: Optional[int] = None,
    richardson: Optional[bool] = None,
) -> ScanSeries:
    """Evaluate a scan spec into a series."""
    return ScanRunner(workers=workers, richardson=richardson).run(spec)
