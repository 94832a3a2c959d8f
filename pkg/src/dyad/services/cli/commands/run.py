"""``dyad run``: sweep a configured pair over (k₀R, Γ₀T) and write a table."""

import csv
import io
import json
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import numpy as np
from numpy.typing import NDArray

from dyad.errors import QuadratureError
from dyad.physics.forces import OffResonantQuadrature
from dyad.physics.observables import PointContext, TimeSample
from dyad.physics.quantities import DyadConfig, DyadParameters, to_internal
from dyad.services.cli.commands.utils import (
    column_units,
    sample_row,
    table_columns,
)
from dyad.services.cli.schemas import RunConfig

logger = logging.getLogger(__name__)

OutputFormat = Literal["csv", "json"]


@dataclass(frozen=True)
class SweepResult:
    pair: DyadConfig
    columns: list[str]
    rows: list[list[float]]
    elapsed: float


def _evaluate_separation(
    params: DyadParameters,
    k0r: float,
    times: NDArray[np.float64],
    config: RunConfig,
) -> list[TimeSample]:
    local = params.with_separation(k0r)
    try:
        context = PointContext.build(
            local,
            config.observables,
            config.emission_mode,
            order=config.quadrature.order,
            quad=OffResonantQuadrature(rtol=config.quadrature.rtol),
        )
        return [context.sample(float(T)) for T in times]
    except QuadratureError as err:
        if "k0R" in err.context:
            raise
        raise err.with_context(k0R=k0r) from err


def execute_sweep(config: RunConfig, threads: int = 1) -> SweepResult:
    """Evaluate every grid point; rows come back sorted by (k₀R, T).

    Separations are distributed over ``threads`` workers; each worker
    handles all times of its separation, so the output does not depend on
    scheduling.
    """
    started = time.perf_counter()
    pair = config.build_pair()
    units, params = to_internal(pair)
    separations = config.geometry.values()
    times = config.time_values()
    logger.debug(
        "sweep: %d separations x %d times on %d thread(s)",
        len(separations),
        len(times),
        threads,
    )

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        futures = [
            pool.submit(_evaluate_separation, params, float(x), times, config)
            for x in separations
        ]
        samples = [sample for future in futures for sample in future.result()]

    samples.sort(key=lambda sample: (sample.k0r, sample.T))
    rows = [sample_row(sample, units, params.rhat) for sample in samples]
    return SweepResult(
        pair=pair,
        columns=table_columns(config.observables),
        rows=rows,
        elapsed=time.perf_counter() - started,
    )


def _format_value(value: float) -> str:
    return repr(float(value))


def render_table(result: SweepResult, fmt: OutputFormat) -> str:
    """Serialize a sweep as RFC-4180 CSV or as {"columns", "units", "rows"} JSON."""
    if fmt == "json":
        table = {
            "columns": result.columns,
            "units": column_units(result.columns),
            "rows": result.rows,
        }
        return json.dumps(table) + "\n"
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(result.columns)
    for row in result.rows:
        writer.writerow([_format_value(value) for value in row])
    return buffer.getvalue()


def write_table(
    result: SweepResult, fmt: OutputFormat, path: Path | None = None
) -> None:
    text = render_table(result, fmt)
    if path is None:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    logger.info("wrote %d rows to %s", len(result.rows), path)


def load_config(path: Path) -> RunConfig:
    """Parse and validate a JSON run configuration.

    Raises:
        FileNotFoundError: If the file does not exist.
        pydantic.ValidationError: If the content is not a valid config.
    """
    if not path.exists():
        raise FileNotFoundError(f"config file not found: {path}")
    return RunConfig.model_validate_json(path.read_text(encoding="utf-8"))
