"""
Benchmark runs: one GA run per (n, seed) cell, reduced to one row per n and
compared against the reference results.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Tuple

import pandas as pd

from mttp.models.tournament import InstanceSize, fairness_spread, validate_tournament
from mttp.solver.ga import GAParams, evolve
from mttp.utils.bounds import naive_lower_bound, reference_row

logger = logging.getLogger(__name__)

BENCH_COLUMNS = ['n', 'best_found', 'paper_or', 'paper_lb', 'paper_kr', 'gap_vs_lb', 'gap_vs_kr',
                 'seeds', 'iterations', 'fairness_spread']
SEED_COLUMNS = ['n', 'seed', 'best_trips', 'iterations', 'schedulable', 'fairness_spread']
FAIRNESS_LIMIT = 2


@dataclass(frozen=True)
class BenchJob:
    n: int
    params: GAParams


@dataclass(frozen=True)
class CellResult:
    n: int
    seed: int
    best_trips: Optional[int] = None
    iterations: Optional[int] = None
    fairness_spread: Optional[int] = None
    findings: Tuple[str, ...] = ()
    error: Optional[str] = None

    @property
    def schedulable(self):
        return self.best_trips is not None


def check_run_properties(result, size):
    """Properties every finished run must satisfy; breaches come back as findings."""
    findings = []
    trips = result.best.fitness
    if trips < naive_lower_bound(size):
        findings.append(f"{trips} trips is below the naive lower bound {naive_lower_bound(size)}")
    reference = reference_row(size.n)
    if reference is not None and trips < reference.lower_bound:
        findings.append(f"{trips} trips is below the reference lower bound {reference.lower_bound}")
    violations = validate_tournament(result.tournament)
    if violations:
        findings.append(f"best tournament fails validation: {violations[0]}")
    if any(later > earlier for earlier, later in zip(result.history, result.history[1:])):
        findings.append("best-fitness history increases")
    spread = fairness_spread(result.best.travel)
    if spread > FAIRNESS_LIMIT:
        findings.append(f"fairness spread {spread} exceeds {FAIRNESS_LIMIT}")
    return findings


def run_cell(job):
    size = InstanceSize(job.n)
    try:
        result = evolve(size, job.params)
    except Exception as e:
        logger.error(f"Bench cell n={job.n} seed={job.params.seed} failed: {str(e)}")
        return CellResult(n=job.n, seed=job.params.seed, error=str(e))

    findings = check_run_properties(result, size)
    for finding in findings:
        logger.warning(f"n={job.n} seed={job.params.seed}: {finding}")
    return CellResult(n=job.n, seed=job.params.seed, best_trips=int(result.best.fitness),
                      iterations=result.iterations,
                      fairness_spread=fairness_spread(result.best.travel),
                      findings=tuple(findings))


def run_cells(jobs, workers=1):
    """Run every job; results come back in job order whatever the worker count."""
    if workers <= 1:
        return [run_cell(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_cell, jobs))


def summarize(cells, teams, seeds, iterations):
    rows = []
    for n in teams:
        scheduled = [cell for cell in cells if cell.n == n and cell.schedulable]
        best = min(scheduled, key=lambda cell: cell.best_trips) if scheduled else None
        reference = reference_row(n)
        best_found = best.best_trips if best else None
        rows.append({
            'n': n,
            'best_found': best_found,
            'paper_or': reference.obtained if reference else None,
            'paper_lb': reference.lower_bound if reference else None,
            'paper_kr': reference.known if reference else None,
            'gap_vs_lb': best_found - reference.lower_bound if best and reference else None,
            'gap_vs_kr': best_found - reference.known if best and reference else None,
            'seeds': len(seeds),
            'iterations': iterations,
            'fairness_spread': best.fairness_spread if best else None,
        })
    return pd.DataFrame(rows, columns=BENCH_COLUMNS).astype('Int64')


def seed_table(cells):
    rows = [{
        'n': cell.n,
        'seed': cell.seed,
        'best_trips': cell.best_trips,
        'iterations': cell.iterations,
        'schedulable': 'yes' if cell.schedulable else 'no',
        'fairness_spread': cell.fairness_spread,
    } for cell in cells]
    frame = pd.DataFrame(rows, columns=SEED_COLUMNS)
    return frame.astype({column: 'Int64' for column in SEED_COLUMNS if column != 'schedulable'})
