import click
import pandas as pd
from flask import Blueprint, current_app
from pydantic import ValidationError

from mttp.errors import InvalidInstanceError, NoFeasibleSolutionError, TournamentFileError
from mttp.models.tournament import (
    InstanceSize, count_trips_total, fairness_spread, validate_tournament, validate_travel,
)
from mttp.solver.ga import GAParams, evolve
from mttp.solver.oracle import MIN_TRIPS_SIZES, exhaustive_min_trips
from mttp.utils.benchmark import BenchJob, run_cells, seed_table, summarize
from mttp.utils.bounds import reference_row, target_for
from mttp.utils.tournament_file import dump_tournament, load_tournament

cli_bp = Blueprint('mttp', __name__, cli_group=None)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _team_count(ctx, param, value):
    if value is None:
        return value
    try:
        return InstanceSize(value)
    except InvalidInstanceError as e:
        raise click.BadParameter(str(e))


def _team_list(ctx, param, value):
    try:
        return [InstanceSize(int(part)) for part in value.split(',') if part.strip()]
    except (ValueError, InvalidInstanceError) as e:
        raise click.BadParameter(str(e))


def _seed_list(ctx, param, value):
    """A bare number is a count of seeds; a comma-separated list is explicit."""
    try:
        if ',' in value:
            return [int(part) for part in value.split(',') if part.strip()]
        count = int(value)
    except ValueError as e:
        raise click.BadParameter(str(e))
    if count < 1:
        raise click.BadParameter('at least one seed is required')
    return count


def _resolve_seeds(seeds):
    if isinstance(seeds, int):
        first = current_app.config['MTTP_SEED']
        return list(range(first, first + seeds))
    return seeds


def _ga_params(**overrides):
    config = current_app.config
    values = {
        'seed': config['MTTP_SEED'],
        'max_iterations': config['MTTP_MAX_ITERATIONS'],
        'mutation_prob': config['MTTP_MUTATION_PROB'],
        'population': config['MTTP_POPULATION'],
        'elite': config['MTTP_ELITE'],
        'node_budget': config['MTTP_NODE_BUDGET'],
    }
    values.update({key: value for key, value in overrides.items() if value is not None})
    try:
        return GAParams(**values)
    except ValidationError as e:
        details = '; '.join(f"{'.'.join(map(str, err['loc'])) or 'params'}: {err['msg']}" for err in e.errors())
        raise click.UsageError(details)


def _exit(code):
    click.get_current_context().exit(code)


@cli_bp.cli.command('solve')
@click.option('--teams', required=True, type=int, callback=_team_count, help='Even number of teams (>= 4).')
@click.option('--seed', type=click.IntRange(min=0), help='Random seed (default: MTTP_SEED).')
@click.option('--iterations', type=click.IntRange(min=0), help='Iteration budget.')
@click.option('--mutation-prob', type=click.FloatRange(0.0, 1.0), help='Mutation probability per child.')
@click.option('--population', type=click.IntRange(min=2), help='Population size.')
@click.option('--elite', type=click.IntRange(min=1), help='Individuals kept per iteration.')
@click.option('--target', type=click.IntRange(min=0),
              help='Stop once this many trips are reached (default: the reference lower bound).')
@click.option('--no-early-stop', is_flag=True, help='Always run the full iteration budget.')
@click.option('--node-budget', type=click.IntRange(min=1), help='Schedule search node budget.')
@click.option('--out', 'out_path', type=click.Path(dir_okay=False), help='Tournament file to write.')
@click.option('--history-out', type=click.Path(dir_okay=False), help='CSV of best trips per iteration.')
@click.option('--verbose', is_flag=True, help='Report operator statistics.')
def solve(teams, seed, iterations, mutation_prob, population, elite, target, no_early_stop,
          node_budget, out_path, history_out, verbose):
    """Search for a tournament with few trips."""
    target = None if no_early_stop else (target if target is not None else target_for(teams))
    params = _ga_params(seed=seed, max_iterations=iterations, mutation_prob=mutation_prob,
                        population=population, elite=elite, target=target, node_budget=node_budget)
    try:
        result = evolve(teams, params)
    except NoFeasibleSolutionError as e:
        current_app.logger.error(f"Solve failed: {str(e)}")
        click.echo(f"error: {e}", err=True)
        _exit(EXIT_FAILED)

    tournament = result.tournament
    out_path = out_path or f"tournament_n{teams.n}_seed{params.seed}.json"
    try:
        dump_tournament(tournament, out_path)
        if history_out:
            history = pd.DataFrame({'iteration': range(len(result.history)), 'best_trips': result.history})
            history.to_csv(history_out, index=False)
    except OSError as e:
        click.echo(f"error: cannot write output: {e}", err=True)
        _exit(EXIT_IO)

    trips = int(result.best.fitness)
    reference = reference_row(teams.n)
    lb_met = ('yes' if trips <= reference.lower_bound else 'no') if reference else 'n/a'
    click.echo(f"n={teams.n} trips={trips} fairness_spread={fairness_spread(tournament.travel)} "
               f"iterations={result.iterations} reference_lb={reference.lower_bound if reference else 'n/a'} "
               f"lb_met={lb_met} out={out_path}")
    if verbose:
        click.echo(f"mutations={result.mutations} fallbacks={result.mutation_fallbacks} "
                   f"fallback_rate={result.fallback_rate:.4f} banned={result.banned}")


@cli_bp.cli.command('validate')
@click.argument('path', type=click.Path(dir_okay=False))
def validate(path):
    """Check a tournament file and list every violation."""
    try:
        tournament = load_tournament(path)
    except OSError as e:
        click.echo(f"error: cannot read {path}: {e}", err=True)
        _exit(EXIT_IO)
    except TournamentFileError as e:
        click.echo(f"error: {e}", err=True)
        _exit(EXIT_IO)

    if tournament.schedule is None:
        violations = validate_travel(tournament.travel, tournament.size)
    else:
        violations = validate_tournament(tournament)

    for violation in violations:
        click.echo(str(violation))
    if violations:
        click.echo(f"{len(violations)} violation(s)")
        _exit(EXIT_FAILED)
    click.echo(f"valid: n={tournament.size.n} trips={count_trips_total(tournament.travel)} "
               f"fairness_spread={fairness_spread(tournament.travel)}")


@cli_bp.cli.command('bench')
@click.option('--teams', 'teams_list', required=True, callback=_team_list,
              help='Comma-separated team counts, e.g. 4,6,8.')
@click.option('--seeds', default='20', show_default=True, callback=_seed_list,
              help='Seed count (consecutive from MTTP_SEED) or a comma-separated list.')
@click.option('--iterations', type=click.IntRange(min=0), help='Iteration budget per run.')
@click.option('--out', 'out_csv', type=click.Path(dir_okay=False), default='bench.csv', show_default=True)
@click.option('--per-seed-out', type=click.Path(dir_okay=False), help='CSV with one row per (n, seed).')
@click.option('--workers', type=click.IntRange(min=1), default=1, show_default=True)
@click.option('--no-early-stop', is_flag=True, help='Always run the full iteration budget.')
def bench(teams_list, seeds, iterations, out_csv, per_seed_out, workers, no_early_stop):
    """Run the GA over several sizes and seeds and compare with the reference results."""
    seeds = _resolve_seeds(seeds)
    if not seeds:
        raise click.BadParameter('at least one seed is required', param_hint='--seeds')
    jobs = []
    for size in teams_list:
        for seed in seeds:
            target = None if no_early_stop else target_for(size)
            jobs.append(BenchJob(size.n, _ga_params(seed=seed, max_iterations=iterations, target=target)))
    budget = jobs[0].params.max_iterations if jobs else iterations

    cells = run_cells(jobs, workers)
    report = summarize(cells, [size.n for size in teams_list], seeds, budget)
    try:
        report.to_csv(out_csv, index=False)
        if per_seed_out:
            seed_table(cells).to_csv(per_seed_out, index=False)
    except OSError as e:
        click.echo(f"error: cannot write report: {e}", err=True)
        _exit(EXIT_IO)

    click.echo(report.to_string(index=False))
    if report['best_found'].isna().any():
        _exit(EXIT_FAILED)


@cli_bp.cli.command('oracle')
@click.option('--teams', required=True, type=int, callback=_team_count, help='4 or 6.')
@click.option('--out', 'out_path', type=click.Path(dir_okay=False), help='Witness tournament file.')
def oracle(teams, out_path):
    """Exhaustively compute the minimum number of trips for a tiny instance."""
    if teams.n not in MIN_TRIPS_SIZES:
        raise click.BadParameter(f"exhaustive search supports {MIN_TRIPS_SIZES}, got {teams.n}",
                                 param_hint='--teams')
    result = exhaustive_min_trips(teams)
    out_path = out_path or f"oracle_n{teams.n}.json"
    try:
        dump_tournament(result.witness, out_path)
    except OSError as e:
        click.echo(f"error: cannot write output: {e}", err=True)
        _exit(EXIT_IO)
    click.echo(f"n={teams.n} min_trips={result.min_trips} optimal_pair_sets={len(result.witnesses)} "
               f"fairness_spread={fairness_spread(result.witness.travel)} out={out_path}")
