'''
Runner script.

The script evaluates a parsed scenario: every sweep point is computed on
its own, possibly on a worker thread, and the rows are assembled in sweep
order whatever the completion order.

The module requires "numpy" as external package.
'''
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
import numpy as np
from exceptions import NumericError, SuitabilityError
from fock_space import DEFAULT_MAX_DIMENSION
from guns import DEFAULT_PAIR_CUTOFF, TRUNCATION_TOLERANCE, qkd_security, realize_gun
from hom import hom_dip_scan, hom_visibility
from metrics import suitability
from report import Report, load_report_schema
from scenario import Scenario

logging.basicConfig(format='%(levelname)s:%(message)s',
                    level=logging.INFO)
default_logger = logging.getLogger()
logger = logging.getLogger()

DEFAULT_MAX_WORKERS = 4


def _plain(value):
    '''
    Convert numpy scalars to Python values.
    '''
    if isinstance(value, np.generic):
        return value.item()
    return value


def evaluate_point(point: Scenario,
                   max_dimension: int=DEFAULT_MAX_DIMENSION,
                   n_cut: int=DEFAULT_PAIR_CUTOFF,
                   truncation_tol: float=TRUNCATION_TOLERANCE) -> dict:
    '''
    Compute the row of a single-point scenario.

    :param point: Scenario. A scenario without sweep.
    :param max_dimension: int. The capacity cap of the basis.
    :param n_cut: int. Pair number cutoff of spdc guns given by mu and eta.
    :param truncation_tol: float. Largest weight a coherent gun may lose.

    return dict. The row, keyed by column name.
    '''
    basis = point.basis(max_dimension)
    if point.analysis == 'suitability':
        rho = realize_gun(point.gun, basis, n_cut, truncation_tol)
        row = suitability(rho, point.build_target(basis)).as_row()
    elif point.analysis == 'qkd_security':
        row = qkd_security(point.gun, basis, point.build_target(basis), point.alphabet,
                           point.postselect_emission, n_cut, truncation_tol).as_row()
    elif point.analysis == 'hom':
        first, second = point.gun.children
        row = hom_visibility(first, second, basis).as_row()
    else:
        row = hom_dip_scan([point.gamma], basis).iloc[0].to_dict()
    row = {key: _plain(value) for key, value in row.items()}
    for key, value in row.items():
        if isinstance(value, float) and not math.isfinite(value):
            raise NumericError(f'{key} is not finite')
    return row


def run(scenario: Scenario,
        max_workers: int=DEFAULT_MAX_WORKERS,
        max_dimension: int=DEFAULT_MAX_DIMENSION,
        n_cut: int=DEFAULT_PAIR_CUTOFF,
        truncation_tol: float=TRUNCATION_TOLERANCE,
        report_schema: dict=None) -> Report:
    '''
    Run a scenario.

    :param scenario: Scenario. The parsed scenario.
    :param max_workers: int. Worker threads for the sweep points.
    :param max_dimension: int. The capacity cap of every basis.
    :param n_cut: int. Pair number cutoff of spdc guns given by mu and eta.
    :param truncation_tol: float. Largest weight a coherent gun may lose.
    :param report_schema: dict. The report column schema, by default the
    shipped one.

    return Report. One row per sweep point, or a single row.
    '''
    report_schema = report_schema or load_report_schema()
    start = time.perf_counter()
    points = scenario.points()
    values = scenario.plan()

    def evaluate(index: int) -> dict:
        try:
            return evaluate_point(points[index], max_dimension, n_cut, truncation_tol)
        except SuitabilityError as error:
            if scenario.sweep is None:
                raise
            # Keep the error class so the exit code survives
            raise type(error)(f'sweep point {index} ({scenario.sweep.parameter}='
                              f'{values[index]:g}): {error}') from error

    logger.info('Running scenario %s over %d points', scenario.name, len(points))
    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as executor:
        rows = list(executor.map(evaluate, range(len(points))))
    columns = list(report_schema['columns'][scenario.analysis])
    if scenario.sweep is not None:
        sweep_column = report_schema['sweep_column']
        rows = [{sweep_column: value, **row} for value, row in zip(values, rows)]
        columns = [sweep_column] + columns
    duration = time.perf_counter() - start
    logger.info('Scenario %s done in %.3f s', scenario.name, duration)
    return Report(scenario.name, scenario.analysis, scenario.document, rows, columns, duration)
