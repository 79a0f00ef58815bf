'''
HOM script.

The script runs the Hong-Ou-Mandel measurement: two guns fire into the two
inputs of the beam splitter, and the bucket detectors behind it count
coincidences. Identical pure photons never give coincidences (v = 1),
fully distinguishable ones give coincidences half of the time (v = 1/2).

The module requires "numpy" and "pandas" as external packages.
'''
import logging
from dataclasses import dataclass
import numpy as np
import pandas as pd
from exceptions import ScenarioError
from fock_space import DensityMatrix, FockBasis
from guns import GunSpec, realize_gun
from metrics import MetricReport, suitability
from optics import apply, beam_splitter, coincidence_probability
from targets import hom_source_target

logging.basicConfig(format='%(levelname)s:%(message)s',
                    level=logging.INFO)
default_logger = logging.getLogger()
logger = logging.getLogger()


@dataclass(frozen=True)
class HomResult:
    '''
    Outcome of a HOM measurement: the coincidence probability, the
    visibility v = 1 - coincidence, the output state and the suitability of
    the input pair for the source-side HOM target.
    '''
    coincidence_probability: float
    visibility: float
    output_state: DensityMatrix
    metrics: MetricReport

    def as_row(self) -> dict:
        '''
        The scalar fields and the suitability figures as a flat dictionary.
        '''
        row = {'coincidence_probability': self.coincidence_probability,
               'visibility': self.visibility}
        row.update(self.metrics.as_row())
        return row


def hom_visibility(gun1: GunSpec, gun2: GunSpec, basis: FockBasis) -> HomResult:
    '''
    Fire two independent guns into the beam splitter and measure
    coincidences.

    :param gun1: GunSpec. The gun on the first input.
    :param gun2: GunSpec. The gun on the second input.
    :param basis: FockBasis. A basis with exactly two spatial modes.

    return HomResult. The measurement outcome.
    '''
    rho_in = realize_gun(GunSpec('product', children=[gun1, gun2]), basis)
    rho_out = apply(beam_splitter(basis), rho_in)
    coincidence = coincidence_probability(rho_out)
    return HomResult(coincidence_probability=coincidence,
                     visibility=1 - coincidence,
                     output_state=rho_out,
                     metrics=suitability(rho_in, hom_source_target(basis)))


def overlap_pair(gamma: float, polarization=None) -> tuple:
    '''
    Get two pure one-photon guns whose states overlap by gamma: the first
    in bin 0, the second in gamma |bin 0> + sqrt(1 - gamma^2) |bin 1>.
    '''
    if not 0 <= gamma <= 1:
        raise ScenarioError(f'gamma must lie in [0, 1], got {gamma}')
    first = GunSpec('ideal', polarization=polarization, bin_amplitudes=[1.0, 0.0])
    second = GunSpec('ideal', polarization=polarization,
                     bin_amplitudes=[gamma, np.sqrt(1 - gamma ** 2)])
    return first, second


def hom_dip_scan(gamma_values, basis: FockBasis, polarization=None) -> pd.DataFrame:
    '''
    Get the HOM dip: the coincidence probability of two pure photons as a
    function of their overlap gamma, expected (1 - gamma^2) / 2.

    :param gamma_values: list. The overlaps, each in [0, 1].
    :param basis: FockBasis. A basis with two spatial modes and at least
    two auxiliary bins.
    :param polarization: str or list. The common polarization of both guns.

    return pandas DataFrame. Columns gamma and coincidence_probability.
    '''
    if basis.space.aux_bins < 2:
        raise ScenarioError('a dip scan needs at least two auxiliary bins')
    coincidences = []
    for gamma in gamma_values:
        coincidences.append(hom_visibility(*overlap_pair(gamma, polarization),
                                           basis).coincidence_probability)
    logger.info('Scanned %d overlap values', len(coincidences))
    return pd.DataFrame({'gamma': list(gamma_values),
                         'coincidence_probability': coincidences})
