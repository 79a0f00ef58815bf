'''
Scenario script.

The script reads scenario files, the JSON documents describing one run of
the toolkit: the Fock space, the gun, the target application, the analysis
and an optional parameter sweep. Parsing is strict: the schema in
schema/scenario_schema.json lists every allowed key with its type, and
anything else is rejected with the path of the offending key.

A parsed Scenario resolves its references against the declared space and
checks the basis size of every sweep point against the capacity cap before
anything is computed.

The module requires "numpy" and "upath" as external packages.
'''
import copy
import json
import logging
import math
from functools import lru_cache
import numpy as np
from upath import UPath
from exceptions import CapacityError, ScenarioError
from fock_space import (FockBasis, ModeSpace, basis_dimension, enumerate_basis,
                        DEFAULT_MAX_DIMENSION, DEFAULT_N_MAX)
from guns import GunSpec
from targets import (TargetSpec, hom_detector_target, hom_source_target, pure_target,
                     qkd_target)

logging.basicConfig(format='%(levelname)s:%(message)s',
                    level=logging.INFO)
default_logger = logging.getLogger()
logger = logging.getLogger()

DEFAULT_SCHEMA_PATH = UPath(__file__).parent.parent / 'schema' / 'scenario_schema.json'
ANALYSES = ('suitability', 'qkd_security', 'hom', 'hom_dip_scan')
SWEEP_PARAMETERS = ('epsilon', 'd', 'gamma', 'mu', 'eta', 'alpha')


@lru_cache(maxsize=8)
def _read_schema(path: str) -> str:
    return UPath(path).read_text(encoding='utf-8')


def load_schema(path=None) -> dict:
    '''
    Load the scenario schema, by default the one shipped in schema/.
    '''
    return json.loads(_read_schema(str(path or DEFAULT_SCHEMA_PATH)))


class Sweep():
    '''
    A parameter sweep over linspace(start, stop, steps).
    '''

    __slots__ = (
        "_parameter",
        "_start",
        "_stop",
        "_steps"
        )

    def __init__(self, parameter: str, start: float, stop: float, steps: int):
        if parameter not in SWEEP_PARAMETERS:
            raise ScenarioError(f'cannot sweep {parameter!r}, expected one of {list(SWEEP_PARAMETERS)}')
        if steps < 2:
            raise ScenarioError(f'a sweep needs at least 2 steps, got {steps}')
        self._parameter = parameter
        self._start = float(start)
        self._stop = float(stop)
        self._steps = int(steps)

    @property
    def parameter(self) -> str:
        '''
        The swept parameter.
        '''
        return self._parameter

    @property
    def steps(self) -> int:
        '''
        The number of sweep points.
        '''
        return self._steps

    def values(self) -> list[float]:
        '''
        The sweep values in order.
        '''
        return [float(value) for value in np.linspace(self._start, self._stop, self._steps)]


class Scenario():
    '''
    A validated scenario. A scenario with a sweep expands into one point
    scenario per sweep value through at().
    '''

    __slots__ = (
        "_name",
        "_description",
        "_analysis",
        "_space",
        "_n_max",
        "_gun",
        "_target",
        "_alphabet",
        "_postselect_emission",
        "_sweep",
        "_gamma",
        "_document"
        )

    def __init__(self,
                 name: str,
                 analysis: str,
                 space: ModeSpace,
                 n_max: int,
                 *,
                 description: str='',
                 gun: GunSpec=None,
                 target: dict=None,
                 alphabet: list=None,
                 postselect_emission: bool=True,
                 sweep: Sweep=None,
                 gamma: float=None,
                 document: dict=None):
        if analysis not in ANALYSES:
            raise ScenarioError(f'unknown analysis {analysis!r}, expected one of {list(ANALYSES)}')
        self._name = name
        self._description = description
        self._analysis = analysis
        self._space = space
        self._n_max = n_max
        self._gun = gun
        self._target = target
        self._alphabet = tuple(alphabet) if alphabet is not None else ('H', 'V', 'L', 'R')
        self._postselect_emission = postselect_emission
        self._sweep = sweep
        self._gamma = gamma
        self._document = document or {}

    @property
    def name(self) -> str:
        '''
        The scenario name.
        '''
        return self._name

    @property
    def description(self) -> str:
        '''
        Free text describing the scenario.
        '''
        return self._description

    @property
    def analysis(self) -> str:
        '''
        The computation run on every point.
        '''
        return self._analysis

    @property
    def space(self) -> ModeSpace:
        '''
        The single-photon modes.
        '''
        return self._space

    @property
    def n_max(self) -> int:
        '''
        The photon number cap.
        '''
        return self._n_max

    @property
    def gun(self) -> GunSpec:
        '''
        The gun, None for dip scans.
        '''
        return self._gun

    @property
    def target(self) -> dict:
        '''
        The target parameters (kind, polarization, bin, spatial_mode).
        '''
        return self._target

    @property
    def alphabet(self) -> tuple:
        '''
        Alice's polarization alphabet.
        '''
        return self._alphabet

    @property
    def postselect_emission(self) -> bool:
        '''
        Whether QKD figures are conditioned on emission.
        '''
        return self._postselect_emission

    @property
    def sweep(self) -> Sweep:
        '''
        The sweep, None for a single-point scenario.
        '''
        return self._sweep

    @property
    def gamma(self) -> float:
        '''
        The photon overlap of a dip scan point.
        '''
        return self._gamma

    @property
    def document(self) -> dict:
        '''
        The validated document, defaults filled in.
        '''
        return self._document

    def basis(self, max_dimension: int=DEFAULT_MAX_DIMENSION) -> FockBasis:
        '''
        Get the Fock basis of the scenario.
        '''
        return enumerate_basis(self._space, self._n_max, max_dimension)

    def build_target(self, basis: FockBasis) -> TargetSpec:
        '''
        Build the target application over a basis.
        '''
        if self._target is None:
            raise ScenarioError(f'the {self._analysis} analysis needs a target')
        kind = self._target['kind']
        if kind == 'qkd':
            return qkd_target(basis, self._target.get('polarization') or 'H',
                              self._target.get('spatial_mode'))
        if kind == 'pure':
            return pure_target(basis, self._target.get('polarization'),
                               self._target.get('bin', 0), self._target.get('spatial_mode'))
        if kind == 'hom_source':
            return hom_source_target(basis)
        return hom_detector_target(basis)

    def plan(self) -> list[float]:
        '''
        Get the sweep values, empty without a sweep.
        '''
        return self._sweep.values() if self._sweep is not None else []

    def at(self, value: float) -> 'Scenario':
        '''
        Get the point scenario of one sweep value.
        '''
        if self._sweep is None:
            raise ScenarioError('the scenario has no sweep')
        parameter = self._sweep.parameter
        space, gun, gamma = self._space, self._gun, self._gamma
        if parameter == 'd':
            if abs(value - round(value)) > 1e-9 or round(value) < 1:
                raise ScenarioError(f'd must be a positive integer, got {value}')
            space = ModeSpace(space.spatial_modes, space.polarization_labels, int(round(value)))
        elif parameter == 'gamma':
            gamma = value
        else:
            gun, applied = _sweep_gun(gun, parameter, value)
            if not applied:
                raise ScenarioError(f'no gun of the scenario takes the swept parameter {parameter!r}')
        return Scenario(self._name, self._analysis, space, self._n_max,
                        description=self._description,
                        gun=gun,
                        target=self._target,
                        alphabet=list(self._alphabet),
                        postselect_emission=self._postselect_emission,
                        gamma=gamma,
                        document=self._document)

    def points(self) -> list['Scenario']:
        '''
        Get the point scenarios in sweep order, the scenario itself
        without a sweep.
        '''
        if self._sweep is None:
            return [self]
        return [self.at(value) for value in self.plan()]

    def __repr__(self):
        return f'Scenario(name={self._name!r}, analysis={self._analysis!r})'


def _sweep_gun(gun: GunSpec, parameter: str, value: float) -> tuple:
    '''
    Set the swept parameter on every gun that takes it.

    return tuple. The updated gun and whether any gun took the parameter.
    '''
    if gun is None:
        return gun, False
    if gun.kind == 'product':
        swept = [_sweep_gun(child, parameter, value) for child in gun.children]
        return (gun.replace(children=[child for child, _ in swept]),
                any(applied for _, applied in swept))
    if parameter == 'alpha' and gun.kind == 'coherent':
        phase = np.angle(gun.alpha) if gun.alpha != 0 else 0.0
        return gun.replace(alpha=value * np.exp(1j * phase)), True
    if gun.kind == 'spdc_heralded':
        if parameter == 'epsilon' and gun.epsilon is not None:
            return gun.replace(epsilon=value), True
        if parameter in ('mu', 'eta') and gun.epsilon is None:
            return gun.replace(**{parameter: value}), True
    return gun, False


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) \
        and math.isfinite(value)


def _is_complex(value) -> bool:
    return _is_number(value) or (isinstance(value, list) and len(value) == 2
                                 and all(_is_number(part) for part in value))


SCALAR_CHECKS = {
    'string': lambda value: isinstance(value, str),
    'integer': lambda value: isinstance(value, int) and not isinstance(value, bool),
    'number': _is_number,
    'boolean': lambda value: isinstance(value, bool),
    'complex': _is_complex,
    'polarization': lambda value: isinstance(value, str) or (
        isinstance(value, list) and len(value) == 2 and all(_is_complex(part) for part in value)),
}


def _check_value(value, rule: dict, path: str, sections: dict):
    kind = rule['type']
    if kind == 'object':
        if not isinstance(value, dict):
            raise ScenarioError(f'{path}: expected an object')
        return _check_section(value, sections[rule['section']], path, sections)
    if kind == 'array':
        if not isinstance(value, list):
            raise ScenarioError(f'{path}: expected an array')
        items = rule['items']
        item_rule = {'type': 'object', 'section': items} if items in sections else {'type': items}
        return [_check_value(item, item_rule, f'{path}[{position}]', sections)
                for position, item in enumerate(value)]
    if not SCALAR_CHECKS[kind](value):
        raise ScenarioError(f'{path}: expected a {kind}, got {value!r}')
    if 'enum' in rule and value not in rule['enum']:
        raise ScenarioError(f'{path}: {value!r} is not one of {rule["enum"]}')
    if 'minimum' in rule and value < rule['minimum']:
        raise ScenarioError(f'{path}: {value} is below the minimum {rule["minimum"]}')
    return value


def _check_section(document: dict, fields: dict, path: str, sections: dict) -> dict:
    '''
    Check an object against its schema section and fill in the defaults.
    '''
    unknown = [key for key in document if key not in fields]
    if unknown:
        raise ScenarioError(f'{path}.{unknown[0]}: unknown key {unknown[0]!r}')
    checked = {}
    for key, rule in fields.items():
        if key in document:
            checked[key] = _check_value(document[key], rule, f'{path}.{key}', sections)
        elif rule.get('required', False):
            raise ScenarioError(f'{path}.{key}: missing required key {key!r}')
        else:
            checked[key] = copy.deepcopy(rule.get('default'))
    return checked


def validate_document(document, schema: dict) -> dict:
    '''
    Check a decoded scenario document against the schema.

    :param document: any. The decoded JSON document.
    :param schema: dict. The scenario schema.

    return dict. The document with every default filled in.
    '''
    if not isinstance(document, dict):
        raise ScenarioError('a scenario must be a JSON object')
    root = schema['root']
    return _check_section(document, schema['sections'][root], root, schema['sections'])


def _build_gun(entry: dict) -> GunSpec:
    children = entry['children']
    return GunSpec(entry['kind'],
                   polarization=entry['polarization'],
                   aux_bin=entry['bin'],
                   bin_amplitudes=entry['bin_amplitudes'],
                   bin_weights=entry['bin_weights'],
                   alpha=entry['alpha'],
                   epsilon=entry['epsilon'],
                   mu=entry['mu'],
                   eta=entry['eta'],
                   vacuum_weight=entry['vacuum_weight'],
                   spatial_mode=entry['spatial_mode'],
                   children=[_build_gun(child) for child in children] if children else None)


# the gun kinds that read each optional field
GUN_FIELD_KINDS = {
    'polarization': ('ideal', 'jittered', 'coherent', 'spdc_heralded'),
    'bin': ('ideal', 'coherent'),
    'bin_amplitudes': ('ideal',),
    'bin_weights': ('jittered', 'spdc_heralded'),
    'alpha': ('coherent',),
    'epsilon': ('spdc_heralded',),
    'mu': ('spdc_heralded',),
    'eta': ('spdc_heralded',),
    'vacuum_weight': ('spdc_heralded',),
    'children': ('product',),
}


def _check_gun_fields(entry: dict, path: str):
    '''
    Reject the fields a gun kind would ignore, on the document as written
    (before the defaults are filled in).
    '''
    kind = entry['kind']
    for key, kinds in GUN_FIELD_KINDS.items():
        if key in entry and kind not in kinds:
            raise ScenarioError(f'{path}.{key}: not used by a {kind} gun')
    if 'bin' in entry and 'bin_amplitudes' in entry:
        raise ScenarioError(f'{path}.bin: give either bin or bin_amplitudes, not both')
    for position, child in enumerate(entry.get('children') or ()):
        _check_gun_fields(child, f'{path}.children[{position}]')


def _check_gun_references(gun: GunSpec, space: ModeSpace, path: str):
    if gun.spatial_mode is not None and gun.spatial_mode not in space.spatial_modes:
        raise ScenarioError(f'{path}.spatial_mode: unknown spatial mode {gun.spatial_mode!r}')
    if gun.kind in ('ideal', 'coherent') and gun.bin_amplitudes is None \
            and gun.aux_bin >= space.aux_bins:
        raise ScenarioError(f'{path}.bin: bin {gun.aux_bin} out of range for {space.aux_bins} bins')
    if gun.bin_amplitudes is not None and len(gun.bin_amplitudes) > space.aux_bins:
        raise ScenarioError(f'{path}.bin_amplitudes: more amplitudes than the {space.aux_bins} bins')
    if gun.bin_weights is not None and len(gun.bin_weights) != space.aux_bins:
        raise ScenarioError(f'{path}.bin_weights: expected {space.aux_bins} weights')
    for position, child in enumerate(gun.children or ()):
        _check_gun_references(child, space, f'{path}.children[{position}]')


def _check_point(point: Scenario, max_dimension: int):
    '''
    Resolve the references of a point scenario and check its capacity.
    '''
    space = point.space
    if len(space.polarization_labels) not in (0, 2):
        raise ScenarioError('scenario.space.polarizations: expected none or two labels (H, V)')
    dimension = basis_dimension(space.mode_count, point.n_max)
    if dimension > max_dimension:
        raise CapacityError(f'basis dimension {dimension} exceeds the cap {max_dimension} '
                            f'({space.mode_count} modes, n_max={point.n_max})')
    if point.gun is not None:
        _check_gun_references(point.gun, space, 'scenario.gun')
    target = point.target
    if target is not None:
        if target['spatial_mode'] is not None and target['spatial_mode'] not in space.spatial_modes:
            raise ScenarioError('scenario.target.spatial_mode: unknown spatial mode '
                                f'{target["spatial_mode"]!r}')
        if target['bin'] >= space.aux_bins:
            raise ScenarioError(f'scenario.target.bin: bin {target["bin"]} out of range '
                                f'for {space.aux_bins} bins')
    if point.gamma is not None and not 0 <= point.gamma <= 1:
        raise ScenarioError(f'gamma must lie in [0, 1], got {point.gamma}')


def _check_analysis(document: dict):
    analysis = document['analysis']
    sweep = document['sweep']
    gun, target = document['gun'], document['target']
    if analysis in ('suitability', 'qkd_security'):
        if gun is None or target is None:
            raise ScenarioError(f'the {analysis} analysis needs a gun and a target')
    elif analysis == 'hom':
        if gun is None or gun['kind'] != 'product':
            raise ScenarioError('the hom analysis needs a product gun with two children')
        if target is not None:
            raise ScenarioError('scenario.target: the hom analysis uses the source-side HOM target')
    else:
        if sweep is None or sweep['parameter'] != 'gamma':
            raise ScenarioError('the hom_dip_scan analysis needs a gamma sweep')
        if gun is not None or target is not None:
            raise ScenarioError('the hom_dip_scan analysis takes no gun and no target')
    if sweep is not None and sweep['parameter'] == 'gamma' and analysis != 'hom_dip_scan':
        raise ScenarioError('a gamma sweep is only defined for the hom_dip_scan analysis')


def parse_scenario(text: str,
                   schema: dict=None,
                   default_n_max: int=DEFAULT_N_MAX,
                   max_dimension: int=DEFAULT_MAX_DIMENSION) -> Scenario:
    '''
    Parse and validate a scenario document.

    :param text: str. The JSON scenario document.
    :param schema: dict. The scenario schema, by default the shipped one.
    :param default_n_max: int. The photon cap when the document gives none.
    :param max_dimension: int. The capacity cap of every point's basis.

    return Scenario. The validated scenario.
    '''
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as error:
        raise ScenarioError(f'scenario is not valid JSON: {error.msg} '
                            f'at line {error.lineno} column {error.colno}') from error
    document = validate_document(raw, schema or load_schema())
    _check_analysis(document)
    if document['gun'] is not None:
        _check_gun_fields(raw['gun'], 'scenario.gun')
    if document['n_max'] is None:
        document['n_max'] = default_n_max
    space_entry = document['space']
    sweep_entry = document['sweep']
    try:
        space = ModeSpace(space_entry['spatial_modes'],
                          space_entry['polarizations'],
                          space_entry['aux_bins'])
        gun = _build_gun(document['gun']) if document['gun'] is not None else None
    except TypeError as error:
        raise ScenarioError(str(error)) from error
    sweep = None
    if sweep_entry is not None:
        sweep = Sweep(sweep_entry['parameter'], sweep_entry['start'],
                      sweep_entry['stop'], sweep_entry['steps'])
    scenario = Scenario(document['name'], document['analysis'], space, document['n_max'],
                        description=document['description'],
                        gun=gun,
                        target=document['target'],
                        alphabet=document['alphabet'],
                        postselect_emission=document['postselect_emission'],
                        sweep=sweep,
                        document=document)
    if sweep is None:
        _check_point(scenario, max_dimension)
    else:
        for index, value in enumerate(scenario.plan()):
            try:
                _check_point(scenario.at(value), max_dimension)
            except ScenarioError as error:
                raise ScenarioError(f'sweep point {index} ({sweep.parameter}={value:g}): '
                                    f'{error}') from error
    logger.info('Parsed scenario %s (%s, %d points)', scenario.name, scenario.analysis,
                max(len(scenario.plan()), 1))
    return scenario
