'''
Report script.

The script holds the result of a run and renders it as a fixed-width table,
as csv or as json. Column orders come from schema/report_schema.json.
The wall-clock duration stays on the Report and in the logs; it is left
out of every rendering so that a scenario always renders to the same bytes.

The class requires "pandas" and "upath" as external packages.
'''
import json
from functools import lru_cache, partial
import pandas as pd
from upath import UPath
from exceptions import ScenarioError

TOOLKIT_VERSION = '0.1.0'
REPORT_FORMATS = ('table', 'csv', 'json')
DEFAULT_REPORT_SCHEMA_PATH = UPath(__file__).parent.parent / 'schema' / 'report_schema.json'
SIGNIFICANT_DIGITS = 9


@lru_cache(maxsize=8)
def load_report_schema(path: str=None) -> dict:
    '''
    Load the report column schema, by default the one shipped in schema/.
    '''
    return json.loads(UPath(path or DEFAULT_REPORT_SCHEMA_PATH).read_text(encoding='utf-8'))


class Report():
    '''
    The rows of a run, in sweep order, with the scenario they come from.
    '''

    __slots__ = (
        "_name",
        "_analysis",
        "_scenario",
        "_rows",
        "_columns",
        "_toolkit_version",
        "_duration"
        )

    def __init__(self,
                 name: str,
                 analysis: str,
                 scenario: dict,
                 rows: list[dict],
                 columns: list[str],
                 duration: float=0.0,
                 toolkit_version: str=TOOLKIT_VERSION):
        self._name = name
        self._analysis = analysis
        self._scenario = scenario
        self._rows = list(rows)
        self._columns = list(columns)
        self._toolkit_version = toolkit_version
        self._duration = duration

    @property
    def name(self) -> str:
        '''
        The scenario name.
        '''
        return self._name

    @property
    def analysis(self) -> str:
        '''
        The analysis that produced the rows.
        '''
        return self._analysis

    @property
    def scenario(self) -> dict:
        '''
        The echo of the validated scenario document.
        '''
        return self._scenario

    @property
    def rows(self) -> list[dict]:
        '''
        One dictionary per point.
        '''
        return self._rows

    @property
    def columns(self) -> list[str]:
        '''
        The column order of the rendered table.
        '''
        return self._columns

    @property
    def toolkit_version(self) -> str:
        '''
        The version of the toolkit that produced the report.
        '''
        return self._toolkit_version

    @property
    def duration(self) -> float:
        '''
        Wall-clock duration of the run in seconds.
        '''
        return self._duration

    def to_frame(self) -> pd.DataFrame:
        '''
        The rows as a dataframe, columns in report order.
        '''
        return pd.DataFrame(self._rows, columns=self._columns)


def _format_value(value, digits: int) -> str:
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return f'{value:.{digits}g}'
    return str(value)


def render(report: Report,
           output_format: str='table',
           digits: int=SIGNIFICANT_DIGITS) -> str:
    '''
    Render a report.

    :param report: Report. The report to render.
    :param output_format: str. One of table (fixed width, 9 significant
    digits by default), csv (header then one line per row) or json.
    :param digits: int. Significant digits of the table.

    return str. The rendered document, ending with a newline.
    '''
    if output_format not in REPORT_FORMATS:
        raise ScenarioError(f'unknown report format {output_format!r}, '
                            f'expected one of {list(REPORT_FORMATS)}')
    if output_format == 'json':
        document = {'name': report.name,
                    'analysis': report.analysis,
                    'toolkit_version': report.toolkit_version,
                    'scenario': report.scenario,
                    'columns': report.columns,
                    'rows': report.rows}
        return json.dumps(document, sort_keys=True, indent=2) + '\n'
    frame = report.to_frame()
    if output_format == 'csv':
        return frame.to_csv(index=False, lineterminator='\n')
    formatters = {column: partial(_format_value, digits=digits) for column in frame.columns}
    header = f'{report.name} ({report.analysis}, rate {report.toolkit_version})'
    return header + '\n' + frame.to_string(index=False, formatters=formatters) + '\n'
