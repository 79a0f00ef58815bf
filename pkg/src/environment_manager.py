'''
Environment manager script.

The script defines the class containing the paths to the files the tool
reads and writes: the bundled example scenarios, the schemas and the report
destination. The paths are defined as universal_pathlib, so that a report
can be written to any fsspec location (a local file, memory://, ...) with
the same code.
The input is a config dictionary containing the folder and file names from
which each path can be constructed.

The class requires "upath" as external package.
'''
import sys
from upath import UPath
from exceptions import ScenarioError

# Inside a PyInstaller bundle the resources are unpacked next to the executable
ROOT_PATH = UPath(getattr(sys, '_MEIPASS', UPath(__file__).parent.parent))


class EnvironmentManager():
    '''
    The environment manager class containing the locations of the
    resources of the tool.
    '''

    __slots__ = (
        "_config",
        "_root_path",
        "_scenarios_path",
        "_scenario_schema_path",
        "_report_schema_path"
        )

    def __init__(self, config: dict, root_path=None):
        self._config = config
        self._root_path = UPath(root_path) if root_path is not None else ROOT_PATH
        schema_folder = self._root_path / self._config['local_io']['schema_folder']
        self._scenarios_path = self._root_path / self._config['local_io']['scenarios_folder']
        self._scenario_schema_path = schema_folder / self._config['io_filename']['scenario_schema']
        self._report_schema_path = schema_folder / self._config['io_filename']['report_schema']

    @property
    def config(self) -> dict:
        '''
        The dictionary containing the filenames
        and path.
        '''
        return self._config

    @property
    def scenarios_path(self) -> UPath:
        '''
        The folder of the bundled example scenarios.
        '''
        return self._scenarios_path

    @property
    def scenario_schema_path(self) -> UPath:
        '''
        The scenario schema file.
        '''
        return self._scenario_schema_path

    @property
    def report_schema_path(self) -> UPath:
        '''
        The report column schema file.
        '''
        return self._report_schema_path

    def list_examples(self) -> list[str]:
        '''
        Get the names of the bundled example scenarios, sorted.
        '''
        return sorted(path.stem for path in self._scenarios_path.glob('*.json'))

    def resolve_scenario(self, reference: str) -> UPath:
        '''
        Get the path of a scenario given either as a file path or as the
        name of a bundled example.
        '''
        path = UPath(reference)
        if path.is_file():
            return path
        example = self._scenarios_path / f'{reference}.json'
        if example.is_file():
            return example
        raise ScenarioError(f'scenario {reference!r} is neither a file nor a bundled example '
                            f'({", ".join(self.list_examples())})')

    def read_scenario(self, reference: str) -> str:
        '''
        Read the text of a scenario file or bundled example.
        '''
        try:
            return self.resolve_scenario(reference).read_text(encoding='utf-8')
        except UnicodeDecodeError as error:
            raise ScenarioError(f'scenario {reference!r} is not UTF-8 text: {error.reason} '
                                f'at byte {error.start}') from error

    def write_report(self, text: str, destination: str) -> UPath:
        '''
        Write a rendered report, creating the parent folder if needed.
        '''
        path = UPath(destination)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open('w', encoding='utf-8', newline='') as report_file:
            report_file.write(text)
        return path
