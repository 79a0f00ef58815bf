'''
Script for setting up all the configurations necessary to run the tool.
'''
import os
import json
import argparse
import logging
from azure.monitor.opentelemetry import configure_azure_monitor
from environment_manager import EnvironmentManager, ROOT_PATH
from report import REPORT_FORMATS, TOOLKIT_VERSION

logging.basicConfig(format='%(levelname)s:%(message)s',
                    level=logging.INFO)
default_logger = logging.getLogger()
logger = logging.getLogger()


class Startup():
    '''
    Class collecting the methods for setting up environment
    and configuration at the start of the run.
    '''
    __slots__ = (
        "config",
        "args",
        "env_manager",
        "logger",
        "root_path"
        )

    def __init__(self, root_path=None):
        self.root_path = root_path if root_path is not None else ROOT_PATH
        self.config = None
        self.args = None
        self.env_manager = None
        self.logger = None

    def _update_asp_config(self, old_config: dict, new_config: dict):
        '''
        Updating the default config parameters with those
        specific to the deployment environment
        '''
        for key, value in new_config.items():
            if isinstance(value, dict):
                old_config[key] = self._update_asp_config(old_config.get(key, {}), value)
            else:
                old_config[key] = value
        return old_config

    def _setup_config(self):
        '''
        Load the config and setup the aspnet environment
        '''
        config_folder = self.root_path / 'config'
        self.config = json.loads((config_folder / 'appsetting.json').read_text(encoding='utf-8'))
        asp_environment = os.getenv("ASPNETCORE_ENVIRONMENT")
        if asp_environment is not None:
            env_config = config_folder / f'appsetting.{asp_environment}.json'
            config_asp_environment = json.loads(env_config.read_text(encoding='utf-8'))
            self.config = self._update_asp_config(self.config,
                                                  config_asp_environment)
            # Setting up the name for the logging service
            os.environ["OTEL_SERVICE_NAME"] = '.'.join([asp_environment, 'rate'])
        # Azure Application Insight is optional, the tool logs locally without it
        if os.getenv("APPLICATIONINSIGHTS_CONNECTION_STRING") is None \
                and self.config["Azure"]["AZURE_CONNECTION_STRING"] != "":
            os.environ["APPLICATIONINSIGHTS_CONNECTION_STRING"] = self.config[
                "Azure"]["AZURE_CONNECTION_STRING"]

    def _setup_logging(self):
        '''
        Setting up the logger
        '''
        logging.getLogger().setLevel(self.config['Logging']['LogLevel']['Default'])
        # Setting up Azure logging
        self.logger = logging.getLogger("azure")
        self.logger.setLevel(self.config['Logging']['LogLevel']['Azure'])
        if os.getenv("APPLICATIONINSIGHTS_CONNECTION_STRING") is not None:
            configure_azure_monitor()
        excluded_logger_names = ["urllib3.connectionpool"]
        for logger_name in excluded_logger_names:
            self.logger = logging.getLogger(logger_name)
            self.logger.setLevel(logging.WARNING)
        self.logger = logging.getLogger()

    def _setup_parser(self, argv: list[str]=None):
        '''
        Parse the arguments from CLI
        '''
        parser = argparse.ArgumentParser(prog='rate',
                                         description="""
                                         Rate quantum state sources (guns) by their
                                         suitability for a target application.
                                         """)
        parser.add_argument('-v',
                            '--version',
                            action='version',
                            version=f'%(prog)s {TOOLKIT_VERSION}')
        subparsers = parser.add_subparsers(dest='task', required=True)
        run_parser = subparsers.add_parser('run',
                                           help='run a scenario and render its report')
        run_parser.add_argument('scenario',
                                help="""
                                the scenario file, or the name of a bundled example
                                (see rate examples).
                                """)
        run_parser.add_argument('-f',
                                '--format',
                                help='the report format. Default value is table.',
                                choices=list(REPORT_FORMATS),
                                default='table')
        run_parser.add_argument('-o',
                                '--out',
                                help="""
                                the path of the report file. The report is printed
                                on the standard output when it is not given.
                                """,
                                required=False)
        validate_parser = subparsers.add_parser('validate',
                                                help='parse and check a scenario without running it')
        validate_parser.add_argument('scenario',
                                     help='the scenario file, or the name of a bundled example.')
        subparsers.add_parser('examples', help='list the bundled example scenarios')
        self.args = parser.parse_args(argv)

    def _setup_env_manager(self):
        '''
        Setting up the environment manager class
        '''
        self.logger.debug('Configuring the environment')
        self.env_manager = EnvironmentManager(self.config, self.root_path)

    def global_setup(self, argv: list[str]=None):
        '''
        Running all the setup steps
        '''
        self._setup_config()
        self._setup_logging()
        self._setup_parser(argv)
        self._setup_env_manager()
