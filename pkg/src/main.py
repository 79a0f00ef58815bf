'''
Main script of the rate tool: rating quantum state sources against
target applications from scenario files.

Exit codes: 0 on success, 1 on a scenario error, 2 on a capacity or
numeric error.
'''
#!/usr/bin/python
# -*- coding: utf-8 -*-

import sys
from exceptions import SuitabilityError
from report import load_report_schema, render
from runner import run
from scenario import load_schema, parse_scenario
from startup import Startup


def _parse(startup: Startup, reference: str):
    model_parameters = startup.config['model_parameters']
    env_manager = startup.env_manager
    text = env_manager.read_scenario(reference)
    return parse_scenario(text,
                          load_schema(env_manager.scenario_schema_path),
                          model_parameters['default_n_max'],
                          model_parameters['max_basis_dimension'])


def main(argv: list[str]=None) -> int:
    '''
    Run the task given on the command line.

    :param argv: list. The command line arguments, sys.argv[1:] when None.

    return int. The exit code.
    '''
    startup = Startup()
    startup.global_setup(argv)
    args = startup.args
    logger = startup.logger
    env_manager = startup.env_manager
    model_parameters = startup.config['model_parameters']
    try:
        if args.task == 'examples':
            for name in env_manager.list_examples():
                print(name)
        elif args.task == 'validate':
            scenario = _parse(startup, args.scenario)
            logger.info('Scenario %s is valid', scenario.name)
        elif args.task == 'run':
            scenario = _parse(startup, args.scenario)
            report = run(scenario,
                         model_parameters['max_workers'],
                         model_parameters['max_basis_dimension'],
                         model_parameters['pair_number_cutoff'],
                         model_parameters['truncation_tolerance'],
                         load_report_schema(str(env_manager.report_schema_path)))
            text = render(report, args.format, model_parameters['significant_digits'])
            if args.out is None:
                sys.stdout.write(text)
            else:
                path = env_manager.write_report(text, args.out)
                logger.info('Report written to %s', path)
    except SuitabilityError as error:
        logger.error('%s: %s', type(error).__name__, error)
        return error.exit_code
    except OSError as error:
        logger.error('Cannot access %s: %s', error.filename, error.strerror)
        return 1
    return 0


if __name__ == '__main__':
    sys.exit(main())
