'''
Exceptions script.

The script defines the error hierarchy shared by the library modules and the
command line. Each class carries the exit code that main.py uses when the
error reaches the top level.
'''


class SuitabilityError(Exception):
    '''
    Base class of every error raised by the toolkit.
    '''
    exit_code = 1


class ScenarioError(SuitabilityError, ValueError):
    '''
    A scenario document, or a value built from it, is malformed,
    references something that does not exist or violates a domain rule.
    '''
    exit_code = 1


class BasisMismatchError(ScenarioError):
    '''
    Two operands are expressed over different Fock bases.
    '''


class CapacityError(SuitabilityError):
    '''
    The requested truncated Fock space is larger than the configured cap.
    '''
    exit_code = 2


class NumericError(SuitabilityError, ArithmeticError):
    '''
    A matrix is not a valid state within tolerance, or a truncation
    discards more weight than allowed.
    '''
    exit_code = 2
