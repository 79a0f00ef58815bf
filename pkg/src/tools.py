'''
Set of functions to be used in different part of the project.
'''
import numpy as np

SQRT_HALF = 1 / np.sqrt(2)

# Amplitudes over the (H, V) polarization pair
NAMED_POLARIZATIONS = {
    'H': (1.0, 0.0),
    'V': (0.0, 1.0),
    'L': (SQRT_HALF, 1j * SQRT_HALF),
    'R': (SQRT_HALF, -1j * SQRT_HALF),
    'D': (SQRT_HALF, SQRT_HALF),
    'A': (SQRT_HALF, -SQRT_HALF),
}

BB84_ALPHABET = ('H', 'V', 'L', 'R')


def parse_complex(value) -> complex:
    '''
    Convert a scenario value into a complex number. A plain number is
    taken as real, a pair [re, im] as a complex amplitude.

    :param value: int, float, complex or list. The value to convert.

    return complex. The converted value.
    '''
    if isinstance(value, bool):
        raise TypeError('a boolean is not a valid amplitude')
    if isinstance(value, (int, float, complex, np.number)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        real, imag = value
        return complex(float(real), float(imag))
    raise TypeError(f'cannot interpret {value!r} as a complex amplitude')


def polarization_vector(value) -> np.ndarray:
    '''
    Get the normalized (H, V) amplitude vector of a polarization, given
    either by name (H, V, L, R, D, A) or as two amplitudes.

    :param value: str or list. The polarization to convert.

    return numpy array. The normalized complex 2-vector.
    '''
    if isinstance(value, str):
        if value not in NAMED_POLARIZATIONS:
            raise ValueError(f'unknown polarization name {value!r}')
        amplitudes = np.array(NAMED_POLARIZATIONS[value], dtype=complex)
    else:
        if len(value) != 2:
            raise ValueError('a polarization needs exactly two amplitudes (H, V)')
        amplitudes = np.array([parse_complex(element) for element in value], dtype=complex)
    norm = np.linalg.norm(amplitudes)
    if norm == 0:
        raise ValueError('the polarization amplitudes must not be all zero')
    return amplitudes / norm


def hermitian_part(matrix: np.ndarray) -> np.ndarray:
    '''
    Get (M + M^dagger) / 2.
    '''
    return (matrix + matrix.conj().T) / 2


def max_deviation(matrix: np.ndarray, other: np.ndarray) -> float:
    '''
    Get the largest entrywise modulus of the difference of two matrices.

    :param matrix: numpy array. The first matrix.
    :param other: numpy array. The second matrix, same shape.
    '''
    if matrix.size == 0:
        return 0.0
    return float(np.max(np.abs(matrix - other)))


def uniform_weights(size: int) -> np.ndarray:
    '''
    Get the flat probability vector of the given length.
    '''
    return np.full(size, 1 / size)


def freeze(array: np.ndarray) -> np.ndarray:
    '''
    Mark a numpy array as read-only and return it.
    '''
    array.setflags(write=False)
    return array
