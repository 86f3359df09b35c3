import numpy as np
import pytest

from cubesat.codes import (
    ParityCheckMatrix,
    approximate_hamming_code,
    certify,
    gf2_rank,
    hamming_code,
    is_perfect,
    min_distance_bruteforce,
    syndrome,
)


def test_first_columns():
    code = hamming_code(3)
    assert code.matrix.columns[:3] == (1, 2, 3)
    assert code.matrix.rows()[0] == [1, 0, 1, 0, 1, 0, 1]


@pytest.mark.parametrize("r", [2, 3, 4])
def test_hamming_properties(r):
    code = hamming_code(r)
    n = 2**r - 1
    cert = certify(code)
    assert cert.size == 2 ** (n - r) and cert.size_ok
    assert cert.min_distance == 3 and cert.dominating
    assert is_perfect(code)
    if n <= 7:
        assert min_distance_bruteforce(code.codewords()) == 3


def test_hamming_2_is_repetition():
    assert list(hamming_code(2).codewords()) == [0, 7]


@pytest.mark.parametrize("n", [3, 4, 5, 6, 9, 10, 12])
def test_approximate_codes(n):
    code = approximate_hamming_code(n)
    r = n.bit_length()
    assert code.r == r and code.size == 2 ** (n - r)
    words = code.codewords()
    # independent check: kernel by direct parity evaluation
    direct = [v for v in range(1 << n)
              if all(sum((v >> i) & 1 for i in range(n) if ((i + 1) >> j) & 1) % 2 == 0 for j in range(r))]
    assert list(words) == direct
    cert = certify(code)
    assert cert.min_dist_3
    if len(words) > 1 and n <= 10:
        assert min_distance_bruteforce(words) >= 3


def test_approximate_not_always_dominating():
    assert not certify(approximate_hamming_code(5)).dominating


def test_coset_masks_partition_cube():
    code = hamming_code(3)
    total = np.zeros(128, dtype=int)
    for s in range(8):
        total += code.syndromes == s
    assert (total == 1).all()
    coset = code.coset(1)
    assert all((x in coset) == bool(code.mask(1)[x]) for x in range(128))


def test_syndrome_linear():
    code = approximate_hamming_code(6)
    for x in range(0, 64, 7):
        for y in range(0, 64, 5):
            assert syndrome(code, x ^ y) == syndrome(code, x) ^ syndrome(code, y)
    with pytest.raises(ValueError):
        syndrome(code, 64)


def test_parity_matrix_validation():
    assert gf2_rank([1, 2, 3]) == 2
    with pytest.raises(ValueError):
        ParityCheckMatrix(2, (1, 1, 2))
    with pytest.raises(ValueError):
        ParityCheckMatrix(2, (0, 1, 2))
    with pytest.raises(ValueError):
        ParityCheckMatrix(3, (1, 2, 3))
    with pytest.raises(ValueError):
        hamming_code(1)
    with pytest.raises(ValueError):
        approximate_hamming_code(2)
