import random
from fractions import Fraction

import pytest

from braidseed import BraidWord, Permutation, compute_seed, parse_word


def word(text, n):
    return parse_word(text, n)


def perm(text, n):
    return Permutation.from_word(text, n)


def half(p):
    return Fraction(p, 2)


# u = s_2 in S_4, beta = (3,2,1,2,3); all four bridges frozen.
EXAMPLE_A = {
    "n": 4,
    "u": "2",
    "beta": "3 2 1 2 3",
    "boundaries": [(0, 0, 1), (0, 1, 0), (1, 0, 0), (0, 1, 0)],
    "H": [
        [0, half(-1), 0, half(1)],
        [half(1), 0, half(-1), 0],
        [0, half(1), 0, half(-1)],
        [half(-1), 0, half(1), 0],
    ],
    "D": [
        [-1, half(1), 0, half(1)],
        [half(1), -1, half(1), -1],
        [0, half(1), -1, half(1)],
        [half(1), -1, half(1), -1],
    ],
    "Bhat": [
        [-1, 0, 0, 1],
        [1, -1, 0, -1],
        [0, 1, -1, 0],
        [0, -1, 1, -1],
    ],
}

# u = s_4 s_3 s_4 in S_6 with a 13-letter beta; m = 4, f = 6.
RUNNING = {
    "n": 6,
    "u": "4 3 4",
    "beta": "5 4 3 2 1 4 3 4 2 5 3 4 5",
    "J": set(range(1, 14)) - {8, 11, 12},
    "order": [6, 7, 9, 13, 1, 2, 3, 4, 5, 10],
    "boundaries": [
        (0, 0, 0, 0, 0),
        (0, 0, 0, 0, 0),
        (0, 0, 0, 0, 0),
        (0, 0, 0, 0, 0),
        (0, 0, 0, 0, 1),
        (0, 0, 0, 1, 0),
        (0, 0, 1, 0, 0),
        (0, 1, 0, 0, 0),
        (1, 0, 0, 0, 0),
        (0, 0, 0, 1, 0),
    ],
    "Bhat": [
        [0, -1, 0, 0, 0, -1, 1, 0, 0, 0],
        [1, 0, -1, 1, 0, 0, -1, 1, 0, 0],
        [0, 1, 0, -1, 0, 0, 0, -1, 1, 0],
        [0, -1, 1, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, -1, 0, 0, 0, 0, 1],
        [1, 0, 0, 0, 1, -1, 0, 0, 0, -1],
        [-1, 1, 0, 0, 0, 1, -1, 0, 0, 0],
        [0, -1, 1, 0, 0, 0, 1, -1, 0, 0],
        [0, 0, -1, 0, 0, 0, 0, 1, -1, 0],
        [0, 0, 0, 0, 0, -1, 1, 0, 0, -1],
    ],
    "N_prime": [
        [-1, half(1), 0, 0, 0, half(1)],
        [half(1), -1, half(1), 0, 0, -1],
        [0, half(1), -1, half(1), 0, half(1)],
        [0, 0, half(1), -1, half(1), 0],
        [0, 0, 0, half(1), -1, 0],
        [half(1), -1, half(1), 0, 0, -1],
    ],
    "A": [
        [-1, 0, 0, 0, 0, 0, -1, 0, 0, 0],
        [-1, -1, -1, -1, 0, 0, -1, -1, -1, 0],
        [-1, -1, -1, 0, 0, 0, -1, -1, -1, 0],
        [0, 0, -1, -1, 0, 0, 0, 0, -1, 0],
        [0, -1, -1, -1, -1, 0, -1, -1, -1, -1],
        [-1, 0, 0, 0, -1, -1, -1, 0, 0, 0],
        [-1, -1, -1, -1, -1, -1, -2, -1, -1, 0],
        [-1, -1, -1, 0, -1, -1, -2, -2, -1, 0],
        [0, 0, 0, 0, -1, -1, -1, -1, -1, 0],
        [0, -1, -1, -1, 0, 0, -1, -1, -1, -1],
    ],
    "torus": [
        "x_1 → t_3^{-1} x_1",
        "x_2 → t_3^{-1} t_4^{-1} t_5^{-1} x_2",
        "x_3 → t_3^{-1} t_4^{-1} t_5^{-1} x_3",
        "x_4 → t_5^{-1} x_4",
        "x_5 → t_1^{-1} t_3^{-1} t_4^{-1} t_5^{-1} t_6^{-1} x_5",
        "x_6 → t_1^{-1} t_2^{-1} t_3^{-1} x_6",
        "x_7 → t_1^{-1} t_2^{-1} t_3^{-2} t_4^{-1} t_5^{-1} x_7",
        "x_8 → t_1^{-1} t_2^{-1} t_3^{-2} t_4^{-2} t_5^{-1} x_8",
        "x_9 → t_1^{-1} t_2^{-1} t_3^{-1} t_4^{-1} t_5^{-1} x_9",
        "x_10 → t_3^{-1} t_4^{-1} t_5^{-1} t_6^{-1} x_10",
    ],
}

# u = s_3 s_1 s_2 s_5 s_4 in S_6 with a 16-letter beta; m = 6, f = 5.
# B^[6, 4] and B^[10, 5] are both -1: the mutable block is skew-symmetric and
# D vanishes outside the frozen block. near_miss_A differs from A by a row
# permutation plus two entries; no admissible B^ has it as inverse.
EXAMPLE_C = {
    "n": 6,
    "u": "3 1 2 5 4",
    "oneline": (2, 4, 1, 6, 3, 5),
    "beta": "1 1 5 5 3 3 2 2 4 3 2 1 2 5 4 3",
    "m": 6,
    "f": 5,
    "Bhat": [
        [0, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, 0, -1, 0, 0, 0],
        [0, 0, 0, 0, 1, 1, 0, 0, -1, 0, 0],
        [0, 0, 0, 0, 1, 1, 0, 0, 0, -1, 0],
        [0, 0, -1, -1, 0, 0, 0, 0, 0, 1, 1],
        [-1, -1, -1, -1, 0, 0, 0, 0, 0, 2, 1],
        [1, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0, 0, -1, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, 0, -1, 0, 0],
        [0, 0, 0, 1, -1, -2, 1, 0, 1, -1, 0],
        [0, 0, 0, 0, -1, -1, 0, 1, 1, 0, -1],
    ],
    "A": [
        [-1, 0, -1, -1, 0, -1, 0, -1, -1, -1, -1],
        [0, -1, -1, -1, 0, -1, -1, 0, -1, -1, -1],
        [-1, -1, -3, -1, -1, -1, -1, -1, -1, -2, -2],
        [0, -1, -1, -2, -1, -1, -1, -1, -2, -1, -2],
        [-1, -1, -1, 0, -1, 0, 0, 0, -1, -1, -1],
        [0, 0, -1, -1, 0, -1, -1, -1, -1, -1, -1],
        [-1, 0, -1, -1, 0, -1, -1, -1, -1, -1, -1],
        [0, -1, -1, -1, 0, -1, -1, -1, -1, -1, -1],
        [-1, -1, -3, -1, -1, -1, -1, -1, -2, -2, -2],
        [-1, -1, -2, -2, -1, -1, -1, -1, -2, -2, -2],
        [0, -1, -2, -1, 0, -1, -1, -1, -1, -1, -2],
    ],
    "near_miss_A": [
        [0, 0, -1, -1, 0, -1, -1, -1, -1, -1, -1],
        [-1, -1, -1, 0, -1, 0, 0, 0, -1, -1, -1],
        [0, -1, -1, -2, -1, -1, -1, -1, -2, -1, -2],
        [-1, -1, -3, -1, -1, -1, -1, -1, -1, -2, -2],
        [0, -1, -1, -1, 0, -1, -1, 0, -1, -1, -1],
        [-1, 0, -1, 0, -1, -1, 0, -1, -1, -1, -1],
        [0, -1, -1, -1, 0, -1, -1, -1, -1, -1, -1],
        [0, -1, -2, -1, 0, -1, -1, -1, -1, -1, -2],
        [-1, -1, -3, -1, -1, -1, -1, -1, -2, -2, -2],
        [-1, -1, -2, -2, -1, -1, -1, -1, -2, -2, -2],
        [-1, 0, -1, -1, 0, -1, -1, -1, -1, -1, -1],
    ],
    "torus": [
        "x_1 → t_2^{-1} t_3^{-1} t_4^{-1} t_5^{-1} x_1",
        "x_2 → t_1^{-1} t_3^{-1} t_4^{-1} t_5^{-1} x_2",
        "x_3 → t_1^{-1} t_2^{-1} t_3^{-1} t_4^{-2} t_5^{-2} x_3",
        "x_4 → t_1^{-1} t_2^{-1} t_3^{-2} t_4^{-1} t_5^{-2} x_4",
        "x_5 → t_3^{-1} t_4^{-1} t_5^{-1} x_5",
        "x_6 → t_1^{-1} t_2^{-1} t_3^{-1} t_4^{-1} t_5^{-1} x_6",
        "x_7 → t_1^{-1} t_2^{-1} t_3^{-1} t_4^{-1} t_5^{-1} x_7",
        "x_8 → t_1^{-1} t_2^{-1} t_3^{-1} t_4^{-1} t_5^{-1} x_8",
        "x_9 → t_1^{-1} t_2^{-1} t_3^{-2} t_4^{-2} t_5^{-2} x_9",
        "x_10 → t_1^{-1} t_2^{-1} t_3^{-2} t_4^{-2} t_5^{-2} x_10",
        "x_11 → t_1^{-1} t_2^{-1} t_3^{-1} t_4^{-1} t_5^{-2} x_11",
    ],
}


# u = s_1 s_2 in S_4 with a 9-letter beta; A has entries of both signs.
EXAMPLE_D = {
    "n": 4,
    "u": "1 2",
    "oneline": (2, 3, 1, 4),
    "beta": "1 3 1 2 1 3 2 2 3",
    "J": {1, 2, 3, 4, 6, 7, 9},
    "order": [3, 6, 7, 9, 1, 2, 4],
    "frozen_boundaries": [(1, 0, 0), (0, 0, 1), (0, 1, 0)],
    "Bhat": [
        [0, 0, 1, 1, -1, 0, 0],
        [0, 0, -1, 0, 0, -1, 1],
        [-1, 1, 0, 0, 0, 0, 0],
        [-1, 0, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, -1, 0, 0],
        [0, 1, 0, 0, 0, -1, 0],
        [0, -1, 0, 0, 1, 1, -1],
    ],
    "A": [
        [0, 0, 0, -1, 0, 0, 0],
        [0, 0, 1, -1, 0, 0, 0],
        [0, -1, -1, 0, -1, 0, -1],
        [1, 1, 1, -1, 0, 0, 1],
        [0, 0, 0, -1, -1, 0, 0],
        [0, 0, 1, -1, 0, -1, 0],
        [0, 0, 0, -1, -1, -1, -1],
    ],
    "positive": [(2, 3, 1), (4, 1, 1), (4, 2, 1), (4, 3, 1), (4, 7, 1), (6, 3, 1)],
    "torus": [
        "x_1 → x_1",
        "x_2 → x_2",
        "x_3 → t_1^{-1} t_3^{-1} x_3",
        "x_4 → t_3 x_4",
        "x_5 → t_1^{-1} x_5",
        "x_6 → t_2^{-1} x_6",
        "x_7 → t_1^{-1} t_2^{-1} t_3^{-1} x_7",
    ],
}


def instance(example):
    n = example["n"]
    return perm(example["u"], n), word(example["beta"], n)


def random_instance(rng, max_n=5, max_len=10):
    """A nonempty (u, beta): u is the product of a length-increasing subword of beta."""
    n = rng.randint(2, max_n)
    letters = tuple(rng.randint(1, n - 1) for _ in range(rng.randint(0, max_len)))
    u = Permutation.identity(n)
    for i in letters:
        if rng.random() < 0.5 and not u.has_right_descent(i):
            u = u.right_multiply(i)
    return u, BraidWord(n, letters)


def random_corpus(count, seed=20240611, **kwargs):
    rng = random.Random(seed)
    return [random_instance(rng, **kwargs) for _ in range(count)]


@pytest.fixture(scope="session")
def corpus():
    return random_corpus(1000)


@pytest.fixture(scope="session")
def corpus_seeds(corpus):
    return [compute_seed(u, beta) for u, beta in corpus]


@pytest.fixture(scope="session")
def running_seed():
    return compute_seed(*instance(RUNNING))


@pytest.fixture(scope="session")
def example_a_seed():
    return compute_seed(*instance(EXAMPLE_A))


@pytest.fixture(scope="session")
def example_c_seed():
    return compute_seed(*instance(EXAMPLE_C))


@pytest.fixture(scope="session")
def example_d_seed():
    return compute_seed(*instance(EXAMPLE_D))
