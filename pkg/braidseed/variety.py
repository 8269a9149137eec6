from __future__ import annotations

from dataclasses import dataclass

from sympy import ZZ
from sympy.polys.rings import ring

from .braid import Permutation, demazure_trace, reduced_word
from .errors import BudgetExceeded, EmptyVariety, InvalidInput, InvariantViolation
from .logger import LogLevel, log

TAG = "variety"


def polynomial_ring(s):
    """Z[z_1..z_s]; with no variables a single unused generator keeps the ring well formed."""
    names = ",".join(f"z{l}" for l in range(1, max(s, 1) + 1))
    R, *gens = ring(names, ZZ)
    return R, gens[:s]


class PolyMatrix:
    """Square matrix of sparse integer polynomials."""

    def __init__(self, R, entries):
        self.R = R
        self.entries = [list(row) for row in entries]

    @classmethod
    def identity(cls, R, n):
        return cls(R, [[R.one if i == j else R.zero for j in range(n)] for i in range(n)])

    @property
    def n(self):
        return len(self.entries)

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def __matmul__(self, other):
        n = self.n
        return PolyMatrix(self.R, [
            [sum((self.entries[i][l] * other.entries[l][j] for l in range(n)), self.R.zero) for j in range(n)]
            for i in range(n)
        ])

    def permute_rows(self, perm):
        """Row i of the result is row perm(i) of self (left multiplication by perm's matrix)."""
        return PolyMatrix(self.R, [self.entries[perm.images[i] - 1] for i in range(self.n)])

    def determinant(self):
        # cofactor expansion; fine at letter-matrix sizes
        if self.n == 1:
            return self.entries[0][0]
        total = self.R.zero
        for j in range(self.n):
            minor = PolyMatrix(self.R, [row[:j] + row[j + 1:] for row in self.entries[1:]])
            term = self.entries[0][j] * minor.determinant()
            total = total + term if j % 2 == 0 else total - term
        return total

    def max_terms(self):
        return max((len(p.terms()) for row in self.entries for p in row), default=0)


def braid_letter_matrix(i, var_index, n, R=None, gens=None):
    if not 1 <= i <= n - 1:
        raise InvalidInput(f"letter {i} out of range 1..{n - 1}")
    if R is None:
        R, gens = polynomial_ring(var_index)
    if not 1 <= var_index <= len(gens):
        raise InvalidInput(f"variable z_{var_index} is not in the ring")
    M = PolyMatrix.identity(R, n)
    z = gens[var_index - 1]
    M.entries[i - 1][i - 1] = z
    M.entries[i - 1][i] = -R.one
    M.entries[i][i - 1] = R.one
    M.entries[i][i] = R.zero
    return M


def extended_word(u, beta):
    """beta followed by the lexicographic reduced word of u^-1 w0."""
    tail = reduced_word(u.inverse().compose(Permutation.longest(u.n)))
    return beta.concat(tail)


@dataclass
class VarietyEquations:
    n: int
    s: int
    word: tuple[int, ...]
    ring: object
    equations: list

    def text(self):
        return [f"{p} = 0" for p in self.equations]

    def terms(self, p):
        return [
            {"exponents": list(monom[:self.s]), "coefficient": int(coeff)}
            for monom, coeff in p.terms()
        ]

    def to_dict(self):
        return {
            "n": self.n,
            "s": self.s,
            "word": list(self.word),
            "equations": [
                {"text": text, "terms": self.terms(p)}
                for text, p in zip(self.text(), self.equations)
            ],
        }


def evaluate(p, point):
    total = 0
    for monom, coeff in p.terms():
        value = int(coeff)
        for z, e in zip(point, monom):
            value *= z ** e
        total += value
    return total


def defining_equations(u, beta, require_nonempty=True, max_terms=20_000):
    if require_nonempty and not demazure_trace(u, beta).nonempty:
        raise EmptyVariety(f"{u} is not a subword of beta={beta}")
    word = extended_word(u, beta)
    s = len(word)
    R, gens = polynomial_ring(s)
    n = beta.n
    product = PolyMatrix.identity(R, n)
    for l, i in enumerate(word.letters, start=1):
        product = product @ braid_letter_matrix(i, l, n, R, gens)
        if product.max_terms() > max_terms:
            raise BudgetExceeded(f"more than {max_terms} terms after {l} of {s} letters")
    twisted = product.permute_rows(Permutation.longest(n).inverse())
    equations = [twisted[i, j] for i in range(n) for j in range(i)]
    log(LogLevel.DEBUG, TAG, f"{len(equations)} equations in {s} variables")
    return VarietyEquations(n, s, word.letters, R, equations)


@dataclass(frozen=True)
class DimensionReport:
    nonempty: bool
    s: int
    dim: int | None

    def to_dict(self):
        return {"nonempty": self.nonempty, "s": self.s, "dim": self.dim}


def dimension_report(u, beta):
    s = len(extended_word(u, beta))
    nonempty = demazure_trace(u, beta).nonempty
    if not nonempty:
        return DimensionReport(False, s, None)
    dim = len(beta) - u.length()
    if dim != s - u.n * (u.n - 1) // 2:
        raise InvariantViolation(f"dimension formulas disagree for u={u} beta={beta}")
    return DimensionReport(True, s, dim)
