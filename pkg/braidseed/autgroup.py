from __future__ import annotations

import asyncio
import csv
import io
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from .braid import BraidWord, Permutation, demazure_trace, reduced_word
from .errors import BraidSeedError, InvalidInput, KernelViolation
from .exchange import compute_seed
from .logger import LogLevel, log

TAG = "autgroup"

SURVEY_COLUMNS = ["n", "u_word", "beta", "m", "f", "distinct_letters", "det_ok", "sign_all_nonpositive"]


def spans_direct_summand(vectors):
    """True when the f vectors generate a rank-f direct summand of Z^(m+f)."""
    if not vectors:
        return True
    snf = smith_normal_form(Matrix([list(v) for v in vectors]).T, domain=ZZ)
    return all(abs(snf[j, j]) == 1 for j in range(len(vectors)))


def kernel_basis(bhat, A, m, f):
    btilde = bhat.first_rows(m)
    basis = []
    for j in range(m, m + f):
        vector = tuple(int(x) for x in A.column(j))
        if any(btilde.apply(vector)):
            raise KernelViolation(f"column {j + 1} of A is not in the kernel of B~")
        basis.append(vector)
    if not spans_direct_summand(basis):
        raise KernelViolation("kernel vectors do not span a direct summand")
    return basis


def _superscript(exponent):
    return "" if exponent == 1 else f"^{{{exponent}}}"


@dataclass(frozen=True)
class TorusAction:
    m: int
    f: int
    weights: tuple[tuple[int, ...], ...]

    def exponents(self, i):
        return self.weights[i - 1]

    def render(self, i):
        factors = [
            f"t_{j}{_superscript(e)}"
            for j, e in enumerate(self.exponents(i), start=1)
            if e != 0
        ]
        return " ".join([f"x_{i} →", *factors, f"x_{i}"])

    def render_all(self):
        return [self.render(i) for i in range(1, self.m + self.f + 1)]


def torus_action(A, m, f):
    if A.nrows != m + f or not A.is_integral():
        raise InvalidInput(f"A must be an integral square matrix of size {m + f}")
    weights = tuple(
        tuple(int(A[i, m + j]) for j in range(f)) for i in range(m + f)
    )
    return TorusAction(m, f, weights)


@dataclass(frozen=True)
class SignReport:
    all_nonpositive: bool
    violations: tuple[tuple[int, int, int], ...] = ()

    def to_dict(self):
        return {
            "all_nonpositive": self.all_nonpositive,
            "violations": [list(v) for v in self.violations],
        }


def sign_report(A):
    violations = tuple(
        (i + 1, j + 1, int(A[i, j]))
        for i in range(A.nrows)
        for j in range(A.ncols)
        if A[i, j] > 0
    )
    return SignReport(not violations, violations)


@dataclass(frozen=True)
class SurveyRecord:
    n: int
    u: tuple[int, ...]
    beta: tuple[int, ...]
    m: int
    f: int
    distinct_letters: int
    det_ok: bool
    sign_all_nonpositive: bool
    error: str | None = None

    def sort_key(self):
        return (self.beta, self.u)

    def row(self):
        u_word = reduced_word(Permutation(self.u)).text()
        return [
            self.n,
            u_word,
            " ".join(str(i) for i in self.beta),
            self.m,
            self.f,
            self.distinct_letters,
            str(self.det_ok).lower(),
            str(self.sign_all_nonpositive).lower(),
        ]


@dataclass
class SurveyResult:
    records: list[SurveyRecord] = field(default_factory=list)
    skipped: int = 0
    examined: int = 0
    truncated: bool = False
    budget: int = 0

    @property
    def failed(self):
        return [record for record in self.records if record.error]

    def to_csv(self):
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(SURVEY_COLUMNS)
        for record in self.records:
            writer.writerow(record.row())
        if self.truncated:
            out.write(f"# truncated: budget of {self.budget} pairs reached\n")
        if self.failed:
            out.write(f"# failed: {len(self.failed)} pairs raised engine errors\n")
        return out.getvalue()


def survey_instance(n, u_images, letters):
    """Survey one pair; None when the variety is empty."""
    u = Permutation(u_images)
    beta = BraidWord(n, letters)
    if not demazure_trace(u, beta).nonempty:
        return None
    try:
        seed = compute_seed(u, beta)
    except BraidSeedError as e:
        log(LogLevel.ERROR, TAG, f"u={u} beta={beta}: {e}")
        return SurveyRecord(
            n, u_images, letters, 0, 0, beta.distinct_letters(), False, False, error=f"{type(e).__name__}: {e}"
        )
    return SurveyRecord(
        n,
        u_images,
        letters,
        seed.m,
        seed.f,
        beta.distinct_letters(),
        seed.det == (-1) ** seed.size,
        sign_report(seed.A).all_nonpositive,
    )


def survey_pairs(n, min_len, max_len, u_filter=None):
    """Candidate (u, beta) pairs in lexicographic (beta, u) order."""
    if u_filter is None:
        perms = [tuple(p) for p in itertools.permutations(range(1, n + 1))]
    else:
        perms = [u_filter.images]
    for length in range(min_len, max_len + 1):
        for letters in itertools.product(range(1, n), repeat=length):
            for u in perms:
                yield u, letters


async def _run_pool(n, pairs, jobs):
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        async with asyncio.TaskGroup() as tg:
            tasks = [
                tg.create_task(
                    asyncio.wrap_future(pool.submit(survey_instance, n, u, letters), loop=loop)
                )
                for u, letters in pairs
            ]
    return [task.result() for task in tasks]


def survey(n, min_len, max_len, u_filter=None, jobs=1, budget=200_000):
    if n < 2:
        raise InvalidInput(f"strand count must be >= 2, got {n}")
    if min_len < 0 or (u_filter is not None and u_filter.n != n):
        raise InvalidInput("invalid survey range or u")

    result = SurveyResult(budget=budget)
    pairs = []
    for pair in survey_pairs(n, min_len, max_len, u_filter):
        if len(pairs) >= budget:
            result.truncated = True
            log(LogLevel.WARNING, TAG, f"survey budget of {budget} pairs reached")
            break
        pairs.append(pair)
    result.examined = len(pairs)

    if jobs <= 1:
        outcomes = [survey_instance(n, u, letters) for u, letters in pairs]
    else:
        outcomes = asyncio.run(_run_pool(n, pairs, jobs))

    for outcome in outcomes:
        if outcome is None:
            result.skipped += 1
        else:
            result.records.append(outcome)
    result.records.sort(key=SurveyRecord.sort_key)
    log(
        LogLevel.INFO,
        TAG,
        f"surveyed {result.examined} pairs: {len(result.records)} records, {result.skipped} empty skipped",
    )
    if result.failed:
        log(LogLevel.ERROR, TAG, f"{len(result.failed)} pairs raised engine errors")
    return result
