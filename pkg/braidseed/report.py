from __future__ import annotations

import json

from .autgroup import kernel_basis, sign_report, torus_action
from .basic_report import BasicReport
from .braid import BraidWord, Permutation, boundary_form, reduced_word
from .errors import (
    DeterminantViolation,
    IntegralityViolation,
    InvalidInput,
    InvariantViolation,
)
from .exchange import compare_routes, compute_seed, inductive_build, mutate, quiver_from_half_arrows
from .logger import LogLevel, log
from .matrix import ExactMatrix, encode_entry
from .variety import dimension_report

TAG = "report"


class AnalysisReport(BasicReport):
    DOMAIN = "analysis"

    FIELDS = (
        "n", "u_word", "u_oneline", "beta", "J", "m", "f", "vertex_order", "boundaries",
        "H", "D", "Bhat", "det", "A", "torus_weights", "torus_action", "sign_report",
        "anomalies", "dimension", "inductive",
    )

    def __init__(self, **fields):
        missing = [name for name in self.FIELDS if name not in fields and name != "inductive"]
        if missing:
            raise InvalidInput(f"report is missing {', '.join(missing)}")
        self.fields = {name: fields.get(name) for name in self.FIELDS}
        super().__init__(
            name=f"n{self.fields['n']} u {self.fields['u_oneline']} beta {' '.join(map(str, self.fields['beta']))}"
        )

    def __getattr__(self, name):
        fields = self.__dict__.get("fields", {})
        if name in fields:
            return fields[name]
        raise AttributeError(name)

    def __eq__(self, other):
        return isinstance(other, AnalysisReport) and self.fields == other.fields

    def fingerprint(self):
        return json.dumps([self.n, self.u_oneline, self.beta])

    @classmethod
    def from_seed(cls, seed, inductive=None):
        A = seed.A
        action = torus_action(A, seed.m, seed.f)
        return cls(
            n=seed.beta.n,
            u_word=list(reduced_word(seed.u).letters),
            u_oneline=list(seed.u.images),
            beta=list(seed.beta.letters),
            J=sorted(seed.trace.J),
            m=seed.m,
            f=seed.f,
            vertex_order=seed.vertex_order,
            boundaries=[list(b) for b in seed.boundaries],
            H=seed.H.to_json(),
            D=seed.D.to_json(),
            Bhat=seed.bhat.to_json(),
            det=seed.det,
            A=A.to_json(),
            torus_weights=[list(w) for w in action.weights],
            torus_action=action.render_all(),
            sign_report=sign_report(A).to_dict(),
            anomalies=seed.anomalies.as_dict(),
            dimension=dimension_report(seed.u, seed.beta).to_dict(),
            inductive=[step.to_dict() for step in inductive.steps] if inductive is not None else None,
        )

    def payload(self):
        return {name: value for name, value in self.fields.items() if value is not None}

    @classmethod
    def from_dict(cls, data):
        fields = {name: data[name] for name in cls.FIELDS if name in data}
        report = cls(**fields)
        if "unique_id" in data and data["unique_id"] != report.unique_id:
            log(LogLevel.WARNING, TAG, f"report id {data['unique_id']} does not match its inputs")
        return report

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidInput(f"not a JSON report: {e}") from e
        if not isinstance(data, dict):
            raise InvalidInput("report must be a JSON object")
        return cls.from_dict(data)

    def matrix(self, name):
        size = self.m + self.f
        return ExactMatrix.from_json(self.fields[name], size)

    @property
    def btilde(self):
        return self.matrix("Bhat").first_rows(self.m)

    def u(self):
        return Permutation(tuple(self.u_oneline))

    def beta_word(self):
        return BraidWord(self.n, tuple(self.beta))

    def pretty(self):
        lines = [
            f"n = {self.n}",
            f"u = {Permutation(tuple(self.u_oneline))}  (word: {' '.join(map(str, self.u_word)) or 'identity'})",
            f"beta = ({', '.join(map(str, self.beta))})",
            f"J = {{{', '.join(map(str, self.J))}}}",
            f"m = {self.m}, f = {self.f}, det = {self.det}",
            "",
            "vertices:",
        ]
        for vertex, (origin, boundary) in enumerate(zip(self.vertex_order, self.boundaries), start=1):
            kind = "frozen" if vertex > self.m else "mutable"
            lines.append(f"  {vertex}: position {origin}, {kind}, boundary {tuple(boundary)}")
        for name in ("H", "D", "Bhat", "A"):
            lines.append("")
            lines.append(f"{name} =")
            lines.append(self.matrix(name).dump() or "  (empty)")
        lines.append("")
        lines.append("torus action:")
        lines.extend(f"  {text}" for text in self.torus_action)
        lines.append("")
        signs = self.sign_report
        if signs["all_nonpositive"]:
            lines.append("sign: every entry of A is <= 0")
        else:
            where = ", ".join(f"({r}, {c}) = {e}" for r, c, e in signs["violations"])
            lines.append(f"sign: positive entries at {where}")
        dim = self.dimension
        lines.append(f"dimension = {dim['dim']}, variables s = {dim['s']}")
        anomalies = ", ".join(f"{k} {v}" for k, v in self.anomalies.items())
        lines.append(f"anomalies: {anomalies}")
        return "\n".join(lines) + "\n"


def run_checks(seed):
    """Validation suite: exact identities every seed must satisfy."""
    size = seed.size
    if not seed.H.is_skew_symmetric():
        raise InvariantViolation("H is not skew-symmetric", seed.H.dump())
    if not seed.D.is_symmetric():
        raise InvariantViolation("D is not symmetric", seed.D.dump())
    for i in range(seed.m):
        if any(seed.D.row(i)):
            raise InvariantViolation(f"row {i + 1} of D is not zero for a mutable vertex")
        if any(x.denominator != 1 for x in seed.H.row(i)):
            raise IntegralityViolation(f"row {i + 1} of H is not integral")
    for film in seed.films:
        if film.frozen != any(film.boundary):
            raise InvariantViolation(f"film {film.vertex_id} frozen flag disagrees with its boundary")
    for i, film_i in enumerate(seed.films):
        for j, film_j in enumerate(seed.films):
            if seed.D[i, j] != boundary_form(film_i.boundary, film_j.boundary):
                raise InvariantViolation(f"D[{i + 1}, {j + 1}] is not the boundary form")
    if seed.det != (-1) ** size:
        raise DeterminantViolation(f"det = {seed.det}")
    if seed.bhat @ seed.A != ExactMatrix.identity(size) or seed.A @ seed.bhat != ExactMatrix.identity(size):
        raise InvariantViolation("A is not the inverse of B^", seed.A.dump())
    kernel_basis(seed.bhat, seed.A, seed.m, seed.f)
    quiver_from_half_arrows(seed.H, seed.m, seed.f)
    compare_routes(seed, inductive_build(seed.u, seed.beta, verify=True, films=seed.films))
    log(LogLevel.INFO, TAG, f"all checks passed for u={seed.u} beta={seed.beta}")


def analyze(u, beta, check=False, inductive=False):
    seed = compute_seed(u, beta)
    if check:
        run_checks(seed)
    result = None
    if inductive:
        result = inductive_build(u, beta, films=seed.films)
        compare_routes(seed, result)
    return seed, AnalysisReport.from_seed(seed, result)


class MutationReport(BasicReport):
    DOMAIN = "mutation"

    def __init__(self, source, sequence):
        self.source = source
        self.sequence = list(sequence)
        super().__init__(name=f"{source.object_id} mu {' '.join(map(str, self.sequence))}")
        m = source.m
        bhat = source.matrix("Bhat")
        H = source.matrix("H")
        btilde = source.btilde
        for k in self.sequence:
            bhat = mutate(bhat, k, m)
            H = mutate(H, k, m)
            btilde = mutate(btilde, k, m)
        self.bhat, self.H, self.btilde = bhat, H, btilde
        self.quiver = quiver_from_half_arrows(H, m, source.f)

    def fingerprint(self):
        return json.dumps([self.source.unique_id, self.sequence])

    def payload(self):
        return {
            "source": self.source.unique_id,
            "sequence": self.sequence,
            "m": self.source.m,
            "f": self.source.f,
            "Bhat": self.bhat.to_json(),
            "H": self.H.to_json(),
            "Btilde": self.btilde.to_json(),
            "arrows": [[i, j, encode_entry(w)] for i, j, w in self.quiver.arrows()],
        }
