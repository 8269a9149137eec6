from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from .braid import BraidWord, boundary_form, demazure_trace, reflect, unit_vector
from .errors import (
    DeterminantViolation,
    EmptyVariety,
    IntegralityViolation,
    InvalidInput,
    InvariantViolation,
    RouteDisagreement,
)
from .logger import LogLevel, log
from .matrix import ExactMatrix
from .plabic import AnomalyCounters, build_diagram, propagate_films

TAG = "exchange"


def half_arrow_counts(local_x, local_y):
    """Raw half-arrows x -> y at one bridge, templates d->b twice, a->d, b->a, c->d, b->c."""
    ax, bx, cx, dx = local_x
    ay, by, cy, dy = local_y
    return 2 * dx * by + ax * dy + bx * ay + cx * dy + bx * cy


def half_arrow_matrix(diagram, films):
    size = len(films)
    counts = [[0] * size for _ in range(size)]
    for position in diagram.bridge_positions:
        present = [(x, film) for x, film in enumerate(films) if film.origin >= position]
        for x, film in present:
            if position not in film.bridge_local:
                raise InvariantViolation(
                    f"film {film.vertex_id} has no local data at bridge {position}"
                )
        for x, film_x in present:
            local_x = film_x.bridge_local[position]
            for y, film_y in present:
                if x != y:
                    counts[x][y] += half_arrow_counts(local_x, film_y.bridge_local[position])
    return ExactMatrix.from_function(
        size, size, lambda x, y: Fraction(counts[x][y] - counts[y][x], 2)
    )


def boundary_correction_matrix(films):
    size = len(films)
    return ExactMatrix.from_function(
        size, size, lambda i, j: boundary_form(films[i].boundary, films[j].boundary)
    )


def assemble_bhat(H, D, m):
    bhat = H + D
    if not bhat.is_integral():
        raise IntegralityViolation("H + D is not integral", bhat.dump())
    size = bhat.nrows
    det = bhat.determinant()
    expected = (-1) ** size
    if det != expected:
        raise DeterminantViolation(f"det B^ = {det}, expected {expected}", bhat.dump())
    return bhat, bhat.first_rows(m), int(det)


def unimodular_inverse(bhat):
    det = bhat.determinant()
    if abs(det) != 1:
        raise DeterminantViolation(f"det = {det} is not a unit", bhat.dump())
    A = bhat.inverse()
    if not A.is_integral():
        raise IntegralityViolation("inverse of a unimodular matrix is not integral", A.dump())
    return A


@dataclass
class Seed:
    u: object
    beta: BraidWord
    trace: object
    diagram: object
    films: list
    m: int
    f: int
    H: ExactMatrix
    D: ExactMatrix
    bhat: ExactMatrix
    btilde: ExactMatrix
    det: int
    A: ExactMatrix
    anomalies: AnomalyCounters = field(default_factory=AnomalyCounters)

    @property
    def size(self):
        return self.m + self.f

    @property
    def vertex_order(self):
        return [film.origin for film in self.films]

    @property
    def boundaries(self):
        return [film.boundary for film in self.films]

    def mutable_block(self):
        return self.bhat.submatrix(range(self.m), range(self.m))

    def coupling_block(self):
        return self.bhat.submatrix(range(self.m), range(self.m, self.size))

    def frozen_block(self):
        return self.bhat.submatrix(range(self.m, self.size), range(self.m, self.size))

    def extended_exchange_transposed(self):
        """B~ in the (m+f) x m orientation."""
        return self.btilde.transpose()

    def quiver(self):
        return quiver_from_half_arrows(self.H, self.m, self.f)


def compute_seed(u, beta):
    trace = demazure_trace(u, beta)
    if not trace.nonempty:
        raise EmptyVariety(f"{u} is not a subword of beta={beta}")
    diagram = build_diagram(u, beta, trace)
    anomalies = AnomalyCounters()
    films = propagate_films(diagram, anomalies)
    m = sum(1 for film in films if not film.frozen)
    H = half_arrow_matrix(diagram, films)
    D = boundary_correction_matrix(films)
    bhat, btilde, det = assemble_bhat(H, D, m)
    A = unimodular_inverse(bhat)
    log(LogLevel.DEBUG, TAG, f"seed for u={u} beta={beta}: m={m} f={len(films) - m} det={det}")
    return Seed(u, beta, trace, diagram, films, m, len(films) - m, H, D, bhat, btilde, det, A, anomalies)


@dataclass(frozen=True)
class InductiveStep:
    position: int
    gap: int
    kind: str
    order: tuple[int, ...]
    permutation: tuple[int, ...] = ()
    L: ExactMatrix | None = None
    R: ExactMatrix | None = None

    def to_dict(self):
        data = {"position": self.position, "gap": self.gap, "kind": self.kind, "order": list(self.order)}
        if self.L is not None:
            data["permutation"] = list(self.permutation)
            data["L"] = self.L.to_json()
            data["R"] = self.R.to_json()
        return data


@dataclass
class InductiveResult:
    bhat: ExactMatrix
    A: ExactMatrix
    order: tuple[int, ...]
    boundaries: dict[int, tuple[int, ...]]
    steps: list[InductiveStep]


def suffix_permutations(u, beta, J):
    """v_t pairs with the suffix i_{t+1} ... i_k; v_0 = u and v_k = identity."""
    v = [u]
    for t in range(1, len(beta) + 1):
        v.append(v[-1] if t in J else v[-1].left_multiply(beta.letters[t - 1]))
    return v


def _aligned(seed, shift, order):
    """The direct-route B^ of a suffix instance, rows/cols in the given absolute order."""
    index = {origin + shift: x for x, origin in enumerate(seed.vertex_order)}
    return seed.bhat.permuted([index[origin] for origin in order])


def _verify_crossing(beta, t, v, J, bhat, order, boundaries):
    suffix = compute_seed(v[t - 1], beta.suffix(t))
    shifted = {j + t - 1 for j in suffix.trace.J}
    if shifted != {j for j in J if j >= t}:
        raise RouteDisagreement(f"suffix at {t} has bridges {sorted(shifted)}")
    if [o + t - 1 for o in suffix.vertex_order] != list(order):
        raise RouteDisagreement(f"vertex order differs after crossing at {t}")
    if suffix.bhat != bhat:
        raise RouteDisagreement(f"B^ changed across the crossing at {t}", suffix.bhat.dump())
    for film in suffix.films:
        if boundaries[film.origin + t - 1] != film.boundary:
            raise RouteDisagreement(f"boundary of film at {film.origin + t - 1} is not R_i of its predecessor")


def _verify_bridge(beta, t, v, J, L, R, Z1, working):
    suffix = compute_seed(v[t - 1], beta.suffix(t))
    shifted = {j + t - 1 for j in suffix.trace.J}
    if shifted != {j for j in J if j >= t}:
        raise RouteDisagreement(f"suffix at {t} has bridges {sorted(shifted)}")
    direct = _aligned(suffix, t - 1, working)
    if L @ direct @ R != Z1:
        raise RouteDisagreement(f"L B^ R != Z1 at bridge {t}", direct.dump())


def inductive_build(u, beta, verify=False, films=None):
    """B^ and A by adjoining one letter at a time from the right end of beta.

    A crossing leaves both matrices unchanged. A bridge adjoins a frozen vertex:
    B^ = L^-1 Z1 R^-1 and A = R Z1^-1 L, followed by a reorder into canonical order.
    """
    trace = demazure_trace(u, beta)
    if not trace.nonempty:
        raise EmptyVariety(f"{u} is not a subword of beta={beta}")
    if films is None:
        films = propagate_films(build_diagram(u, beta, trace))
    by_origin = {film.origin: film for film in films}
    J = trace.J
    v = suffix_permutations(u, beta, J)
    size = beta.n - 1

    order = []
    boundaries = {}
    bhat = ExactMatrix.zeros(0)
    A = ExactMatrix.zeros(0)
    steps = []
    for t in range(len(beta), 0, -1):
        i = beta.letters[t - 1]
        if t not in J:
            boundaries = {x: reflect(i, b, beta.n) for x, b in boundaries.items()}
            steps.append(InductiveStep(t, i, "crossing", tuple(order)))
            if verify:
                _verify_crossing(beta, t, v, J, bhat, order, boundaries)
            continue

        working = order + [t]
        n = len(working)
        column = []
        row = []
        for x in order:
            a, b, c, d = by_origin[x].bridge_local[t]
            column.append(a + c - b - d)
            row.append(b - d)
        column.append(0)
        row.append(0)

        L = ExactMatrix.from_function(
            n, n, lambda p, q: (1 if p == q else 0) + (column[p] if q == n - 1 else 0)
        )
        R = ExactMatrix.from_function(
            n, n, lambda p, q: (1 if p == q else 0) + (row[q] if p == n - 1 else 0)
        )
        minus_one = ExactMatrix([[-1]])
        Z1 = ExactMatrix.block_diagonal(bhat, minus_one)
        bhat_w = ExactMatrix.from_function(
            n,
            n,
            lambda p, q: Z1[p, q]
            + (row[q] if p == n - 1 else 0)
            + (column[p] if q == n - 1 else 0)
            - column[p] * row[q],
        )
        A_w = R @ ExactMatrix.block_diagonal(A, minus_one) @ L
        if verify:
            _verify_bridge(beta, t, v, J, L, R, Z1, working)

        for x, b_minus_d in zip(order, row):
            if b_minus_d:
                boundaries[x] = tuple(
                    value - b_minus_d if g == i - 1 else value
                    for g, value in enumerate(boundaries[x])
                )
        boundaries[t] = unit_vector(i, size)
        new_order = sorted(working, key=lambda x: (any(boundaries[x]), x))
        permutation = tuple(working.index(x) for x in new_order)
        bhat = bhat_w.permuted(permutation)
        A = A_w.permuted(permutation)
        order = new_order
        steps.append(InductiveStep(t, i, "bridge", tuple(order), permutation, L, R))
        log(LogLevel.VERBOSE, TAG, f"bridge {t}: order {order}")

    return InductiveResult(bhat, A, tuple(order), boundaries, steps)


def compare_routes(seed, result):
    if tuple(seed.vertex_order) != result.order:
        raise RouteDisagreement(f"vertex orders differ: {seed.vertex_order} vs {list(result.order)}")
    if seed.bhat != result.bhat:
        raise RouteDisagreement("direct and inductive B^ differ", result.bhat.dump())
    if seed.A != result.A:
        raise RouteDisagreement("direct and inductive A differ", result.A.dump())
    for film in seed.films:
        if result.boundaries[film.origin] != film.boundary:
            raise RouteDisagreement(f"boundary of film at {film.origin} differs")


def mutate(B, k, m):
    """Matrix mutation at the 1-based mutable index k.

    B is either the full square B^ or the m x (m+f) extended exchange matrix.
    """
    if not 1 <= k <= m or k > B.nrows:
        raise InvalidInput(f"cannot mutate at {k}: mutable indices are 1..{m}")
    c = k - 1
    def entry(i, j):
        if i == c or j == c:
            return -B[i, j]
        b_ik, b_kj = B[i, c], B[c, j]
        return B[i, j] + (abs(b_ik) * b_kj + b_ik * abs(b_kj)) / 2
    return ExactMatrix.from_function(B.nrows, B.ncols, entry)


@dataclass
class Quiver:
    m: int
    f: int
    graph: nx.DiGraph

    @property
    def size(self):
        return self.m + self.f

    def is_frozen(self, vertex):
        return vertex > self.m

    def weight(self, i, j):
        """Signed arrow weight b_ij between 1-based vertices."""
        if self.graph.has_edge(i, j):
            return self.graph[i][j]["weight"]
        if self.graph.has_edge(j, i):
            return -self.graph[j][i]["weight"]
        return Fraction(0)

    def arrows(self):
        """(source, target, weight) for every arrow, in vertex order."""
        return sorted((i, j, data["weight"]) for i, j, data in self.graph.edges(data=True))

    def weights(self):
        return ExactMatrix.from_function(self.size, self.size, lambda i, j: self.weight(i + 1, j + 1))

    def mutate(self, k):
        """Compose paths through k, reverse arrows at k, cancel 2-cycles."""
        if not 1 <= k <= self.m:
            raise InvalidInput(f"cannot mutate at {k}: vertex is frozen or out of range")
        net = {}
        for i, j, w in self.arrows():
            net[(i, j)] = net.get((i, j), 0) + w
        incoming = [(i, w) for (i, j), w in net.items() if j == k]
        outgoing = [(j, w) for (i, j), w in net.items() if i == k]
        for i, w_in in incoming:
            for j, w_out in outgoing:
                if i != j:
                    net[(i, j)] = net.get((i, j), 0) + w_in * w_out
        for (i, j) in [e for e in net if k in e]:
            w = net.pop((i, j))
            net[(j, i)] = net.get((j, i), 0) + w
        graph = nx.DiGraph()
        graph.add_nodes_from(range(1, self.size + 1))
        for i, j in sorted({tuple(sorted(pair)) for pair in net}):
            total = net.get((i, j), 0) - net.get((j, i), 0)
            if total > 0:
                graph.add_edge(i, j, weight=Fraction(total))
            elif total < 0:
                graph.add_edge(j, i, weight=Fraction(-total))
        return Quiver(self.m, self.f, graph)


def quiver_from_half_arrows(H, m, f):
    if H.nrows != m + f or not H.is_skew_symmetric():
        raise InvalidInput("arrow table must be skew-symmetric of size m+f")
    graph = nx.DiGraph()
    graph.add_nodes_from(range(1, m + f + 1))
    for i in range(m + f):
        for j in range(m + f):
            w = H[i, j]
            if w > 0:
                if (i < m or j < m) and w.denominator != 1:
                    raise IntegralityViolation(
                        f"half arrow between {i + 1} and {j + 1} touches a mutable vertex", H.dump()
                    )
                graph.add_edge(i + 1, j + 1, weight=w)
    return Quiver(m, f, graph)
