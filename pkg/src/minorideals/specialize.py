"""Identification sequences on a generic matrix and the primality test built on them.

A sequence of position pairs (alpha, beta) imposes x_alpha = x_beta on the
generic m x n matrix X.  When the alphas are distinct, the sequence is not
bad, and the first r = t - 1 columns contribute an ideal of positive height,
the quotient of T by these identifications plus I_t(X) is a domain of
dimension (m + n - t + 1)(t - 1) - s.  This module decides those three
conditions.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from pathlib import Path
from typing import Iterator, NamedTuple, Sequence

from .groebner import GBCache, Ideal, buchberger, krull_dimension
from .polymatrix import PolyMatrix, minors, yz_parameterization
from .polyring import GF32003, GREVLEX, Field, MonomialOrder, Ring

__all__ = [
    "Position",
    "IdentificationSequence",
    "SpecGraph",
    "ConditionReport",
    "LabeledMatrix",
    "SubstitutionError",
    "BudgetExhausted",
    "InfeasiblePresentation",
    "build_graph",
    "find_path",
    "is_bad",
    "substitution_step",
    "substitution_matrices",
    "identification_classes",
    "specialized_matrix",
    "check_condition_iii",
    "check_theorem",
    "presentations",
    "survey_presentations",
    "PresentationSurvey",
]


class Position(NamedTuple):
    """1-based (row, column)."""

    row: int
    col: int

    def __str__(self):
        return f"({self.row},{self.col})"


class SubstitutionError(ValueError):
    pass


class BudgetExhausted(RuntimeError):
    pass


class InfeasiblePresentation(ValueError):
    pass


def _pos(p) -> Position:
    if isinstance(p, Position):
        return p
    r, c = p
    return Position(int(r), int(c))


@dataclass(frozen=True)
class IdentificationSequence:
    m: int
    n: int
    t: int
    pairs: tuple[tuple[Position, Position], ...] = ()

    def __post_init__(self):
        pairs = tuple((_pos(a), _pos(b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not (self.m >= self.n >= self.t >= 1):
            raise ValueError(f"need m >= n >= t >= 1, got m={self.m} n={self.n} t={self.t}")
        for a, b in pairs:
            for q in (a, b):
                if not (1 <= q.row <= self.m and 1 <= q.col <= self.n):
                    raise ValueError(f"position {q} outside a {self.m}x{self.n} matrix")
            if a == b:
                raise ValueError(f"alpha and beta coincide at {a}")

    @property
    def r(self) -> int:
        return self.t - 1

    @property
    def s(self) -> int:
        return len(self.pairs)

    @property
    def alphas_in_corner(self) -> bool:
        """Whether every alpha lies in the first r columns."""
        return all(a.col <= self.r for a, _ in self.pairs)

    @property
    def alphas(self) -> list[Position]:
        return [a for a, _ in self.pairs]

    @property
    def betas(self) -> list[Position]:
        return [b for _, b in self.pairs]

    def generic_dimension(self) -> int:
        return (self.m + self.n - self.t + 1) * (self.t - 1)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "t": self.t,
            "pairs": [[list(a), list(b)] for a, b in self.pairs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "IdentificationSequence":
        try:
            return cls(int(obj["m"]), int(obj["n"]), int(obj["t"]), tuple((a, b) for a, b in obj.get("pairs", [])))
        except (KeyError, TypeError) as e:
            raise ValueError(f"malformed sequence object: {e}") from None

    @classmethod
    def load(cls, path: str | Path) -> "IdentificationSequence":
        return cls.from_json(json.loads(Path(path).read_text()))


# ----------------------------------------------------------------- graphs


@dataclass(frozen=True)
class SpecGraph:
    """Directed graph on all m*n positions.

    Base edges run from every position in the first r columns to every
    position of the same row in columns r+1..n; stage j adds beta_k -> alpha_k
    for k <= j.
    """

    m: int
    n: int
    r: int
    stage: int
    edges: tuple[tuple[Position, Position], ...]

    @property
    def vertices(self) -> list[Position]:
        return [Position(i, j) for i in range(1, self.m + 1) for j in range(1, self.n + 1)]

    def adjacency(self) -> dict[Position, list[Position]]:
        adj: dict[Position, list[Position]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            if v not in adj[u]:
                adj[u].append(v)
        return adj


def _base_edges(m, n, r):
    return [
        (Position(a, b), Position(a, l))
        for a in range(1, m + 1)
        for b in range(1, r + 1)
        for l in range(r + 1, n + 1)
    ]


def build_graph(seq: IdentificationSequence, stage: int) -> SpecGraph:
    if not 0 <= stage <= seq.s:
        raise ValueError(f"stage {stage} outside 0..{seq.s}")
    edges = _base_edges(seq.m, seq.n, seq.r) + [(b, a) for a, b in seq.pairs[:stage]]
    return SpecGraph(seq.m, seq.n, seq.r, stage, tuple(edges))


def find_path(graph: SpecGraph, src: Position, dst: Position) -> list[Position] | None:
    """Shortest directed path with at least one edge, by breadth-first search."""
    adj = graph.adjacency()
    prev: dict[Position, Position] = {}
    queue = deque([src])
    seen = set()
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v in seen:
                continue
            seen.add(v)
            prev[v] = u
            if v == dst:
                path = [v]
                while True:
                    path.append(prev[path[-1]])
                    if path[-1] == src:
                        return path[::-1]
            queue.append(v)
    return None


def is_bad(seq: IdentificationSequence) -> tuple[bool, tuple[int, list[Position]] | None]:
    """Whether some alpha_j reaches beta_j in the stage j-1 graph.

    The witness is the earliest such j (1-based) with one path.
    """
    for j, (a, b) in enumerate(seq.pairs, start=1):
        path = find_path(build_graph(seq, j - 1), a, b)
        if path is not None:
            return True, (j, path)
    return False, None


# ---------------------------------------------------- substitution matrices


def _y_name(pos: Position, wide: bool) -> str:
    return f"y{pos.row}_{pos.col}" if wide else f"y{pos.row}{pos.col}"


def _wide(seq) -> bool:
    return seq.m > 9 or seq.n > 9


def substitution_step(A: PolyMatrix, alpha: Position, beta: Position, wide: bool = False) -> PolyMatrix:
    """Replace every occurrence of y_alpha by the beta entry of A."""
    name = _y_name(alpha, wide)
    ring = A.ring
    if name not in ring.index or A[alpha.row - 1, alpha.col - 1] != ring.gen(name):
        raise SubstitutionError(f"entry {alpha} is not the bare variable {name}")
    repl = A[beta.row - 1, beta.col - 1]
    return A.subs({name: repl})


def substitution_matrices(seq: IdentificationSequence, field: Field = GF32003) -> list[PolyMatrix]:
    """A^(0) = YZ and A^(i+1) = A^(i) with y_alpha(i+1) replaced by its beta(i+1) entry."""
    A = yz_parameterization(seq.m, seq.n, seq.t, field)
    out = [A]
    wide = _wide(seq)
    for a, b in seq.pairs:
        A = substitution_step(A, a, b, wide)
        out.append(A)
    return out


# --------------------------------------------------------- specialisation


def identification_classes(seq: IdentificationSequence) -> list[list[Position]]:
    """Positions grouped by the equalities x_alpha = x_beta, ordered by first member."""
    parent = {Position(i, j): Position(i, j) for i in range(1, seq.m + 1) for j in range(1, seq.n + 1)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in seq.pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[Position, list[Position]] = {}
    for p in sorted(parent):
        groups.setdefault(find(p), []).append(p)
    return sorted(groups.values(), key=lambda g: g[0])


def specialized_matrix(
    seq: IdentificationSequence,
    field: Field = GF32003,
    labels: "LabeledMatrix | None" = None,
) -> PolyMatrix:
    """Image of the generic matrix in the ring with one variable per class.

    Variables are named by ``labels`` when given (which must induce the same
    classes), else by the first position of each class.
    """
    classes = identification_classes(seq)
    if labels is not None:
        if labels.shape != (seq.m, seq.n):
            raise ValueError("labelled matrix shape differs from the sequence shape")
        names = []
        for cls in classes:
            tags = {labels.label(p) for p in cls}
            if len(tags) != 1:
                raise ValueError(f"class {[str(p) for p in cls]} carries labels {sorted(tags)}")
            names.append(tags.pop())
        if len(set(names)) != len(names):
            raise ValueError("the sequence does not identify every pair of equal labels")
    else:
        wide = _wide(seq)
        names = [f"x{c[0].row}_{c[0].col}" if wide else f"x{c[0].row}{c[0].col}" for c in classes]
    ring = Ring(tuple(names), field)
    var = {}
    for name, cls in zip(names, classes):
        for p in cls:
            var[p] = ring.gen(name)
    return PolyMatrix(ring, [[var[Position(i, j)] for j in range(1, seq.n + 1)] for i in range(1, seq.m + 1)])


class ConditionIII(NamedTuple):
    holds: bool
    dim_full: int
    dim_plus_corner: int | None


def check_condition_iii(
    seq: IdentificationSequence,
    order: MonomialOrder = GREVLEX,
    field: Field = GF32003,
    labels: "LabeledMatrix | None" = None,
    cache: GBCache | None = None,
) -> ConditionIII:
    """Positive height of I_r(first r columns) modulo the identified I_t, as a strict drop in dimension.

    ``dim_full`` is dim of (specialised ring)/I_t and ``dim_plus_corner``
    that of the quotient by I_t + I_r(first r columns).  For t = 1 there is
    nothing to check and ``dim_plus_corner`` is None.
    """
    X = specialized_matrix(seq, field, labels)
    ring = X.ring
    It = Ideal(ring, minors(X, seq.t))
    d1 = krull_dimension(buchberger(It, order, cache=cache)).dim
    if seq.r == 0:
        return ConditionIII(True, d1, None)
    Ir = Ideal(ring, minors(X.submatrix(range(seq.m), range(seq.r)), seq.r))
    d2 = krull_dimension(buchberger(It + Ir, order, cache=cache)).dim
    return ConditionIII(d2 < d1, d1, d2)


@dataclass
class ConditionReport:
    """Outcome of the three hypotheses.

    Minimality of the generators x_alpha - x_beta is not checked beyond the
    distinctness of the alphas.
    """

    sequence: IdentificationSequence
    cond_i: bool
    alphas_in_corner: bool
    cond_ii: bool
    bad_witness: tuple[int, list[Position]] | None
    cond_iii: bool
    dim_full: int
    dim_plus_corner: int | None
    predicted_dim: int | None = None
    formula_dim: int = 0
    dims_agree: bool | None = None

    @property
    def all_hold(self) -> bool:
        return self.cond_i and self.cond_ii and self.cond_iii

    def to_json(self) -> dict:
        w = None
        if self.bad_witness is not None:
            j, path = self.bad_witness
            w = {"index": j, "path": [list(p) for p in path]}
        return {
            "sequence": self.sequence.to_json(),
            "cond_i": self.cond_i,
            "alphas_in_corner": self.alphas_in_corner,
            "cond_ii": self.cond_ii,
            "bad_witness": w,
            "cond_iii": self.cond_iii,
            "dim_full": self.dim_full,
            "dim_plus_corner": self.dim_plus_corner,
            "formula_dim": self.formula_dim,
            "predicted_dim": self.predicted_dim,
            "dims_agree": self.dims_agree,
            "all_hold": self.all_hold,
        }


def check_theorem(
    seq: IdentificationSequence,
    order: MonomialOrder = GREVLEX,
    field: Field = GF32003,
    labels: "LabeledMatrix | None" = None,
    cache: GBCache | None = None,
) -> ConditionReport:
    alphas = seq.alphas
    cond_i = len(set(alphas)) == len(alphas)
    bad, witness = is_bad(seq)
    c3 = check_condition_iii(seq, order, field, labels, cache)
    formula = seq.generic_dimension() - seq.s
    rep = ConditionReport(seq, cond_i, seq.alphas_in_corner, not bad, witness, c3.holds, c3.dim_full, c3.dim_plus_corner, formula_dim=formula)
    if rep.all_hold:
        rep.predicted_dim = formula
        rep.dims_agree = formula == c3.dim_full
    return rep


# ------------------------------------------------------- labelled matrices


@dataclass(frozen=True)
class LabeledMatrix:
    """Matrix of symbols; equal symbols are identified entries."""

    labels: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(str(x) for x in r) for r in self.labels)
        if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("labels must form a non-empty rectangle")
        object.__setattr__(self, "labels", rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.labels), len(self.labels[0])

    def label(self, p: Position) -> str:
        return self.labels[p.row - 1][p.col - 1]

    def transpose(self) -> "LabeledMatrix":
        return LabeledMatrix(tuple(zip(*self.labels)))

    def classes(self) -> dict[str, list[Position]]:
        out: dict[str, list[Position]] = {}
        m, n = self.shape
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                out.setdefault(self.labels[i - 1][j - 1], []).append(Position(i, j))
        return out

    def matrix(self, field: Field = GF32003) -> PolyMatrix:
        names = tuple(self.classes())
        ring = Ring(names, field)
        return PolyMatrix(ring, [[ring.gen(x) for x in row] for row in self.labels])

    @classmethod
    def from_json(cls, obj: dict) -> "LabeledMatrix":
        try:
            entries = obj["entries"]
        except (KeyError, TypeError):
            raise ValueError("matrix object needs an 'entries' array") from None
        for row in entries:
            for e in row:
                if not str(e).isidentifier():
                    raise ValueError(f"labelled matrix entries must be bare names, got {e!r}")
        return cls(tuple(tuple(r) for r in entries))

    @classmethod
    def from_rows(cls, text: str) -> "LabeledMatrix":
        """Parse ``"a X b; X c X; d e f"``."""
        return cls(tuple(tuple(r.split()) for r in text.split(";")))

    def to_rows(self) -> str:
        return "; ".join(" ".join(r) for r in self.labels)


def _class_options(members: list[Position], r: int) -> list[list[tuple[Position, Position]]]:
    """Every spanning tree on a class, with every orientation putting alpha in the first r columns."""
    k = len(members)
    out = []
    for tree in combinations(combinations(members, 2), k - 1):
        parent = {p: p for p in members}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        spanning = True
        for u, v in tree:
            ru, rv = find(u), find(v)
            if ru == rv:
                spanning = False
                break
            parent[ru] = rv
        if not spanning:
            continue
        choices = []
        for u, v in tree:
            opts = [(x, y) for x, y in ((u, v), (v, u)) if x.col <= r]
            choices.append(opts)
        for combo in product(*choices):
            out.append(list(combo))
    return out


def presentations(mat: LabeledMatrix, t: int, budget: int = 10_000) -> Iterator[IdentificationSequence]:
    """All sequences realising the label identifications, in a fixed order.

    For each class of equal labels a spanning tree of identifications is
    chosen and each edge oriented with its alpha in the first r columns;
    alphas must be distinct overall and every ordering of the pairs is
    produced.  Raises :class:`BudgetExhausted` rather than stopping short
    after ``budget`` sequences, and :class:`InfeasiblePresentation` when no
    valid sequence exists.
    """
    m, n = mat.shape
    r = t - 1
    groups = [ps for ps in mat.classes().values() if len(ps) > 1]
    per_class = [_class_options(ps, r) for ps in groups]
    for ps, opts in zip(groups, per_class):
        if not opts:
            raise InfeasiblePresentation(
                f"label {mat.label(ps[0])!r} cannot be presented with alphas in the first {r} columns"
            )
    count = 0
    for combo in product(*per_class):
        pairs = [pr for part in combo for pr in part]
        alphas = [a for a, _ in pairs]
        if len(set(alphas)) != len(alphas):
            continue
        for perm in permutations(pairs):
            if count >= budget:
                raise BudgetExhausted(f"more than {budget} presentations")
            count += 1
            yield IdentificationSequence(m, n, t, tuple(perm))
    if count == 0:
        raise InfeasiblePresentation("no presentation has distinct alphas")


def _class_combos(mat: LabeledMatrix, t: int):
    """Per-class choices of oriented spanning trees whose alphas are distinct overall."""
    r = t - 1
    groups = [ps for ps in mat.classes().values() if len(ps) > 1]
    per_class = [_class_options(ps, r) for ps in groups]
    for ps, opts in zip(groups, per_class):
        if not opts:
            raise InfeasiblePresentation(
                f"label {mat.label(ps[0])!r} cannot be presented with alphas in the first {r} columns"
            )
    for combo in product(*per_class):
        pairs = [pr for part in combo for pr in part]
        alphas = [a for a, _ in pairs]
        if len(set(alphas)) == len(alphas):
            yield pairs


@dataclass
class PresentationSurvey:
    """Counts over every presentation with a few non-bad examples.

    ``complete`` is False when the search stopped at the first non-bad
    presentation; ``total`` and ``bad`` are then None.
    """

    total: int | None = 0
    good_count: int = 0
    examples: list[IdentificationSequence] = field(default_factory=list)
    complete: bool = True

    @property
    def bad(self) -> int | None:
        return None if self.total is None else self.total - self.good_count

    @property
    def all_bad(self) -> bool:
        return self.complete and self.good_count == 0

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "bad": self.bad,
            "good": self.good_count,
            "complete": self.complete,
            "examples": [q.to_json() for q in self.examples],
        }


class _StopSearch(Exception):
    pass


def survey_presentations(
    mat: LabeledMatrix,
    t: int,
    budget: int = 100_000,
    keep: int = 3,
    first_only: bool = False,
) -> PresentationSurvey:
    """Classify all presentations without listing the bad ones.

    A sequence is bad exactly when some prefix is, so orderings are grown
    pair by pair and a pair whose alpha already reaches its beta closes the
    branch.  ``budget`` bounds the number of search nodes.
    """
    m, n = mat.shape
    out = PresentationSurvey()
    nodes = 0
    found = False

    def grow(prefix, remaining):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExhausted(f"presentation search exceeded {budget} nodes")
        if not remaining:
            out.good_count += 1
            if len(out.examples) < keep:
                out.examples.append(IdentificationSequence(m, n, t, tuple(prefix)))
            if first_only:
                raise _StopSearch
            return
        graph = build_graph(IdentificationSequence(m, n, t, tuple(prefix)), len(prefix))
        for k, (a, b) in enumerate(remaining):
            if find_path(graph, a, b) is None:
                grow(prefix + [(a, b)], remaining[:k] + remaining[k + 1:])

    try:
        for pairs in _class_combos(mat, t):
            found = True
            total = 1
            for k in range(2, len(pairs) + 1):
                total *= k
            out.total += total
            grow([], pairs)
    except _StopSearch:
        out.total = None
        out.complete = False
        return out
    if not found:
        raise InfeasiblePresentation("no presentation has distinct alphas")
    return out
