"""Matrices of polynomials, determinants and ideals of minors."""

from __future__ import annotations

import json
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

from .polyring import GF32003, Field, Polynomial, Ring

__all__ = [
    "PolyMatrix",
    "generic_matrix",
    "paper_matrices",
    "hankel_ring",
    "determinant",
    "minors",
    "yz_parameterization",
    "apply_variable_permutation",
    "matrix_from_json",
    "load_matrix",
]


class PolyMatrix:
    """Rectangular matrix of polynomials from one ring (0-based indexing)."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: Ring, entries: Sequence[Sequence[Polynomial]]):
        rows = [tuple(ring(e) for e in row) for row in entries]
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        self.ring = ring
        self.rows = len(rows)
        self.cols = len(rows[0])
        self.entries = tuple(rows)

    @classmethod
    def from_strings(cls, ring: Ring, rows: Sequence[Sequence[str]]) -> "PolyMatrix":
        return cls(ring, [[ring.parse(str(s)) for s in row] for row in rows])

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self.entries[i][j]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def row(self, i: int) -> tuple[Polynomial, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Polynomial, ...]:
        return tuple(r[j] for r in self.entries)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "PolyMatrix":
        cols = list(cols)
        return PolyMatrix(self.ring, [[self.entries[i][j] for j in cols] for i in rows])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, [self.column(j) for j in range(self.cols)])

    def map(self, fn: Callable[[Polynomial], Polynomial], ring: Ring | None = None) -> "PolyMatrix":
        return PolyMatrix(ring or self.ring, [[fn(e) for e in row] for row in self.entries])

    def subs(self, mapping: Mapping[str, Polynomial], ring: Ring | None = None) -> "PolyMatrix":
        return self.map(lambda e: e.subs(mapping, ring), ring)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        zero = self.ring.zero()
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, out)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def to_strings(self) -> list[list[str]]:
        return [[str(e) for e in row] for row in self.entries]

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": self.to_strings()}

    def __repr__(self):
        body = "; ".join(", ".join(r) for r in self.to_strings())
        return f"PolyMatrix({self.rows}x{self.cols}: {body})"


def _var_name(prefix: str, i: int, j: int, wide: bool) -> str:
    return f"{prefix}{i}_{j}" if wide else f"{prefix}{i}{j}"


def generic_matrix(m: int, n: int, field: Field = GF32003, prefix: str = "x") -> PolyMatrix:
    """m x n matrix of distinct variables x_ij in a fresh ring."""
    if m < 1 or n < 1:
        raise ValueError("matrix dimensions must be positive")
    wide = m > 9 or n > 9
    names = [_var_name(prefix, i, j, wide) for i in range(1, m + 1) for j in range(1, n + 1)]
    ring = Ring(tuple(names), field)
    g = ring.gens()
    return PolyMatrix(ring, [g[i * n:(i + 1) * n] for i in range(m)])


def hankel_ring(field: Field = GF32003) -> Ring:
    """K[a1..a5, b1..b5] with a1 > ... > a5 > b1 > ... > b5."""
    return Ring(tuple(f"a{i}" for i in range(1, 6)) + tuple(f"b{i}" for i in range(1, 6)), field)


def paper_matrices(field: Field = GF32003, ring: Ring | None = None):
    """The 2x5 matrix M5, the 4x4 two-block Hankel matrix M4 and the 6x3 one M3."""
    R = ring or hankel_ring(field)
    a = [None] + [R.gen(f"a{i}") for i in range(1, 6)]
    b = [None] + [R.gen(f"b{i}") for i in range(1, 6)]

    def hankel(v, nrows, ncols):
        return [[v[i + j + 1] for j in range(ncols)] for i in range(nrows)]

    m5 = PolyMatrix(R, [a[1:], b[1:]])
    m4 = PolyMatrix(R, hankel(a, 2, 4) + hankel(b, 2, 4))
    m3 = PolyMatrix(R, hankel(a, 3, 3) + hankel(b, 3, 3))
    return m5, m4, m3


def determinant(M: PolyMatrix) -> Polynomial:
    """Laplace expansion row by row, memoised over column subsets.

    ``table[mask]`` holds the minor on the first popcount(mask) rows and the
    columns in ``mask``; the full mask gives the determinant.
    """
    if M.rows != M.cols:
        raise ValueError(f"determinant of a non-square {M.rows}x{M.cols} matrix")
    n = M.rows
    zero = M.ring.zero()
    table: dict[int, Polynomial] = {0: M.ring.one()}
    for k in range(n):
        row = M.entries[k]
        nxt: dict[int, Polynomial] = {}
        for mask, sub in table.items():
            if sub.is_zero():
                continue
            above = 0
            for j in range(n - 1, -1, -1):
                bit = 1 << j
                if mask & bit:
                    above += 1
                    continue
                e = row[j]
                if e.is_zero():
                    continue
                term = e * sub
                if above & 1:
                    term = -term
                nxt[mask | bit] = nxt.get(mask | bit, zero) + term
        table = nxt
    return table.get((1 << n) - 1, zero)


def minors(M: PolyMatrix, t: int) -> list[Polynomial]:
    """All t x t minors, ordered lexicographically by (row set, column set)."""
    if not 1 <= t <= min(M.rows, M.cols):
        raise ValueError(f"minor size {t} out of range for a {M.rows}x{M.cols} matrix")
    out = []
    for rs in combinations(range(M.rows), t):
        for cs in combinations(range(M.cols), t):
            out.append(determinant(M.submatrix(rs, cs)))
    return out


def yz_parameterization(m: int, n: int, t: int, field: Field = GF32003) -> PolyMatrix:
    """The product Y Z with Y = (y_ij) of size m x r and Z = [I_r | (z_ij)], r = t - 1.

    Every t x t minor of the result vanishes identically.
    """
    if not (m >= n >= t >= 1):
        raise ValueError("need m >= n >= t >= 1")
    r = t - 1
    wide = m > 9 or n > 9
    ynames = [_var_name("y", i, j, wide) for i in range(1, m + 1) for j in range(1, r + 1)]
    znames = [_var_name("z", i, j, wide) for i in range(1, r + 1) for j in range(1, n - r + 1)]
    ring = Ring(tuple(ynames + znames), field)
    if r == 0:
        return PolyMatrix(ring, [[ring.zero()] * n for _ in range(m)])
    Y = [[ring.gen(_var_name("y", i, j, wide)) for j in range(1, r + 1)] for i in range(1, m + 1)]
    Z = []
    for i in range(1, r + 1):
        ident = [ring.one() if i == j else ring.zero() for j in range(1, r + 1)]
        Z.append(ident + [ring.gen(_var_name("z", i, j, wide)) for j in range(1, n - r + 1)])
    return PolyMatrix(ring, Y) @ PolyMatrix(ring, Z)


def apply_variable_permutation(p: Polynomial, perm: Mapping[str, str]) -> Polynomial:
    """Rename variables by ``perm``; names it omits are fixed."""
    return p.permute(perm)


# ------------------------------------------------------------- text format


def _entry_names(entries) -> list[str]:
    from ast import Name, parse, walk

    seen: dict[str, None] = {}
    for row in entries:
        for s in row:
            try:
                tree = parse(str(s).replace("^", "**"), mode="eval")
            except SyntaxError:
                continue
            for node in walk(tree):
                if isinstance(node, Name):
                    seen.setdefault(node.id, None)
    return list(seen)


def matrix_from_json(obj: dict, ring: Ring | None = None, field: Field = GF32003) -> PolyMatrix:
    """Build a matrix from ``{rows, cols, entries}``.

    Without ``ring`` the variables are the identifiers of the entries in
    order of first appearance (row-major), unless ``obj`` carries its own
    ``ring`` block ``{vars, field}``.
    """
    try:
        entries = obj["entries"]
    except (KeyError, TypeError):
        raise ValueError("matrix object needs an 'entries' array") from None
    if ring is None:
        spec = obj.get("ring")
        if spec:
            ring = Ring(tuple(spec["vars"]), Field.from_string(spec.get("field", str(field))))
        else:
            ring = Ring(tuple(_entry_names(entries)), field)
    M = PolyMatrix.from_strings(ring, entries)
    if "rows" in obj and obj["rows"] != M.rows or "cols" in obj and obj["cols"] != M.cols:
        raise ValueError(f"declared shape {obj.get('rows')}x{obj.get('cols')} != entries {M.rows}x{M.cols}")
    return M


def load_matrix(path: str | Path, ring: Ring | None = None, field: Field = GF32003) -> PolyMatrix:
    return matrix_from_json(json.loads(Path(path).read_text()), ring, field)
