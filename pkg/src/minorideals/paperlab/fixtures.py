"""Named objects of the two-block Hankel example in K[a1..a5, b1..b5].

Each fixture is checked against a known entry when it is built, so a
transcription slip fails loudly at import time of the harness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from ..polymatrix import PolyMatrix, determinant, hankel_ring, minors, paper_matrices
from ..polyring import GF32003, Field, Polynomial
from ..specialize import IdentificationSequence, LabeledMatrix


@dataclass(frozen=True)
class Fixture:
    name: str
    value: object
    provenance: str


@dataclass(frozen=True)
class DisplayedIdentity:
    """``lhs == sum(sign * factor_1 * factor_2 * ...)`` as printed.

    ``labels`` names each term for diagnostics.
    """

    name: str
    lhs: Polynomial
    terms: tuple[tuple[int, tuple[Polynomial, ...]], ...]
    labels: tuple[str, ...]

    def term_values(self) -> list[Polynomial]:
        out = []
        for _, factors in self.terms:
            v = factors[0]
            for f in factors[1:]:
                v = v * f
            out.append(v)
        return out

    def rhs(self) -> Polynomial:
        total = self.lhs.ring.zero()
        for (sign, _), v in zip(self.terms, self.term_values()):
            total = total + v if sign > 0 else total - v
        return total

    def residual(self) -> Polynomial:
        return self.lhs - self.rhs()


SIGMA = {**{f"a{i}": f"a{6 - i}" for i in range(1, 6)}, **{f"b{i}": f"b{6 - i}" for i in range(1, 6)}}
TAU = {**{f"a{i}": f"b{i}" for i in range(1, 6)}, **{f"b{i}": f"a{i}" for i in range(1, 6)}}

# 6x3 generic positions identified to produce the 6x3 Hankel matrix, as printed
COR_ALPHAS = [(1, 2), (1, 3), (2, 2), (2, 3), (4, 2), (4, 3), (5, 2), (5, 3)]
COR_BETAS = [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (5, 2), (6, 1), (6, 2)]

IDENTIFIED_FIRST = "a X b; X c X; d e f"
IDENTIFIED_SECOND = "a X b; X c X; d X f"


class Fixtures:
    """Lazily built objects, all in one ring over ``field``."""

    def __init__(self, field: Field = GF32003):
        self.field = field
        self.ring = hankel_ring(field)
        self.M5, self.M4, self.M3 = paper_matrices(ring=self.ring)
        _spot(self.M4[1, 2], self.ring.gen("a4"), "M4 entry (2,3)")
        _spot(self.M3[4, 0], self.ring.gen("b2"), "M3 entry (5,1)")
        _spot(self.M5[0, 4], self.ring.gen("a5"), "M5 entry (1,5)")

    # -- basic elements
    def v(self, name: str) -> Polynomial:
        return self.ring.gen(name)

    def delta(self, i: int, j: int) -> Polynomial:
        """a_i b_j - a_j b_i."""
        a, b = self.v, self.v
        return a(f"a{i}") * b(f"b{j}") - a(f"a{j}") * b(f"b{i}")

    def sigma(self, p: Polynomial) -> Polynomial:
        return p.permute(SIGMA)

    def tau(self, p: Polynomial) -> Polynomial:
        return p.permute(TAU)

    def det_rows(self, text: str) -> Polynomial:
        """Determinant of the matrix written as ``"a1 a2; b1 b2"``."""
        rows = [r.split() for r in text.split(";")]
        return determinant(PolyMatrix.from_strings(self.ring, rows))

    def matrix_rows(self, text: str) -> PolyMatrix:
        return PolyMatrix.from_strings(self.ring, [r.split() for r in text.split(";")])

    # -- the d's
    @cached_property
    def d(self) -> dict[int, Polynomial]:
        d = {
            1: self.det_rows("a1 a2 a3; a2 a3 a4; a3 a4 a5"),
            2: self.det_rows("a1 a2 a3; a2 a3 a4; b3 b4 b5"),
            3: self.det_rows("a1 a2 a3; a3 a4 a5; b2 b3 b4"),
            4: self.det_rows("a2 a3 a4; a3 a4 a5; b1 b2 b3"),
            5: self.det_rows("a1 a2 a3; a3 a4 a5; b1 b2 b3"),
            6: self.det_rows("a1 a2 a3; a3 a4 a5; b3 b4 b5"),
        }
        return d

    @property
    def delta_det(self) -> Polynomial:
        """The Hankel determinant of a1..a5 (equal to d1)."""
        return self.d[1]

    @cached_property
    def N(self) -> PolyMatrix:
        N = self.matrix_rows("a1 a2; a2 a3; a3 a4; b1 b2; b2 b3; b3 b4")
        _spot(N[3, 0], self.v("b1"), "N entry (4,1)")
        return N

    @cached_property
    def cor_sequence(self) -> IdentificationSequence:
        return IdentificationSequence(6, 3, 3, tuple(zip(COR_ALPHAS, COR_BETAS)))

    @cached_property
    def M3_labels(self) -> LabeledMatrix:
        return LabeledMatrix(tuple(tuple(str(e) for e in row) for row in self.M3.entries))

    # -- 5x5 kernel matrices
    def kernel_matrix(self, pivot: tuple[int, int, int], lower: tuple[str, str]) -> PolyMatrix:
        """5x5 matrix annihilated by (a_q, -a_p, -a_q, a_p, 0).

        ``pivot`` = (p, q, u) picks the index pattern of the top three rows
        (b_p b_q b_p b_q b_u / a_p a_q 0 0 0 / 0 0 a_p a_q a_u).  Each entry of
        ``lower`` is a row (x1 x2 x3) of the 6x3 Hankel matrix, placed as
        (x_p, x_q, x_p, x_q, x_u).
        """
        p, q, u = pivot
        rows = [
            [f"b{p}", f"b{q}", f"b{p}", f"b{q}", f"b{u}"],
            [f"a{p}", f"a{q}", "0", "0", "0"],
            ["0", "0", f"a{p}", f"a{q}", f"a{u}"],
        ]
        for text in lower:
            x = [None] + text.split()
            rows.append([x[p], x[q], x[p], x[q], x[u]])
        return PolyMatrix.from_strings(self.ring, rows)

    @cached_property
    def kernel_matrices(self) -> dict[str, PolyMatrix]:
        """The twelve displayed 5x5 matrices, keyed delta12.N1 ... delta13.N4."""
        r2, r3, r5, r6 = "a2 a3 a4", "a3 a4 a5", "b2 b3 b4", "b3 b4 b5"
        families = {
            "delta12": ((1, 2, 3), [(r2, r3), (r2, r6), (r3, r5), (r5, r6)]),
            "delta23": ((2, 3, 1), [(r2, r3), (r2, r6), (r2, r5), (r2, r6)]),
            "delta13": ((1, 3, 2), [(r2, r3), (r2, r6), (r2, r5), (r2, r6)]),
        }
        out = {}
        for fam, (pivot, lowers) in families.items():
            for k, lower in enumerate(lowers, start=1):
                out[f"{fam}.N{k}"] = self.kernel_matrix(pivot, lower)
        N1 = out["delta12.N1"]
        _spot(N1[0, 4], self.v("b3"), "N1 entry (1,5)")
        _spot(N1[4, 4], self.v("a5"), "N1 entry (5,5)")
        _spot(out["delta23.N1"][0, 4], self.v("b1"), "first delta23 matrix entry (1,5)")
        _spot(out["delta13.N2"][4, 1], self.v("b5"), "second delta13 matrix entry (5,2)")
        return out

    def kernel_vector(self, pivot) -> list[Polynomial]:
        p, q, _ = pivot
        ap, aq = self.v(f"a{p}"), self.v(f"a{q}")
        return [aq, -ap, -aq, ap, self.ring.zero()]

    # -- displayed identities
    def _two(self, text):
        return self.det_rows(text)

    @cached_property
    def expansion_identities(self) -> list[DisplayedIdentity]:
        """Two-column Laplace expansions of the four delta12 matrices, signs as printed."""
        d, t = self.d, self.tau
        D12 = self.delta(1, 2)
        m_ab = self.det_rows("a1 a2 a3; a2 a3 a4; b1 b2 b3")
        m_bb = self.det_rows("a1 a2 a3; b1 b2 b3; b2 b3 b4")
        two = self._two
        z = self.ring.zero()
        return [
            DisplayedIdentity(
                "N1", z,
                ((1, (D12, d[1])), (-1, (two("a1 a2; a2 a3"), d[5])), (1, (two("a1 a2; a3 a4"), m_ab))),
                ("Delta12*d1", "|a1 a2;a2 a3|*d5", "|a1 a2;a3 a4|*|a1a2a3;a2a3a4;b1b2b3|"),
            ),
            DisplayedIdentity(
                "N2", z,
                ((1, (D12, d[2])), (-1, (two("a1 a2; a2 a3"), t(d[6]))), (1, (two("a1 a2; b3 b4"), m_ab))),
                ("Delta12*d2", "|a1 a2;a2 a3|*tau(d6)", "|a1 a2;b3 b4|*|a1a2a3;a2a3a4;b1b2b3|"),
            ),
            DisplayedIdentity(
                "N3", z,
                ((1, (D12, d[3])), (-1, (two("a1 a2; a3 a4"), m_bb)), (1, (two("a1 a2; b2 b3"), d[5]))),
                ("Delta12*d3", "|a1 a2;a3 a4|*|a1a2a3;b1b2b3;b2b3b4|", "|a1 a2;b2 b3|*d5"),
            ),
            DisplayedIdentity(
                "N4", z,
                ((1, (D12, t(d[4]))), (-1, (two("a1 a2; b2 b3"), t(d[5]))), (1, (two("a1 a2; b3 b4"), m_bb))),
                ("Delta12*tau(d4)", "|a1 a2;b2 b3|*tau(d5)", "|a1 a2;b3 b4|*|a1a2a3;b1b2b3;b2b3b4|"),
            ),
        ]

    @cached_property
    def d5_identity(self) -> DisplayedIdentity:
        return DisplayedIdentity(
            "d5", self.d[5],
            ((1, (self.det_rows("a1 a2 a4; a2 a3 a5; b1 b2 b4"),)), (-1, (self.det_rows("a1 a2 a3; a2 a3 a4; b2 b3 b4"),))),
            ("|a1a2a4;a2a3a5;b1b2b4|", "|a1a2a3;a2a3a4;b2b3b4|"),
        )

    @cached_property
    def delta_identities(self) -> list[DisplayedIdentity]:
        """The three explicit expressions for delta*Delta_14, delta*Delta_15, delta*Delta_24, as printed."""
        v = self.v
        dl = self.delta_det
        m1 = self.det_rows("a1 a2 a3; a2 a3 a4; b1 b2 b3")
        m2 = self.det_rows("a1 a2 a3; a2 a3 a4; b2 b3 b4")
        m3 = self.det_rows("a1 a3 a4; a2 a4 a5; b1 b3 b4")
        q1 = v("a3") * v("a5") - v("a4") ** 2
        q2 = v("a2") * v("a5") - v("a3") * v("a4")
        q3 = v("a3") ** 2 - v("a2") * v("a4")
        labels3 = ("|a1a2a3;a2a3a4;b1b2b3|*(a3a5-a4^2)", "|a1a2a3;a2a3a4;b2b3b4|*(a2a5-a3a4)",
                   "|a1a3a4;a2a4a5;b1b3b4|*(a3^2-a2a4)")
        d14 = DisplayedIdentity("delta*Delta14", dl * self.delta(1, 4),
                                ((1, (m1, q1)), (1, (m2, q2)), (1, (m3, q3))), labels3)
        d24 = DisplayedIdentity("delta*Delta24", dl * self.delta(2, 4),
                                ((1, (m1, q1)), (1, (m2, q2)), (1, (m3, q3))), labels3)
        d15 = DisplayedIdentity(
            "delta*Delta15", dl * self.delta(1, 5),
            (
                (-1, (m1, q1)),
                (1, (self.d[5], q2)),
                (1, (self.det_rows("a1 a2 a4; a2 a3 a5; b2 b3 b5"), v("a1") * v("a5") - v("a3") ** 2)),
                (1, (m3, v("a2") * v("a4") - v("a1") * v("a5"))),
                (1, (self.det_rows("a1 a3 a4; a2 a4 a5; b2 b4 b5"), v("a2") * v("a3") - v("a1") * v("a4"))),
            ),
            ("|a1a2a3;a2a3a4;b1b2b3|*(a3a5-a4^2)", "d5*(a2a5-a3a4)", "|a1a2a4;a2a3a5;b2b3b5|*(a1a5-a3^2)",
             "|a1a3a4;a2a4a5;b1b3b4|*(a2a4-a1a5)", "|a1a3a4;a2a4a5;b2b4b5|*(a2a3-a1a4)"),
        )
        return [d14, d15, d24]

    @cached_property
    def bordered_matrices(self) -> tuple[PolyMatrix, PolyMatrix]:
        """The 4x4 matrix with a repeated column and its column-reduced form as printed."""
        v = self.v
        rep = self.matrix_rows("a1 a1 a2 a3; a2 a2 a3 a4; a3 a3 a4 a5; b1 b1 b2 b3")
        col = [self.ring.zero(), v("a2") ** 2 - v("a1") * v("a3"), v("a2") * v("a3") - v("a1") * v("a4"), self.delta(1, 2)]
        rest = self.matrix_rows("a1 a2 a3; a2 a3 a4; a3 a4 a5; b1 b2 b3")
        red = PolyMatrix(self.ring, [[col[i]] + list(rest.row(i)) for i in range(4)])
        return rep, red

    @cached_property
    def delta12_chain(self) -> DisplayedIdentity:
        """Cofactor expansion of the reduced bordered matrix along its first column, as printed."""
        v = self.v
        return DisplayedIdentity(
            "delta*Delta12", self.ring.zero(),
            (
                (-1, (v("a2") ** 2 - v("a1") * v("a3"), self.d[5])),
                (1, (v("a2") * v("a3") - v("a1") * v("a4"), self.det_rows("a1 a2 a3; a2 a3 a4; b1 b2 b3"))),
                (-1, (self.delta_det, self.delta(1, 2))),
            ),
            ("(a2^2-a1a3)*d5", "(a2a3-a1a4)*|a1a2a3;a2a3a4;b1b2b3|", "delta*Delta12"),
        )

    # -- ideals' generators
    @cached_property
    def gens(self) -> dict[str, list[Polynomial]]:
        return {
            "I2(M5)": minors(self.M5, 2),
            "I3(M4)": minors(self.M4, 3),
            "I3(M3)": minors(self.M3, 3),
            "I2(N)": minors(self.N, 2),
        }

    def all_fixtures(self) -> list[Fixture]:
        F = [
            Fixture("M5", self.M5, "2x5 matrix of a1..a5 over b1..b5"),
            Fixture("M4", self.M4, "4x4 matrix of two stacked 2x4 Hankel blocks"),
            Fixture("M3", self.M3, "6x3 matrix of two stacked 3x3 Hankel blocks"),
            Fixture("N", self.N, "first two columns of M3"),
        ]
        F += [Fixture(f"d{k}", p, "3x3 minor of M3") for k, p in self.d.items()]
        F += [Fixture(k, M, "5x5 matrix with a polynomial kernel vector") for k, M in self.kernel_matrices.items()]
        return F


def _spot(got, want, what):
    if got != want:
        raise AssertionError(f"fixture transcription error: {what} is {got}, expected {want}")


def identified_3x3_matrices() -> tuple[LabeledMatrix, LabeledMatrix]:
    return LabeledMatrix.from_rows(IDENTIFIED_FIRST), LabeledMatrix.from_rows(IDENTIFIED_SECOND)
