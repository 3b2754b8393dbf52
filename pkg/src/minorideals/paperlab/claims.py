"""Machine checks of the two-block Hankel example, grouped by result.

Every check yields a :class:`ClaimResult`.  Displayed identities are tested
exactly as printed; when one fails, the record also says which sign pattern
(if any) makes it vanish, so a typo can be told apart from a false claim.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from ..groebner import (
    GBCache,
    GroebnerBasis,
    Ideal,
    ResourceExhausted,
    buchberger,
    height,
    ideal_intersection,
    krull_dimension,
    lt_dimension_bound,
)
from ..polymatrix import PolyMatrix, determinant
from ..polyring import GF32003, GREVLEX, QQ, Field, MonomialOrder, Polynomial, Ring
from ..specialize import (
    BudgetExhausted,
    IdentificationSequence,
    InfeasiblePresentation,
    check_theorem,
    specialized_matrix,
    survey_presentations,
)
from .fixtures import DisplayedIdentity, Fixtures, identified_3x3_matrices

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

# a presentation of the 6x3 Hankel matrix whose alphas all lie in the first two columns
CORNER_PAIRS = (
    ((1, 2), (2, 1)), ((2, 2), (1, 3)), ((3, 1), (1, 3)), ((3, 2), (2, 3)),
    ((4, 2), (5, 1)), ((5, 2), (4, 3)), ((6, 1), (4, 3)), ((6, 2), (5, 3)),
)


@dataclass
class ClaimResult:
    id: str
    citation: str
    status: str
    data: dict = field(default_factory=dict)
    millis: int | None = None

    def to_json(self, timing: bool = True) -> dict:
        return {
            "id": self.id,
            "citation": self.citation,
            "status": self.status,
            "data": self.data,
            "millis": self.millis if timing else None,
        }


class Session:
    """Fixtures plus a memo of reduced bases shared by all claim groups."""

    def __init__(
        self,
        field: Field = GF32003,
        order: MonomialOrder = GREVLEX,
        cache: GBCache | None = None,
        rational_max_steps: int | None = 5_000_000,
        presentation_budget: int = 100_000,
    ):
        self.field = field
        self.order = order
        self.cache = cache
        self.rational_max_steps = rational_max_steps
        self.presentation_budget = presentation_budget
        self.fx = Fixtures(field)
        self._gb: dict[str, GroebnerBasis] = {}

    @property
    def ring(self) -> Ring:
        return self.fx.ring

    def ideal(self, name: str) -> Ideal:
        return Ideal(self.ring, self.fx.gens[name])

    def gb(self, name: str) -> GroebnerBasis:
        if name not in self._gb:
            self._gb[name] = buchberger(self.ideal(name), self.order, cache=self.cache)
        return self._gb[name]


def _run(out: list, cid: str, citation: str, fn: Callable[[], tuple[str | bool, dict]]):
    t0 = time.perf_counter()
    try:
        status, data = fn()
        if isinstance(status, bool):
            status = PASS if status else FAIL
    except (ResourceExhausted, BudgetExhausted) as e:
        status, data = SKIPPED, {"reason": "budget_exhausted", "message": str(e)}
    out.append(ClaimResult(cid, citation, status, data, round((time.perf_counter() - t0) * 1000)))


def _poly(p: Polynomial) -> str:
    return p.to_str()


def identity_diagnostics(idn: DisplayedIdentity) -> dict:
    """Verbatim residual plus the sign patterns on the terms that would make it exact."""
    vals = idn.term_values()
    res = idn.residual()
    data = {"holds_as_printed": res.is_zero(), "residual_terms": len(res.terms)}
    if res.is_zero():
        return data
    printed = tuple(s for s, _ in idn.terms)
    fixes = []
    for signs in product((1, -1), repeat=len(vals)):
        total = idn.lhs
        for s, v in zip(signs, vals):
            total = total - v if s > 0 else total + v
        if total.is_zero():
            fixes.append([lab for lab, s, p in zip(idn.labels, signs, printed) if s != p])
    data["printed_signs"] = list(printed)
    data["sign_changes_that_fix_it"] = fixes
    return data


def _delta_products(F: Fixtures, p: Polynomial) -> list[str]:
    """Which delta*Delta_ij (up to sign) equal ``p``."""
    hits = []
    for i in range(1, 6):
        for j in range(i + 1, 6):
            q = F.delta_det * F.delta(i, j)
            if p == q:
                hits.append(f"delta*Delta{i}{j}")
            elif p == -q:
                hits.append(f"-delta*Delta{i}{j}")
    return hits


# ------------------------------------------------------------------ cor32


def verify_cor32(S: Session) -> list[ClaimResult]:
    F = S.fx
    out: list[ClaimResult] = []
    cite = "primality of I3(M3) via the identification criterion"
    seq = F.cor_sequence
    memo = {}

    def report():
        if "rep" not in memo:
            memo["rep"] = check_theorem(seq, S.order, S.field, F.M3_labels, S.cache)
        return memo["rep"]

    def specialization():
        X = specialized_matrix(seq, S.field, F.M3_labels)
        same = X.to_strings() == F.M3.to_strings()
        return same, {"specialized": X.to_strings()}

    def conditions_i_ii():
        r = report()
        return r.cond_i and r.cond_ii, {
            "cond_i": r.cond_i, "cond_ii": r.cond_ii,
            "alphas_in_first_r_columns": r.alphas_in_corner,
        }

    def condition_iii():
        r = report()
        d1, d2 = r.dim_full, r.dim_plus_corner
        ok = r.cond_iii and d1 == 6 and d2 is not None and d2 <= 3
        return ok, {
            "holds": r.cond_iii, "d1": d1, "d2": d2, "d1_is_6": d1 == 6,
            "d2_at_most_3": d2 is not None and d2 <= 3,
            "nvars": S.ring.nvars,
        }

    def predicted():
        r = report()
        return r.predicted_dim == 6 and r.dims_agree is True, {
            "formula": r.formula_dim, "predicted_dim": r.predicted_dim, "computed_dim": r.dim_full,
        }

    def corner_presentation():
        q = IdentificationSequence(6, 3, 3, CORNER_PAIRS)
        r = check_theorem(q, S.order, S.field, F.M3_labels, S.cache)
        return r.all_hold and r.alphas_in_corner and r.dims_agree is True, r.to_json()

    def dim_height():
        G = S.gb("I3(M3)")
        d = krull_dimension(G)
        h = height(G)
        return d.dim == 6 and h == 4, {"dim": d.dim, "height": h, "independent_set": list(d.witness), "basis_size": len(G)}

    J = ["a2^2", "a3^2", "a4*b1", "b2^2", "b3^2"]

    def lt_set():
        lts = {f.leading_term(S.order)[1] for f in F.gens["I2(N)"] if not f.is_zero()}
        want = {S.ring.parse(s).leading_term(S.order)[1] for s in J}
        missing = sorted(S.ring.monomial(e).to_str() for e in want - lts)
        return not missing, {"J": J, "missing": missing,
                             "leading_terms": sorted(S.ring.monomial(e).to_str() for e in lts)}

    def lt_bound():
        gens = F.gens["I2(N)"]
        bound = lt_dimension_bound(gens, S.order)
        # the 2x2 minors of N only involve a1..a4, b1..b4
        small = Ring(tuple(f"a{i}" for i in range(1, 5)) + tuple(f"b{i}" for i in range(1, 5)), S.field)
        sgens = [g.embed(small) for g in gens]
        sbound = lt_dimension_bound(sgens, S.order)
        return sbound <= 3 and small.nvars - sbound >= 5, {
            "bound_in_8_variables": sbound, "height_lower_bound_8": small.nvars - sbound,
            "bound_in_10_variables": bound, "height_lower_bound_10": S.ring.nvars - bound,
        }

    def height_N():
        G = S.gb("I2(N)")
        h = height(G)
        return h >= 5, {"height": h, "dim": krull_dimension(G).dim}

    def strict():
        h3, hN = height(S.gb("I3(M3)")), height(S.gb("I2(N)"))
        return h3 < hN, {"height_I3_M3": h3, "height_I2_N": hN}

    _run(out, "cor32.specialization", "the identification sequence turns the generic 6x3 matrix into M3", specialization)
    _run(out, "cor32.conditions_i_ii", f"{cite}: distinct alphas and no bad sequence", conditions_i_ii)
    _run(out, "cor32.condition_iii", f"{cite}: positive height of I2 of the first two columns, dim R/I2(N) <= 3", condition_iii)
    _run(out, "cor32.predicted_dim", f"{cite}: predicted dimension (m+n-t+1)(t-1)-s = 6", predicted)
    _run(out, "cor32.corner_presentation", f"{cite}: a presentation with all alphas in the first two columns", corner_presentation)
    _run(out, "cor32.dim_height", "dim R/I3(M3) = 6 and height I3(M3) = 4", dim_height)
    _run(out, "cor32.lt_set", "leading terms of the 2x2 minors of N contain a2^2, a3^2, a4b1, b2^2, b3^2", lt_set)
    _run(out, "cor32.lt_bound", "leading-term bound dim <= 3 for the 2x2 minors of N", lt_bound)
    _run(out, "cor32.height_N", "height I2(N) >= 5", height_N)
    _run(out, "cor32.height_strict", "height I3(M3) < height I2(N)", strict)
    return out


# ------------------------------------------------------------------ prop33


DELTAS = [(1, 2), (2, 3), (1, 3), (4, 5), (3, 4), (3, 5)]


def verify_prop33(S: Session) -> list[ClaimResult]:
    F = S.fx
    out: list[ClaimResult] = []
    cite = "Delta12, Delta23, Delta13, Delta45, Delta34, Delta35 lie in I3(M4) : I3(M3)"

    def kernel_dets():
        res = {}
        for k, M in F.kernel_matrices.items():
            fam = k.split(".")[0]
            p, q = {"delta12": (1, 2), "delta23": (2, 3), "delta13": (1, 3)}[fam]
            vec = F.kernel_vector((p, q, 0))
            Mv = [sum((M[i, j] * vec[j] for j in range(5)), S.ring.zero()) for i in range(5)]
            res[k] = {"det_zero": determinant(M).is_zero(), "kernel_vector": all(e.is_zero() for e in Mv)}
        ok = all(v["det_zero"] for v in res.values())
        return ok, {"matrices": res}

    def duplicates():
        K = F.kernel_matrices
        dup = {f"{fam}.N4 == {fam}.N2": K[f"{fam}.N4"] == K[f"{fam}.N2"] for fam in ("delta12", "delta23", "delta13")}
        return True, {"repeated_display": dup}

    def expansion(idn):
        def fn():
            d = identity_diagnostics(idn)
            if idn.name == "N2" and not d["holds_as_printed"]:
                alt = DisplayedIdentity(idn.name, idn.lhs, idn.terms[:1] + ((idn.terms[1][0], (idn.terms[1][1][0], F.tau(F.d[5]))),) + idn.terms[2:],
                                          (idn.labels[0], "|a1 a2;a2 a3|*tau(d5)", idn.labels[2]))
                d["with_tau_d5_in_place_of_tau_d6"] = identity_diagnostics(alt)
            return d["holds_as_printed"], d
        return fn

    def d_identities():
        d = F.d
        gb4 = S.gb("I3(M4)")
        data = {
            "d4 == sigma(d2)": d[4] == F.sigma(d[2]),
            "d6 == sigma(d5)": d[6] == F.sigma(d[5]),
            "d5 display": F.d5_identity.residual().is_zero(),
            "d5 in I3(M4)": gb4.contains(d[5]),
            "d6 in I3(M4)": gb4.contains(d[6]),
        }
        return all(data.values()), data

    def outside():
        gb4 = S.gb("I3(M4)")
        named = {}
        for k in range(1, 5):
            named[f"d{k}"] = F.d[k]
            named[f"tau(d{k})"] = F.tau(F.d[k])
        found = []
        for g in F.gens["I3(M3)"]:
            if not gb4.contains(g):
                tag = [n for n, p in named.items() if p == g or p == -g]
                found.append(tag[0] if tag else _poly(g))
        return sorted(found) == sorted(named), {"not_in_I3(M4)": found}

    def sign_sigma():
        data = {}
        ok = True
        for (i, j), (k, l) in [((1, 2), (4, 5)), ((2, 3), (3, 4)), ((1, 3), (3, 5))]:
            img, target = F.sigma(F.delta(i, j)), F.delta(k, l)
            sign = 1 if img == target else -1 if img == -target else 0
            ok &= sign != 0
            data[f"sigma(Delta{i}{j}) vs Delta{k}{l}"] = sign
        return ok, {"sign": data, "note": "holds up to sign"}

    def memberships():
        gb4 = S.gb("I3(M4)")
        gens = F.gens["I3(M3)"]
        bad = []
        for i, j in DELTAS:
            D = F.delta(i, j)
            for k, g in enumerate(gens):
                r = gb4.normal_form(D * g)
                if not r.is_zero():
                    bad.append({"delta": f"Delta{i}{j}", "generator": k, "residue": _poly(r)})
        return not bad, {"checked": len(DELTAS) * len(gens), "nonzero": bad, "basis_size": len(gb4)}

    def equivariance():
        data = {}
        ok = True
        for name in ("I3(M4)", "I3(M3)", "I2(M5)"):
            G = S.gb(name)
            for sym, fn in (("sigma", F.sigma), ("tau", F.tau)):
                fixed = all(G.contains(fn(g)) for g in F.gens[name])
                data[f"{sym} fixes {name}"] = fixed
                ok &= fixed
        return ok, data

    _run(out, "prop33.kernel_determinants", f"{cite}: the twelve 5x5 matrices have zero determinant", kernel_dets)
    _run(out, "prop33.repeated_displays", f"{cite}: displayed matrices repeated within a family", duplicates)
    for idn in F.expansion_identities:
        _run(out, f"prop33.expansion_{idn.name}", f"{cite}: two-column expansion of det {idn.name}", expansion(idn))
    _run(out, "prop33.d_identities", f"{cite}: d4 = sigma(d2), d6 = sigma(d5) and d5, d6 in I3(M4)", d_identities)
    _run(out, "prop33.generators_outside", f"{cite}: the generators of I3(M3) not in I3(M4) are d1..d4 and their tau-images", outside)
    _run(out, "prop33.sigma_signs", "sigma maps Delta12, Delta23, Delta13 to Delta45, Delta34, Delta35", sign_sigma)
    _run(out, "prop33.memberships", f"{cite}: all Delta*g in I3(M4) for g a 3x3 minor of M3", memberships)
    _run(out, "prop33.symmetry", "sigma and tau fix I3(M4), I3(M3) and I2(M5)", equivariance)
    return out


# ----------------------------------------------------------------- prop34a


def verify_prop34a(S: Session) -> list[ClaimResult]:
    out: list[ClaimResult] = []

    def contain(big):
        def fn():
            G = S.gb(big)
            bad = [k for k, g in enumerate(S.fx.gens["I3(M4)"]) if not G.contains(g)]
            return not bad, {"generators": len(S.fx.gens["I3(M4)"]), "not_contained": bad}
        return fn

    def dims():
        G = S.gb("I3(M4)")
        d = krull_dimension(G).dim
        data = {"dim I3(M4)": d, "height I3(M4)": height(G),
                "dim I2(M5)": krull_dimension(S.gb("I2(M5)")).dim,
                "dim I3(M3)": krull_dimension(S.gb("I3(M3)")).dim}
        return d == 6 and data["height I3(M4)"] == 4, data

    def subsumed():
        return SKIPPED, {"reason": "subsumed by thm36"}

    _run(out, "prop34a.in_I2_M5", "I3(M4) is contained in I2(M5)", contain("I2(M5)"))
    _run(out, "prop34a.in_I3_M3", "I3(M4) is contained in I3(M3)", contain("I3(M3)"))
    _run(out, "prop34a.dimensions", "dim R/I3(M4) = 6 and height 4 (unmixedness not checked)", dims)
    _run(out, "prop34a.associated_primes", "the associated primes of I3(M4) lie among I2(M5) and I3(M3)", subsumed)
    return out


# ------------------------------------------------------------------ prop35


def verify_prop35(S: Session) -> list[ClaimResult]:
    F = S.fx
    out: list[ClaimResult] = []
    cite = "delta I2(M5) is contained in I3(M4)"

    def identity(idn):
        def fn():
            d = identity_diagnostics(idn)
            if not d["holds_as_printed"]:
                d["rhs_equals"] = _delta_products(F, idn.rhs())
            return d["holds_as_printed"], d
        return fn

    def bordered():
        rep, red = F.bordered_matrices
        chain = identity_diagnostics(F.delta12_chain)
        rows = [list(r) for r in red.entries]
        rows[3][0] = -rows[3][0]
        fixed = PolyMatrix(S.ring, rows)
        data = {
            "repeated_column_det_zero": determinant(rep).is_zero(),
            "reduced_det_zero": determinant(red).is_zero(),
            "reduced_det_zero_with_last_entry_negated": determinant(fixed).is_zero(),
            "chain": chain,
        }
        ok = data["repeated_column_det_zero"] and data["reduced_det_zero"] and chain["holds_as_printed"]
        return ok, data

    def memberships():
        gb4 = S.gb("I3(M4)")
        bad = []
        for i in range(1, 6):
            for j in range(i + 1, 6):
                r = gb4.normal_form(F.delta_det * F.delta(i, j))
                if not r.is_zero():
                    bad.append({"pair": [i, j], "residue": _poly(r)})
        return not bad, {"checked": 10, "nonzero": bad}

    for idn in F.delta_identities:
        _run(out, f"prop35.identity_{idn.name.split('*')[1]}", f"{cite}: explicit expression for {idn.name}", identity(idn))
    _run(out, "prop35.delta12_chain", f"{cite}: bordered determinant derivation of delta*Delta12", bordered)
    _run(out, "prop35.memberships", f"{cite}: delta*Delta_ij in I3(M4) for all i < j", memberships)
    return out


# ------------------------------------------------------------------ thm36


def verify_thm36(S: Session) -> list[ClaimResult]:
    out: list[ClaimResult] = []
    cite = "I3(M4) = I2(M5) ∩ I3(M3)"

    def compare(session: Session, **kw):
        K = ideal_intersection(session.ideal("I2(M5)"), session.ideal("I3(M3)"), session.order, **kw)
        GK = buchberger(K, session.order, **kw)
        G4 = buchberger(session.ideal("I3(M4)"), session.order, **kw)
        a, b = set(GK.to_strings()), set(G4.to_strings())
        return GK == G4, {
            "field": str(session.field), "order": str(session.order),
            "basis_size": len(G4), "only_in_intersection": sorted(a - b), "only_in_I3(M4)": sorted(b - a),
        }

    def main():
        return compare(S)

    def rational():
        if S.field.p is None:
            return SKIPPED, {"reason": "session already over the rationals"}
        Q = Session(QQ, S.order, S.cache, S.rational_max_steps)
        return compare(Q, max_steps=S.rational_max_steps)

    def contain():
        a = all(S.gb("I2(M5)").contains(g) for g in S.fx.gens["I3(M4)"])
        b = all(S.gb("I3(M3)").contains(g) for g in S.fx.gens["I3(M4)"])
        return a and b, {"in_I2(M5)": a, "in_I3(M3)": b}

    def dim():
        d = krull_dimension(S.gb("I3(M4)")).dim
        return d == 6, {"dim": d}

    _run(out, "thm36.intersection", f"primary decomposition {cite}", main)
    _run(out, "thm36.intersection_rationals", f"primary decomposition {cite} over the rationals", rational)
    _run(out, "thm36.containments", "I3(M4) lies in both components", contain)
    _run(out, "thm36.dimension", "dim R/I3(M4) = 6", dim)
    return out


# ------------------------------------------------------------------ remark


def verify_remark_matrices(S: Session) -> list[ClaimResult]:
    out: list[ClaimResult] = []
    first, second = identified_3x3_matrices()
    cite = "3x3 matrices with identified entries and the not-bad condition"

    def survey(mat):
        try:
            return survey_presentations(mat, 3, S.presentation_budget)
        except InfeasiblePresentation:
            return None

    def all_bad():
        s = survey(first)
        return s is not None and s.all_bad, {"matrix": first.to_rows(), "survey": s and s.to_json()}

    def transpose():
        s = survey(first.transpose())
        data = {"matrix": first.transpose().to_rows(), "survey": s and s.to_json()}
        if s is None or not s.examples:
            return False, data
        rep = check_theorem(s.examples[0], S.order, S.field, first.transpose(), S.cache)
        data["check"] = rep.to_json()
        return rep.all_hold and rep.dims_agree is True, data

    def second_none():
        data = {}
        ok = True
        for tag, mat in (("as_given", second), ("transpose", second.transpose())):
            s = survey(mat)
            data[tag] = {"matrix": mat.to_rows(), "survey": s and s.to_json()}
            ok &= s is None or s.all_bad
        return ok, data

    _run(out, "remark.first_all_bad", f"{cite}: every presentation of (a X b; X c X; d e f) is bad", all_bad)
    _run(out, "remark.first_transpose", f"{cite}: the transpose satisfies the criterion", transpose)
    _run(out, "remark.second_none", f"{cite}: (a X b; X c X; d X f) fails in both orientations", second_none)
    return out


CLAIM_GROUPS: dict[str, Callable[[Session], list[ClaimResult]]] = {
    "cor32": verify_cor32,
    "prop33": verify_prop33,
    "prop34a": verify_prop34a,
    "prop35": verify_prop35,
    "thm36": verify_thm36,
    "remark": verify_remark_matrices,
}
