"""Buchberger's algorithm and the computations built on it.

Normal forms, ideal membership, ideal intersection by elimination of a tag
variable, and Krull dimension read off the leading monomials of a basis.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
import threading
from dataclasses import dataclass, field
from heapq import heapify, heappop, heappush
from itertools import combinations
from operator import add, ge, sub
from pathlib import Path
from typing import Iterable, Sequence

from .polyring import GREVLEX, BlockOrder, MonomialOrder, Polynomial, Ring, RingMismatchError

log = logging.getLogger(__name__)

__all__ = [
    "Ideal",
    "GroebnerBasis",
    "DimensionResult",
    "ResourceExhausted",
    "GBCache",
    "buchberger",
    "normal_form",
    "ideal_membership",
    "ideal_intersection",
    "krull_dimension",
    "lt_dimension_bound",
    "monomial_dimension",
    "height",
    "s_polynomial",
    "is_groebner",
]


class ResourceExhausted(RuntimeError):
    """A configured pair or step budget ran out before the basis was complete."""

    def __init__(self, message, pairs=0, steps=0):
        super().__init__(message)
        self.pairs = pairs
        self.steps = steps


class Ideal:
    """Ideal of a polynomial ring given by generators.

    Zero generators are dropped and generators equal up to a scalar are
    kept once.  An empty generator list is the zero ideal.
    """

    def __init__(self, ring: Ring, generators: Iterable[Polynomial] = ()):
        self.ring = ring
        seen = set()
        gens = []
        for g in generators:
            if isinstance(g, Polynomial):
                _same_ring(g.ring, ring)
            else:
                g = ring(g)
            if g.is_zero():
                continue
            key = g.monic(GREVLEX)
            if key in seen:
                continue
            seen.add(key)
            gens.append(g)
        self.generators = gens

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __add__(self, other: "Ideal") -> "Ideal":
        _same_ring(self.ring, other.ring)
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        _same_ring(self.ring, other.ring)
        return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])

    def groebner(self, order: MonomialOrder = GREVLEX, **kw) -> "GroebnerBasis":
        return buchberger(self, order, **kw)

    def __repr__(self):
        return f"Ideal({len(self.generators)} generators in {self.ring})"


def _same_ring(r1: Ring, r2: Ring):
    if r1 is not r2 and r1 != r2:
        raise RingMismatchError(f"{r1} vs {r2}")


@dataclass
class GroebnerBasis:
    """Reduced basis: monic elements sorted by decreasing leading monomial."""

    ring: Ring
    order: MonomialOrder
    elements: list[Polynomial]
    reduced: bool = True
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def field(self):
        return self.ring.field

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return (
            self.ring == other.ring
            and str(self.order) == str(other.order)
            and self.elements == other.elements
        )

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_term(self.order)[1] for g in self.elements]

    def is_unit(self) -> bool:
        return any(sum(m) == 0 for m in self.leading_monomials())

    def normal_form(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self)

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self).is_zero()

    def to_strings(self) -> list[str]:
        return [g.to_str(self.order) for g in self.elements]

    def to_json(self) -> dict:
        return {
            "vars": list(self.ring.names),
            "field": str(self.ring.field),
            "order": str(self.order),
            "basis": self.to_strings(),
        }


@dataclass(frozen=True)
class DimensionResult:
    """Krull dimension of R/I with a maximal independent set of variables.

    ``unit`` marks the unit ideal, reported as dimension -1.
    """

    dim: int
    witness: tuple[str, ...]
    unit: bool = False


# ------------------------------------------------------------ reduction


class _Basis:
    """Working representation: monic polynomials as (lm, tail) pairs."""

    __slots__ = ("lms", "tails", "active")

    def __init__(self):
        self.lms: list[tuple] = []
        self.tails: list[list] = []
        self.active: list[int] = []


def _split(terms: dict, rkey, field_) -> tuple[tuple, list]:
    lm = min(terms, key=rkey)
    inv = field_.inv(terms[lm])
    p = field_.p
    if p is None:
        tail = [(m, c * inv) for m, c in terms.items() if m != lm]
    else:
        tail = [(m, c * inv % p) for m, c in terms.items() if m != lm]
    tail.sort(key=lambda t: rkey(t[0]))
    return lm, tail


class _Counter:
    __slots__ = ("steps", "max_steps")

    def __init__(self, max_steps=None):
        self.steps = 0
        self.max_steps = max_steps


def _reduce(terms: dict, lms: Sequence[tuple], tails: Sequence[list], rkey, p, counter=None) -> dict:
    """Full reduction of ``terms`` by monic elements (lms[k], tails[k])."""
    f = dict(terms)
    heap = [(rkey(m), m) for m in f]
    heapify(heap)
    rem = {}
    idx = range(len(lms))
    while heap:
        _, m = heappop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        for k in idx:
            g = lms[k]
            if all(map(ge, m, g)):
                break
        else:
            rem[m] = c
            continue
        if counter is not None:
            counter.steps += 1
            if counter.max_steps is not None and counter.steps > counter.max_steps:
                raise ResourceExhausted(f"step budget {counter.max_steps} exhausted", steps=counter.steps)
        shift = tuple(map(sub, m, g))
        get = f.get
        if p is None:
            for e, d in tails[k]:
                mm = tuple(map(add, e, shift))
                v = get(mm)
                if v is None:
                    f[mm] = -c * d
                    heappush(heap, (rkey(mm), mm))
                else:
                    v = v - c * d
                    if v:
                        f[mm] = v
                    else:
                        del f[mm]
        else:
            for e, d in tails[k]:
                mm = tuple(map(add, e, shift))
                v = get(mm)
                if v is None:
                    f[mm] = (-c * d) % p
                    heappush(heap, (rkey(mm), mm))
                else:
                    v = (v - c * d) % p
                    if v:
                        f[mm] = v
                    else:
                        del f[mm]
    return rem


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _divides(a, b):
    return all(map(ge, b, a))


def _coprime(a, b):
    return not any(x and y for x, y in zip(a, b))


def _spoly_terms(lm1, tail1, lm2, tail2, lcm, p):
    s1 = tuple(map(sub, lcm, lm1))
    s2 = tuple(map(sub, lcm, lm2))
    out = {}
    for e, d in tail1:
        out[tuple(map(add, e, s1))] = d
    get = out.get
    for e, d in tail2:
        mm = tuple(map(add, e, s2))
        v = get(mm, 0) - d
        if p is not None:
            v %= p
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def _check_order(order: MonomialOrder, ring: Ring):
    if isinstance(order, BlockOrder) and any(not 0 <= i < ring.nvars for i in order.elim):
        raise ValueError("block order eliminates indices outside the ring")


def buchberger(
    ideal: Ideal,
    order: MonomialOrder = GREVLEX,
    *,
    max_pairs: int | None = None,
    max_steps: int | None = None,
    cache: "GBCache | None" = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` under ``order``.

    Pairs are chosen by the normal strategy (smallest lcm first, ties by
    index) and pruned with the Gebauer-Moeller form of Buchberger's product
    and chain criteria.  Exceeding ``max_pairs`` reduced S-pairs or
    ``max_steps`` reduction steps raises :class:`ResourceExhausted`.
    """
    ring = ideal.ring
    _check_order(order, ring)
    if cache is not None:
        hit = cache.get(ideal, order)
        if hit is not None:
            return hit
    rkey = order.sort_key
    fld = ring.field
    p = fld.p
    counter = _Counter(max_steps)
    B = _Basis()
    lms, tails = B.lms, B.tails
    pairs: list[tuple[int, int, tuple]] = []
    npairs = 0

    def active_parts():
        return [lms[k] for k in B.active], [tails[k] for k in B.active]

    def update(h: int):
        lh = lms[h]
        C = [(g, _lcm(lms[g], lh)) for g in B.active]
        D = []
        for n, (g, l) in enumerate(C):
            if _coprime(lms[g], lh):
                D.append((g, l))
                continue
            rest = C[n + 1:]
            if any(_divides(l2, l) for _, l2 in rest) or any(_divides(l2, l) for _, l2 in D):
                continue
            D.append((g, l))
        E = [(g, h, l) for g, l in D if not _coprime(lms[g], lh)]
        kept = []
        for i, j, l in pairs:
            if _divides(lh, l) and _lcm(lms[i], lh) != l and _lcm(lms[j], lh) != l:
                continue
            kept.append((i, j, l))
        pairs[:] = kept + E
        B.active = [g for g in B.active if not _divides(lh, lms[g])] + [h]

    def insert(terms: dict):
        lm, tail = _split(terms, rkey, fld)
        lms.append(lm)
        tails.append(tail)
        update(len(lms) - 1)

    gens = [g.terms for g in ideal.generators]
    gens.sort(key=lambda t: rkey(min(t, key=rkey)), reverse=True)
    for t in gens:
        al, at = active_parts()
        r = _reduce(t, al, at, rkey, p, counter)
        if r:
            insert(r)

    while pairs:
        w = max(range(len(pairs)), key=lambda n: (rkey(pairs[n][2]), -pairs[n][1], -pairs[n][0]))
        i, j, l = pairs.pop(w)
        npairs += 1
        if max_pairs is not None and npairs > max_pairs:
            raise ResourceExhausted(f"pair budget {max_pairs} exhausted", pairs=npairs, steps=counter.steps)
        s = _spoly_terms(lms[i], tails[i], lms[j], tails[j], l, p)
        if not s:
            continue
        al, at = active_parts()
        r = _reduce(s, al, at, rkey, p, counter)
        if r:
            insert(r)

    # interreduce the minimal basis
    act = sorted(B.active, key=lambda k: rkey(lms[k]))
    al = [lms[k] for k in act]
    at = [tails[k] for k in act]
    elements = []
    for n, k in enumerate(act):
        others_l = al[:n] + al[n + 1:]
        others_t = at[:n] + at[n + 1:]
        tail = _reduce(dict(tails[k]), others_l, others_t, rkey, p, counter)
        terms = {lms[k]: fld(1)}
        terms.update(tail)
        elements.append(Polynomial(ring, terms))
    stats = {"pairs": npairs, "steps": counter.steps, "size": len(elements)}
    log.debug("buchberger %s: %s", order, stats)
    gb = GroebnerBasis(ring, order, elements, True, stats)
    if cache is not None:
        cache.put(ideal, gb)
    return gb


def normal_form(p: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of full division of ``p`` by the monic elements of ``G``."""
    _same_ring(p.ring, G.ring)
    if p.is_zero():
        return p
    rkey = G.order.sort_key
    parts = [_split(g.terms, rkey, G.ring.field) for g in G.elements]
    rem = _reduce(p.terms, [l for l, _ in parts], [t for _, t in parts], rkey, G.ring.field.p)
    return Polynomial(G.ring, rem)


def ideal_membership(p: Polynomial, ideal: Ideal | GroebnerBasis, order: MonomialOrder = GREVLEX, **kw) -> bool:
    G = ideal if isinstance(ideal, GroebnerBasis) else buchberger(ideal, order, **kw)
    return normal_form(p, G).is_zero()


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    cf, mf = f.leading_term(order)
    cg, mg = g.leading_term(order)
    l = _lcm(mf, mg)
    fld = f.ring.field
    a = f.mul_monomial(tuple(map(sub, l, mf)), fld.inv(cf))
    b = g.mul_monomial(tuple(map(sub, l, mg)), fld.inv(cg))
    return a - b


def is_groebner(G: GroebnerBasis) -> bool:
    """Buchberger's criterion checked over every pair, without pruning."""
    for f, g in combinations(G.elements, 2):
        if not normal_form(s_polynomial(f, g, G.order), G).is_zero():
            return False
    return True


def is_reduced(G: GroebnerBasis) -> bool:
    lms = G.leading_monomials()
    for g, lm in zip(G.elements, lms):
        c, _ = g.leading_term(G.order)
        if c != 1:
            return False
        for m in g.terms:
            if any(_divides(l2, m) for l2 in lms if l2 != lm):
                return False
    return True


def _tag_name(ring: Ring) -> str:
    name = "w"
    while name in ring.index:
        name = "_" + name
    return name


def ideal_intersection(I: Ideal, J: Ideal, order: MonomialOrder = GREVLEX, **kw) -> Ideal:
    """Generators of I ∩ J.

    A tag variable w is appended after the ring's variables and the ideal
    w*I + (1 - w)*J is eliminated under a block order in which w dominates.
    The w-free basis elements form the reduced basis of I ∩ J under
    ``order``.
    """
    _same_ring(I.ring, J.ring)
    ring = I.ring
    if not I.generators or not J.generators:
        return Ideal(ring, [])
    ext = ring.extend([_tag_name(ring)])
    n = ring.nvars
    w = ext.gen(ext.names[n])
    gens = [w * f.embed(ext) for f in I] + [(1 - w) * g.embed(ext) for g in J]
    elim = BlockOrder((n,), GREVLEX, order)
    G = buchberger(Ideal(ext, gens), elim, **kw)
    keep = []
    for g in G.elements:
        if all(m[n] == 0 for m in g.terms):
            keep.append(Polynomial(ring, {m[:n]: c for m, c in g.terms.items()}))
    return Ideal(ring, keep)


# ------------------------------------------------------------ dimension


def _mask(exp) -> int:
    m = 0
    for i, e in enumerate(exp):
        if e:
            m |= 1 << i
    return m


def _max_independent(supports: Iterable[int], n: int) -> int:
    """Largest variable set (bitmask) containing no support in ``supports``.

    Depth-first over variables with a greedy seed and the bound
    |chosen| + |undecided| <= best.
    """
    sup = set(supports)
    # keep only minimal supports
    mins = [s for s in sup if not any(t != s and t & s == t for t in sup)]
    if 0 in mins:
        return -1
    by_var = [[s for s in mins if s >> i & 1] for i in range(n)]

    def ok(chosen, i):
        c = chosen | (1 << i)
        return all(s & c != s for s in by_var[i])

    greedy = 0
    for i in range(n):
        if ok(greedy, i):
            greedy |= 1 << i
    best = [greedy, bin(greedy).count("1")]

    def dfs(i, chosen, size):
        if size + (n - i) <= best[1]:
            return
        if i == n:
            best[0], best[1] = chosen, size
            return
        if ok(chosen, i):
            dfs(i + 1, chosen | (1 << i), size + 1)
        dfs(i + 1, chosen, size)

    dfs(0, 0, 0)
    return best[0]


def monomial_dimension(monomials: Iterable[Sequence[int]], ring: Ring) -> DimensionResult:
    """Dimension of R/(monomials) as the largest independent variable set."""
    mons = list(monomials)
    best = _max_independent((_mask(m) for m in mons), ring.nvars)
    if best == -1:
        return DimensionResult(-1, (), True)
    witness = tuple(ring.names[i] for i in range(ring.nvars) if best >> i & 1)
    return DimensionResult(len(witness), witness)


def krull_dimension(ideal: Ideal | GroebnerBasis, order: MonomialOrder = GREVLEX, **kw) -> DimensionResult:
    G = ideal if isinstance(ideal, GroebnerBasis) else buchberger(ideal, order, **kw)
    return monomial_dimension(G.leading_monomials(), G.ring)


def lt_dimension_bound(A: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> int:
    """Dimension of R/(leading terms of A); bounds dim R/I above when A ⊆ I."""
    A = [f for f in A if not f.is_zero()]
    if not A:
        raise ValueError("need at least one nonzero polynomial")
    return monomial_dimension([f.leading_term(order)[1] for f in A], A[0].ring).dim


def height(ideal: Ideal | GroebnerBasis, order: MonomialOrder = GREVLEX, **kw) -> int:
    """nvars - dim R/I; the unit ideal gets nvars + 1."""
    d = krull_dimension(ideal, order, **kw)
    ring = ideal.ring
    return ring.nvars - d.dim


# ---------------------------------------------------------------- cache


class GBCache:
    """On-disk store of reduced bases keyed by a hash of the input.

    The key covers the variables, field, order and the set of generators in
    canonical text form, so generator order does not matter.  Writes are
    serialised and atomic.
    """

    _lock = threading.Lock()

    def __init__(self, directory: str | Path):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def key(ideal: Ideal, order: MonomialOrder) -> str:
        payload = {
            "vars": list(ideal.ring.names),
            "field": str(ideal.ring.field),
            "order": str(order),
            "generators": sorted(g.to_str() for g in ideal.generators),
        }
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()

    def _path(self, ideal, order) -> Path:
        return self.dir / f"{self.key(ideal, order)}.json"

    def get(self, ideal: Ideal, order: MonomialOrder) -> GroebnerBasis | None:
        path = self._path(ideal, order)
        if not path.exists():
            return None
        try:
            data = json.loads(path.read_text())
            ring = ideal.ring
            elements = [ring.parse(s) for s in data["basis"]]
        except (OSError, ValueError, KeyError) as e:
            log.warning("ignoring unreadable cache entry %s: %s", path, e)
            return None
        return GroebnerBasis(ring, order, elements, True, {"cached": True, "size": len(elements)})

    def put(self, ideal: Ideal, gb: GroebnerBasis):
        path = self._path(ideal, gb.order)
        data = json.dumps(gb.to_json(), indent=1)
        with self._lock:
            fd, tmp = tempfile.mkstemp(dir=self.dir, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                fh.write(data)
            os.replace(tmp, path)
