import random
from itertools import product

import pytest

import occurrence
from minorideals.polyring import GF32003
from minorideals.specialize import (
    BudgetExhausted,
    IdentificationSequence,
    InfeasiblePresentation,
    LabeledMatrix,
    Position,
    SubstitutionError,
    build_graph,
    check_condition_iii,
    check_theorem,
    find_path,
    identification_classes,
    is_bad,
    presentations,
    specialized_matrix,
    substitution_matrices,
    survey_presentations,
)
from minorideals.polymatrix import generic_matrix, minors


def seq(m, n, t, *pairs):
    return IdentificationSequence(m, n, t, tuple(pairs))


# ---- sequences

def test_sequence_validation():
    with pytest.raises(ValueError):
        seq(2, 3, 2)
    with pytest.raises(ValueError):
        seq(3, 3, 2, ((1, 1), (1, 1)))
    with pytest.raises(ValueError):
        seq(3, 3, 2, ((4, 1), (1, 1)))
    s = seq(3, 3, 2, ((1, 1), (2, 2)))
    assert (s.r, s.s, s.alphas_in_corner) == (1, 1, True)
    assert seq(3, 3, 2, ((1, 2), (2, 2))).alphas_in_corner is False
    assert IdentificationSequence.from_json(s.to_json()) == s


# ---- graphs

def test_base_graph():
    G = build_graph(seq(2, 2, 2), 0)
    assert sorted(G.edges) == [(Position(1, 1), Position(1, 2)), (Position(2, 1), Position(2, 2))]
    assert len(build_graph(seq(3, 3, 3), 0).edges) == 3 * 2 * 1


def test_graph_stages_add_reversed_pairs():
    s = seq(3, 3, 3, ((1, 1), (2, 3)), ((2, 1), (3, 3)))
    g0, g1, g2 = (set(build_graph(s, j).edges) for j in range(3))
    assert g1 - g0 == {(Position(2, 3), Position(1, 1))}
    assert g0 <= g1 <= g2
    with pytest.raises(ValueError):
        build_graph(s, 3)


def test_find_path():
    s = seq(2, 2, 2, ((1, 1), (2, 2)))
    G = build_graph(s, 1)
    assert find_path(G, Position(2, 1), Position(1, 2)) == [Position(2, 1), Position(2, 2), Position(1, 1), Position(1, 2)]
    assert find_path(G, Position(1, 2), Position(2, 1)) is None
    assert find_path(build_graph(s, 0), Position(1, 1), Position(1, 1)) is None


def test_badness():
    # alpha reaches beta along its own row
    bad, w = is_bad(seq(2, 2, 2, ((1, 1), (1, 2))))
    assert bad and w == (1, [Position(1, 1), Position(1, 2)])
    assert is_bad(seq(2, 2, 2, ((1, 1), (2, 2)))) == (False, None)
    # second pair is bad only because of the first
    s = seq(2, 2, 2, ((1, 1), (2, 2)), ((2, 1), (1, 2)))
    bad, (j, path) = is_bad(s)
    assert bad and j == 2 and path[0] == Position(2, 1) and path[-1] == Position(1, 2)


def test_witness_survives_later_stages():
    s = seq(3, 3, 3, ((1, 1), (2, 3)), ((2, 1), (3, 3)), ((3, 2), (1, 3)))
    for j in range(s.s + 1):
        G = build_graph(s, j)
        for a, b in G.edges:
            for k in range(j, s.s + 1):
                assert (a, b) in build_graph(s, k).edges


# ---- substitution

def test_substitution_examples():
    s = seq(2, 2, 2, ((1, 1), (2, 2)))
    A0, A1 = substitution_matrices(s)
    assert A0.to_strings() == [["y11", "y11*z11"], ["y21", "y21*z11"]]
    assert not any(e.occurs("y11") for row in A1.entries for e in row)
    assert len(substitution_matrices(seq(3, 2, 2))) == 1


def test_substitution_requires_bare_variable():
    with pytest.raises(SubstitutionError):
        substitution_matrices(seq(2, 2, 2, ((1, 2), (2, 1))))


def _occurrences(A, m, n):
    out = {}
    for i, j in product(range(m), range(n)):
        out[(i, j)] = {(int(v[1]) - 1, int(v[2]) - 1) for v in A[i, j].variables() if v.startswith("y")}
    return out


@pytest.mark.parametrize("shape", [(2, 2, 2), (3, 2, 2), (3, 3, 2), (3, 3, 3)])
def test_occurrence_implies_reachability_polynomially(shape):
    """The true substitution route on every sequence of length <= 2."""
    m, n, t = shape
    r = t - 1
    corner = [(a, b) for a in range(1, m + 1) for b in range(1, r + 1)]
    cells = [(a, b) for a in range(1, m + 1) for b in range(1, n + 1)]
    sequences = [()]
    for a in corner:
        for b in cells:
            if b != a:
                sequences.append(((a, b),))
    sequences += [
        ((a1, b1), (a2, b2))
        for ((a1, b1),) in sequences[1:]
        for a2 in corner if a2 != a1
        for b2 in cells if b2 != a2
    ]
    for pairs in sequences:
        s = IdentificationSequence(m, n, t, pairs)
        for j, A in enumerate(substitution_matrices(s)):
            G = build_graph(s, j)
            for (bi, bj), ys in _occurrences(A, m, n).items():
                for (ai, aj) in ys:
                    if (ai, aj) != (bi, bj):
                        assert find_path(G, Position(ai + 1, aj + 1), Position(bi + 1, bj + 1)), (pairs, j)


@pytest.mark.parametrize("shape", [s for s in occurrence.all_shapes(3)])
def test_occurrence_implies_reachability_exhaustive(shape):
    nodes, hit = occurrence.check_shape(*shape)
    assert hit is None, hit


def test_bitmask_supports_cover_true_occurrences():
    rng = random.Random(5)
    m, n, t = 4, 4, 3
    r = t - 1
    corner = [(a, b) for a in range(1, m + 1) for b in range(1, r + 1)]
    cells = [(a, b) for a in range(1, m + 1) for b in range(1, n + 1)]
    idx = lambda p: (p[0] - 1) * n + p[1] - 1
    for _ in range(40):
        alphas = rng.sample(corner, 3)
        pairs = tuple((a, rng.choice([c for c in cells if c != a])) for a in alphas)
        s = IdentificationSequence(m, n, t, pairs)
        supp, into = occurrence._start(m, n, r)
        mats = substitution_matrices(s)
        for j, A in enumerate(mats):
            if j:
                a, b = pairs[j - 1]
                supp, into = occurrence._step(supp, into, idx(a), idx(b))
            for (i, jj), ys in _occurrences(A, m, n).items():
                mask = sum(1 << (y[0] * n + y[1]) for y in ys)
                assert mask & ~supp[i * n + jj] == 0


def test_occurrence_checker_detects_missing_edges(monkeypatch):
    real = occurrence._step

    def forgetful(supp, into, alpha, beta):
        s2, _ = real(supp, into, alpha, beta)
        return s2, into

    monkeypatch.setattr(occurrence, "_step", forgetful)
    _, hit = occurrence.check_shape(2, 2, 2)
    assert hit is not None


# ---- specialisation and the conditions

def test_identification_classes():
    s = seq(3, 3, 3, ((1, 2), (2, 1)), ((2, 1), (3, 3)))
    classes = identification_classes(s)
    assert [Position(1, 2), Position(2, 1), Position(3, 3)] in classes
    assert len(classes) == 9 - 2
    X = specialized_matrix(s)
    assert X.ring.nvars == 7
    assert X[0, 1] == X[1, 0] == X[2, 2]


def test_specialisation_commutes_with_minors():
    s = seq(3, 3, 2, ((1, 1), (2, 2)), ((3, 1), (1, 3)))
    X = specialized_matrix(s)
    G = generic_matrix(3, 3)
    mapping = {}
    for i, j in product(range(3), range(3)):
        mapping[f"x{i + 1}{j + 1}"] = X[i, j]
    pushed = [f.subs(mapping, X.ring) for f in minors(G, 2)]
    assert pushed == minors(X, 2)


def test_condition_iii_on_generic_matrices():
    c = check_condition_iii(seq(3, 3, 2))
    assert c.holds and c.dim_full == 5 and c.dim_plus_corner < 5
    t1 = check_condition_iii(seq(3, 3, 1))
    assert t1.holds and t1.dim_full == 0 and t1.dim_plus_corner is None


def test_check_theorem_repeated_alpha():
    rep = check_theorem(seq(3, 3, 3, ((1, 1), (2, 3)), ((1, 1), (3, 3))))
    assert not rep.cond_i and rep.predicted_dim is None
    assert rep.to_json()["all_hold"] is False


def test_check_theorem_bad_sequence():
    rep = check_theorem(seq(2, 2, 2, ((1, 1), (1, 2))))
    assert not rep.cond_ii and rep.bad_witness[0] == 1


def test_check_theorem_good_sequence():
    rep = check_theorem(seq(3, 3, 2, ((1, 1), (2, 2))))
    assert rep.all_hold
    assert rep.predicted_dim == (3 + 3 - 2 + 1) * 1 - 1 == rep.dim_full
    assert rep.dims_agree


# ---- presentations

def test_labeled_matrix():
    L = LabeledMatrix.from_rows("a X b; X c X; d e f")
    assert L.shape == (3, 3) and L.classes()["X"] == [Position(1, 2), Position(2, 1), Position(2, 3)]
    assert L.transpose().to_rows() == "a X d; X c e; b X f"
    assert LabeledMatrix.from_json({"entries": [["a", "b"]]}).shape == (1, 2)
    with pytest.raises(ValueError):
        LabeledMatrix.from_json({"entries": [["a+b"]]})


def test_distinct_labels_give_one_empty_presentation():
    out = list(presentations(LabeledMatrix.from_rows("a b; c d"), 2))
    assert out == [IdentificationSequence(2, 2, 2, ())]


def test_presentation_stream_and_survey_agree():
    L = LabeledMatrix.from_rows("a X b; X c X; d e f").transpose()
    stream = list(presentations(L, 3))
    good = [q for q in stream if not is_bad(q)[0]]
    s = survey_presentations(L, 3)
    assert (s.total, s.good_count) == (len(stream), len(good)) == (18, 18)
    assert all(q.alphas_in_corner and len(set(q.alphas)) == q.s for q in stream)


def test_identified_3x3_matrices():
    first = LabeledMatrix.from_rows("a X b; X c X; d e f")
    s = survey_presentations(first, 3)
    assert s.all_bad and s.total == 6
    t = survey_presentations(first.transpose(), 3)
    assert t.good_count > 0
    second = LabeledMatrix.from_rows("a X b; X c X; d X f")
    assert survey_presentations(second, 3).all_bad
    assert survey_presentations(second.transpose(), 3).all_bad


def test_presentation_budget_and_infeasibility():
    with pytest.raises(BudgetExhausted):
        list(presentations(LabeledMatrix.from_rows("a X b; X c X; d X f"), 3, budget=3))
    with pytest.raises(BudgetExhausted):
        survey_presentations(LabeledMatrix.from_rows("a X b; X c X; d X f"), 3, budget=3)
    # a class living entirely outside the first column cannot be presented for t = 2
    with pytest.raises(InfeasiblePresentation):
        survey_presentations(LabeledMatrix.from_rows("a X X; b c d; e f g"), 2)
