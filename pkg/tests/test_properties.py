import random
from fractions import Fraction

import pytest

from leftex import (
    Alphabet,
    Configuration,
    ExpansivityDims,
    MulSpec,
    Verdict,
    classify_rapid,
    eca,
    eca_rule,
    estimate_spreading_speed,
    find_left_expansive_dims,
    fractional_multiplication_rule,
    is_left_expansive,
    is_left_permutive,
    is_left_spreading_eca,
    left_spreading_witnesses,
    patch,
    rational_to_config,
    shift_rule,
)
from leftex.errors import BadDims, IncompatibleRule, NotECA, ZeroNotQuiescent
from leftex.rules import Automaton, LocalRule

A2 = Alphabet(2)
ONE = Configuration.single(A2, 1)
MUL32 = fractional_multiplication_rule(MulSpec(3, 2))


def random_left_permutive_rule(rng, size=3):
    """A (1,1) rule over `size` symbols whose leftmost section is a random
    permutation for every fixed right part."""
    table = bytearray(size**3)
    for rest in range(size * size):
        perm = list(range(size))
        rng.shuffle(perm)
        for a in range(size):
            table[a * size * size + rest] = perm[a]
    return Automaton(LocalRule(Alphabet(size), 1, 1, bytes(table)))


# -- permutivity ----------------------------------------------------------------


def test_permutive_examples():
    assert is_left_permutive(eca_rule(30))
    assert is_left_permutive(eca_rule(90))
    assert not is_left_permutive(eca_rule(0))


def test_permutive_census_is_sixteen():
    assert sum(is_left_permutive(eca_rule(k)) for k in range(256)) == 16


def test_permutive_requires_memory():
    with pytest.raises(BadDims):
        is_left_permutive(eca_rule(30), memory=0, anticipation=2)


def test_permutive_reexpression():
    # rule 170 only reads its right neighbor; as a (1,1) rule its leftmost
    # section is constant, hence not bijective
    assert not is_left_permutive(eca_rule(170))
    with pytest.raises(IncompatibleRule):
        is_left_permutive(eca_rule(30), memory=1, anticipation=0)
    # padding on the right is harmless
    sigma_inv_table = {(a, b): a for a in (0, 1) for b in (0, 1)}
    from leftex import make_rule

    rule = make_rule(A2, 1, 0, {bytes(k): v for k, v in sigma_inv_table.items()})
    assert is_left_permutive(rule, memory=1, anticipation=1)


def test_random_permutive_rules_are_expansive():
    rng = random.Random(321)
    for _ in range(50):
        automaton = random_left_permutive_rule(rng)
        verdict = is_left_expansive(automaton, ExpansivityDims(0, 1, 2))
        assert verdict.status is Verdict.TRUE


# -- expansivity ------------------------------------------------------------------


def test_expansivity_anchor_instances():
    for automaton, dims in (
        (shift_rule(A2), (1, 0, 1)),
        (shift_rule(Alphabet(3)), (1, 0, 1)),
        (eca(30), (0, 1, 2)),
        (eca(90), (0, 1, 2)),
        (MUL32, (1, 1, 1)),
    ):
        verdict = is_left_expansive(automaton, ExpansivityDims(*dims))
        assert verdict.status is Verdict.TRUE
        assert verdict.seeds_checked == verdict.seed_space


def test_rule0_not_expansive_at_top_row():
    verdict = is_left_expansive(eca(0), ExpansivityDims(0, 1, 2))
    assert verdict.status is Verdict.FALSE
    cex = verdict.counterexample
    assert cex is not None and cex.value_a != cex.value_b


def replay_counterexample(automaton, dims, cex):
    """Re-derive rectangle contents and determined cells through patch()."""
    m = automaton.memory
    n_rows = dims.h + dims.d + 1
    out = []
    for seed in (cex.seed_a, cex.seed_b):
        rows = patch(automaton, seed, n_rows).rows
        rect = tuple(
            rows[k][cex.rect_col - k * m:cex.rect_col - k * m + dims.w]
            for k in range(n_rows)
        )
        value = rows[cex.ref_row][cex.det_col - cex.ref_row * m]
        out.append((rect, value))
    return out


def test_counterexample_replays():
    dims = ExpansivityDims(0, 1, 2)
    verdict = is_left_expansive(eca(0), dims)
    (rect_a, val_a), (rect_b, val_b) = replay_counterexample(eca(0), dims, verdict.counterexample)
    assert rect_a == rect_b
    assert val_a != val_b
    assert (val_a, val_b) == (verdict.counterexample.value_a, verdict.counterexample.value_b)


def test_counterexamples_replay_over_random_rules():
    rng = random.Random(99)
    for _ in range(40):
        size = rng.choice([2, 3])
        m, n = rng.randint(0, 1), rng.randint(0, 1)
        table = bytes(rng.randrange(size) for _ in range(size ** (m + n + 1)))
        automaton = Automaton(LocalRule(Alphabet(size), m, n, table))
        dims = ExpansivityDims(rng.randint(0, 1), rng.randint(0, 1), rng.randint(1, 2))
        verdict = is_left_expansive(automaton, dims)
        if verdict.status is Verdict.FALSE:
            (rect_a, val_a), (rect_b, val_b) = replay_counterexample(
                automaton, dims, verdict.counterexample
            )
            assert rect_a == rect_b and val_a != val_b


def test_verdicts_are_deterministic():
    dims = ExpansivityDims(0, 1, 2)
    assert is_left_expansive(eca(0), dims) == is_left_expansive(eca(0), dims)
    assert is_left_expansive(eca(30), dims) == is_left_expansive(eca(30), dims)


def test_budget_exhaustion_reports_unknown():
    verdict = is_left_expansive(eca(30), ExpansivityDims(0, 1, 2), budget=3)
    assert verdict.status is Verdict.UNKNOWN
    assert verdict.evals_needed > verdict.budget == 3
    doc = verdict.to_json_dict()
    assert doc["status"] == "Unknown" and doc["budget"] == 3


def test_verdict_json_shapes():
    true_doc = is_left_expansive(eca(30), ExpansivityDims(0, 1, 2)).to_json_dict()
    assert true_doc["property"] == "left-expansive(0,1,2)"
    assert true_doc["status"] == "True"
    assert true_doc["dims"] == [0, 1, 2]
    assert true_doc["seeds_checked"] == true_doc["seed_space"] == 32
    assert true_doc["counterexample"] is None
    false_doc = is_left_expansive(eca(0), ExpansivityDims(0, 1, 2)).to_json_dict()
    cex = false_doc["counterexample"]
    assert cex is not None
    assert cex["value_a"] != cex["value_b"]
    assert isinstance(cex["seed_a"], str) and len(cex["seed_a"]) == 5


def test_monotonicity_of_dimensions():
    """Growing a rectangle in any direction preserves a True verdict."""
    bases = [(eca(k), (0, 1, 2)) for k in
             (15, 30, 45, 60, 75, 90, 105, 120, 135, 150, 165, 180, 195, 210, 225, 240)]
    bases += [
        (shift_rule(A2), (1, 0, 1)),
        (shift_rule(Alphabet(3)), (1, 0, 1)),
        (shift_rule(Alphabet(4)), (1, 0, 1)),
        (MUL32, (1, 1, 1)),
    ]
    assert len(bases) == 20
    for automaton, (h, d, w) in bases:
        assert is_left_expansive(automaton, ExpansivityDims(h, d, w)).status is Verdict.TRUE
        for grown in ((h + 1, d, w), (h, d + 1, w), (h, d, w + 1)):
            assert is_left_expansive(automaton, ExpansivityDims(*grown)).status is Verdict.TRUE


def test_find_dims_examples():
    assert find_left_expansive_dims(eca(30), 2, 2, 4).dims == ExpansivityDims(0, 1, 2)
    assert find_left_expansive_dims(shift_rule(A2), 2, 2, 2).dims == ExpansivityDims(1, 0, 1)
    # a constant rule zeroes every image row, so any rectangle with a row
    # above the reference row determines the (image-row) cell trivially;
    # the minimal such certificate is height 1
    assert find_left_expansive_dims(eca(0), 2, 2, 3).dims == ExpansivityDims(1, 0, 1)


def test_find_dims_respects_budget():
    search = find_left_expansive_dims(eca(110), 0, 2, 4, budget=3)
    assert search.dims is None and search.budget_exceeded


# -- spreading --------------------------------------------------------------------


def test_spreading_criterion():
    assert is_left_spreading_eca(eca_rule(30))
    assert is_left_spreading_eca(eca_rule(90))
    assert not is_left_spreading_eca(eca_rule(0))
    with pytest.raises(NotECA):
        is_left_spreading_eca(shift_rule(Alphabet(3)).rule)


def test_spreading_criterion_census():
    assert sum(is_left_spreading_eca(eca_rule(k)) for k in range(256)) == 128


def test_witnesses():
    # (3/2)^t first gains a base-6 integer digit at t=5 (when it passes 6)
    assert left_spreading_witnesses(MUL32, [rational_to_config(1, 6)], 20) == [5]
    assert left_spreading_witnesses(eca(30), [ONE], 5) == [1]
    assert left_spreading_witnesses(eca(204), [ONE], 10) == [None]


def test_witnesses_require_quiescence():
    with pytest.raises(ZeroNotQuiescent):
        left_spreading_witnesses(eca(1), [ONE], 3)


def test_speed_of_rule30_and_shift():
    assert estimate_spreading_speed(eca(30), [ONE], 200).estimate == 1
    assert estimate_spreading_speed(shift_rule(A2), [ONE], 100).estimate == 1


def test_speed_estimate_fields():
    est = estimate_spreading_speed(eca(30), [ONE, Configuration.single(A2, 1, 3)], 40)
    assert est.samples == 2 and est.horizon == 40
    assert all(isinstance(r, Fraction) for r in est.per_sample)
    assert est.estimate == max(est.per_sample)


# -- classification ----------------------------------------------------------------


def test_classify_rule30():
    result = classify_rapid(eca(30))
    assert result.verdict == "Yes"
    assert result.dims == ExpansivityDims(0, 1, 2)
    assert result.speed_basis == "exact-family"


def test_classify_mul():
    result = classify_rapid(MUL32)
    assert result.verdict == "Yes"
    assert result.dims == ExpansivityDims(1, 1, 1)
    assert result.speed_basis == "exact-family"


def test_classify_shift_variants():
    assert classify_rapid(shift_rule(A2)).verdict == "No"
    assert classify_rapid(shift_rule(Alphabet(5))).verdict == "No"
    assert classify_rapid(eca(170)).verdict == "No"  # trims to the shift


def test_classify_negative_cases():
    assert classify_rapid(eca(204)).verdict == "No"  # identity
    assert classify_rapid(eca(0)).verdict == "No"  # constant to zero
    assert classify_rapid(eca(1)).verdict == "No"  # zero not quiescent
    assert classify_rapid(eca(184)).verdict == "No"  # 001 -> 0, never spreads


def test_classify_unknown_never_uses_empirical_speed_for_positive_height():
    result = classify_rapid(eca(110))
    assert result.verdict == "Unknown"
    assert result.speed_basis is None


def test_classify_census_of_all_eca():
    verdicts = {k: classify_rapid(eca(k)).verdict for k in range(256)}
    yes = sorted(k for k, v in verdicts.items() if v == "Yes")
    # quiescent, left permutive, spreading: the four additive-or-chaotic rules
    assert yes == [30, 90, 150, 210]
    for k in yes:
        assert classify_rapid(eca(k)).dims.h == 0
