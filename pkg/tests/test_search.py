import itertools
import math

import pytest

from lehmer import (
    CheckpointError,
    DomainError,
    IntPolynomial,
    SearchRecord,
    SearchSpec,
    checkpoint_resume,
    checkpoint_save,
    enumerate_family,
    is_cyclotomic_product,
    mahler_measure,
    merge_records,
    parse,
    search_all_shards,
    search_min_measure,
)
from lehmer.search import (
    PLASTIC_NUMBER,
    family_size,
    finalize,
    run_checkpointed_shard,
    search_shard,
    shard_checkpoint_path,
)

LEHMER = parse("1,1,0,-1,-1,-1,-1,-1,0,1,1")


def naive_family(degree, bound, reciprocal_only=False):
    """Direct enumeration by filtering the full coefficient box."""
    rng = range(-bound, bound + 1)
    out = []
    for cs in itertools.product(rng, repeat=degree):
        c = cs + (1,)
        if c[0] == 0:
            continue
        if reciprocal_only and c[::-1] != c and c[::-1] != tuple(-x for x in c):
            continue
        out.append(c)
    return sorted(out)


# --- enumeration ------------------------------------------------------------


@pytest.mark.parametrize(
    "degree, bound, rec",
    [(1, 1, False), (2, 1, False), (3, 2, False), (4, 1, True), (5, 1, True), (6, 2, True), (10, 1, True)],
)
def test_enumeration_matches_naive_filter(degree, bound, rec):
    spec = SearchSpec(degree, bound, rec)
    got = [p.coeffs for p in enumerate_family(spec)]
    assert got == sorted(got)  # lexicographic
    assert got == naive_family(degree, bound, rec)
    assert family_size(spec) == len(got)


def test_family_sizes():
    assert family_size(SearchSpec(2, 1)) == 6
    # P* = P (243) plus P* = -P (81)
    assert family_size(SearchSpec(10, 1, True)) == 324
    assert family_size(SearchSpec(4, 1, True)) == 12


def test_shards_partition_the_family():
    spec = SearchSpec(6, 1)
    full = [p.coeffs for p in enumerate_family(spec)]
    parts = [[p.coeffs for p in enumerate_family(spec.shard(i, 4))] for i in range(4)]
    flat = [c for part in parts for c in part]
    assert len(flat) == len(set(flat)) == len(full)
    assert sorted(flat) == full


def test_spec_validation():
    for kwargs in ({"degree": 0, "coeff_bound": 1}, {"degree": 2, "coeff_bound": 0},
                   {"degree": 2, "coeff_bound": 1, "tol": 0.0},
                   {"degree": 2, "coeff_bound": 1, "shard_index": 2, "shard_count": 2},
                   {"degree": 2, "coeff_bound": 1, "target": 1.0}):
        with pytest.raises(DomainError):
            SearchSpec(**kwargs)


# --- search -----------------------------------------------------------------


def test_degree_10_record():
    rec = search_min_measure(SearchSpec(10, 1, True))
    assert rec.best_polynomial == LEHMER
    assert abs(rec.best_measure.value - 1.1762808183) <= 1e-9
    assert rec.total == 324
    assert rec.skipped_cyclotomic == 88


def test_small_records():
    rec = search_min_measure(SearchSpec(4, 1, True))
    assert rec.best_polynomial == parse("1,-1,-1,-1,1")
    assert rec.best_measure.value == pytest.approx(1.7220838057, abs=1e-9)
    rec = search_min_measure(SearchSpec(2, 1))
    # x^2 - x - 1 and x^2 + x - 1 tie; the tuple (-1, -1, 1) is smaller
    assert rec.best_polynomial == parse("-1,-1,1")
    assert rec.best_measure.value == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-12)
    rec = search_min_measure(SearchSpec(3, 1))
    assert rec.best_measure.value == pytest.approx(PLASTIC_NUMBER, abs=1e-12)


@pytest.mark.parametrize("degree", [1, 2, 3, 4, 5, 6])
def test_completeness_against_naive_rerun(degree):
    spec = SearchSpec(degree, 1)
    rec = search_min_measure(spec)
    fam = naive_family(degree, 1)
    cyclo = [c for c in fam if is_cyclotomic_product(IntPolynomial(c))]
    assert rec.skipped_cyclotomic == len(cyclo)
    assert rec.scanned + rec.skipped_cyclotomic == len(fam)
    assert rec.skipped_pruned == 0
    measured = {c: mahler_measure(IntPolynomial(c)).value for c in fam if c not in set(cyclo)}
    if not measured:
        assert rec.best_polynomial is None
        return
    low = min(measured.values())
    assert rec.best_measure.value == pytest.approx(low, abs=1e-12)
    assert rec.best_measure.value > 1


def test_pruning_never_loses_the_record():
    plain = search_min_measure(SearchSpec(8, 1))
    pruned = search_min_measure(SearchSpec(8, 1, target=1.3))
    assert pruned.best_polynomial == plain.best_polynomial
    assert pruned.skipped_pruned > 0
    assert pruned.total == plain.total == family_size(SearchSpec(8, 1))


def test_running_best_is_monotone():
    spec = SearchSpec(8, 1, True)
    rec, cursor, values = None, None, []
    while True:
        rec, cursor, done = search_shard(spec, rec, cursor, stop_after=7)
        if rec.best_measure is not None:
            values.append(rec.best_measure.value)
        if done:
            break
    assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("shards", [2, 3, 8])
def test_sharded_search_matches_single(shards):
    spec = SearchSpec(10, 1, True)
    single = search_all_shards(spec, 1)
    multi = search_all_shards(spec, shards)
    assert multi.best_polynomial == single.best_polynomial
    assert multi.best_measure == single.best_measure
    assert (multi.scanned, multi.skipped_cyclotomic) == (single.scanned, single.skipped_cyclotomic)


def test_merge_is_order_independent():
    spec = SearchSpec(6, 1)
    parts = [search_min_measure(spec.shard(i, 3)) for i in range(3)]
    a = merge_records(parts)
    b = merge_records(parts[::-1])
    c = merge_records([merge_records(parts[:2]), parts[2]])
    for r in (b, c):
        assert (r.best_polynomial, r.best_measure, r.total) == (a.best_polynomial, a.best_measure, a.total)


def test_worker_processes_give_the_same_record():
    spec = SearchSpec(10, 1, True)
    a = search_all_shards(spec, 4, workers=1)
    b = search_all_shards(spec, 4, workers=2)
    assert (a.best_polynomial, a.best_measure, a.total) == (b.best_polynomial, b.best_measure, b.total)


# --- checkpoints ------------------------------------------------------------


def test_checkpoint_resume_is_deterministic(tmp_path):
    spec = SearchSpec(10, 1, True)
    full = search_min_measure(spec)
    ck = tmp_path / "ck"
    rec, done = run_checkpointed_shard(spec, checkpoint=ck, stop_after=162)
    assert not done
    s2, r2, cursor, complete = checkpoint_resume(ck, expected=spec)
    assert s2 == spec and not complete and r2.total == 162
    rec, done = run_checkpointed_shard(spec, checkpoint=ck, resume=ck)
    assert done
    assert (rec.best_polynomial, rec.best_measure) == (full.best_polynomial, full.best_measure)
    assert (rec.scanned, rec.skipped_cyclotomic, rec.skipped_pruned) == (
        full.scanned, full.skipped_cyclotomic, full.skipped_pruned)


def test_empty_checkpoint_round_trips(tmp_path):
    spec = SearchSpec(4, 1, True)
    ck = tmp_path / "empty"
    checkpoint_save(SearchRecord(), spec, None, ck)
    s, rec, cursor, complete = checkpoint_resume(ck)
    assert s == spec and rec == SearchRecord() and cursor is None and not complete
    resumed, _ = run_checkpointed_shard(spec, resume=ck)
    fresh = search_min_measure(spec)
    assert (resumed.best_polynomial, resumed.best_measure, resumed.total) == (
        fresh.best_polynomial, fresh.best_measure, fresh.total)


def test_checkpoint_errors(tmp_path):
    spec = SearchSpec(6, 1)
    ck = tmp_path / "ck"
    run_checkpointed_shard(spec, checkpoint=ck, stop_after=50)
    with pytest.raises(CheckpointError, match="does not match"):
        checkpoint_resume(ck, expected=SearchSpec(6, 2))
    text = ck.read_text()
    (tmp_path / "corrupt").write_text(text.replace("counts 4", "counts 5"))
    with pytest.raises(CheckpointError, match="checksum"):
        checkpoint_resume(tmp_path / "corrupt")
    (tmp_path / "version").write_text(text.replace("lehmer-search-v1", "lehmer-search-v0"))
    with pytest.raises(CheckpointError, match="lehmer-search-v1"):
        checkpoint_resume(tmp_path / "version")
    (tmp_path / "truncated").write_text(text[: len(text) // 2])
    with pytest.raises(CheckpointError):
        checkpoint_resume(tmp_path / "truncated")
    with pytest.raises(CheckpointError):
        checkpoint_resume(tmp_path / "missing")


def test_checkpoint_format(tmp_path):
    spec = SearchSpec(10, 1, True)
    ck = tmp_path / "ck"
    run_checkpointed_shard(spec, checkpoint=ck, stop_after=100)
    lines = ck.read_text().splitlines()
    assert lines[0] == "lehmer-search-v1"
    assert lines[1].startswith("spec degree=10 coeff_bound=1 reciprocal_only=1 tol=1.0000000000000001e-09")
    keys = [ln.split()[0] for ln in lines[1:]]
    assert keys == ["spec", "spec_hash", "cursor", "best", "measure", "counts", "elapsed", "complete", "checksum"]


def test_shard_checkpoint_paths():
    assert shard_checkpoint_path("a/ck", 0, 1) == "a/ck"
    assert shard_checkpoint_path("a/ck", 2, 8) == "a/ck.2-of-8"


def test_finalize_uses_tight_tolerance():
    rec = finalize(SearchRecord(LEHMER, mahler_measure(LEHMER, 1e-6), 1, 0, 0))
    assert rec.best_measure.error_radius <= 1e-12
