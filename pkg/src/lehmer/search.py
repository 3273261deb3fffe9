"""Exhaustive search for the smallest Mahler measure in a finite family.

The family is every monic integer polynomial of a fixed degree with nonzero
constant term and coefficients in ``[-B, B]``, optionally restricted to
self-reciprocal polynomials (``P* = +P`` or ``P* = -P``).  Enumeration is
lexicographic on the ascending coefficient tuple; shard ``i`` of ``k`` takes
every polynomial whose position in that order is ``i mod k``.

Each enumerated polynomial ends up in exactly one bucket: measured
(``scanned``), skipped as an exact cyclotomic product, or pruned.  Pruning
only happens when ``target`` is set, and only drops polynomials whose measure
provably reaches ``target``: ``M(P) >= |P(0)|`` always, and a non-reciprocal
polynomial has ``M(P) >= 1.3247...`` (Smyth), so for targets at or below that
number only reciprocal polynomials with ``|P(0)| = 1`` need measuring.

Ties (measures whose certified enclosures overlap) prefer the polynomial with
a real root greater than 1 - the one whose dominant root *is* the Salem or
Pisot number rather than its negative - and then the lexicographically
smallest coefficient tuple.
"""

from __future__ import annotations

import hashlib
import itertools
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Iterator, Optional

import numpy as np

from .errors import CheckpointError, DomainError
from .measure import MeasureResult, Method, mahler_measure
from .polynomial import IntPolynomial, is_cyclotomic_product, parse, reciprocal_sign, sturm_count
from .roots import batch_measure_bounds

PLASTIC_NUMBER = 1.3247179572447460
SEARCH_TOL = 1e-9
TIGHT_TOL = 1e-12
CLOSE_CALL = 1e-6
CHUNK = 512
FORMAT_VERSION = "lehmer-search-v1"


@dataclass(frozen=True)
class SearchSpec:
    degree: int
    coeff_bound: int
    reciprocal_only: bool = False
    tol: float = SEARCH_TOL
    shard_index: int = 0
    shard_count: int = 1
    target: Optional[float] = None

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 1:
            raise DomainError("degree must be an integer >= 1")
        if int(self.coeff_bound) != self.coeff_bound or self.coeff_bound < 1:
            raise DomainError("coeff_bound must be an integer >= 1")
        if not (self.tol > 0):
            raise DomainError("tol must be positive")
        if not 0 <= self.shard_index < self.shard_count:
            raise DomainError("need 0 <= shard_index < shard_count")
        if self.target is not None and not self.target > 1:
            raise DomainError("target must be > 1")

    def shard(self, index: int, count: int) -> "SearchSpec":
        return replace(self, shard_index=index, shard_count=count)

    def line(self) -> str:
        target = "none" if self.target is None else format(self.target, ".17g")
        return (
            f"degree={self.degree} coeff_bound={self.coeff_bound} "
            f"reciprocal_only={int(self.reciprocal_only)} tol={self.tol:.17g} "
            f"shard={self.shard_index}/{self.shard_count} target={target}"
        )

    @property
    def hash(self) -> str:
        return hashlib.sha256(self.line().encode()).hexdigest()[:16]

    @classmethod
    def from_line(cls, line: str) -> "SearchSpec":
        try:
            fields = dict(tok.split("=", 1) for tok in line.split())
            idx, cnt = fields["shard"].split("/")
            target = None if fields["target"] == "none" else float(fields["target"])
            return cls(
                degree=int(fields["degree"]),
                coeff_bound=int(fields["coeff_bound"]),
                reciprocal_only=fields["reciprocal_only"] == "1",
                tol=float(fields["tol"]),
                shard_index=int(idx),
                shard_count=int(cnt),
                target=target,
            )
        except (KeyError, ValueError) as exc:
            raise CheckpointError(f"malformed spec line {line!r}") from exc

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "coeff_bound": self.coeff_bound,
            "reciprocal_only": self.reciprocal_only,
            "tol": self.tol,
            "target": self.target,
        }


@dataclass(frozen=True)
class SearchRecord:
    best_polynomial: Optional[IntPolynomial] = None
    best_measure: Optional[MeasureResult] = None
    scanned: int = 0
    skipped_cyclotomic: int = 0
    skipped_pruned: int = 0
    elapsed: float = 0.0

    @property
    def total(self) -> int:
        return self.scanned + self.skipped_cyclotomic + self.skipped_pruned


# ---------------------------------------------------------------------------
# Enumeration


def _family_tuples(spec: SearchSpec) -> Iterator[tuple[int, ...]]:
    n, b = spec.degree, spec.coeff_bound
    values = range(-b, b + 1)
    if not spec.reciprocal_only:
        nonzero = [v for v in values if v]
        for head in nonzero:
            for rest in itertools.product(values, repeat=n - 1):
                yield (head,) + rest + (1,)
        return
    # P* = sign * P: a_i = sign * a_{n-i}; a_0 = sign since a_n = 1
    for sign in (-1, 1):
        free = [i for i in range(1, n) if i < n - i]
        middle = n // 2 if n % 2 == 0 else None
        mid_values = [0] if sign == -1 else list(values)
        if middle is None:
            mid_values = [None]
        for vals in itertools.product(values, repeat=len(free)):
            for mv in mid_values:
                c = [0] * (n + 1)
                c[0], c[n] = sign, 1
                for i, v in zip(free, vals):
                    c[i] = v
                    c[n - i] = sign * v
                if middle is not None:
                    c[middle] = mv
                yield tuple(c)


def family_size(spec: SearchSpec) -> int:
    """Number of polynomials in the whole (unsharded) family."""
    n, b = spec.degree, spec.coeff_bound
    w = 2 * b + 1
    if not spec.reciprocal_only:
        return 2 * b * w ** (n - 1)
    free = sum(1 for i in range(1, n) if i < n - i)
    mid = 1 if n % 2 == 0 else 0
    return w ** (free + mid) + w ** free


def enumerate_family(spec: SearchSpec, after: Optional[tuple[int, ...]] = None) -> Iterator[IntPolynomial]:
    """Yield this shard's polynomials in lexicographic order, strictly after ``after``."""
    for pos, t in enumerate(_family_tuples(spec)):
        if pos % spec.shard_count != spec.shard_index:
            continue
        if after is not None and t <= after:
            continue
        yield IntPolynomial(t)


# ---------------------------------------------------------------------------
# Search


def _pruned(p: IntPolynomial, target: Optional[float]) -> bool:
    if target is None:
        return False
    if abs(p.coeffs[0]) >= target:
        return True
    return target <= PLASTIC_NUMBER and reciprocal_sign(p) == 0


def _tie_key(p: IntPolynomial) -> tuple:
    has_real_root_above_one = sturm_count(p, 1, math.inf) > 0
    return (0 if has_real_root_above_one else 1, p.coeffs)


def _better(p: IntPolynomial, m: MeasureResult, best_p, best_m) -> bool:
    if best_p is None:
        return True
    gap = m.value - best_m.value
    if abs(gap) <= m.error_radius + best_m.error_radius:
        return _tie_key(p) < _tie_key(best_p)
    return gap < 0


@dataclass
class _State:
    best_p: Optional[IntPolynomial]
    best_m: Optional[MeasureResult]
    scanned: int
    cyclotomic: int
    pruned: int


def _consider(state: _State, p: IntPolynomial, tol: float) -> None:
    if is_cyclotomic_product(p):
        state.cyclotomic += 1
        return
    state.scanned += 1
    m = mahler_measure(p, tol)
    if state.best_m is not None and abs(m.value - state.best_m.value) <= CLOSE_CALL:
        m = mahler_measure(p, min(tol, TIGHT_TOL))
    if _better(p, m, state.best_p, state.best_m):
        state.best_p, state.best_m = p, m


def search_shard(
    spec: SearchSpec,
    record: Optional[SearchRecord] = None,
    cursor: Optional[tuple[int, ...]] = None,
    stop_after: Optional[int] = None,
    on_progress: Optional[Callable[[SearchRecord, tuple[int, ...]], None]] = None,
    progress_every: int = 2000,
) -> tuple[SearchRecord, Optional[tuple[int, ...]], bool]:
    """Scan one shard, optionally continuing from ``(record, cursor)``.

    Returns ``(record, cursor, complete)``.  ``stop_after`` limits how many
    polynomials this call processes; ``on_progress`` is called at quiescent
    points (between chunks) with the state needed for a checkpoint.
    """
    t0 = time.perf_counter()
    record = record or SearchRecord()
    state = _State(
        record.best_polynomial,
        record.best_measure,
        record.scanned,
        record.skipped_cyclotomic,
        record.skipped_pruned,
    )
    n = spec.degree
    processed = 0
    since_progress = 0
    complete = True
    polys = enumerate_family(spec, after=cursor)

    def snapshot() -> SearchRecord:
        return SearchRecord(
            state.best_p,
            state.best_m,
            state.scanned,
            state.cyclotomic,
            state.pruned,
            record.elapsed + time.perf_counter() - t0,
        )

    while True:
        limit = CHUNK if stop_after is None else min(CHUNK, stop_after - processed)
        chunk = list(itertools.islice(polys, limit)) if limit > 0 else []
        if not chunk:
            if stop_after is not None and processed >= stop_after:
                complete = next(polys, None) is None
            break
        live = []
        for p in chunk:
            if _pruned(p, spec.target):
                state.pruned += 1
            else:
                live.append(p)
        if live:
            coeffs = np.array([p.coeffs[:n] for p in live], dtype=float)
            lower, _, isolated = batch_measure_bounds(coeffs)
            for p, lo, iso in zip(live, lower, isolated):
                if iso and lo > 1.0 and state.best_m is not None and (
                    lo > state.best_m.value + state.best_m.error_radius
                ):
                    # certified non-cyclotomic and certified worse than the best
                    state.scanned += 1
                    continue
                _consider(state, p, spec.tol)
        processed += len(chunk)
        cursor = chunk[-1].coeffs
        since_progress += len(chunk)
        if on_progress is not None and since_progress >= progress_every:
            since_progress = 0
            on_progress(snapshot(), cursor)
    out = snapshot()
    if complete:
        out = finalize(out)
    return out, cursor, complete


def finalize(record: SearchRecord) -> SearchRecord:
    """Re-measure the best polynomial at the tight tolerance (path independent)."""
    if record.best_polynomial is None:
        return record
    m = mahler_measure(record.best_polynomial, TIGHT_TOL)
    return replace(record, best_measure=m)


def merge_records(records: list[SearchRecord]) -> SearchRecord:
    """Associative, commutative reduction: minimum measure, summed counts."""
    best_p = best_m = None
    for r in records:
        if r.best_polynomial is not None and _better(r.best_polynomial, r.best_measure, best_p, best_m):
            best_p, best_m = r.best_polynomial, r.best_measure
    return SearchRecord(
        best_p,
        best_m,
        sum(r.scanned for r in records),
        sum(r.skipped_cyclotomic for r in records),
        sum(r.skipped_pruned for r in records),
        max((r.elapsed for r in records), default=0.0),
    )


def search_min_measure(spec: SearchSpec) -> SearchRecord:
    """Complete search of the shard described by ``spec``."""
    record, _, _ = search_shard(spec)
    return record


def _run_shard(spec: SearchSpec) -> SearchRecord:
    return search_min_measure(spec)


def search_all_shards(spec: SearchSpec, shard_count: int = 1, workers: int = 1) -> SearchRecord:
    """Run every shard of the family and merge; shards run in worker processes if ``workers > 1``."""
    specs = [spec.shard(i, shard_count) for i in range(shard_count)]
    if workers > 1 and shard_count > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_shard, specs))
    else:
        records = [_run_shard(s) for s in specs]
    return merge_records(records)


# ---------------------------------------------------------------------------
# Checkpoints


def _fmt(x: float) -> str:
    return format(x, ".17g")


def checkpoint_text(record: SearchRecord, spec: SearchSpec, cursor, complete: bool = False) -> str:
    lines = [
        FORMAT_VERSION,
        "spec " + spec.line(),
        "spec_hash " + spec.hash,
        "cursor " + ("-" if cursor is None else ",".join(str(c) for c in cursor)),
        "best " + ("-" if record.best_polynomial is None else record.best_polynomial.to_wire()),
    ]
    m = record.best_measure
    if m is None:
        lines.append("measure -")
    else:
        lines.append(f"measure {_fmt(m.value)} {_fmt(m.error_radius)} {m.method.value}")
    lines.append(f"counts {record.scanned} {record.skipped_cyclotomic} {record.skipped_pruned}")
    lines.append(f"elapsed {_fmt(record.elapsed)}")
    lines.append(f"complete {int(complete)}")
    body = "\n".join(lines) + "\n"
    digest = hashlib.sha256(body.encode()).hexdigest()
    return body + f"checksum {digest}\n"


def checkpoint_save(record: SearchRecord, spec: SearchSpec, cursor, path, complete: bool = False) -> None:
    """Write a checkpoint atomically (temporary file, then rename)."""
    text = checkpoint_text(record, spec, cursor, complete)
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def checkpoint_resume(path, expected: Optional[SearchSpec] = None):
    """Load ``(spec, record, cursor, complete)`` from a checkpoint file.

    Any inconsistency - wrong version, bad checksum, a spec hash that does not
    match the spec line or ``expected`` - raises :class:`CheckpointError`.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    lines = text.split("\n")
    if not lines or lines[0] != FORMAT_VERSION:
        raise CheckpointError(f"{path}: not a {FORMAT_VERSION} checkpoint")
    try:
        body, tail = text.rsplit("checksum ", 1)
    except ValueError as exc:
        raise CheckpointError(f"{path}: missing checksum") from exc
    if hashlib.sha256(body.encode()).hexdigest() != tail.strip():
        raise CheckpointError(f"{path}: checksum mismatch (corrupted checkpoint)")
    fields = {}
    for line in body.strip("\n").split("\n")[1:]:
        key, _, value = line.partition(" ")
        fields[key] = value
    try:
        spec = SearchSpec.from_line(fields["spec"])
        if fields["spec_hash"] != spec.hash:
            raise CheckpointError(f"{path}: spec hash does not match spec line")
        if expected is not None and expected.hash != spec.hash:
            raise CheckpointError(
                f"{path}: checkpoint spec ({spec.line()}) does not match the requested "
                f"search ({expected.line()})"
            )
        cursor = None if fields["cursor"] == "-" else tuple(parse(fields["cursor"]).coeffs)
        best = None if fields["best"] == "-" else parse(fields["best"])
        if fields["measure"] == "-":
            measure = None
        else:
            v, r, method = fields["measure"].split()
            measure = MeasureResult(float(v), float(r), Method(method))
        scanned, cyc, pruned = (int(x) for x in fields["counts"].split())
        record = SearchRecord(best, measure, scanned, cyc, pruned, float(fields["elapsed"]))
        complete = fields["complete"] == "1"
    except CheckpointError:
        raise
    except (KeyError, ValueError) as exc:
        raise CheckpointError(f"{path}: malformed checkpoint ({exc})") from exc
    if (best is None) != (measure is None):
        raise CheckpointError(f"{path}: best polynomial and measure disagree")
    return spec, record, cursor, complete


def shard_checkpoint_path(base, index: int, count: int) -> str:
    return str(base) if count == 1 else f"{base}.{index}-of-{count}"


def run_checkpointed_shard(
    spec: SearchSpec,
    checkpoint=None,
    resume=None,
    stop_after: Optional[int] = None,
    checkpoint_every: int = 2000,
) -> tuple[SearchRecord, bool]:
    """Search one shard with optional resume and periodic checkpoint writes."""
    record = cursor = None
    if resume is not None:
        _, record, cursor, done = checkpoint_resume(resume, expected=spec)
        if done:
            if checkpoint is not None and str(checkpoint) != str(resume):
                checkpoint_save(record, spec, cursor, checkpoint, True)
            return finalize(record), True

    def save(rec, cur):
        checkpoint_save(rec, spec, cur, checkpoint)

    record, cursor, complete = search_shard(
        spec,
        record,
        cursor,
        stop_after=stop_after,
        on_progress=save if checkpoint is not None else None,
        progress_every=checkpoint_every,
    )
    if checkpoint is not None:
        checkpoint_save(record, spec, cursor, checkpoint, complete)
    return record, complete


def _checkpointed_job(job) -> tuple[SearchRecord, bool]:
    return run_checkpointed_shard(*job)
