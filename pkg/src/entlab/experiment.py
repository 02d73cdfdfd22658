"""Monte Carlo comparison of the ordering induced by the two measures.

The run is decomposed into fixed-size shards of pairs, each fed by its own
RNG substream (seed, shard index), and shard results are merged in shard
order.  The decomposition depends only on the configuration, never on the
thread count, so parallel and serial runs with the same seed are identical
byte for byte.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import measures, sampler
from .errors import SeparableInput, ZeroDenominator
from .measures import MeasureReport
from .qstate import DensityMatrix

S_RANGE = (0.0, 1.5)  # attainable range of S_1 + S_2 for a pair
SHARD_PAIRS = 2048  # pairs per RNG substream
_CHUNK_DRAWS = 8192  # states drawn per sampling chunk inside a shard
_SHARD_KEY = 1  # substream tag for shards: (seed, (1, shard))
_SCATTER_KEY = (2, 0)  # substream tag for scatter subsampling

PAIR_DTYPE = np.dtype(
    [(f"{name}{k}", "f8") for k in (1, 2) for name in ("c", "ef", "en", "esum", "s")]
    + [("d_ef", "f8"), ("d_en", "f8"), ("s_total", "f8"), ("violation", "?")]
)


@dataclass(frozen=True)
class ExperimentConfig:
    """Configuration of one Monte Carlo run."""

    seed: int
    n_pairs: int
    s_bins: int = 30
    tie_epsilon: float = 1e-12
    scatter_points: int = 10_000
    threads: int = 1

    def __post_init__(self):
        if self.n_pairs < 1:
            raise ValueError("n_pairs must be >= 1")
        if self.s_bins < 1:
            raise ValueError("s_bins must be >= 1")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


@dataclass(frozen=True)
class PairComparisonRecord:
    """Ordering comparison for one pair of entangled states."""

    report1: MeasureReport
    report2: MeasureReport
    d_ef: float
    d_en: float
    violation: bool
    tie: bool
    s_total: float


@dataclass(frozen=True)
class SHistogram:
    """Pair counts and violation rates over uniform bins of S = S_1 + S_2."""

    edges: np.ndarray
    centers: np.ndarray
    pair_counts: np.ndarray
    violation_counts: np.ndarray
    violation_rates: np.ndarray
    empty: np.ndarray


@dataclass(frozen=True)
class ExperimentSummary:
    """Aggregate result of a run; pairs is a structured array (PAIR_DTYPE)."""

    config: ExperimentConfig
    p_entangled: float
    se_entangled: float
    p_violation: float
    se_violation: float
    states_drawn: int
    states_kept: int
    states_discarded: int
    n_pairs: int
    n_ties_excluded: int
    pairs: np.ndarray
    scatter_def_den: np.ndarray  # (k, 2): d_ef, d_en per subsampled pair
    scatter_ef_en: np.ndarray  # (k, 2): e_formation, e_negative per subsampled state
    scatter_c_en: np.ndarray  # (k, 2): concurrence, e_negative per subsampled state
    s_histogram: SHistogram


def relative_difference(a: float, b: float) -> float:
    """(a - b) / (a + b) for nonnegative a, b; in [-1, 1]."""
    if a + b <= 0.0:
        raise ZeroDenominator(f"relative difference undefined for a={a!r}, b={b!r}")
    return (a - b) / (a + b)


def compare_pair(
    rho1: DensityMatrix, rho2: DensityMatrix, tie_epsilon: float = 1e-12
) -> PairComparisonRecord:
    """Compare the ordering the two measures assign to a pair of entangled states.

    A pair counts as a violation when the relative differences have strictly
    opposite signs; pairs where either difference is within tie_epsilon of
    zero are flagged as ties and never count.
    """
    report1 = measures.measure_report(rho1)
    report2 = measures.measure_report(rho2)
    if report1.separable or report2.separable:
        raise SeparableInput("compare_pair requires two entangled states")
    d_ef = relative_difference(report1.e_formation, report2.e_formation)
    d_en = relative_difference(report1.e_negative, report2.e_negative)
    tie = abs(d_ef) <= tie_epsilon or abs(d_en) <= tie_epsilon
    violation = (not tie) and (d_ef * d_en < 0.0)
    s_total = report1.linear_entropy + report2.linear_entropy
    return PairComparisonRecord(report1, report2, d_ef, d_en, violation, tie, s_total)


def _histogram_core(
    s: np.ndarray, violation: np.ndarray, n_bins: int, s_range: tuple[float, float] = S_RANGE
) -> SHistogram:
    edges = np.linspace(s_range[0], s_range[1], n_bins + 1)
    pair_counts, _ = np.histogram(s, bins=edges)
    violation_counts, _ = np.histogram(s[violation], bins=edges)
    empty = pair_counts == 0
    rates = np.where(empty, 0.0, violation_counts / np.maximum(pair_counts, 1))
    centers = 0.5 * (edges[:-1] + edges[1:])
    return SHistogram(edges, centers, pair_counts, violation_counts, rates, empty)


def s_histogram_bins(records, n_bins: int, s_range: tuple[float, float] = S_RANGE) -> SHistogram:
    """Bin PairComparisonRecords by S = S_1 + S_2 over uniform bins.

    Empty bins report a violation rate of 0 and are flagged in ``empty``.
    """
    if n_bins < 1:
        raise ValueError("n_bins must be >= 1")
    s = np.array([r.s_total for r in records])
    violation = np.array([r.violation for r in records], dtype=bool)
    return _histogram_core(s, violation, n_bins, s_range)


def _pair_rows(stats1: np.ndarray, stats2: np.ndarray, d_ef, d_en, violation) -> np.ndarray:
    rows = np.empty(len(stats1), dtype=PAIR_DTYPE)
    for col, name in enumerate(("c", "ef", "en", "esum", "s")):
        rows[f"{name}1"] = stats1[:, col]
        rows[f"{name}2"] = stats2[:, col]
    rows["d_ef"] = d_ef
    rows["d_en"] = d_en
    rows["s_total"] = stats1[:, 4] + stats2[:, 4]
    rows["violation"] = violation
    return rows


def _entangled_state_stats(rhos: np.ndarray) -> tuple[np.ndarray, int]:
    """Measures for the entangled members of a stack, in draw order.

    Returns (stats, n_kept) where stats has one row per kept state with
    columns (C, E_F, E_N, E_sum, S) and an extra final column holding the
    position of the state within the stack.
    """
    pt_w = measures.pt_eigenvalues(rhos)
    kept_pos = np.nonzero(pt_w[:, -1] < -measures.EPS_SEP)[0]
    kept = rhos[kept_pos]
    c = measures.concurrence_batch(kept)
    stats = np.column_stack(
        [
            c,
            measures.ef_from_concurrence_batch(c),
            -pt_w[kept_pos, -1],
            np.maximum(0.0, np.abs(pt_w[kept_pos]).sum(axis=1) - 1.0),
            measures.linear_entropy_batch(kept),
            kept_pos.astype(float),
        ]
    )
    return stats, len(kept_pos)


def _run_shard(seed: int, shard_index: int, quota: int, tie_epsilon: float) -> dict:
    """Accumulate ``quota`` usable pairs on the shard's own RNG substream.

    States are processed in draw order: entangled states pair up
    consecutively, tie pairs are excluded and redrawn, and the shard stops
    on the draw that completes its final usable pair, so the counters
    reflect exactly the states consumed.
    """
    rng = sampler.RngStream(seed, (_SHARD_KEY, shard_index))
    drawn = kept = ties = 0
    row_chunks = []
    pending = None  # unpaired entangled state carried between chunks
    need = quota
    while need > 0:
        rhos = sampler.random_density_batch(rng, _CHUNK_DRAWS)
        stats, n_kept_chunk = _entangled_state_stats(rhos)
        carry = 0
        if pending is not None:
            stats = np.vstack([pending, stats])
            carry = 1
        n_full = len(stats) // 2
        if n_full == 0:
            drawn += _CHUNK_DRAWS
            kept += n_kept_chunk
            pending = stats[-1] if len(stats) % 2 else None
            continue
        first = stats[0 : 2 * n_full : 2]
        second = stats[1 : 2 * n_full : 2]
        den_ef = first[:, 1] + second[:, 1]
        den_en = first[:, 2] + second[:, 2]
        safe_ef = np.where(den_ef > 0.0, den_ef, 1.0)
        safe_en = np.where(den_en > 0.0, den_en, 1.0)
        d_ef = (first[:, 1] - second[:, 1]) / safe_ef
        d_en = (first[:, 2] - second[:, 2]) / safe_en
        tie = (
            (np.abs(d_ef) <= tie_epsilon)
            | (np.abs(d_en) <= tie_epsilon)
            | (den_ef <= 0.0)
            | (den_en <= 0.0)
        )
        usable = ~tie
        cum_usable = np.cumsum(usable)
        if cum_usable[-1] >= need:
            last = int(np.searchsorted(cum_usable, need))  # pair that fills the quota
            seq_end = 2 * last + 1 - carry  # its second state, as a kept-state index
            drawn += int(stats[seq_end + carry, 5]) + 1
            kept += seq_end + 1
            ties += int(tie[: last + 1].sum())
            keep_slice = usable[: last + 1]
            row_chunks.append(
                _pair_rows(
                    first[: last + 1][keep_slice],
                    second[: last + 1][keep_slice],
                    d_ef[: last + 1][keep_slice],
                    d_en[: last + 1][keep_slice],
                    (d_ef * d_en < 0.0)[: last + 1][keep_slice],
                )
            )
            need = 0
            pending = None
        else:
            drawn += _CHUNK_DRAWS
            kept += n_kept_chunk
            ties += int(tie.sum())
            row_chunks.append(
                _pair_rows(first[usable], second[usable], d_ef[usable], d_en[usable],
                           (d_ef * d_en < 0.0)[usable])
            )
            need -= int(cum_usable[-1])
            pending = stats[2 * n_full] if len(stats) > 2 * n_full else None
    return {
        "drawn": drawn,
        "kept": kept,
        "ties": ties,
        "pairs": np.concatenate(row_chunks) if row_chunks else np.empty(0, dtype=PAIR_DTYPE),
    }


def run_experiment(cfg: ExperimentConfig) -> ExperimentSummary:
    """Run the full comparison: sample, discard separable states, pair, count.

    Deterministic for a fixed configuration; the thread count changes only
    how shards are scheduled, never any output value.
    """
    quotas = [SHARD_PAIRS] * (cfg.n_pairs // SHARD_PAIRS)
    if cfg.n_pairs % SHARD_PAIRS:
        quotas.append(cfg.n_pairs % SHARD_PAIRS)

    def shard(args):
        index, quota = args
        return _run_shard(cfg.seed, index, quota, cfg.tie_epsilon)

    jobs = list(enumerate(quotas))
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(shard, jobs))
    else:
        results = [shard(job) for job in jobs]

    pairs = np.concatenate([r["pairs"] for r in results])
    states_drawn = sum(r["drawn"] for r in results)
    states_kept = sum(r["kept"] for r in results)
    n_ties = sum(r["ties"] for r in results)
    n_pairs = len(pairs)

    p_ent = states_kept / states_drawn
    p_vio = float(pairs["violation"].sum()) / n_pairs

    scatter_rng = sampler.RngStream(cfg.seed, _SCATTER_KEY)
    k_pairs = min(cfg.scatter_points, n_pairs)
    idx = scatter_rng.subsample_indices(n_pairs, k_pairs)
    scatter_def_den = np.column_stack([pairs["d_ef"][idx], pairs["d_en"][idx]])

    # Per-state scatters: states of each pair interleaved, preserving run order.
    ef_states = np.column_stack([pairs["ef1"], pairs["ef2"]]).ravel()
    en_states = np.column_stack([pairs["en1"], pairs["en2"]]).ravel()
    c_states = np.column_stack([pairs["c1"], pairs["c2"]]).ravel()
    k_states = min(cfg.scatter_points, 2 * n_pairs)
    idx_s = scatter_rng.subsample_indices(2 * n_pairs, k_states)
    scatter_ef_en = np.column_stack([ef_states[idx_s], en_states[idx_s]])
    scatter_c_en = np.column_stack([c_states[idx_s], en_states[idx_s]])

    return ExperimentSummary(
        config=cfg,
        p_entangled=p_ent,
        se_entangled=float(np.sqrt(p_ent * (1.0 - p_ent) / states_drawn)),
        p_violation=p_vio,
        se_violation=float(np.sqrt(p_vio * (1.0 - p_vio) / n_pairs)),
        states_drawn=states_drawn,
        states_kept=states_kept,
        states_discarded=states_drawn - states_kept,
        n_pairs=n_pairs,
        n_ties_excluded=n_ties,
        pairs=pairs,
        scatter_def_den=scatter_def_den,
        scatter_ef_en=scatter_ef_en,
        scatter_c_en=scatter_c_en,
        s_histogram=_histogram_core(pairs["s_total"], pairs["violation"], cfg.s_bins),
    )


def _fmt(x) -> str:
    return f"{x:.17g}"


def write_csvs(summary: ExperimentSummary, outdir) -> dict[str, str]:
    """Write fig1..fig4.csv and summary.csv into outdir; returns the paths."""
    os.makedirs(outdir, exist_ok=True)
    paths = {}

    def emit(name: str, header: str, rows) -> None:
        path = os.path.join(outdir, name)
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(header + "\n")
            for row in rows:
                fh.write(",".join(row) + "\n")
        paths[name] = path

    emit(
        "fig1.csv",
        "d_en,d_ef",
        ((_fmt(den), _fmt(def_)) for def_, den in summary.scatter_def_den),
    )
    emit(
        "fig2.csv",
        "e_formation,e_negative",
        ((_fmt(ef), _fmt(en)) for ef, en in summary.scatter_ef_en),
    )
    emit(
        "fig3.csv",
        "concurrence,e_negative",
        ((_fmt(c), _fmt(en)) for c, en in summary.scatter_c_en),
    )
    hist = summary.s_histogram
    emit(
        "fig4.csv",
        "bin_center,pair_count,violation_count,violation_rate,empty",
        (
            (
                _fmt(hist.centers[k]),
                str(int(hist.pair_counts[k])),
                str(int(hist.violation_counts[k])),
                _fmt(hist.violation_rates[k]),
                "true" if hist.empty[k] else "false",
            )
            for k in range(len(hist.centers))
        ),
    )
    cfg = summary.config
    emit(
        "summary.csv",
        "p_entangled,se_p_entangled,p_violation,se_p_violation,"
        "states_drawn,states_kept,states_discarded,n_pairs,n_ties_excluded,"
        "seed,s_bins,tie_epsilon,scatter_points",
        [
            (
                _fmt(summary.p_entangled),
                _fmt(summary.se_entangled),
                _fmt(summary.p_violation),
                _fmt(summary.se_violation),
                str(summary.states_drawn),
                str(summary.states_kept),
                str(summary.states_discarded),
                str(summary.n_pairs),
                str(summary.n_ties_excluded),
                str(cfg.seed),
                str(cfg.s_bins),
                _fmt(cfg.tie_epsilon),
                str(cfg.scatter_points),
            )
        ],
    )
    return paths
