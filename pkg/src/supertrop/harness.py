"""Seeded batch verification: random generation, the five suites, JSONL reports.

A run is described by a :class:`TrialConfig`.  Trial ``i`` draws its matrix
from a generator seeded with ``derive_trial_seed(seed, i)`` and uses order
``n_values[i % len(n_values)]``, so a verification run is a pure function of
its config: two runs with the same config produce byte-identical trial
streams (bench rows carry timings and are exempt).  For that reason the
per-trial records go to ``out`` while the final summary (which carries
wall-clock time) goes to the diagnostics stream ``err``.

Exit codes: 0 all checks passed, 1 at least one verification failure,
2 configuration or input errors (decided by the CLI wrapper).

Probabilities are exact ``Fraction`` values and sampling happens over their
common denominator, so entry draws are platform-independent integers.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import classical
from .errors import RejectionLimit
from .matrices import (
    Matrix,
    conjecture_check,
    det_brute,
    det_assignment,
    is_nonsingular,
    parse_matrix,
)
from .polynomials import (
    SYMBOLIC_CAP,
    claim1_check,
    claim2_check,
    claim3_check,
    decomposition_checks,
)
from .rng import Xorshift64Star, derive_trial_seed
from .scalars import EPS, Scalar, ghost, tangible

__all__ = [
    "MODES",
    "REJECTION_LIMIT",
    "DEFAULT_PROBS",
    "TrialConfig",
    "random_scalar",
    "random_matrix",
    "generate_matrix",
    "random_rational_matrix",
    "run",
]

MODES = ("conjecture", "claims", "detcross", "oracle", "bench")
REJECTION_LIMIT = 10_000
DEFAULT_PROBS = (Fraction(8, 10), Fraction(15, 100), Fraction(5, 100))


@dataclass
class TrialConfig:
    mode: str
    n_values: tuple = (3,)
    trials: int = 100
    seed: int = 42
    bound: int = 20
    probs: tuple = DEFAULT_PROBS
    engine: str = "auto"
    ks: tuple | None = None
    allow_singular: bool = False
    threads: int = 1
    out_format: str = "jsonl"
    input_text: str | None = None

    def validate(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if not self.n_values or any(n < 1 for n in self.n_values):
            raise ValueError(f"orders must be positive, got {self.n_values}")
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        if self.bound < 1:
            raise ValueError(f"bound must be at least 1, got {self.bound}")
        if len(self.probs) != 3 or any(p < 0 for p in self.probs) or sum(self.probs) != 1:
            raise ValueError(f"probabilities must be three non-negative values summing to 1, got {self.probs}")
        if self.engine not in ("auto", "brute", "assignment", "both"):
            raise ValueError(f"unknown engine {self.engine!r}")
        if self.ks is not None and any(k < 0 for k in self.ks):
            raise ValueError(f"k filter must be non-negative, got {self.ks}")
        if self.threads < 1:
            raise ValueError(f"threads must be at least 1, got {self.threads}")
        if self.out_format not in ("jsonl", "pretty"):
            raise ValueError(f"unknown format {self.out_format!r}")
        if self.mode == "claims" and max(self.n_values) > SYMBOLIC_CAP:
            raise ValueError(f"claims mode needs order <= {SYMBOLIC_CAP}, got {max(self.n_values)}")
        if self.mode == "bench" and self.input_text is not None:
            raise ValueError("bench mode does not take an input matrix")

    def trial_n(self, index: int) -> int:
        return self.n_values[index % len(self.n_values)]


# ---------------------------------------------------------------------------
# random generation


def _prob_cuts(probs):
    denom = math.lcm(*(p.denominator for p in probs))
    t_cut = int(probs[0] * denom)
    g_cut = t_cut + int(probs[1] * denom)
    return denom, t_cut, g_cut


def random_scalar(rng: Xorshift64Star, bound: int, cuts) -> Scalar:
    denom, t_cut, g_cut = cuts
    u = rng.next_below(denom)
    if u >= g_cut:
        return EPS
    value = rng.next_int(-bound, bound)
    return tangible(value) if u < t_cut else ghost(value)


def random_matrix(rng: Xorshift64Star, n: int, bound: int, probs=DEFAULT_PROBS) -> Matrix:
    cuts = _prob_cuts(probs)
    return Matrix(
        [[random_scalar(rng, bound, cuts) for _ in range(n)] for _ in range(n)]
    )


def generate_matrix(rng: Xorshift64Star, n: int, cfg: TrialConfig, require_nonsingular: bool):
    """Draw a matrix per the config; returns ``(matrix, rejection_count)``.

    In the non-singular modes singular draws are discarded and counted; after
    :data:`REJECTION_LIMIT` consecutive singular draws the config is deemed
    degenerate (for example an all-ghost distribution) and the run aborts.
    """
    cuts = _prob_cuts(cfg.probs)
    for rejections in range(REJECTION_LIMIT):
        A = Matrix(
            [[random_scalar(rng, cfg.bound, cuts) for _ in range(n)] for _ in range(n)]
        )
        if not require_nonsingular or is_nonsingular(A, cfg.engine):
            return A, rejections
    raise RejectionLimit(
        f"{REJECTION_LIMIT} consecutive singular draws at n={n}; "
        f"the distribution {tuple(map(str, cfg.probs))} cannot produce non-singular matrices"
    )


def random_rational_matrix(rng: Xorshift64Star, n: int, bound: int):
    """Integer-entry rational matrix for the classical oracle suite."""
    return classical.as_rational_matrix(
        [[rng.next_int(-bound, bound) for _ in range(n)] for _ in range(n)]
    )


# ---------------------------------------------------------------------------
# per-trial records


def _matrix_json(A: Matrix):
    return {"n": A.n, "rows": [" ".join(s.token for s in row) for row in A.rows]}


def _rational_matrix_json(X):
    return {"n": len(X), "rows": [" ".join(str(x) for x in row) for row in X]}


def _conjecture_record(cfg, index, A, seed, rejections):
    ks = cfg.ks if cfg.ks is None else tuple(k for k in cfg.ks if k <= A.n)
    report = conjecture_check(A, cfg.engine, ks=ks, allow_singular=cfg.allow_singular)
    return {
        "trial": index,
        "seed": seed,
        "n": A.n,
        "rejections": rejections,
        "matrix": _matrix_json(A),
        "det": report.det.token,
        "results": [
            {"k": c.k, "lhs": c.lhs.token, "rhs": c.rhs.token, "holds": c.holds}
            for c in report.cases
        ],
        "ok": report.ok,
    }


def _conjecture_trial(cfg, index):
    rng = Xorshift64Star(derive_trial_seed(cfg.seed, index))
    n = cfg.trial_n(index)
    A, rejections = generate_matrix(rng, n, cfg, require_nonsingular=not cfg.allow_singular)
    return _conjecture_record(cfg, index, A, str(derive_trial_seed(cfg.seed, index)), rejections)


def _detcross_record(index, A, seed, rejections):
    brute = det_brute(A, cap=max(A.n, 8))
    assignment = det_assignment(A)
    return {
        "trial": index,
        "seed": seed,
        "n": A.n,
        "rejections": rejections,
        "matrix": _matrix_json(A),
        "brute": brute.token,
        "assignment": assignment.token,
        "ok": brute == assignment,
    }


def _detcross_trial(cfg, index):
    rng = Xorshift64Star(derive_trial_seed(cfg.seed, index))
    n = cfg.trial_n(index)
    A, rejections = generate_matrix(rng, n, cfg, require_nonsingular=False)
    return _detcross_record(index, A, str(derive_trial_seed(cfg.seed, index)), rejections)


def _claims_symbolic_rows(cfg):
    rows = []
    for n in sorted(set(cfg.n_values)):
        for k in range(1, n + 1):
            if cfg.ks is not None and k not in cfg.ks:
                continue
            r1 = claim1_check(n, k)
            r2 = claim2_check(n, k)
            rows.append(
                {
                    "type": "symbolic",
                    "n": n,
                    "k": k,
                    "claim1_ok": r1.ok,
                    "claim2_ok": r2.ok,
                    "alpha_terms": r1.alpha_terms,
                    "beta_terms": r1.beta_terms,
                    "gamma_terms": r2.gamma_terms,
                    "violations": len(r1.violations) + len(r2.missing),
                    "ok": r1.ok and r2.ok,
                }
            )
    return rows


def _claims_record(cfg, index, A, seed, rejections):
    n = A.n
    ks = [k for k in range(1, n + 1) if cfg.ks is None or k in cfg.ks]
    results = []
    for k in ks:
        c3 = claim3_check(A, k)
        dec = decomposition_checks(A, k)
        results.append(
            {
                "k": k,
                "claim3": c3.ok,
                "u_exists": dec.u_exists,
                "tangible_case_ok": dec.tangible_case_ok,
                "surpasses": dec.surpasses,
                "holds": c3.ok and dec.ok,
            }
        )
    return {
        "type": "trial",
        "trial": index,
        "seed": seed,
        "n": n,
        "rejections": rejections,
        "matrix": _matrix_json(A),
        "results": results,
        "ok": all(r["holds"] for r in results),
    }


def _claims_trial(cfg, index):
    rng = Xorshift64Star(derive_trial_seed(cfg.seed, index))
    n = cfg.trial_n(index)
    A, rejections = generate_matrix(rng, n, cfg, require_nonsingular=True)
    return _claims_record(cfg, index, A, str(derive_trial_seed(cfg.seed, index)), rejections)


def _oracle_record(cfg, index, X, seed):
    n = len(X)
    invertible = classical.rat_det(X) != 0
    jacobi = []
    for k in range(0 if invertible else 1, n + 1):
        if cfg.ks is not None and k not in cfg.ks:
            continue
        jacobi.append({"k": k, "ok": classical.jacobi_check(X, k)})
    reciprocal = None
    if invertible:
        reciprocal = []
        for k in range(n + 1):
            if cfg.ks is not None and k not in cfg.ks:
                continue
            reciprocal.append({"k": k, "ok": classical.reciprocal_check(X, k)})
    ok = all(r["ok"] for r in jacobi) and (reciprocal is None or all(r["ok"] for r in reciprocal))
    return {
        "trial": index,
        "seed": seed,
        "n": n,
        "rejections": 0,
        "matrix": _rational_matrix_json(X),
        "invertible": invertible,
        "jacobi": jacobi,
        "reciprocal": reciprocal,
        "ok": ok,
    }


def _oracle_trial(cfg, index):
    rng = Xorshift64Star(derive_trial_seed(cfg.seed, index))
    n = cfg.trial_n(index)
    X = random_rational_matrix(rng, n, cfg.bound)
    return _oracle_record(cfg, index, X, str(derive_trial_seed(cfg.seed, index)))


def _bench_rows(cfg):
    rows = []
    for n in cfg.n_values:
        rng = Xorshift64Star(derive_trial_seed(cfg.seed, n))
        A = random_matrix(rng, n, cfg.bound, (Fraction(1), Fraction(0), Fraction(0)))
        repeats = cfg.trials
        for engine, fn in (
            ("brute", lambda: det_brute(A, cap=n)),
            ("assignment", lambda: det_assignment(A)),
        ):
            start = time.perf_counter()
            for _ in range(repeats):
                result = fn()
            total = time.perf_counter() - start
            rows.append(
                {
                    "mode": "bench",
                    "n": n,
                    "engine": engine,
                    "repeats": repeats,
                    "det": result.token,
                    "seconds_total": round(total, 6),
                    "seconds_mean": round(total / repeats, 6),
                }
            )
    return rows


_TRIAL_FNS = {
    "conjecture": _conjecture_trial,
    "claims": _claims_trial,
    "detcross": _detcross_trial,
    "oracle": _oracle_trial,
}


def _input_records(cfg):
    """Run the chosen suite once on an explicitly supplied matrix."""
    if cfg.mode == "oracle":
        X = classical.parse_rational_matrix(cfg.input_text)
        return [_oracle_record(cfg, 0, X, None)]
    A = parse_matrix(cfg.input_text)
    if cfg.mode == "conjecture":
        return [_conjecture_record(cfg, 0, A, None, 0)]
    if cfg.mode == "detcross":
        return [_detcross_record(0, A, None, 0)]
    if cfg.mode == "claims":
        if A.n > SYMBOLIC_CAP:
            raise ValueError(f"claims mode needs order <= {SYMBOLIC_CAP}, got {A.n}")
        return [_claims_record(cfg, 0, A, None, 0)]
    raise ValueError(f"mode {cfg.mode!r} does not take an input matrix")


# ---------------------------------------------------------------------------
# the runner


def _emit(cfg, stream, record):
    if cfg.out_format == "jsonl":
        stream.write(json.dumps(record, separators=(",", ":")) + "\n")
        return
    stream.write(_pretty_line(record) + "\n")


def _pretty_line(record):
    if record.get("mode") == "bench":
        return (
            f"bench n={record['n']} {record['engine']}: "
            f"{record['seconds_mean']:.6f}s mean over {record['repeats']} runs (det {record['det']})"
        )
    if record.get("type") == "symbolic":
        return (
            f"claims n={record['n']} k={record['k']} "
            f"claim1={'ok' if record['claim1_ok'] else 'FAIL'} "
            f"claim2={'ok' if record['claim2_ok'] else 'FAIL'}"
        )
    bits = [f"trial {record['trial']}", f"n={record['n']}"]
    if record.get("seed") is not None:
        bits.append(f"seed={record['seed']}")
    if "brute" in record:
        bits.append(f"brute={record['brute']} assignment={record['assignment']}")
    if "det" in record:
        bits.append(f"det={record['det']}")
    bits.append("ok" if record["ok"] else "FAILED")
    if not record["ok"] and "results" in record:
        for r in record["results"]:
            if not r.get("holds", True):
                bits.append(f"[k={r['k']} failed]")
    return " ".join(bits)


def run(cfg: TrialConfig, out, err) -> int:
    """Execute the configured suite; stream records to ``out``, summary to ``err``."""
    start = time.perf_counter()
    failures = 0
    symbolic_failures = 0
    rejections = 0
    trials_run = 0

    if cfg.mode == "bench":
        for row in _bench_rows(cfg):
            _emit(cfg, out, row)
    elif cfg.input_text is not None:
        for record in _input_records(cfg):
            trials_run += 1
            if not record["ok"]:
                failures += 1
            _emit(cfg, out, record)
    else:
        if cfg.mode == "claims":
            for row in _claims_symbolic_rows(cfg):
                if not row["ok"]:
                    symbolic_failures += 1
                _emit(cfg, out, row)
        trial_fn = _TRIAL_FNS[cfg.mode]
        if cfg.threads > 1:
            with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
                futures = [pool.submit(trial_fn, cfg, i) for i in range(cfg.trials)]
                records = (f.result() for f in futures)
                for record in records:
                    trials_run += 1
                    rejections += record.get("rejections", 0)
                    if not record["ok"]:
                        failures += 1
                    _emit(cfg, out, record)
        else:
            for i in range(cfg.trials):
                record = trial_fn(cfg, i)
                trials_run += 1
                rejections += record.get("rejections", 0)
                if not record["ok"]:
                    failures += 1
                _emit(cfg, out, record)

    elapsed = round(time.perf_counter() - start, 3)
    summary = {
        "trials": trials_run,
        "failures": failures,
        "rejections": rejections,
        "elapsed": elapsed,
    }
    if cfg.mode == "claims":
        summary["symbolic_failures"] = symbolic_failures
    if cfg.out_format == "jsonl":
        err.write(json.dumps(summary, separators=(",", ":")) + "\n")
    else:
        err.write(
            f"summary: trials={trials_run} failures={failures} "
            f"rejections={rejections} elapsed={elapsed}s"
            + (f" symbolic_failures={symbolic_failures}" if cfg.mode == "claims" else "")
            + "\n"
        )
    return 0 if failures == 0 and symbolic_failures == 0 else 1
