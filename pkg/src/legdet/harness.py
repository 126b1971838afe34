"""Range verification harness: runs every identity check over ranges of primes,
emits machine-readable results, and caches them for resumable re-runs.

Each check produces CheckResult records whose witnesses are decimal strings
that re-validate by independent scalar arithmetic (see revalidate).  Workers
are pure functions of (check_id, p, options), so primes parallelize cleanly;
results are always emitted in deterministic order.
"""

from __future__ import annotations

import csv
import hashlib
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import charsums, quadfield
from .exactla import IntPoly, char_poly, det_affine, det_exact
from .matrices import carlitz_matrix, chapman_matrix, squares_matrix, squares_star_matrix
from .ntcore import (
    PrimeCtx,
    is_perfect_square,
    is_prime,
    perm_sign_cycles,
    perm_sign_formula,
    jacobsthal_sum,
)

CHECK_IDS = (
    "theorem-a",
    "corollary-a",
    "conjecture-a",
    "lemma-sign",
    "eigen",
    "product",
    "jacobsthal",
    "row-identity",
    "carlitz",
    "chapman",
    "chapman-star",
    "sun-zero",
    "sun-qr",
)

# Default prime ceilings: determinant-heavy checks stop early, scalar checks go
# far.  carlitz builds a (p-1)-dimensional characteristic polynomial (p+1 full
# determinants per prime), so its default is capped lower to keep the default
# run fast.
SCALAR_CHECKS = frozenset({"jacobsthal", "lemma-sign", "row-identity"})
DEFAULT_PMAX_DET = 200
DEFAULT_PMAX_SCALAR = 2000
DEFAULT_PMAX_CARLITZ = 47


def default_pmax(check_id: str) -> int:
    if check_id == "carlitz":
        return DEFAULT_PMAX_CARLITZ
    if check_id in SCALAR_CHECKS:
        return DEFAULT_PMAX_SCALAR
    return DEFAULT_PMAX_DET

_MOD1_CHECKS = frozenset(
    {"theorem-a", "corollary-a", "lemma-sign", "eigen", "product", "jacobsthal",
     "row-identity", "sun-zero", "sun-qr"}
)


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    p: int
    params: dict | None
    status: str                  # pass | fail | skipped
    witness: dict[str, str]

    def to_record(self) -> dict:
        return {
            "check_id": self.check_id,
            "p": self.p,
            "params": self.params,
            "status": self.status,
            "witness": self.witness,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), separators=(",", ":"))

    @staticmethod
    def from_record(rec: dict) -> "CheckResult":
        return CheckResult(
            rec["check_id"], rec["p"], rec["params"], rec["status"], rec["witness"]
        )


def primes_between(lo: int, hi: int) -> list[int]:
    return [p for p in range(max(lo, 2), hi + 1) if is_prime(p)]


def default_d_list(p: int) -> list[int]:
    """{1, 2, 3, 5, p-1} plus 8 deterministic pseudo-random residues."""
    rng = random.Random(f"legdet-d-{p}")
    ds = [1 % p, 2 % p, 3 % p, 5 % p, (p - 1) % p]
    ds += [rng.randrange(p) for _ in range(8)]
    seen: list[int] = []
    for d in ds:
        if d not in seen:
            seen.append(d)
    return seen


# ---------------------------------------------------------------------------
# per-prime check workers
# ---------------------------------------------------------------------------


def _check_theorem_a(p: int, opts: dict) -> list[CheckResult]:
    ctx = PrimeCtx.for_prime(p)
    a = ctx.decomp.a
    if opts.get("full_sweep"):
        d_list = list(range(p))
    else:
        d_list = [d % p for d in (opts.get("d_list") or default_d_list(p))]
    s1 = None
    out = []
    for d in dict.fromkeys(d_list):
        s_val = det_exact(squares_matrix(ctx, d))
        eps = ctx.epsilon(d)
        wit = {"S": str(s_val), "a": str(a), "eps": str(eps)}
        quotient, rem = divmod(eps * s_val, a)
        root = is_perfect_square(quotient) if rem == 0 else None
        ok = rem == 0 and root is not None
        if root is not None:
            wit["root"] = str(root)
        ld = ctx.legendre(d)
        if ld == -1:
            ok = ok and s_val == 0
        elif ld == 1:
            if s1 is None:
                s1 = s_val if d == 1 else det_exact(squares_matrix(ctx, 1))
            sign = perm_sign_cycles(ctx, d)
            wit["sign"] = str(sign)
            wit["S1"] = str(s1)
            ok = ok and s_val == sign * s1
        out.append(
            CheckResult("theorem-a", p, {"d": d}, "pass" if ok else "fail", wit)
        )
    return out


def _check_corollary_a(p: int, opts: dict) -> list[CheckResult]:
    ctx = PrimeCtx.for_prime(p)
    a = ctx.decomp.a
    s_val = det_exact(squares_matrix(ctx, 1))
    star = det_exact(squares_star_matrix(ctx))
    root = is_perfect_square(-star)
    ok = root is not None and star * a == -s_val
    wit = {"Sstar": str(star), "S": str(s_val), "a": str(a)}
    if root is not None:
        wit["root"] = str(root)
    return [CheckResult("corollary-a", p, None, "pass" if ok else "fail", wit)]


def _check_conjecture_a(p: int, opts: dict) -> list[CheckResult]:
    ctx = PrimeCtx.for_prime(p)
    s_val = det_exact(squares_matrix(ctx, 1))
    root = is_perfect_square(-s_val)
    wit = {"S": str(s_val)}
    if root is not None:
        wit["root"] = str(root)
    return [CheckResult("conjecture-a", p, None, "pass" if root is not None else "fail", wit)]


def _check_lemma_sign(p: int, opts: dict) -> list[CheckResult]:
    ctx = PrimeCtx.for_prime(p)
    mismatches = 0
    first_bad = None
    count = 0
    for j in range(1, ctx.n + 1):
        d = j * j % p
        count += 1
        if perm_sign_cycles(ctx, d) != perm_sign_formula(ctx, d):
            mismatches += 1
            if first_bad is None:
                first_bad = d
    wit = {"qr_count": str(count), "mismatches": str(mismatches)}
    if first_bad is not None:
        wit["first_bad_d"] = str(first_bad)
    return [CheckResult("lemma-sign", p, None, "pass" if mismatches == 0 else "fail", wit)]


def _check_eigen(p: int, opts: dict) -> list[CheckResult]:
    report = charsums.eigen_verify(
        PrimeCtx.for_prime(p), prec_bits=opts.get("precision_bits", 128)
    )
    wit = {
        "mode": report.mode,
        "residual": repr(report.residual),
        "max_imag_rel": repr(report.max_imag_rel),
        "vandermonde": "1" if report.vandermonde_ok else "0",
    }
    return [CheckResult("eigen", p, None, "pass" if report.ok else "fail", wit)]


def _check_product(p: int, opts: dict) -> list[CheckResult]:
    prod, det = charsums.product_identity(PrimeCtx.for_prime(p))
    wit = {"prod": str(prod), "det": str(det)}
    return [CheckResult("product", p, None, "pass" if prod == det else "fail", wit)]


def _check_jacobsthal(p: int, opts: dict) -> list[CheckResult]:
    ctx = PrimeCtx.for_prime(p)
    s = jacobsthal_sum(ctx)
    a = ctx.decomp.a
    wit = {"sum": str(s), "a": str(a)}
    return [CheckResult("jacobsthal", p, None, "pass" if s == -a else "fail", wit)]


def _check_row_identity(p: int, opts: dict) -> list[CheckResult]:
    ctx = PrimeCtx.for_prime(p)
    ok = charsums.row_identity_check(ctx)
    wit = {"a": str(ctx.decomp.a), "j_count": str(ctx.n)}
    return [CheckResult("row-identity", p, None, "pass" if ok else "fail", wit)]


def _carlitz_expected(p: int) -> IntPoly:
    sgn = -1 if (p - 1) // 2 % 2 else 1
    quad = IntPoly.make((-sgn * p, 0, 1))
    return quad ** ((p - 3) // 2) * IntPoly.make((-sgn, 0, 1))


def _check_carlitz(p: int, opts: dict) -> list[CheckResult]:
    ctx = PrimeCtx.for_prime(p)
    actual = char_poly(carlitz_matrix(ctx))
    expected = _carlitz_expected(p)
    wit = {
        "coeffs": json.dumps(list(actual.coeffs)),
        "expected": json.dumps(list(expected.coeffs)),
    }
    return [CheckResult("carlitz", p, None, "pass" if actual == expected else "fail", wit)]


def _check_chapman(p: int, opts: dict, star: bool) -> list[CheckResult]:
    check_id = "chapman-star" if star else "chapman"
    ctx = PrimeCtx.for_prime(p)
    actual = det_affine(chapman_matrix(ctx, star))
    data = None
    wit: dict[str, str] = {}
    if ctx.cls == 1:
        data = quadfield.class_data(p, opts.get("precision_bits", 128))
        wit.update(
            u=str(data.eps.u),
            v=str(data.eps.v),
            h=str(data.h),
            norm=str(quadfield.unit_norm(data.eps, p)),
            uh=str(data.eps_h.u),
            vh=str(data.eps_h.v),
        )
    expected = quadfield.chapman_expected(ctx, star, data)
    wit["coeffs"] = json.dumps(list(actual.coeffs))
    wit["expected"] = json.dumps(list(expected.coeffs))
    return [CheckResult(check_id, p, None, "pass" if actual == expected else "fail", wit)]


def _check_sun_zero(p: int, opts: dict) -> list[CheckResult]:
    ctx = PrimeCtx.for_prime(p)
    d_list = [d % p for d in (opts.get("d_list") or default_d_list(p))]
    out = []
    for d in dict.fromkeys(d_list):
        if ctx.legendre(d) != -1:
            continue
        s_val = det_exact(squares_matrix(ctx, d))
        wit = {"S": str(s_val)}
        out.append(
            CheckResult("sun-zero", p, {"d": d}, "pass" if s_val == 0 else "fail", wit)
        )
    return out


def _check_sun_qr(p: int, opts: dict) -> list[CheckResult]:
    ctx = PrimeCtx.for_prime(p)
    d_list = [d % p for d in (opts.get("d_list") or default_d_list(p))]
    out = []
    for d in dict.fromkeys(d_list):
        if ctx.legendre(d) != 1:
            continue
        s_val = det_exact(squares_matrix(ctx, d))
        ok = ctx.legendre(-s_val) >= 0
        wit = {"S": str(s_val), "legendre_negS": str(ctx.legendre(-s_val))}
        out.append(
            CheckResult("sun-qr", p, {"d": d}, "pass" if ok else "fail", wit)
        )
    return out


_WORKERS = {
    "theorem-a": _check_theorem_a,
    "corollary-a": _check_corollary_a,
    "conjecture-a": _check_conjecture_a,
    "lemma-sign": _check_lemma_sign,
    "eigen": _check_eigen,
    "product": _check_product,
    "jacobsthal": _check_jacobsthal,
    "row-identity": _check_row_identity,
    "carlitz": _check_carlitz,
    "chapman": lambda p, opts: _check_chapman(p, opts, star=False),
    "chapman-star": lambda p, opts: _check_chapman(p, opts, star=True),
    "sun-zero": _check_sun_zero,
    "sun-qr": _check_sun_qr,
}


def applicable_primes(check_id: str, pmax: int) -> list[int]:
    if check_id in _MOD1_CHECKS:
        return [p for p in primes_between(5, pmax) if p % 4 == 1]
    if check_id == "conjecture-a":
        return [p for p in primes_between(3, pmax) if p % 4 == 3]
    return primes_between(3, pmax)  # carlitz, chapman, chapman-star


def run_check(check_id: str, p: int, opts: dict | None = None) -> list[CheckResult]:
    """Run one check for one prime; pure, deterministic, picklable."""
    if check_id not in _WORKERS:
        raise ValueError(f"unknown check {check_id!r}")
    return _WORKERS[check_id](p, opts or {})


# ---------------------------------------------------------------------------
# spec-level streams
# ---------------------------------------------------------------------------


def verify_theorem_a(pmax: int, d_list=None, full_sweep: bool = False):
    """Theorem check per (p, d): eps(d) S(d,p)/a is a perfect square, plus the
    vanishing and sign-transport side conditions."""
    opts = {"d_list": d_list, "full_sweep": full_sweep}
    for p in applicable_primes("theorem-a", pmax):
        yield from _check_theorem_a(p, opts)


def verify_corollary_a(pmax: int):
    for p in applicable_primes("corollary-a", pmax):
        yield from _check_corollary_a(p, {})


def verify_conjecture_a(pmax: int):
    for p in applicable_primes("conjecture-a", pmax):
        yield from _check_conjecture_a(p, {})


def verify_background(pmax: int, precision_bits: int = 128):
    """Carlitz characteristic polynomial and both Chapman variants per prime."""
    opts = {"precision_bits": precision_bits}
    for p in applicable_primes("carlitz", pmax):
        yield from _check_carlitz(p, opts)
        yield from _check_chapman(p, opts, star=False)
        yield from _check_chapman(p, opts, star=True)


# ---------------------------------------------------------------------------
# witness re-validation
# ---------------------------------------------------------------------------


def revalidate(result: CheckResult) -> bool:
    """Re-check a pass-result witness by independent arithmetic on the recorded
    decimal strings (no determinant recomputation)."""
    if result.status != "pass":
        return True
    w = {k: v for k, v in result.witness.items()}
    p = result.p
    cid = result.check_id
    if cid == "theorem-a":
        ctx = PrimeCtx.for_prime(p)
        d = result.params["d"]
        s_val, a, eps = int(w["S"]), int(w["a"]), int(w["eps"])
        if ctx.epsilon(d) != eps or ctx.decomp.a != a:
            return False
        quotient, rem = divmod(eps * s_val, a)
        if rem != 0 or int(w["root"]) ** 2 != quotient:
            return False
        ld = ctx.legendre(d)
        if ld == -1:
            return s_val == 0
        if ld == 1:
            return int(w["sign"]) == perm_sign_cycles(ctx, d) and s_val == int(
                w["sign"]
            ) * int(w["S1"])
        return True
    if cid == "corollary-a":
        star, s_val, a = int(w["Sstar"]), int(w["S"]), int(w["a"])
        return int(w["root"]) ** 2 == -star and star * a == -s_val
    if cid == "conjecture-a":
        return int(w["root"]) ** 2 == -int(w["S"])
    if cid == "lemma-sign":
        return int(w["mismatches"]) == 0
    if cid == "eigen":
        residual = float(w["residual"])
        return (
            w["vandermonde"] == "1"
            and float(w["max_imag_rel"]) <= charsums.IMAG_REL_TOL
            and (w["mode"] == "exact" or residual < charsums.RESIDUAL_TOL)
        )
    if cid == "product":
        return int(w["prod"]) == int(w["det"])
    if cid == "jacobsthal":
        ctx = PrimeCtx.for_prime(p)
        return int(w["sum"]) == -int(w["a"]) and jacobsthal_sum(ctx) == int(w["sum"])
    if cid == "row-identity":
        return int(w["a"]) == PrimeCtx.for_prime(p).decomp.a
    if cid == "carlitz":
        return json.loads(w["coeffs"]) == json.loads(w["expected"]) == list(
            _carlitz_expected(p).coeffs
        )
    if cid in ("chapman", "chapman-star"):
        if json.loads(w["coeffs"]) != json.loads(w["expected"]):
            return False
        if p % 4 == 1:
            u, v, h = int(w["u"]), int(w["v"]), int(w["h"])
            if (u * u - p * v * v) // 4 != int(w["norm"]) or int(w["norm"]) not in (1, -1):
                return False
            eps_h = quadfield.unit_pow(quadfield.QuadUnit(u, v), h, p)
            if (eps_h.u, eps_h.v) != (int(w["uh"]), int(w["vh"])):
                return False
        return True
    if cid == "sun-zero":
        return int(w["S"]) == 0
    if cid == "sun-qr":
        ctx = PrimeCtx.for_prime(p)
        return ctx.legendre(-int(w["S"])) >= 0
    raise ValueError(f"unknown check {cid!r}")


# ---------------------------------------------------------------------------
# cache, run configuration, output
# ---------------------------------------------------------------------------


def code_version() -> str:
    """Short hash of the package source, part of every cache key."""
    digest = hashlib.sha256()
    pkg = Path(__file__).parent
    for f in sorted(pkg.glob("*.py")):
        digest.update(f.name.encode())
        digest.update(f.read_bytes())
    return digest.hexdigest()[:12]


class ResultCache:
    """Append-only JSON Lines cache, one line per task, keyed by
    (check_id, p, params, code version).  Stale-version lines are kept but
    ignored on load."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.version = code_version()
        self._records: dict[str, list[dict]] = {}
        if self.path.exists():
            for line in self.path.read_text().splitlines():
                if not line.strip():
                    continue
                rec = json.loads(line)
                if rec.get("version") != self.version:
                    continue
                self._records[rec["task"]] = rec["results"]

    def get(self, task_key: str) -> list[CheckResult] | None:
        recs = self._records.get(task_key)
        if recs is None:
            return None
        return [CheckResult.from_record(r) for r in recs]

    def put(self, task_key: str, results: list[CheckResult]) -> None:
        recs = [r.to_record() for r in results]
        self._records[task_key] = recs
        with self.path.open("a") as fh:
            fh.write(
                json.dumps(
                    {"version": self.version, "task": task_key, "results": recs},
                    separators=(",", ":"),
                )
                + "\n"
            )


@dataclass
class RunConfig:
    checks: tuple[str, ...] = CHECK_IDS
    pmax: int | None = None                  # None: per-check defaults
    d_list: list[int] | None = None
    jobs: int = 1
    fmt: str = "text"                        # json | csv | text
    cache_path: str | None = None
    precision_bits: int = 128
    full_d_sweep: bool = False


def _task_key(check_id: str, p: int, opts: dict) -> str:
    rel = {
        k: opts[k]
        for k in ("d_list", "full_sweep", "precision_bits")
        if opts.get(k) not in (None, False)
    }
    return f"{check_id}|{p}|{json.dumps(rel, sort_keys=True)}"


def _run_task(args) -> list[CheckResult]:
    check_id, p, opts = args
    return run_check(check_id, p, opts)


def _emit(result: CheckResult, fmt: str, out) -> None:
    if fmt == "json":
        out.write(result.to_json() + "\n")
    elif fmt == "csv":
        params = json.dumps(result.params, sort_keys=True) if result.params else ""
        wit = json.dumps(result.witness, separators=(",", ":"))
        csv.writer(out).writerow(
            [result.check_id, result.p, params, result.status, wit]
        )
    else:
        extra = " ".join(f"{k}={_short(v)}" for k, v in result.witness.items())
        params = (
            " ".join(f"{k}={v}" for k, v in result.params.items()) if result.params else ""
        )
        out.write(
            f"{result.status.upper():<5} {result.check_id:<13} p={result.p:<6} {params:<8} {extra}\n"
        )


def _short(v: str, limit: int = 40) -> str:
    return v if len(v) <= limit else v[: limit - 3] + "..."


def run(config: RunConfig, out=None) -> int:
    """Execute the configured checks; returns 0 iff no check failed."""
    out = out or sys.stdout
    cache = ResultCache(config.cache_path) if config.cache_path else None
    opts = {
        "d_list": config.d_list,
        "full_sweep": config.full_d_sweep,
        "precision_bits": config.precision_bits,
    }
    tasks = []
    for check_id in config.checks:
        pmax = config.pmax if config.pmax is not None else default_pmax(check_id)
        for p in applicable_primes(check_id, pmax):
            tasks.append((check_id, p, opts))

    if config.fmt == "csv":
        out.write("check_id,p,params,status,witness\n")

    results_by_task: dict[int, list[CheckResult]] = {}
    pending = []
    for idx, task in enumerate(tasks):
        key = _task_key(task[0], task[1], task[2])
        cached = cache.get(key) if cache else None
        if cached is not None:
            results_by_task[idx] = cached
        else:
            pending.append((idx, key, task))

    if pending:
        if config.jobs > 1:
            with ProcessPoolExecutor(max_workers=config.jobs) as pool:
                computed = list(pool.map(_run_task, [t for _, _, t in pending]))
        else:
            computed = [_run_task(t) for _, _, t in pending]
        for (idx, key, _), results in zip(pending, computed):
            results_by_task[idx] = results
            if cache:
                cache.put(key, results)

    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for idx in range(len(tasks)):
        for result in results_by_task[idx]:
            counts[result.status] += 1
            _emit(result, config.fmt, out)

    total = sum(counts.values())
    out.write(
        f"# checks run: {total}  passed: {counts['pass']}  "
        f"failed: {counts['fail']}  skipped: {counts['skipped']}\n"
    )
    return 0 if counts["fail"] == 0 else 1
