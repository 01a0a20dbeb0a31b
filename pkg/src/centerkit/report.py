"""Per-arrangement analysis reports and the corpus runner."""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from importlib import metadata
from math import gcd
from itertools import combinations
from pathlib import Path

from . import io
from .arrangement import LineArrangement, bounded_faces, center_critical_points
from .corpus import corpus as generate_corpus
from .fiber_graph import GraphConsistencyError, build_graph, build_real_graph, genus, genus_numerator, h1_rank, winding_matrix
from .orbit import verify_orbit_theorem
from .tangent import LogParams, kernel_dimension

SCHEMA = "centerkit.report/1"
EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


def tool_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


def thread_cap() -> int:
    """Worker count: ``CENTERKIT_THREADS`` if set, else the CPU count."""
    env = os.environ.get("CENTERKIT_THREADS", "").strip()
    cpus = os.cpu_count() or 1
    if env:
        try:
            return max(1, min(int(env), cpus))
        except ValueError:
            raise io.InputError(f"CENTERKIT_THREADS must be an integer, got {env!r}") from None
    return cpus


def analyze(arr: LineArrangement, numeric_windings: bool = False, timings: bool = False) -> tuple[dict, int]:
    """Run every check on one arrangement.  Returns ``(report, exit_code)``."""
    clock = {}
    failures = []

    def timed(name, fn):
        t0 = time.perf_counter()
        try:
            return fn()
        finally:
            clock[name] = round(time.perf_counter() - t0, 6)

    rep = {
        "schema": SCHEMA,
        "tool_version": tool_version(),
        "input_hash": io.input_hash(arr),
        "arrangement": arr.to_json(),
        "d": arr.d,
        "n": arr.n,
        "pairwise_coprime": arr.pairwise_coprime,
    }
    try:
        rep["h1_rank"] = timed("rank", lambda: h1_rank(arr))
    except GraphConsistencyError as exc:
        failures.append(f"rank: {exc}")
    num = genus_numerator(arr)
    rep["genus_numerator"] = num
    if num % 2 or num < 0:
        failures.append(f"genus numerator {num} is odd or negative")
    else:
        rep["genus"] = genus(arr)
    G, Gc = build_graph(arr), build_real_graph(arr)
    rep["graphs"] = {
        "G": {"vertices": G.n_vertices, "edges": G.n_edges, "loops": G.n_loops, "betti": G.betti},
        "Gcheck": {"vertices": Gc.n_vertices, "edges": Gc.n_edges, "loops": Gc.n_loops, "betti": Gc.betti},
    }
    faces = bounded_faces(arr)
    rep["faces"] = len(faces)
    rep["saddle_cylinders"] = sum(gcd(arr.multiplicities[i], arr.multiplicities[j]) for i, j in combinations(range(len(arr.lines)), 2))
    cr = timed("centers", lambda: center_critical_points(arr, faces))
    rep["centers"] = [
        {"face": c.face, "x": float(f"{c.x:.12g}"), "y": float(f"{c.y:.12g}"), "value": float(f"{c.value:.12g}")} for c in cr.centers
    ]
    rep["coincident_critical_values"] = [list(p) for p in cr.coincidences]
    try:
        W = timed("windings", lambda: winding_matrix(arr))
        rep["windings"] = {"rank": W.rank, "relation_holds": W.relation_holds()}
    except GraphConsistencyError as exc:
        failures.append(f"windings: {exc}")
    if numeric_windings:
        from .winding_oracle import compare_windings

        dev = timed("numeric_windings", lambda: compare_windings(arr))
        rep["numeric_winding_deviation"] = float(f"{dev:.3e}")
        if dev > 1e-6:
            failures.append(f"numeric windings deviate by {dev:.3e}")
    if arr.pairwise_coprime:
        orb = timed("orbit", lambda: verify_orbit_theorem(arr))
        rep["orbit"] = orb.to_json()
        if not orb.ok:
            failures.append("orbit characterisation failed")
    else:
        rep["orbit"] = {"skipped": "multiplicities are not pairwise coprime"}
    k = timed("tangent", lambda: kernel_dimension(LogParams.from_arrangement(arr)))
    rep["tangent"] = {"kernel_dim": k.dimension, "image_dim": k.image_dimension, "expected_kernel_dim": k.expected}
    if not k.ok:
        failures.append(f"tangent kernel dimension {k.dimension}, expected {k.expected}")
    rep["failures"] = failures
    rep["status"] = "pass" if not failures else "fail"
    if timings:
        rep["timings"] = clock
    return rep, EXIT_OK if not failures else EXIT_VERIFY


def _run_case(args):
    name, data, numeric = args
    if isinstance(data, dict) and "__error__" in data:
        return name, {"schema": SCHEMA, "status": "input-error", "error": data["__error__"]}, EXIT_INPUT
    try:
        arr = io.arrangement_from_json(data, name)
    except io.InputError as exc:
        return name, {"schema": SCHEMA, "status": "input-error", "error": str(exc)}, EXIT_INPUT
    try:
        rep, code = analyze(arr, numeric_windings=numeric)
    except Exception as exc:  # isolate one bad case from the rest
        return name, {"schema": SCHEMA, "status": "error", "error": f"{type(exc).__name__}: {exc}"}, EXIT_VERIFY
    return name, rep, code


def collect_cases(directory=None, seed: int = 0, count: int = 50, degrees=(2, 3, 4, 5), top: int = 6) -> list:
    """``(name, json)`` pairs from a directory of files or a seeded generator."""
    if directory is not None:
        paths = sorted(Path(directory).glob("*.json"))
        cases = []
        for p in paths:
            try:
                cases.append((p.stem, io.load_json(p)))
            except io.InputError as exc:
                cases.append((p.stem, {"__error__": str(exc)}))
        return cases
    return [(f"case{k:03d}", arr.to_json()) for k, arr in enumerate(generate_corpus(seed, count, degrees, top))]


def run_corpus(cases: list, output=None, numeric_windings: bool = False, workers: int | None = None) -> tuple[dict, int]:
    workers = thread_cap() if workers is None else workers
    jobs = [(name, data, numeric_windings) for name, data in cases]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_case, jobs))
    else:
        results = [_run_case(j) for j in jobs]
    rows = []
    code = EXIT_OK
    for name, rep, c in results:
        code = max(code, c)
        rows.append(
            {
                "case": name,
                "status": rep.get("status"),
                "d": rep.get("d"),
                "multiplicities": rep.get("arrangement", {}).get("multiplicities"),
                "h1_rank": rep.get("h1_rank"),
                "genus": rep.get("genus"),
                "orbit_equal": rep.get("orbit", {}).get("equal"),
                "input_hash": rep.get("input_hash"),
            }
        )
        if output is not None:
            out = Path(output)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"{name}.json").write_text(io.dumps(rep))
    summary = {
        "schema": SCHEMA,
        "tool_version": tool_version(),
        "cases": rows,
        "passed": sum(r["status"] == "pass" for r in rows),
        "failed": sum(r["status"] != "pass" for r in rows),
    }
    if output is not None:
        (Path(output) / "summary.json").write_text(io.dumps(summary))
    return summary, code


def summary_table(summary: dict) -> str:
    lines = [f"{'case':<12} {'status':<12} {'d':>2} {'h1':>4} {'genus':>5}  multiplicities"]
    for r in summary["cases"]:
        lines.append(
            f"{r['case']:<12} {str(r['status']):<12} {str(r['d'] or ''):>2} {str(r['h1_rank'] or ''):>4} "
            f"{str(r['genus'] if r['genus'] is not None else ''):>5}  {r['multiplicities']}"
        )
    lines.append(f"passed {summary['passed']}  failed {summary['failed']}")
    return "\n".join(lines)
