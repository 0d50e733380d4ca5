"""Command-line front end: build filtered complexes and diagrams from the
built-in models or a CSV point cloud, query persistent Betti numbers, and run
the Delaunay-equivalence self-check.

All outputs are plain files in --out: complex.json, diagram.json, diagram.csv,
one diagram_<k>.svg per homology dimension, and run_meta.json.  Runs are
deterministic for a fixed --seed (every random draw is derived from it with a
labelled splitter), so complex.json and diagram.json are byte-identical across
reruns; run_meta.json carries wall-clock time and is not.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .cells import delaunay_membership
from .density import covering_radius, fit_bandwidths, neg_log_density, select_landmarks_maxmin
from .filtration import FilteredComplex, build_complex, sorted_filtration
from .geometry import ConvexDomain, LandmarkSet, Objective, ToleranceConfig, validate
from .homology import PersistenceDiagram, persistent_betti, reduce
from .models import (
    MODEL_NAMES,
    config3_candidate_pool,
    config3_objective,
    figure1_model,
    ising_landmarks,
    ising_objective,
)
from .seeding import subseed

__all__ = ["main", "read_points_csv", "write_run", "load_diagram"]


# --------------------------------------------------------------------------
# file formats
# --------------------------------------------------------------------------

def read_points_csv(path: str | Path) -> np.ndarray:
    """Read a point cloud: one point per line, comma-separated floats, with an
    optional single header line."""
    rows: list[list[float]] = []
    with open(path, newline="") as fh:
        for lineno, rec in enumerate(csv.reader(fh)):
            rec = [tok.strip() for tok in rec if tok.strip() != ""]
            if not rec:
                continue
            try:
                rows.append([float(tok) for tok in rec])
            except ValueError:
                if lineno == 0:
                    continue  # header
                raise ValueError(f"{path}: non-numeric row {lineno + 1}: {rec}")
    if not rows:
        raise ValueError(f"{path}: no data rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError(f"{path}: inconsistent column counts")
    return np.asarray(rows, dtype=float)


def _death_repr(death: float):
    return "inf" if np.isinf(death) else death


def diagram_to_dict(diagram: PersistenceDiagram) -> dict:
    points = sorted(diagram.points, key=lambda p: (p[0], p[1], p[2]))
    zeros = sorted(diagram.zero_pairs, key=lambda p: (p[0], p[1]))
    return {
        "points": [
            {"dim": int(k), "birth": float(b), "death": _death_repr(float(d))}
            for k, b, d in points
        ],
        "zero_pairs": [{"dim": int(k), "value": float(v)} for k, v in zeros],
    }


def load_diagram(path: str | Path) -> PersistenceDiagram:
    """Read diagram.json or diagram.csv back into a PersistenceDiagram."""
    path = Path(path)
    points = []
    if path.suffix == ".csv":
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if [h.strip() for h in header] != ["dim", "birth", "death"]:
                raise ValueError(f"{path}: expected header dim,birth,death")
            for rec in reader:
                if not rec:
                    continue
                points.append((int(rec[0]), float(rec[1]), float(rec[2])))
        return PersistenceDiagram(tuple(points), ())
    blob = json.loads(path.read_text())
    for p in blob["points"]:
        points.append((int(p["dim"]), float(p["birth"]), float(p["death"])))
    zeros = tuple((int(z["dim"]), float(z["value"])) for z in blob.get("zero_pairs", ()))
    return PersistenceDiagram(tuple(points), zeros)


def complex_to_dict(cx: FilteredComplex, landmarks: LandmarkSet) -> dict:
    simplices = [
        {
            "vertices": list(s),
            "value": float(cx.value(s)),
            "flagged": bool(cx.flagged(s)),
        }
        for s in sorted(cx.simplices, key=lambda s: (len(s), s))
    ]
    return {
        "dim": landmarks.dim,
        "landmarks": [list(map(float, p)) for p in landmarks.points],
        "simplices": simplices,
    }


def _svg_diagram(points: list[tuple[float, float]], k: int) -> str:
    """Birth-death scatter for one dimension as a static SVG: diagonal, finite
    points as filled dots, essential classes as open dots pinned to the top."""
    size, margin = 420, 52
    finite = [v for bd in points for v in bd if np.isfinite(v)]
    lo = min(finite, default=0.0)
    hi = max(finite, default=1.0)
    if hi - lo < 1e-12:
        lo, hi = lo - 0.5, hi + 0.5
    pad = 0.08 * (hi - lo)
    lo, hi = lo - pad, hi + pad
    span = hi - lo
    inner = size - 2 * margin

    def sx(v: float) -> float:
        return margin + (v - lo) / span * inner

    def sy(v: float) -> float:
        return size - margin - (v - lo) / span * inner

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<line x1="{margin}" y1="{size - margin}" x2="{size - margin}" y2="{size - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{size - margin}" stroke="black"/>',
        f'<line x1="{sx(lo):.2f}" y1="{sy(lo):.2f}" x2="{sx(hi):.2f}" y2="{sy(hi):.2f}" '
        'stroke="#999999" stroke-dasharray="4 3"/>',
        f'<text x="{size / 2:.0f}" y="{size - 12}" text-anchor="middle" font-size="13">birth</text>',
        f'<text x="14" y="{size / 2:.0f}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 14 {size / 2:.0f})">death</text>',
        f'<text x="{size / 2:.0f}" y="24" text-anchor="middle" font-size="14">dimension {k}</text>',
    ]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        v = lo + frac * span
        out.append(
            f'<text x="{sx(v):.2f}" y="{size - margin + 18}" text-anchor="middle" '
            f'font-size="10">{v:.4g}</text>'
        )
        out.append(
            f'<text x="{margin - 8}" y="{sy(v) + 3:.2f}" text-anchor="end" '
            f'font-size="10">{v:.4g}</text>'
        )
    for b, d in sorted(points):
        if np.isfinite(d):
            out.append(f'<circle cx="{sx(b):.2f}" cy="{sy(d):.2f}" r="3.5" fill="#1f6fb4"/>')
        else:
            out.append(
                f'<circle cx="{sx(b):.2f}" cy="{margin:.2f}" r="3.5" fill="white" '
                'stroke="#b42318" stroke-width="1.6"/>'
            )
    if any(not np.isfinite(d) for _, d in points):
        out.append(
            f'<text x="{size - margin}" y="{margin - 8}" text-anchor="end" '
            'font-size="10" fill="#b42318">open = eventually immortal</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_run(
    out_dir: str | Path,
    cx: FilteredComplex,
    diagram: PersistenceDiagram,
    landmarks: LandmarkSet,
    meta: dict,
) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "complex.json").write_text(
        json.dumps(complex_to_dict(cx, landmarks), indent=2, sort_keys=True) + "\n"
    )
    dg = diagram_to_dict(diagram)
    (out / "diagram.json").write_text(json.dumps(dg, indent=2, sort_keys=True) + "\n")
    with open(out / "diagram.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["dim", "birth", "death"])
        for p in dg["points"]:
            writer.writerow([p["dim"], repr(p["birth"]), p["death"] if p["death"] == "inf" else repr(p["death"])])
    dims = sorted({p["dim"] for p in dg["points"]})
    for k in dims:
        pts = [
            (p["birth"], np.inf if p["death"] == "inf" else p["death"])
            for p in dg["points"]
            if p["dim"] == k
        ]
        (out / f"diagram_{k}.svg").write_text(_svg_diagram(pts, k))
    (out / "run_meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


# --------------------------------------------------------------------------
# model / landmark resolution
# --------------------------------------------------------------------------

def _parse_landmark_source(text: str | None):
    if text is None:
        return None
    for prefix in ("maxmin", "ising-lowest"):
        if text.startswith(prefix + ":"):
            count = text[len(prefix) + 1 :]
            try:
                k = int(count)
            except ValueError:
                raise ValueError(f"landmark count in {text!r} is not an integer")
            if k < 1:
                raise ValueError(f"landmark count must be positive, got {k}")
            return (prefix, k)
    return ("file", text)


def _resolve_inputs(args) -> tuple[Objective, ConvexDomain, LandmarkSet, dict]:
    """Turn CLI flags into validated core inputs plus metadata about choices."""
    model = args.model
    data = read_points_csv(args.data) if args.data else None
    if model is None:
        if data is None:
            raise ValueError("either --model or --data is required")
        model = "density"
    if model not in MODEL_NAMES:
        raise ValueError(f"unknown model {model!r}; choose from {', '.join(MODEL_NAMES)}")
    source = _parse_landmark_source(args.landmarks)
    meta: dict = {"model": model}
    sample = None  # candidate pool a maxmin selection was drawn from

    if model == "figure1":
        objective, domain, lms = figure1_model()
        if source is not None:
            raise ValueError("figure1 has fixed landmarks; --landmarks is not accepted")
    elif model in ("ising_interval", "ising_circle"):
        circular = model == "ising_circle"
        objective, domain = ising_objective(args.sites, circular=circular)
        meta["sites"] = args.sites
        if source is None:
            source = ("ising-lowest", 20)
        kind, value = source
        if kind == "ising-lowest":
            lms = ising_landmarks(args.sites, value, circular=circular)
            meta["landmark_source"] = f"ising-lowest:{value}"
        elif kind == "file":
            lms = LandmarkSet(read_points_csv(value))
            meta["landmark_source"] = f"file:{value}"
        else:
            raise ValueError("ising models take --landmarks ising-lowest:K or a file path")
    elif model == "config3":
        objective, domain = config3_objective()
        if source is None:
            source = ("maxmin", 100)
        kind, value = source
        if kind == "maxmin":
            sample = config3_candidate_pool(args.pool, rng_seed=subseed(args.seed, "pool"))
            lms = select_landmarks_maxmin(
                sample, value, seed_count=args.seed_count, rng_seed=subseed(args.seed, "landmarks")
            )
            meta["landmark_source"] = f"maxmin:{value}"
            meta["candidate_pool"] = args.pool
        elif kind == "file":
            lms = LandmarkSet(read_points_csv(value))
            meta["landmark_source"] = f"file:{value}"
        else:
            raise ValueError("config3 takes --landmarks maxmin:K or a file path")
    else:  # density
        if data is None:
            raise ValueError("the density model needs --data <csv>")
        model_fit = fit_bandwidths(data, args.h)
        objective = neg_log_density(model_fit)
        domain = ConvexDomain.full_space(data.shape[1])
        meta["h"] = args.h
        meta["n_data"] = int(data.shape[0])
        if source is None:
            raise ValueError("the density model needs --landmarks maxmin:K or a file path")
        kind, value = source
        if kind == "maxmin":
            sample = data
            lms = select_landmarks_maxmin(
                data, value, seed_count=args.seed_count, rng_seed=subseed(args.seed, "landmarks")
            )
            meta["landmark_source"] = f"maxmin:{value}"
        elif kind == "file":
            lms = LandmarkSet(read_points_csv(value))
            meta["landmark_source"] = f"file:{value}"
        else:
            raise ValueError("density takes --landmarks maxmin:K or a file path")

    if sample is not None:
        meta["covering_radius"] = float(covering_radius(lms, sample))
    return objective, domain, lms, meta


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def cmd_build(args) -> int:
    try:
        objective, domain, lms, meta = _resolve_inputs(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    tol = ToleranceConfig(
        tol_feas=args.tol_feas, n_starts=args.n_starts, max_dim=args.max_dim
    )
    report = validate(lms, domain, objective, tol)
    if not report.ok:
        print(report.summary(), file=sys.stderr)
        return 1

    t0 = time.time()
    cx = build_complex(
        lms, domain, objective, tol=tol, rng_seed=subseed(args.seed, "build"), progress=args.progress
    )
    diagram = reduce(sorted_filtration(cx))
    wall = time.time() - t0

    meta.update(
        {
            "seed": args.seed,
            "n_landmarks": lms.n,
            "max_dim": tol.max_dim if tol.max_dim is not None else lms.dim,
            "n_starts": tol.n_starts,
            "tol_feas": tol.tol_feas,
            "n_simplices": len(cx),
            "n_diagram_points": len(diagram.points),
            "wall_time_s": round(wall, 3),
            "version": __version__,
        }
    )
    write_run(args.out, cx, diagram, lms, meta)
    print(f"wrote {len(cx)} simplices, {len(diagram.points)} diagram points to {args.out}")
    return 0


def cmd_betti(args, parser: argparse.ArgumentParser) -> int:
    if args.a > args.b:
        parser.error(f"--a must be <= --b (got a={args.a}, b={args.b})")
    try:
        diagram = load_diagram(args.diagram)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: could not read diagram: {exc}", file=sys.stderr)
        return 1
    print(persistent_betti(diagram, args.k, args.a, args.b))
    return 0


def cmd_delaunay_check(args) -> int:
    pts = read_points_csv(args.landmarks)
    lms = LandmarkSet(pts)
    n, d = lms.n, lms.dim
    if n > 12:
        print("error: delaunay-check enumerates all subsets; use at most 12 landmarks", file=sys.stderr)
        return 1
    domain = ConvexDomain.full_space(d)
    objective = Objective(
        dim=d, fn=lambda xs: np.zeros(xs.shape[0]), batched=True, lower_bound=0.0, name="zero"
    )
    tol = ToleranceConfig(tol_feas=args.tol_feas, n_starts=1, max_dim=d)
    cx = build_complex(lms, domain, objective, tol=tol, rng_seed=subseed(args.seed, "build"))
    built = set(cx.simplices)
    oracle = set()
    for k in range(1, d + 2):
        for comb in itertools.combinations(range(n), k):
            if delaunay_membership(comb, lms, tol_feas=args.tol_feas):
                oracle.add(comb)
    if built == oracle:
        print(f"PASS ({len(built)} simplices match the Delaunay oracle)")
        return 0
    print("FAIL")
    for s in sorted(oracle - built):
        print(f"  oracle only: {s}")
    for s in sorted(built - oracle):
        print(f"  built only:  {s}")
    return 1


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="voroplex",
        description="Sublevel-set persistence over landmark Voronoi complexes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a filtered complex and persistence diagram")
    b.add_argument("--model", choices=MODEL_NAMES, help="built-in model name")
    b.add_argument("--data", help="CSV point cloud (one point per line)")
    b.add_argument(
        "--landmarks",
        help="landmark source: a CSV file path, maxmin:K, or ising-lowest:K",
    )
    b.add_argument("--max-dim", type=int, default=None, help="top simplex dimension (default: ambient d)")
    b.add_argument("--seed", type=int, default=0, help="master seed; all randomness derives from it")
    b.add_argument("--tol-feas", type=float, default=1e-9, help="feasibility tolerance")
    b.add_argument("--n-starts", type=int, default=8, help="optimizer starts per cell")
    b.add_argument("--sites", type=int, default=9, help="Ising site count d")
    b.add_argument("--h", type=float, default=50.0, help="density mass parameter h")
    b.add_argument("--pool", type=int, default=20000, help="config3 maxmin candidate pool size")
    b.add_argument("--seed-count", type=int, default=1, help="random picks that start maxmin selection")
    b.add_argument("--progress", action="store_true", help="print per-level build progress")
    b.add_argument("--out", required=True, help="output directory")

    t = sub.add_parser("betti", help="print a persistent Betti number from a diagram file")
    t.add_argument("--diagram", required=True, help="diagram.json or diagram.csv")
    t.add_argument("--k", type=int, required=True, help="homology dimension")
    t.add_argument("--a", type=float, required=True, help="birth cutoff (classes born <= a)")
    t.add_argument("--b", type=float, required=True, help="survival cutoff (classes alive past b)")

    d = sub.add_parser("delaunay-check", help="compare the built complex against the circumsphere oracle")
    d.add_argument("--landmarks", required=True, help="CSV file of landmark points")
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--tol-feas", type=float, default=1e-9)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "build":
        return cmd_build(args)
    if args.command == "betti":
        return cmd_betti(args, parser)
    return cmd_delaunay_check(args)


if __name__ == "__main__":
    sys.exit(main())
