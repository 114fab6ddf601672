"""Command-line front end: generate, sparsify, estimate, evaluate, benchmark.

Exit codes: 0 on success, 1 on usage errors, 2 on validation or numeric
failures.  All outputs are UTF-8 CSV or JSON; randomness flows from the
--seed flags through per-stage derived streams.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from .density import DensityEstimate  # noqa: F401  (re-exported pipeline type)
from .eig import (
    DEFAULT_DENSE_CAP,
    Spectrum,
    eig_sym_dense,
    frobenius_norm,
    nuclear_norm_sym,
    spectral_norm_sym,
    wasserstein1,
)
from .errors import SpecsparseError
from .graph import WeightedGraph, dump_edge_list, load_edge_list, normalized_adjacency
from .greedy import greedy_nuclear_sparsify
from .instances import (
    coupon_cover_draws,
    coupon_pair_graph,
    erdos_renyi,
    paired_block_instance,
    tiled_er_instance,
    weighted_erdos_renyi,
)
from .randwalk import (
    default_nuclear_samples,
    default_spectral_samples,
    rw_nuclear_sparsify,
    rw_spectral_sparsify,
)
from .sde import SdeRun, format_spectrum, sde_deterministic, sde_randomized
from .seeding import derive_seed
from .session import QuerySession
from .sparse import SparseSymMatrix

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="specsparse")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate an instance graph")
    gen.add_argument("--kind", required=True, choices=["er", "wer", "tiled", "paired", "coupon"])
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--p", type=float, default=0.5)
    gen.add_argument("--eps", type=float, default=0.25)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.add_argument("--meta", help="JSON sidecar describing hidden structure")

    spar = sub.add_parser("sparsify", help="sparsify a graph's normalized adjacency")
    spar.add_argument("--graph", required=True)
    spar.add_argument("--eps", type=float, required=True)
    spar.add_argument("--method", required=True, choices=["greedy", "rw-nuclear", "rw-spectral"])
    spar.add_argument("--samples", type=int, help="override the query budget T")
    spar.add_argument("--seed", type=int, default=0)
    spar.add_argument("--fail-prob", type=float, default=1.0 / 3.0)
    spar.add_argument("--out", required=True)
    spar.add_argument("--stats", help="JSON stats output")
    spar.add_argument("--validate", action="store_true")
    spar.add_argument("--dense-cap", type=int, default=DEFAULT_DENSE_CAP)

    sde = sub.add_parser("sde", help="estimate the spectral density")
    sde.add_argument("--graph", required=True)
    sde.add_argument("--eps", type=float, required=True)
    sde.add_argument("--mode", required=True, choices=["deterministic", "randomized"])
    sde.add_argument("--seed", type=int, default=0)
    sde.add_argument("--probes", type=int)
    sde.add_argument("--out", required=True)
    sde.add_argument("--summary", help="JSON run summary output")
    sde.add_argument("--validate", action="store_true")
    sde.add_argument("--dense-cap", type=int, default=DEFAULT_DENSE_CAP)

    ev = sub.add_parser("eval", help="compare stored artifacts")
    ev.add_argument("--matrix-a")
    ev.add_argument("--matrix-b")
    ev.add_argument("--spectrum-a")
    ev.add_argument("--spectrum-b")
    ev.add_argument("--dense-cap", type=int, default=DEFAULT_DENSE_CAP)
    ev.add_argument("--out")

    bench = sub.add_parser("bench", help="run a benchmark grid from a config file")
    bench.add_argument("--config", required=True)
    bench.add_argument("--out", required=True)
    return parser


# -- helpers ------------------------------------------------------------------


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _load_graph(path: str) -> WeightedGraph:
    return load_edge_list(Path(path).read_text(encoding="utf-8"))


def _load_spectrum(path: str) -> Spectrum:
    values = [float(line) for line in Path(path).read_text().split() if line.strip()]
    return Spectrum(np.sort(np.asarray(values)))


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


# -- subcommands ----------------------------------------------------------------


def _cmd_gen(args) -> int:
    meta: dict = {"kind": args.kind, "seed": args.seed}
    if args.kind == "er":
        graph = erdos_renyi(args.n, args.p, args.seed)
        meta.update(n=args.n, p=args.p)
    elif args.kind == "wer":
        graph = weighted_erdos_renyi(args.n, args.p, args.seed)
        meta.update(n=args.n, p=args.p)
    elif args.kind == "tiled":
        graph = tiled_er_instance(args.n, args.eps, args.seed)
        meta.update(n=args.n, eps=args.eps)
    elif args.kind == "paired":
        b = max(2, int(1.0 / (args.eps * args.eps)))
        n = (args.n // (2 * b)) * (2 * b)
        if n == 0:
            raise SpecsparseError(f"n={args.n} is below one block pair (2b = {2 * b})")
        inst = paired_block_instance(n, args.eps, args.seed, b=b)
        graph = inst.graph
        meta.update(
            n=n,
            requested_n=args.n,
            eps=args.eps,
            b=inst.b,
            k=inst.k,
            bits=inst.bits.astype(int).tolist(),
            group_layout="block r occupies [2rb, 2rb+2b); group 1 first",
        )
    else:
        graph = coupon_pair_graph(args.n, args.seed)
        meta.update(pairs=args.n, n=2 * args.n)
    _write(args.out, dump_edge_list(graph))
    if args.meta:
        _write(args.meta, json.dumps(meta, indent=2) + "\n")
    return EXIT_OK


def _sparsify_once(graph, method, eps, seed, samples, fail_prob):
    session = QuerySession(graph, rng_seed=seed)
    t0 = time.perf_counter()
    if method == "greedy":
        out = greedy_nuclear_sparsify(session, eps)
    elif method == "rw-nuclear":
        out = rw_nuclear_sparsify(session, eps, T=samples)
    else:
        out = rw_spectral_sparsify(session, eps, p_fail=fail_prob, T=samples)
    return out, session, time.perf_counter() - t0


def _cmd_sparsify(args) -> int:
    graph = _load_graph(args.graph)
    out, session, wall = _sparsify_once(
        graph, args.method, args.eps, args.seed, args.samples, args.fail_prob
    )
    _write(args.out, out.dumps())
    if args.stats:
        stats = {
            "method": args.method,
            "eps": args.eps,
            "seed": args.seed,
            "n": graph.n,
            "nnz": out.nnz,
            "max_row_nnz": out.max_row_nnz(),
            "neighbor_queries": session.neighbor_queries,
            "edge_queries": session.edge_queries,
            "random_queries": session.random_queries,
            "wall_time_s": wall,
        }
        if args.validate and graph.n <= args.dense_cap:
            diff = out.diff(normalized_adjacency(graph))
            stats["frobenius_error"] = frobenius_norm(diff)
            stats["nuclear_error"] = nuclear_norm_sym(diff, dense_cap=args.dense_cap)
            stats["spectral_error"] = spectral_norm_sym(diff, dense_cap=args.dense_cap)
        _write(args.stats, json.dumps(stats, indent=2) + "\n")
    return EXIT_OK


def _cmd_sde(args) -> int:
    graph = _load_graph(args.graph)
    session = QuerySession(graph, rng_seed=derive_seed(args.seed, 0))
    if args.mode == "deterministic":
        run = sde_deterministic(session, args.eps)
    else:
        run = sde_randomized(session, args.eps, seed=args.seed, probes=args.probes)
    _write(args.out, format_spectrum(run.spectrum))
    if args.validate and graph.n <= args.dense_cap:
        oracle = eig_sym_dense(normalized_adjacency(graph), dense_cap=args.dense_cap)
        run.summary["w1_vs_dense"] = wasserstein1(run.spectrum, oracle)
    if args.summary:
        _write(args.summary, json.dumps(run.summary, indent=2) + "\n")
    return EXIT_OK


def _cmd_eval(args) -> int:
    report: dict = {}
    if args.matrix_a or args.matrix_b:
        if not (args.matrix_a and args.matrix_b):
            raise SpecsparseError("--matrix-a and --matrix-b must be given together")
        a = SparseSymMatrix.loads(Path(args.matrix_a).read_text())
        b = SparseSymMatrix.loads(Path(args.matrix_b).read_text())
        diff = a.diff(b)
        report["frobenius_diff"] = frobenius_norm(diff)
        report["nuclear_diff"] = nuclear_norm_sym(diff, dense_cap=args.dense_cap)
        report["spectral_diff"] = spectral_norm_sym(diff, dense_cap=args.dense_cap)
    if args.spectrum_a or args.spectrum_b:
        if not (args.spectrum_a and args.spectrum_b):
            raise SpecsparseError("--spectrum-a and --spectrum-b must be given together")
        sa = _load_spectrum(args.spectrum_a)
        sb = _load_spectrum(args.spectrum_b)
        report["w1"] = wasserstein1(sa, sb)
    if not report:
        raise SpecsparseError("nothing to evaluate; pass matrices and/or spectra")
    text = json.dumps(report, indent=2) + "\n"
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- bench ---------------------------------------------------------------------


def _parse_config(text: str) -> dict[str, str]:
    config: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise SpecsparseError(f"config line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        config[key.strip()] = value.strip()
    return config


def _config_list(config, key, default, cast):
    raw = config.get(key, default)
    return [cast(part.strip()) for part in str(raw).split(",") if part.strip()]


def _make_graph(kind: str, n: int, p: float, eps: float, seed: int) -> WeightedGraph:
    if kind == "er":
        return erdos_renyi(n, p, seed)
    if kind == "wer":
        return weighted_erdos_renyi(n, p, seed)
    if kind == "tiled":
        return tiled_er_instance(n, eps, seed)
    if kind == "cycle":
        return WeightedGraph.from_edges(n, [(i, (i + 1) % n, 1.0) for i in range(n)])
    raise SpecsparseError(f"unknown bench graph kind {kind!r}")


_GRID_COLUMNS = [
    "n", "eps", "method", "seed", "nnz", "neighbor_queries", "random_queries",
    "wall_time_s", "frob_error", "nuclear_error", "w1",
]


def _bench_grid(config) -> tuple[list[str], list[list]]:
    kind = config.get("graph", "er")
    p = float(config.get("p", 0.1))
    validate = config.get("validate", "true").lower() in ("1", "true", "yes")
    dense_cap = int(config.get("dense_cap", DEFAULT_DENSE_CAP))
    ns = _config_list(config, "n", "400", int)
    eps_list = _config_list(config, "eps", "0.5,0.35,0.25", float)
    methods = _config_list(config, "methods", "greedy,rw-nuclear", str)
    num_seeds = int(config.get("seeds", 5))
    base_seed = int(config.get("seed", 0))

    rows = []
    for n in ns:
        graph = _make_graph(kind, n, p, 0.25, derive_seed(base_seed, n))
        dense_ok = validate and n <= dense_cap
        norm = normalized_adjacency(graph) if dense_ok else None
        for eps in eps_list:
            for method in methods:
                for seed in range(num_seeds):
                    row = _bench_cell(graph, norm, n, eps, method, seed, dense_cap)
                    rows.append(row)
    return _GRID_COLUMNS, rows


def _bench_cell(graph, norm, n, eps, method, seed, dense_cap):
    t0 = time.perf_counter()
    w1 = None
    if method in ("greedy", "rw-nuclear", "rw-spectral"):
        out, session, _ = _sparsify_once(graph, method, eps, seed, None, 1.0 / 3.0)
        spectrum = None
    elif method in ("sde-det", "sde-rand"):
        session = QuerySession(graph, rng_seed=derive_seed(seed, 0))
        if method == "sde-det":
            run = sde_deterministic(session, eps)
        else:
            run = sde_randomized(session, eps, seed=seed)
        out = None
        spectrum = run.spectrum
    else:
        raise SpecsparseError(f"unknown bench method {method!r}")
    wall = time.perf_counter() - t0
    frob = nuc = None
    if norm is not None and out is not None:
        diff = out.diff(norm)
        frob = frobenius_norm(diff)
        nuc = nuclear_norm_sym(diff, dense_cap=dense_cap)
    if norm is not None and spectrum is not None:
        w1 = wasserstein1(spectrum, eig_sym_dense(norm, dense_cap=dense_cap))
    return [
        n, eps, method, seed,
        out.nnz if out is not None else None,
        session.neighbor_queries, session.random_queries,
        wall, frob, nuc, w1,
    ]


def _bench_separation(config) -> tuple[list[str], list[list]]:
    """Query budgets of the nuclear vs additive-spectral walk sparsifiers."""
    ns = _config_list(config, "n", "200,400,800,1600", int)
    eps = float(config.get("eps", 0.5))
    p_fail = float(config.get("fail_prob", 1.0 / 3.0))
    rows = []
    for n in ns:
        t_nuc = default_nuclear_samples(n, eps)
        t_spec = default_spectral_samples(n, eps, p_fail)
        rows.append([n, eps, t_nuc, t_spec, t_spec / t_nuc, math.log(2 * n / p_fail)])
    return ["n", "eps", "T_nuclear", "T_spectral", "ratio", "log_2n_over_p"], rows


def _bench_coupon(config) -> tuple[list[str], list[list]]:
    n = int(config.get("n", 1000))
    runs = int(config.get("runs", 200))
    eps = float(config.get("eps", 0.5))
    base_seed = int(config.get("seed", 0))
    reference = n * math.log(n)
    t_nuclear = default_nuclear_samples(n, eps)
    rows = []
    for r in range(runs):
        graph = coupon_pair_graph(n, derive_seed(base_seed, r, 0))
        session = QuerySession(graph, rng_seed=derive_seed(base_seed, r, 1))
        draws = coupon_cover_draws(session)
        rows.append([n, r, draws, reference, t_nuclear])
    return ["n", "run", "draws_to_cover", "n_ln_n", "T_nuclear_eps"], rows


def _cmd_bench(args) -> int:
    config = _parse_config(Path(args.config).read_text(encoding="utf-8"))
    mode = config.get("mode", "grid")
    if mode == "grid":
        header, rows = _bench_grid(config)
    elif mode == "separation":
        header, rows = _bench_separation(config)
    elif mode == "coupon":
        header, rows = _bench_coupon(config)
    else:
        raise SpecsparseError(f"unknown bench mode {mode!r}")
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(x) for x in row))
    _write(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


_COMMANDS = {
    "gen": _cmd_gen,
    "sparsify": _cmd_sparsify,
    "sde": _cmd_sde,
    "eval": _cmd_eval,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except SpecsparseError as exc:
        print(f"specsparse {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except FileNotFoundError as exc:
        print(f"specsparse {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
