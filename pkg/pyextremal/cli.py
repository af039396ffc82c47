"""
Command line interface.
Subcommands: gen, canon, min, verify and bench.
"""

import argparse
import contextlib
import json
import logging
import sys
import time

from rich.console import Console
from rich.table import Table

from pyextremal import vars as v
from pyextremal.bench import parse_grid
from pyextremal.dataset import canonicalize, read_dataset, write_binary, write_text
from pyextremal.generator import GeneratorConfig, generate
from pyextremal.model import Dataset
from pyextremal.pyextremal import ExtremalSetFinder

_LOGGER = logging.getLogger(__name__)

STDIO = "-"


def _engine_list(value):
    """argparse type: comma separated engine names."""
    names = [name.strip() for name in value.split(",") if name.strip()]
    unknown = [name for name in names if name not in v.ENGINE_NAMES]
    if unknown or not names:
        raise argparse.ArgumentTypeError(
            f"unknown engine {', '.join(unknown) or value!r}, "
            f"choose from {', '.join(v.ENGINE_NAMES)}"
        )
    return names


def _float_list(value):
    """argparse type: comma separated floats."""
    try:
        return [float(item) for item in value.split(",")]
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from err


def _positive_int(value):
    """argparse type: an integer of at least 1."""
    try:
        number = int(value)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from err
    if number < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {number}")
    return number


def _open_out(path):
    """Return a context manager yielding a binary output stream."""
    if path in (None, STDIO):
        return contextlib.nullcontext(sys.stdout.buffer)
    return open(path, "wb")


def _write_json(path, payload):
    """Write @payload as JSON to @path, or stdout for '-'."""
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path == STDIO:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as stream:
        stream.write(text)


def _write(dataset, path, fmt):
    with _open_out(path) as stream:
        if fmt == v.FORMAT_BINARY:
            write_binary(dataset, stream)
        else:
            write_text(dataset, stream)
        stream.flush()


def _finder(args):
    """Build the ExtremalSetFinder configured by the common engine flags."""
    options = {}
    for option in (v.OPT_THREADS, v.OPT_BACKEND, v.OPT_SEARCH, v.OPT_RESUME_FRONTIER):
        value = getattr(args, option, None)
        if value is not None:
            options[option] = value
    if getattr(args, "verify_witness", False):
        options[v.OPT_VERIFY_WITNESS] = True
    return ExtremalSetFinder(**options)


def _load(path, canonical_required, remap=None):
    """
    Read @path and return (dataset, remapping, timings). With @remap the
    dataset is canonicalized; otherwise an unsorted dataset raises
    NotCanonicalError when @canonical_required, or is sorted without remap.
    """
    start = time.perf_counter()
    dataset = read_dataset(path)
    parse_ms = (time.perf_counter() - start) * 1000.0
    start = time.perf_counter()
    remapping = None
    if remap is not None:
        dataset, remapping = canonicalize(dataset, remap)
    elif dataset.is_sorted():
        dataset = dataset.as_canonical()
    elif canonical_required:
        raise v.NotCanonicalError(
            f"{path} is not lexicographically sorted, pass --canonicalize"
        )
    else:
        dataset, _ = canonicalize(dataset, v.REMAP_NONE)
    canon_ms = (time.perf_counter() - start) * 1000.0
    return dataset, remapping, {"parse_ms": parse_ms, "canonicalize_ms": canon_ms}


def cmd_gen(args):
    """Generate a synthetic dataset."""
    config = GeneratorConfig(args.n, args.alphabet, args.fmin, args.seed)
    generated = generate(config)
    _write(generated.dataset, args.out, args.format)
    if args.meta_json:
        _write_json(args.meta_json, generated.metadata)
    return v.EXIT_OK


def cmd_canon(args):
    """Canonicalize a dataset file."""
    dataset, remapping = canonicalize(read_dataset(args.input), args.remap)
    _write(dataset, args.out, args.format)
    if args.map_json:
        _write_json(
            args.map_json,
            {
                "mode": remapping.mode,
                "forward": {str(old): new for old, new in remapping.forward.items()},
            },
        )
    return v.EXIT_OK


def cmd_min(args):
    """Write the minimal (or maximal) itemsets of a dataset."""
    remap = args.remap if args.canonicalize else None
    dataset, remapping, timings = _load(args.input, True, remap)
    finder = _finder(args)
    with contextlib.ExitStack() as stack:
        if args.dump_graphs and (args.maximal or args.algo != v.ENGINE_MEMO):
            _LOGGER.warning(
                "Ignoring --dump-graphs: only the %s engine records call graphs",
                v.ENGINE_MEMO,
            )
        elif args.dump_graphs:
            stream = stack.enter_context(
                open(args.dump_graphs, "w", encoding="utf-8")
            )
            finder.set_options(**{v.OPT_DUMP_GRAPHS: stream})
        if args.maximal:
            result = finder.find_maximal(dataset)
        else:
            result = finder.find_minimal(dataset, args.algo)
    retained = result.retained(dataset)
    if remapping is not None:
        retained = [remapping.restore(itemset) for itemset in retained]
    with _open_out(args.out) as stream:
        write_text(Dataset(retained, validate=False), stream)
        stream.flush()
    if args.stats_json:
        report = result.as_dict()
        report["engine"] = result.engine
        report.update(timings)
        _write_json(args.stats_json, report)
    return v.EXIT_OK


def cmd_verify(args):
    """Differential run of engines against each other and the oracle."""
    finder = _finder(args)
    configs = [
        GeneratorConfig(args.n, args.alphabet, fmin, args.seed)
        for fmin in args.fmin_grid
    ]
    disagreement = finder.verify_generated(
        args.algos, args.trials, configs, args.injections
    )
    if disagreement is not None:
        print(f"Disagreement: {disagreement}")
        return v.EXIT_FAILURE
    print(f"{args.trials} trials agreed: {', '.join(args.algos)}")
    return v.EXIT_OK


def render_report(report, preprocess):
    """Return a rich Table for one BenchmarkReport."""
    table = Table(
        title=(
            f"{report.label}: {report.itemsets} itemsets, "
            f"{report.total_items} items, parse {preprocess['parse_ms']:.1f} ms, "
            f"sort {preprocess['canonicalize_ms']:.1f} ms"
        ),
        show_header=True,
        header_style="bold cyan",
    )
    table.add_column("Engine")
    table.add_column("Wall ms", justify="right")
    table.add_column("Speedup", justify="right")
    table.add_column("Range searches", justify="right")
    table.add_column("Reduction", justify="right")
    table.add_column("Subset queries", justify="right")
    table.add_column("Minimal", justify="right")
    for run in report.runs:
        table.add_row(
            run.engine,
            f"{run.wall_ms:.2f}",
            _fmt_ratio(run.speedup),
            str(run.stats.range_search_calls),
            _fmt_ratio(run.range_reduction),
            str(run.stats.subset_queries),
            str(run.result_count),
        )
    return table


def _fmt_ratio(ratio):
    return "-" if ratio is None else f"{ratio:.2f}x"


def _bench_inputs(args):
    """Yield (label, canonical dataset, preprocessing timings)."""
    if args.input:
        dataset, _, timings = _load(args.input, False)
        yield args.input, dataset, timings
        return
    for config in parse_grid(args.gen_grid):
        config.seed = args.seed
        start = time.perf_counter()
        dataset = generate(config).dataset
        gen_ms = (time.perf_counter() - start) * 1000.0
        label = f"g({config.n}, {config.alphabet}, {config.f_min})"
        yield label, dataset, {"parse_ms": gen_ms, "canonicalize_ms": 0.0}


def cmd_bench(args):
    """Benchmark an engine matrix over one dataset or a generated grid."""
    finder = _finder(args)
    console = Console()
    reports = []
    for label, dataset, timings in _bench_inputs(args):
        report = finder.benchmark(dataset, args.algos, args.reps, label)
        console.print(render_report(report, timings))
        entry = report.as_dict()
        entry.update(timings)
        reports.append(entry)
    if args.json_out:
        _write_json(args.json_out, {"reports": reports})
    return v.EXIT_OK


def _add_engine_flags(parser):
    parser.add_argument("--threads", type=_positive_int, default=None)
    parser.add_argument(
        "--backend", choices=(v.BACKEND_PROCESS, v.BACKEND_THREAD), default=None
    )
    parser.add_argument(
        "--search", choices=(v.SEARCH_BINARY, v.SEARCH_GALLOPING), default=None
    )
    parser.add_argument(
        "--resume-frontier", action=argparse.BooleanOptionalAction, default=None
    )


def build_parser():
    """Return the argument parser."""
    parser = argparse.ArgumentParser(
        prog="pyextremal", description="Minimal itemset identification"
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v info, -vv debug"
    )
    commands = parser.add_subparsers(dest="command", required=True)
    formats = (v.FORMAT_TEXT, v.FORMAT_BINARY)

    gen = commands.add_parser("gen", help="generate a synthetic dataset")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--alphabet", type=int, required=True)
    gen.add_argument("--fmin", type=float, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default=STDIO)
    gen.add_argument("--format", choices=formats, default=v.FORMAT_TEXT)
    gen.add_argument("--meta-json", default=None)
    gen.set_defaults(func=cmd_gen)

    canon = commands.add_parser("canon", help="sort and optionally remap items")
    canon.add_argument("--in", dest="input", required=True)
    canon.add_argument("--out", default=STDIO)
    canon.add_argument("--remap", choices=v.REMAP_MODES, default=v.REMAP_NONE)
    canon.add_argument("--format", choices=formats, default=v.FORMAT_TEXT)
    canon.add_argument("--map-json", default=None)
    canon.set_defaults(func=cmd_canon)

    minimal = commands.add_parser("min", help="write the minimal itemsets")
    minimal.add_argument("--in", dest="input", required=True)
    minimal.add_argument("--algo", choices=v.ENGINE_NAMES, default=v.ENGINE_LEX)
    minimal.add_argument("--out", default=STDIO)
    minimal.add_argument("--stats-json", default=None)
    minimal.add_argument("--canonicalize", action="store_true")
    minimal.add_argument("--remap", choices=v.REMAP_MODES, default=v.REMAP_NONE)
    minimal.add_argument("--maximal", action="store_true")
    minimal.add_argument("--dump-graphs", default=None)
    minimal.add_argument("--verify-witness", action="store_true")
    _add_engine_flags(minimal)
    minimal.set_defaults(func=cmd_min)

    verify = commands.add_parser("verify", help="differential engine check")
    verify.add_argument(
        "--algos", type=_engine_list, default=list(v.ENGINE_NAMES)
    )
    verify.add_argument("--trials", type=_positive_int, default=50)
    verify.add_argument("--n", type=int, default=150)
    verify.add_argument("--alphabet", type=_positive_int, default=12)
    verify.add_argument("--fmin-grid", type=_float_list, default=[0.5, 0.7, 0.9])
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--injections", type=int, default=10)
    _add_engine_flags(verify)
    verify.set_defaults(func=cmd_verify)

    bench = commands.add_parser("bench", help="benchmark an engine matrix")
    source = bench.add_mutually_exclusive_group(required=True)
    source.add_argument("--in", dest="input", default=None)
    source.add_argument("--gen-grid", default=None)
    bench.add_argument(
        "--algos",
        type=_engine_list,
        default=[v.ENGINE_LEX, v.ENGINE_MEMO, v.ENGINE_PARALLEL],
    )
    bench.add_argument("--reps", type=_positive_int, default=v.DEFAULT_BENCH_REPS)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--json-out", default=None)
    _add_engine_flags(bench)
    bench.set_defaults(func=cmd_bench, resume_frontier=True)
    return parser


def main(argv=None):
    """Run the command line interface and return the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except v.NotCanonicalError as err:
        _LOGGER.error("%s", err)
        return v.EXIT_USAGE
    except (OSError, v.DatasetFormatError, RuntimeError) as err:
        _LOGGER.error("%s failed: %s", args.command, err)
        return v.EXIT_FAILURE
    except ValueError as err:
        _LOGGER.error("Invalid %s arguments: %s", args.command, err)
        return v.EXIT_USAGE
