"""Command-line interface: ``dlbf {model,simulate,figure,filter}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from pathlib import Path

from .analysis import MODEL_COLUMNS, ModelParams, deletability_curve, model_point
from .errors import ConfigurationError, FilterFormatError, InvalidParamsError
from .figures import DEFAULTS, FIGURES, columns, figure_dataset
from .filters import DeletableBloomFilter, FilterParams
from .serialization import deserialize, serialize
from .simulation import SIMULATION_COLUMNS, ExperimentConfig, run_experiment, run_sbf_baseline, sbf_row


class CliError(Exception):
    pass


def _non_negative_int(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _positive_int(text: str) -> int:
    value = _non_negative_int(text)
    if value == 0:
        raise argparse.ArgumentTypeError("expected a positive integer, got 0")
    return value


def _float_list(text: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("expected at least one value")
    return values


def _int_list(text: str) -> list[int]:
    return [_non_negative_int(part) for part in text.split(",") if part.strip()]


def _int_range(text: str) -> list[int]:
    """``START:STOP[:STEP]``, inclusive of STOP."""
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError(f"expected START:STOP[:STEP], got {text!r}")
    start, stop = _non_negative_int(parts[0]), _non_negative_int(parts[1])
    step = _positive_int(parts[2]) if len(parts) == 3 else 1
    if stop < start:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(start, stop + 1, step))


def _env_seed() -> int:
    raw = os.environ.get("DLBF_SEED")
    if raw is None:
        return 0
    try:
        return _non_negative_int(raw)
    except argparse.ArgumentTypeError as exc:
        raise SystemExit(f"error: DLBF_SEED: {exc}") from None


def _fmt(value):
    if value is None:
        return None
    if isinstance(value, float):
        return float(f"{value:.6g}")
    return value


def render(rows: list[dict], header, fmt: str) -> str:
    rows = [{col: _fmt(row[col]) for col in header} for row in rows]
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(header), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if v is None else f"{v:.6g}" if isinstance(v, float) else v) for k, v in row.items()})
    return buf.getvalue()


def _atomic_write(path: Path, data: bytes) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(args, text: str) -> None:
    if args.out:
        _atomic_write(Path(args.out), text.encode("utf-8"))
    else:
        sys.stdout.write(text)


def cmd_model(args) -> None:
    if args.ratios is not None or args.densities is not None:
        if args.ratios is None or args.densities is None:
            raise CliError("--ratios and --densities must be given together")
        points = deletability_curve(args.m, args.ratios, args.k, args.densities)
    else:
        if args.n is None and args.n_range is None:
            raise CliError("one of --n, --n-range or --ratios/--densities is required")
        ns = [args.n] if args.n is not None else args.n_range
        points = [model_point(ModelParams(m=args.m, r=args.r, k=args.k, n=n)) for n in ns]
    _emit(args, render([p.as_row() for p in points], MODEL_COLUMNS, args.format))


def cmd_simulate(args) -> None:
    seed = args.seed if args.seed is not None else _env_seed()
    params = FilterParams(m=args.m, r=args.r, k=args.k, seed=args.hash_seed)
    rows = []
    for n in args.n:
        config = ExperimentConfig(
            params=params,
            n=n,
            trials=args.trials,
            probes=args.probes,
            master_seed=seed,
            source="wordlist" if args.wordlist else args.source,
            wordlist=args.wordlist,
        )
        rows.append(run_experiment(config, workers=args.workers).as_row())
        if args.baseline == "sbf":
            rows.append(sbf_row(run_sbf_baseline(config, workers=args.workers)))
    _emit(args, render(rows, SIMULATION_COLUMNS, args.format))


def cmd_figure(args) -> None:
    seed = args.seed if args.seed is not None else _env_seed()
    rows = figure_dataset(
        args.id,
        m=args.m,
        k=args.k,
        r=args.r,
        hash_seed=args.hash_seed,
        trials=args.trials,
        probes=args.probes,
        seed=seed,
        ratios=args.ratios,
        densities=args.densities,
        r_values=args.r_values,
        n_values=args.n_values,
        source="wordlist" if args.wordlist else None,
        wordlist=args.wordlist,
        workers=args.workers,
    )
    _emit(args, render(rows, columns(args.id), args.format))


def _load_filter(args) -> DeletableBloomFilter:
    path = Path(args.file)
    if not path.is_file():
        raise CliError(f"filter file {path} does not exist")
    dlbf = deserialize(path.read_bytes())
    for name in ("m", "r", "k"):
        wanted = getattr(args, name, None)
        if wanted is not None and wanted != getattr(dlbf.params, name):
            raise CliError(
                f"--{name} {wanted} does not match the file ({name}={getattr(dlbf.params, name)})"
            )
    return dlbf


def cmd_filter(args) -> None:
    if args.action == "create":
        seed = args.seed if args.seed is not None else _env_seed()
        dlbf = DeletableBloomFilter(FilterParams(m=args.m, r=args.r, k=args.k, seed=seed))
        path = Path(args.file)
        if path.exists() and not args.force:
            raise CliError(f"{path} already exists (use --force to overwrite)")
        _atomic_write(path, serialize(dlbf))
        return
    dlbf = _load_filter(args)
    if args.action == "insert":
        dlbf.insert(args.element)
        _atomic_write(Path(args.file), serialize(dlbf))
    elif args.action == "query":
        print("true" if dlbf.query(args.element) else "false")
    elif args.action == "remove":
        outcome = dlbf.remove(args.element)
        _atomic_write(Path(args.file), serialize(dlbf))
        print(outcome.value)
    elif args.action == "info":
        data, marked = dlbf.bit_counts()
        p = dlbf.params
        print(json.dumps({
            "m": p.m, "r": p.r, "k": p.k, "seed": p.seed,
            "cell_width": p.cell_width, "data_bits_set": data, "regions_marked": marked,
        }))


def _add_output(p) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="write to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dlbf", description="Deletable Bloom filter toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("model", help="evaluate the closed-form model")
    p.add_argument("--m", type=_positive_int, default=DEFAULTS["m"])
    p.add_argument("--r", type=_non_negative_int, default=DEFAULTS["r"])
    p.add_argument("--k", type=_positive_int, default=DEFAULTS["k"])
    group = p.add_mutually_exclusive_group()
    group.add_argument("--n", type=_non_negative_int)
    group.add_argument("--n-range", type=_int_range, metavar="START:STOP[:STEP]")
    p.add_argument("--ratios", type=_float_list, help="comma-separated m/r values")
    p.add_argument("--densities", type=_float_list, help="comma-separated m/n values")
    _add_output(p)
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("simulate", help="run the Monte-Carlo experiment")
    p.add_argument("--m", type=_positive_int, default=DEFAULTS["m"])
    p.add_argument("--r", type=_positive_int, default=DEFAULTS["r"])
    p.add_argument("--k", type=_positive_int, default=DEFAULTS["k"])
    p.add_argument("--n", type=_int_list, required=True, help="elements per trial (comma-separated for several)")
    p.add_argument("--trials", type=_positive_int, default=DEFAULTS["trials"])
    p.add_argument("--probes", type=_positive_int, default=DEFAULTS["probes"])
    p.add_argument("--seed", type=_non_negative_int, help="master seed (default: $DLBF_SEED or 0)")
    p.add_argument("--hash-seed", type=_non_negative_int, default=DEFAULTS["hash_seed"])
    p.add_argument("--source", choices=("synthetic", "wordlist"), default="synthetic")
    p.add_argument("--wordlist", help="newline-delimited UTF-8 file of elements")
    p.add_argument("--baseline", choices=("sbf",), help="also run a standard Bloom filter")
    p.add_argument("--workers", type=_positive_int, default=1)
    _add_output(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("figure", help="emit a figure dataset")
    p.add_argument("--id", required=True, choices=FIGURES)
    p.add_argument("--m", type=_positive_int)
    p.add_argument("--k", type=_positive_int)
    p.add_argument("--r", type=_positive_int, help="region count for fig4")
    p.add_argument("--trials", type=_positive_int)
    p.add_argument("--probes", type=_positive_int)
    p.add_argument("--seed", type=_non_negative_int, help="master seed (default: $DLBF_SEED or 0)")
    p.add_argument("--hash-seed", type=_non_negative_int)
    p.add_argument("--ratios", type=_float_list)
    p.add_argument("--densities", type=_float_list)
    p.add_argument("--r-values", type=_int_list)
    p.add_argument("--n-values", type=_int_list)
    p.add_argument("--wordlist")
    p.add_argument("--workers", type=_positive_int)
    _add_output(p)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("filter", help="manipulate a filter file")
    actions = p.add_subparsers(dest="action", required=True)
    a = actions.add_parser("create")
    a.add_argument("--file", required=True)
    a.add_argument("--m", type=_positive_int, default=DEFAULTS["m"])
    a.add_argument("--r", type=_positive_int, default=DEFAULTS["r"])
    a.add_argument("--k", type=_positive_int, default=DEFAULTS["k"])
    a.add_argument("--seed", type=_non_negative_int, help="hash seed (default: $DLBF_SEED or 0)")
    a.add_argument("--force", action="store_true")
    for name in ("insert", "query", "remove"):
        a = actions.add_parser(name)
        a.add_argument("--file", required=True)
        a.add_argument("--m", type=_positive_int)
        a.add_argument("--r", type=_positive_int)
        a.add_argument("--k", type=_positive_int)
        a.add_argument("element")
    a = actions.add_parser("info")
    a.add_argument("--file", required=True)
    p.set_defaults(func=cmd_filter)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (CliError, InvalidParamsError, ConfigurationError, FilterFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
