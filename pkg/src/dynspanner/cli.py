"""Command line entry point: ``gen``, ``run``, ``verify``, ``bench``, ``schedule``.

Settings resolve as command line flag, then ``--config`` file (plain
``key=value`` lines, ``#`` comments), then built-in default.
"""

from __future__ import annotations

import argparse
import contextlib
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Iterator, Sequence, TextIO

from .errors import InconsistentState, InvalidUpdate, StreamFormatError
from .graph import Op
from .harness import MetricsWriter, RunConfig, bench, run
from .recursive import Variant, schedule
from .streams import Generator, StreamSpec, gen_stream, gen_weighted_stream, read_stream, write_stream
from .weighted import WeightedEvent

log = logging.getLogger("dynspanner")

EXIT_OK = 0
EXIT_BREACH = 1
EXIT_INPUT = 2


def _on_off(text: str) -> bool:
    if text not in ("on", "off"):
        raise ValueError(f"expected on or off, got {text!r}")
    return text == "on"


def _weights(text: str) -> tuple[float, float]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise ValueError(f"expected LO:HI, got {text!r}")
    lo_f, hi_f = float(lo), float(hi)
    if not 0 < lo_f <= hi_f:
        raise ValueError(f"need 0 < LO <= HI, got {text!r}")
    return lo_f, hi_f


def _n_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


# key -> (converter, default)
SETTINGS: dict[str, tuple[Callable[[str], Any], Any]] = {
    "variant": (lambda s: Variant(s).value, "t7"),
    "gen": (lambda s: Generator(s).value, Generator.UNIFORM.value),
    "n": (int, 64),
    "len": (int, None),  # None: 10 n
    "seed": (int, 0),
    "algseed": (int, 0),
    "a": (float, 2.0),
    "eps": (float, 0.25),
    "wmin": (float, 1.0),
    "weights": (_weights, None),
    "verify": (str, None),  # None: none for run, full or sampled for verify
    "every": (int, 64),
    "extend": (_on_off, None),
    "format": (str, "csv"),
    "stream": (str, None),
    "emit": (str, None),
    "metrics": (str, None),
    "output": (str, None),
    "n_list": (_n_list, [1024, 2048, 4096]),
    "reps": (int, 1),
    "len_factor": (int, 8),
    "baseline": (_on_off, True),
}


def read_config(path: str | Path) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or key not in SETTINGS:
                raise StreamFormatError(lineno, raw, "expected a known 'key=value' setting")
            out[key] = value.strip()
    return out


def resolve(args: argparse.Namespace) -> dict[str, Any]:
    """Merge flags over config file over defaults."""
    config = read_config(args.config) if getattr(args, "config", None) else {}
    out = {}
    for key, (convert, default) in SETTINGS.items():
        flag = getattr(args, key, None)
        if flag is not None:
            out[key] = flag
        elif key in config:
            try:
                out[key] = convert(config[key])
            except ValueError as exc:
                raise StreamFormatError(0, f"{key}={config[key]}", str(exc)) from None
        else:
            out[key] = default
    return out


def _arg(converter: Callable[[str], Any]) -> Callable[[str], Any]:
    def parse(text: str) -> Any:
        try:
            return converter(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None

    parse.__name__ = getattr(converter, "__name__", "value")
    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dynspanner", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, *keys: str) -> None:
        p.add_argument("--config", help="file of key=value settings")
        for key in keys:
            convert, _ = SETTINGS[key]
            p.add_argument(f"--{key.replace('_', '-')}", dest=key, type=_arg(convert), default=None)

    stream_keys = ("gen", "n", "len", "seed", "weights")
    alg_keys = ("variant", "algseed", "a", "eps", "wmin", "extend", "stream", "emit", "metrics", "format")

    p = sub.add_parser("gen", help="write a generated update stream")
    common(p, *stream_keys, "output")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("run", help="replay a stream and write per-update metrics")
    common(p, *stream_keys, *alg_keys, "verify", "every")
    p.set_defaults(handler=cmd_run, verify_default="none")

    p = sub.add_parser("verify", help="replay a stream checking stretch and invariants")
    common(p, *stream_keys, *alg_keys, "verify", "every")
    p.set_defaults(handler=cmd_run, verify_default="auto")

    p = sub.add_parser("bench", help="per-update operation counts across n")
    common(p, "n_list", "variant", "reps", "gen", "len_factor", "seed", "algseed", "a", "baseline")
    p.set_defaults(handler=cmd_bench)

    p = sub.add_parser("schedule", help="print the level parameters for n")
    common(p, "n", "variant")
    p.set_defaults(handler=cmd_schedule)
    return parser


@contextlib.contextmanager
def _open_out(path: str | None) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _stream_spec(cfg: dict[str, Any]) -> StreamSpec:
    n = cfg["n"]
    length = cfg["len"] if cfg["len"] is not None else 10 * n
    return StreamSpec(Generator(cfg["gen"]), n, length, seed=cfg["seed"], weights=cfg["weights"])


def _load_events(cfg: dict[str, Any]) -> tuple[int, list]:
    if cfg["stream"] is not None:
        parsed = read_stream(cfg["stream"])
        return parsed.n, parsed.events
    spec = _stream_spec(cfg)
    events = gen_weighted_stream(spec) if spec.weights is not None else gen_stream(spec)
    return spec.n, events


def cmd_gen(cfg: dict[str, Any]) -> int:
    spec = _stream_spec(cfg)
    events = gen_weighted_stream(spec) if spec.weights is not None else gen_stream(spec)
    header = f"generator={spec.generator.value} length={spec.length} seed={spec.seed}"
    with _open_out(cfg["output"]) as fh:
        write_stream(fh, spec.n, events, header)
    return EXIT_OK


def cmd_run(cfg: dict[str, Any]) -> int:
    n, events = _load_events(cfg)
    verify = cfg["verify"] or cfg["verify_default"]
    if verify == "auto":
        verify = "full" if n <= 256 else "sampled"
    if verify not in ("none", "sampled", "full"):
        raise ValueError(f"unknown verify mode {verify!r}")
    if cfg["format"] not in ("csv", "json"):
        raise ValueError(f"unknown metrics format {cfg['format']!r}")
    run_cfg = RunConfig(
        variant=cfg["variant"],
        algseed=cfg["algseed"],
        a=cfg["a"],
        extend=cfg["extend"],
        verify=verify,
        verify_every=cfg["every"],
        eps=cfg["eps"],
        w_min=cfg["wmin"],
    )
    with _open_out(cfg["metrics"]) as fh:
        writer = MetricsWriter(fh, cfg["format"])
        result = run(n, events, run_cfg, writer=writer)
    if cfg["emit"] is not None:
        _emit_spanner(cfg["emit"], n, result.spanner)
    for name, passed, detail in result.checks:
        log.info("check %s %s %s", name, "pass" if passed else "fail", detail)
    if not result.ok:
        failed = [name for name, passed, _ in result.checks if not passed]
        print(f"invariant breach: {', '.join(failed)}", file=sys.stderr)
        return EXIT_BREACH
    return EXIT_OK


def _emit_spanner(path: str, n: int, spanner: set | dict) -> None:
    # written as an insert-only stream, so the dump can be replayed
    if isinstance(spanner, dict):
        events = [WeightedEvent(Op.INSERT, u, v, w) for (u, v), w in sorted(spanner.items())]
    else:
        events = [WeightedEvent(Op.INSERT, u, v) for u, v in sorted(spanner)]
    with _open_out(path) as fh:
        write_stream(fh, n, events, header=f"spanner edges={len(events)}")


def cmd_bench(cfg: dict[str, Any]) -> int:
    result = bench(
        cfg["n_list"],
        cfg["variant"],
        cfg["reps"],
        generator=cfg["gen"],
        length_factor=cfg["len_factor"],
        seed=cfg["seed"],
        algseed=cfg["algseed"],
        a=cfg["a"],
        baseline=cfg["baseline"],
    )
    print(result.table())
    return EXIT_OK


def cmd_schedule(cfg: dict[str, Any]) -> int:
    for line in schedule(cfg["n"], cfg["variant"]).as_lines():
        print(line)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = resolve(args)
        cfg["verify_default"] = getattr(args, "verify_default", "none")
        return args.handler(cfg)
    except StreamFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InconsistentState as exc:
        print(f"invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH
    except (InvalidUpdate, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
