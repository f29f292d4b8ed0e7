"""forge: one executable driving the corpus pipeline and the service.

Stage order mirrors the corpus build: ingest -> funnel -> augment ->
balance -> tag, with stats/evaluate/steer/serve on the side and `build`
as the single-shot convenience equal to the piped stages byte for byte.
Data flows on stdin/stdout by default; logs go to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from functools import partial
from pathlib import Path

from . import augment as augment_mod
from . import funnel as funnel_mod
from .bundled import seed_lexicon_path
from .errors import EmptyPool, ForgeError
from .lexicon import Lexicon, load_lexicon
from .metrics import EvalPair, per_region_report
from .schema import (
    Context,
    ControlVector,
    Region,
    Register,
    read_records,
    read_tsv_records,
    write_records,
    write_tagged,
)

DEFAULT_SEED = 42


@contextmanager
def _open_in(path: str):
    if path == "-":
        yield sys.stdin
    else:
        with open(path, encoding="utf-8") as handle:
            yield handle


@contextmanager
def _open_out(path: str):
    if path == "-":
        yield sys.stdout
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8") as handle:
            yield handle


def _log(message: str) -> None:
    print(message, file=sys.stderr)


def _load_lexicon_arg(path: str | None) -> Lexicon:
    return load_lexicon(Path(path) if path else seed_lexicon_path())


def _parse_regions(spec: str) -> list[Region]:
    if spec == "all":
        return list(Region)
    if spec == "dialects":
        return [r for r in Region if r is not Region.MSA_GENERAL]
    return [Region.from_label(label) for label in spec.split(",") if label.strip()]


def _augment_config(args) -> augment_mod.AugmentConfig:
    regions = [r for r in _parse_regions(args.regions) if r is not Region.MSA_GENERAL]
    return augment_mod.AugmentConfig(
        regions=frozenset(regions),
        target_per_region=args.target,
        rng_seed=args.seed,
        keep_unchanged=args.keep_unchanged,
        variant_choice=(augment_mod.VariantChoice.SEEDED_RANDOM
                        if args.random_variants else augment_mod.VariantChoice.FIRST),
        reinfer_context=args.reinfer_context,
    )


def _funnel_config(args) -> funnel_mod.FunnelConfig:
    return funnel_mod.FunnelConfig(
        density_threshold=args.threshold,
        dedup_mode=funnel_mod.DedupMode(args.dedup),
        keep_msa=args.keep_msa,
    )


def cmd_ingest(args) -> int:
    with _open_in(args.infile) as infile, _open_out(args.out) as outfile:
        if args.format == "tsv":
            records = read_tsv_records(
                infile,
                region=Region.from_label(args.region),
                context=Context.from_label(args.context),
                style=Register.from_label(args.style),
            )
        else:
            records = read_records(infile, lenient=args.lenient)
        n = write_records(records, outfile)
    _log(f"ingest: wrote {n} records")
    return 0


def cmd_funnel(args) -> int:
    lexicon = _load_lexicon_arg(args.lexicon)
    config = _funnel_config(args)
    counts = {"dialect": 0, "msa": 0, "rejected": 0, "duplicate": 0}
    with _open_in(args.infile) as infile, _open_out(args.out) as outfile:
        records = read_records(infile, lenient=args.lenient)
        stream = funnel_mod.funnel_stream(
            records, config, lexicon, infer_contexts=not args.no_infer_context)

        def kept():
            for pool, record in stream:
                counts[pool] += 1
                if pool in ("dialect", "msa"):
                    yield record

        write_records(kept(), outfile)
    _log("funnel: kept {dialect} dialect + {msa} msa, "
         "rejected {rejected}, dropped {duplicate} duplicates".format(**counts))
    return 0


def _augmented_stream(records, config, lexicon, jobs: int):
    if jobs <= 1 or config.variant_choice is augment_mod.VariantChoice.SEEDED_RANDOM:
        yield from augment_mod.augment_stream(records, config, lexicon)
        return
    # parallel mode: per-record augmentation is pure under First-variant
    # selection, so an ordered map is byte-identical to the sequential pass
    rows = list(records)
    msa_rows = [r for r in rows if r.region is Region.MSA_GENERAL]
    if not msa_rows:
        yield from rows
        raise EmptyPool("no MSA-General rows in the augmentation input")
    worker = partial(augment_mod.augment_record, config=config, lexicon=lexicon)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        chunksize = max(1, len(msa_rows) // (jobs * 4))
        augmented = iter(list(pool.map(worker, msa_rows, chunksize=chunksize)))
    for record in rows:
        yield record
        if record.region is Region.MSA_GENERAL:
            yield from next(augmented)


def cmd_augment(args) -> int:
    lexicon = _load_lexicon_arg(args.lexicon)
    config = _augment_config(args)
    with _open_in(args.infile) as infile, _open_out(args.out) as outfile:
        records = read_records(infile, lenient=args.lenient)
        n = write_records(_augmented_stream(records, config, lexicon, args.jobs), outfile)
    _log(f"augment: wrote {n} records (pass-through + augmented)")
    return 0


def cmd_balance(args) -> int:
    regions = _parse_regions(args.regions) if args.regions else None
    with _open_in(args.infile) as infile, _open_out(args.out) as outfile:
        records = list(read_records(infile, lenient=args.lenient))
        balanced = augment_mod.balance(records, args.target, args.seed, regions)
        n = write_records(balanced, outfile)
    _log(f"balance: wrote {n} records")
    return 0


def cmd_tag(args) -> int:
    with _open_in(args.infile) as infile, _open_out(args.out) as outfile:
        records = read_records(infile, lenient=args.lenient)
        examples = (augment_mod.tag_record(r, args.three_tag) for r in records)
        n = write_tagged(examples, outfile)
    _log(f"tag: wrote {n} examples")
    return 0


def cmd_stats(args) -> int:
    with _open_in(args.infile) as infile, _open_out(args.out) as outfile:
        stats = augment_mod.corpus_stats(read_records(infile, lenient=args.lenient))
        json.dump(stats, outfile, ensure_ascii=False, indent=2)
        outfile.write("\n")
    return 0


def cmd_evaluate(args) -> int:
    lexicon = _load_lexicon_arg(args.lexicon)
    pairs = []
    with _open_in(args.infile) as infile:
        for line_no, line in enumerate(infile, start=1):
            if not line.strip():
                continue
            obj = json.loads(line)
            pairs.append(EvalPair(
                hypothesis=obj["hypothesis"],
                reference=obj["reference"],
                region=Region.from_label(obj.get("region", "MSA-General")),
            ))
    report = per_region_report(pairs, lexicon)
    with _open_out(args.out) as outfile:
        json.dump(report.to_json_obj(), outfile, ensure_ascii=False, indent=2)
        outfile.write("\n")
    return 0


def cmd_steer(args) -> int:
    lexicon = _load_lexicon_arg(args.lexicon)
    cv = ControlVector(
        region=Region.from_label(args.region),
        context=Context.from_label(args.context),
        register=Register.from_label(args.register),
    )
    output, substitutions = augment_mod.dialectalize(args.text, cv, lexicon)
    if args.verbose:
        for sub in substitutions:
            _log(f"  {sub.rule_id}: {sub.msa_form} -> {sub.dialect_form} "
                 f"[tokens {sub.start_token}..{sub.end_token}]")
    print(output)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    lexicon = _load_lexicon_arg(args.lexicon)
    corpus = None
    if args.corpus:
        with open(args.corpus, encoding="utf-8") as handle:
            corpus = list(read_records(handle, lenient=args.lenient))
        _log(f"serve: loaded corpus of {len(corpus)} records")
    app = create_app(lexicon, corpus)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def cmd_build(args) -> int:
    lexicon = _load_lexicon_arg(args.lexicon)
    funnel_config = _funnel_config(args)
    augment_config = _augment_config(args)
    balance_regions = _parse_regions(args.regions)
    with _open_in(args.infile) as infile, _open_out(args.out) as outfile:
        records = read_records(infile, lenient=args.lenient)
        kept = (
            record for pool, record in funnel_mod.funnel_stream(
                records, funnel_config, lexicon,
                infer_contexts=not args.no_infer_context)
            if pool in ("dialect", "msa")
        )
        augmented = _augmented_stream(kept, augment_config, lexicon, args.jobs)
        balanced = augment_mod.balance(augmented, args.target, args.seed, balance_regions)
        if args.records_out:
            with open(args.records_out, "w", encoding="utf-8") as records_out:
                write_records(balanced, records_out)
        examples = (augment_mod.tag_record(r, args.three_tag) for r in balanced)
        n = write_tagged(examples, outfile)
    _log(f"build: wrote {n} tagged examples")
    return 0


def _add_io_args(parser, default_in="-"):
    parser.add_argument("--in", dest="infile", default=default_in,
                        help="input path or - for stdin")
    parser.add_argument("--out", default="-", help="output path or - for stdout")
    parser.add_argument("--lenient", action="store_true",
                        help="skip malformed lines instead of failing")


def _add_lexicon_arg(parser):
    parser.add_argument("--lexicon", help="lexicon JSON (default: bundled seed lexicon)")


def _add_funnel_args(parser):
    parser.add_argument("--threshold", type=float, default=0.15,
                        help="dialect-density threshold (default 0.15)")
    parser.add_argument("--dedup", choices=["exact", "normalized"], default="normalized")
    parser.add_argument("--keep-msa", dest="keep_msa", action="store_true", default=True)
    parser.add_argument("--no-keep-msa", dest="keep_msa", action="store_false",
                        help="reject zero-density rows instead of keeping them as MSA")
    parser.add_argument("--no-infer-context", action="store_true",
                        help="keep General contexts instead of keyword inference")


def _add_augment_args(parser):
    parser.add_argument("--regions", default="all",
                        help="comma-separated region labels, or all/dialects")
    parser.add_argument("--target", type=int, default=6400,
                        help="rows per region class (applied by balance/build)")
    parser.add_argument("--keep-unchanged", action="store_true",
                        help="keep rows that yielded zero substitutions")
    parser.add_argument("--random-variants", action="store_true",
                        help="pick variants by seeded RNG instead of first listed")
    parser.add_argument("--reinfer-context", action="store_true",
                        help="re-run keyword context inference on augmented rows")
    parser.add_argument("--jobs", type=int, default=1,
                        help="parallel workers for pure stages (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forge",
        description="Corpus pipeline and steering service for dialectal Arabic MT data.",
    )
    parser.set_defaults(func=None)
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("ingest", help="convert raw TSV/JSONL into schema records")
    _add_io_args(p)
    p.add_argument("--format", choices=["jsonl", "tsv"], default="jsonl")
    p.add_argument("--region", default="MSA-General")
    p.add_argument("--context", default="General")
    p.add_argument("--style", default="Formal")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("funnel", help="dedup + density filtering + schema normalization")
    _add_io_args(p)
    _add_lexicon_arg(p)
    _add_funnel_args(p)
    p.set_defaults(func=cmd_funnel)

    p = sub.add_parser("augment", help="expand MSA rows into per-region dialect rows")
    _add_io_args(p)
    _add_lexicon_arg(p)
    _add_augment_args(p)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("balance", help="equalize region classes by seeded sampling")
    _add_io_args(p)
    p.add_argument("--target", type=int, required=True, help="rows per region class")
    p.add_argument("--regions", default=None,
                   help="classes to require and emit (default: classes present)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_balance)

    p = sub.add_parser("tag", help="format records as [Region] [Context] examples")
    _add_io_args(p)
    p.add_argument("--three-tag", action="store_true",
                   help="also emit an [Informal] tag for informal rows")
    p.set_defaults(func=cmd_tag)

    p = sub.add_parser("stats", help="region/context/style histograms as JSON")
    _add_io_args(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("evaluate", help="score hypothesis/reference pairs")
    _add_io_args(p)
    _add_lexicon_arg(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("steer", help="dialectalize one sentence")
    p.add_argument("--text", required=True)
    p.add_argument("--region", required=True)
    p.add_argument("--context", default="General")
    p.add_argument("--register", default="Informal")
    _add_lexicon_arg(p)
    p.add_argument("--verbose", action="store_true", help="log substitutions to stderr")
    p.set_defaults(func=cmd_steer)

    p = sub.add_parser("serve", help="run the HTTP steering service")
    _add_lexicon_arg(p)
    p.add_argument("--corpus", help="records JSONL served by /stats")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8077)
    p.add_argument("--lenient", action="store_true")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("build", help="funnel + augment + balance + tag in one pass")
    _add_io_args(p)
    _add_lexicon_arg(p)
    _add_funnel_args(p)
    _add_augment_args(p)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--three-tag", action="store_true")
    p.add_argument("--records-out",
                   help="also write the balanced (untagged) records here")
    p.set_defaults(func=cmd_build)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.func is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        return args.func(args)
    except ForgeError as exc:
        _log(f"error: {exc}")
        return 1
    except BrokenPipeError:
        return 1


if __name__ == "__main__":
    sys.exit(main())
