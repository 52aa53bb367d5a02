"""Command-line interface: build, reconstruct, assemble, stats, synth."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .boss import BossIndex
from .coloring import color_all, mark_colorable
from .colormatrix import compress
from .container import IndexMeta, read_index, write_index
from .errors import BadThreshold, CdbgError, IntegrityError
from .fastx import parse_reads, write_fasta
from .stats import compute_stats
from .synthetic import SyntheticConfig, generate_reads
from .traversal import assemble_all, reconstruct_all

logger = logging.getLogger("cdbg")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTEGRITY = 3


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract wants 1
        raise UsageError(message)


def make_parser() -> Parser:
    p = Parser(prog="cdbg", description="Colored de Bruijn graph read index")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="index a read file")
    b.add_argument("--input", required=True, help="FASTA/FASTQ read file")
    b.add_argument("--k", type=int, default=25, help="de Bruijn order (default 25)")
    b.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    b.add_argument("--output", required=True, help="index container path")

    r = sub.add_parser("reconstruct", help="rebuild reads from an index")
    r.add_argument("--index", required=True)
    r.add_argument("--output", required=True, help="one sequence per line")
    r.add_argument("--verify", help="original read file for membership checking")
    r.add_argument("--threads", type=int, default=1)

    a = sub.add_parser("assemble", help="assemble contigs from an index")
    a.add_argument("--index", required=True)
    a.add_argument("--min-frac", type=float, default=0.5, dest="min_frac")
    a.add_argument("--output", required=True, help="FASTA of contigs")

    s = sub.add_parser("stats", help="print index statistics")
    s.add_argument("--index", required=True)

    g = sub.add_parser("synth", help="generate a synthetic read set")
    g.add_argument("--genome-len", type=int, default=100_000)
    g.add_argument("--read-len", type=int, default=100)
    g.add_argument("--coverage", type=int, default=20)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--output", required=True, help="FASTA of sampled reads")
    g.add_argument("--genome-out", help="optionally also write the genome FASTA")
    return p


def cmd_build(args) -> int:
    reads = parse_reads(args.input, k=args.k)
    logger.info(
        "parsed %d reads (%d rejected, %d shorter than k, %d duplicates)",
        len(reads), reads.n_rejected, reads.n_too_short, reads.n_duplicates,
    )
    boss = BossIndex.build(reads, args.k)
    cmap = mark_colorable(boss)
    table = color_all(boss, cmap, reads, threads=args.threads)
    colors = compress(table, cmap)
    meta = IndexMeta(
        plain_bytes=reads.plain_bytes,
        n_reads=len(reads),
        n_rejected=reads.n_rejected,
        n_too_short=reads.n_too_short,
        n_strings=len(table.read_colors),
    )
    index_bytes = write_index(args.output, boss, colors, meta)
    record = compute_stats(boss, colors, meta, index_bytes)
    print(record.as_table())
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    boss, colors, meta = read_index(args.index)
    verify = parse_reads(args.verify) if args.verify else None
    report = reconstruct_all(boss, colors, verify_against=verify, threads=args.threads)
    with open(args.output, "w") as fh:
        for s in report.recovered:
            fh.write(s + "\n")
    print(f"recovered_sequences={report.recovered_count}")
    print(f"ambiguous_count={report.ambiguous_count}")
    if report.verified_fraction is not None:
        print(f"recovered_percentage={100.0 * report.verified_fraction:.2f}")
    return EXIT_OK


def cmd_assemble(args) -> int:
    if not 0.0 < args.min_frac <= 1.0:
        raise BadThreshold(f"--min-frac {args.min_frac} outside (0, 1]")
    boss, colors, meta = read_index(args.index)
    contigs = assemble_all(boss, colors, args.min_frac)
    write_fasta(args.output, contigs, prefix="contig")
    print(f"contigs={len(contigs)}")
    if contigs:
        print(f"longest={len(contigs[0])}")
    return EXIT_OK


def cmd_stats(args) -> int:
    boss, colors, meta = read_index(args.index)
    index_bytes = Path(args.index).stat().st_size
    record = compute_stats(boss, colors, meta, index_bytes)
    print(record.as_table())
    print()
    for line in record.as_kv_lines():
        print(line)
    return EXIT_OK


def cmd_synth(args) -> int:
    try:
        cfg = SyntheticConfig(
            genome_len=args.genome_len,
            read_len=args.read_len,
            coverage=args.coverage,
            seed=args.seed,
        )
    except ValueError as exc:
        raise UsageError(str(exc))
    genome, reads = generate_reads(cfg)
    write_fasta(args.output, reads, prefix="r")
    if args.genome_out:
        write_fasta(args.genome_out, [genome], prefix="genome")
    print(f"reads={len(reads)}")
    return EXIT_OK


_COMMANDS = {
    "build": cmd_build,
    "reconstruct": cmd_reconstruct,
    "assemble": cmd_assemble,
    "stats": cmd_stats,
    "synth": cmd_synth,
}


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BadThreshold as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntegrityError as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except (CdbgError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
