"""Streaming FASTA/FASTQ input and FASTA output.

The format is sniffed from the first non-blank byte ('>' FASTA, '@'
FASTQ). Qualities and record identifiers are discarded; sequence
validation happens downstream in ReadSet.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterator

from .errors import ParseError
from .sequence import ReadSet


def sniff_format(path: str | Path) -> str:
    with open(path, "rb") as fh:
        for raw in fh:
            line = raw.strip()
            if not line:
                continue
            if line.startswith(b">"):
                return "fasta"
            if line.startswith(b"@"):
                return "fastq"
            raise ParseError("file starts with neither '>' nor '@'", line=1)
    raise ParseError("empty input file")


def iter_fasta(path: str | Path) -> Iterator[str]:
    seq_parts: list[str] = []
    saw_header = False
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith(">"):
                if seq_parts:
                    yield "".join(seq_parts)
                    seq_parts = []
                saw_header = True
            else:
                if not saw_header:
                    raise ParseError("sequence data before first header", line=lineno)
                seq_parts.append(line)
    if seq_parts:
        yield "".join(seq_parts)


def iter_fastq(path: str | Path) -> Iterator[str]:
    with open(path) as fh:
        lineno = 0
        while True:
            header = fh.readline()
            if not header:
                return
            lineno += 1
            if not header.strip():
                continue
            if not header.startswith("@"):
                raise ParseError("record does not start with '@'", line=lineno)
            seq = fh.readline()
            plus = fh.readline()
            qual = fh.readline()
            if not qual:
                raise ParseError("truncated record", line=lineno)
            seq = seq.strip()
            if not plus.startswith("+"):
                raise ParseError("missing '+' separator", line=lineno + 2)
            if len(qual.strip()) != len(seq):
                raise ParseError("quality length differs from sequence", line=lineno + 3)
            lineno += 3
            yield seq


def parse_reads(path: str | Path, fmt: str = "auto", k: int | None = None) -> ReadSet:
    """Stream records from a FASTA/FASTQ file into a validated ReadSet."""
    if fmt == "auto":
        fmt = sniff_format(path)
    if fmt == "fasta":
        records = iter_fasta(path)
    elif fmt == "fastq":
        records = iter_fastq(path)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return ReadSet.from_reads(records, k=k)


def write_fasta(path: str | Path, sequences: list[str], prefix: str = "seq") -> None:
    with open(path, "w") as fh:
        for i, s in enumerate(sequences, start=1):
            fh.write(f">{prefix}_{i}\n{s}\n")
