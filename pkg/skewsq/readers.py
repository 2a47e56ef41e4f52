"""
File readers for matrix and series files.

Plain text, gzip-compressed, and an auto-detecting reader that picks between
the two by extension or magic bytes.
"""

import gzip
from pathlib import Path
from typing import Iterator

from skewsq.core.errors import DataError
from skewsq.core.interfaces import FileReader

GZIP_MAGIC = b"\x1f\x8b"


def _require_file(file_path: str) -> None:
    if not Path(file_path).exists():
        raise FileNotFoundError(f"File not found: {file_path}")


def _decoded(lines: Iterator[str], file_path: str) -> Iterator[str]:
    try:
        yield from lines
    except UnicodeDecodeError as e:
        raise DataError(
            f"{file_path}: not valid UTF-8 text ({e.reason} at byte {e.start})"
        ) from e


def is_gzip_file(file_path: str) -> bool:
    """Check the gzip magic bytes at the start of ``file_path``."""
    try:
        with open(file_path, "rb") as f:
            return f.read(2) == GZIP_MAGIC
    except OSError:
        return False


class StandardFileReader(FileReader):
    """Reader for uncompressed text files."""

    def read_lines(self, file_path: str) -> Iterator[str]:
        _require_file(file_path)
        with open(file_path, "r", encoding="utf-8", newline="") as f:
            yield from _decoded(f, file_path)

    def supports_compression(self) -> bool:
        return False


class CompressedFileReader(FileReader):
    """Reader for gzip-compressed text files."""

    def read_lines(self, file_path: str) -> Iterator[str]:
        _require_file(file_path)
        with gzip.open(file_path, "rt", encoding="utf-8", newline="") as f:
            yield from _decoded(f, file_path)

    def supports_compression(self) -> bool:
        return True


class AutoFileReader(FileReader):
    """
    Reader that detects compression per file.

    A ``.gz``/``.gzip`` suffix or gzip magic bytes select the compressed
    reader; everything else is read as plain text.
    """

    COMPRESSED_SUFFIXES = {".gz", ".gzip"}

    def __init__(self) -> None:
        self._standard_reader = StandardFileReader()
        self._compressed_reader = CompressedFileReader()

    def read_lines(self, file_path: str) -> Iterator[str]:
        if self._is_compressed_file(file_path):
            yield from self._compressed_reader.read_lines(file_path)
        else:
            yield from self._standard_reader.read_lines(file_path)

    def supports_compression(self) -> bool:
        return True

    def _is_compressed_file(self, file_path: str) -> bool:
        if Path(file_path).suffix.lower() in self.COMPRESSED_SUFFIXES:
            return True
        return is_gzip_file(file_path)
