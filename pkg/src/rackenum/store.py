"""Binary library files: one survivor bit per folder.

Layout, all integers little-endian::

    header   magic "RQE1" | version u16 | n u16 | kind u8 | flags u8
             | class count u32 | file length u64
    class    class_id u32 | admissible u8 | ngens u16 | ngens * n bytes
             | k u16 | k * radix u32 | size u64 | orbit count u64
             | survivor count u64 | ceil(size / 8) bytes of survivor bits
    trailer  total u64 | medial u64 | 2-reductive u64 | non-2-reductive u64
             | crc32 u32 over everything before it

Generators are 0-based image arrays.  Bit ``i`` of the survivor vector
(byte ``i >> 3``, bit ``i & 7``) is set when folder ``i + 1`` of the class's
folder space is a stored representative.  ``kind`` is 0 for racks and 1 for
quandles; flag bit 0 marks a nonabelian-only run.  An orbit count of
``2**64 - 1`` means the class was skipped by the admissibility test.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass, field
from typing import BinaryIO, TextIO

import numpy as np

from .action import Counts, EnumerationResult, expand_class
from .envelope import FolderSpace, Kind, MulTable, format_table
from .perm import PermGroup

MAGIC = b"RQE1"
VERSION = 1
NO_COUNT = 2**64 - 1
_KINDS: tuple[Kind, Kind] = ("rack", "quandle")

_HEAD = struct.Struct("<4sHHBBIQ")
_TRAILER = struct.Struct("<QQQQ")


class LibraryFormatError(ValueError):
    pass


class BadMagic(LibraryFormatError):
    pass


class VersionMismatch(LibraryFormatError):
    pass


class ChecksumError(LibraryFormatError):
    pass


class Truncated(LibraryFormatError):
    pass


@dataclass
class ClassRecord:
    class_id: int
    generators: tuple[tuple[int, ...], ...]
    radices: tuple[int, ...]
    size: int
    bits: bytes  # packed survivor vector
    survivor_count: int
    admissible: bool = True
    orbit_count_all: int | None = None

    def survivor_indices(self) -> list[int]:
        """0-based indices of set bits."""
        flags = np.unpackbits(np.frombuffer(self.bits, dtype=np.uint8), count=self.size, bitorder="little")
        return [int(i) for i in np.flatnonzero(flags)]


@dataclass
class Library:
    n: int
    kind: Kind
    classes: list[ClassRecord]
    totals: Counts = field(default_factory=Counts)
    nonabelian_only: bool = False

    def group(self, rec: ClassRecord) -> PermGroup:
        return PermGroup(self.n, rec.generators)

    def space(self, rec: ClassRecord) -> FolderSpace:
        space = FolderSpace(self.group(rec), self.kind)
        if space.radices != rec.radices:
            raise LibraryFormatError(
                f"class {rec.class_id}: rebuilt radices {space.radices} != stored {rec.radices}"
            )
        return space

    def tables(self) -> list[MulTable]:
        out = []
        for rec in self.classes:
            if rec.survivor_count:
                out.extend(expand_class(self.space(rec), rec.survivor_indices()))
        return out

    @property
    def count(self) -> int:
        return sum(rec.survivor_count for rec in self.classes)


def pack_bits(flags) -> bytes:
    arr = np.frombuffer(bytes(flags), dtype=np.uint8)
    return np.packbits(arr, bitorder="little").tobytes()


def library_from_result(result: EnumerationResult, nonabelian_only: bool = False) -> Library:
    classes = []
    for cr in result.classes:
        classes.append(
            ClassRecord(
                cr.class_id,
                cr.group.generators,
                cr.radices,
                len(cr.survivors),
                pack_bits(cr.survivors),
                cr.count,
                cr.admissible,
                cr.orbit_count_all,
            )
        )
    return Library(result.n, result.kind, classes, result.counts(), nonabelian_only)


def write_library(lib: Library | EnumerationResult, stream: BinaryIO | None = None) -> bytes:
    if isinstance(lib, EnumerationResult):
        lib = library_from_result(lib)
    body = bytearray()
    for rec in lib.classes:
        if rec.survivor_count != int(np.unpackbits(np.frombuffer(rec.bits, dtype=np.uint8)).sum()):
            raise LibraryFormatError(f"class {rec.class_id}: survivor count does not match bits")
        body += struct.pack("<IBH", rec.class_id, int(rec.admissible), len(rec.generators))
        for g in rec.generators:
            body += bytes(g)
        body += struct.pack("<H", len(rec.radices))
        body += struct.pack(f"<{len(rec.radices)}I", *rec.radices)
        count_all = NO_COUNT if rec.orbit_count_all is None else rec.orbit_count_all
        body += struct.pack("<QQQ", rec.size, count_all, rec.survivor_count)
        body += rec.bits
    t = lib.totals
    trailer = _TRAILER.pack(t.total, t.medial, t.two_reductive, t.non_two_reductive)
    length = _HEAD.size + len(body) + len(trailer) + 4
    head = _HEAD.pack(MAGIC, VERSION, lib.n, _KINDS.index(lib.kind), int(lib.nonabelian_only),
                      len(lib.classes), length)
    data = head + bytes(body) + trailer
    data += struct.pack("<I", zlib.crc32(data))
    if stream is not None:
        stream.write(data)
    return data


class _Reader:
    def __init__(self, data: bytes, pos: int):
        self.data, self.pos = data, pos

    def take(self, k: int) -> bytes:
        if self.pos + k > len(self.data):
            raise Truncated("unexpected end of library data")
        out = self.data[self.pos:self.pos + k]
        self.pos += k
        return out

    def unpack(self, fmt: str):
        s = struct.Struct(fmt)
        return s.unpack(self.take(s.size))


def read_library(source: BinaryIO | bytes) -> Library:
    data = source if isinstance(source, (bytes, bytearray)) else source.read()
    data = bytes(data)
    if len(data) < 4 or data[:4] != MAGIC:
        raise BadMagic("not a rack/quandle library (bad magic)")
    if len(data) < _HEAD.size:
        raise Truncated("header cut short")
    magic, version, n, kind, flags, nclasses, length = _HEAD.unpack_from(data)
    if version != VERSION:
        raise VersionMismatch(f"library version {version}, reader supports {VERSION}")
    stored_crc = struct.unpack_from("<I", data, len(data) - 4)[0]
    if zlib.crc32(data[:-4]) != stored_crc:
        if len(data) < length:
            raise Truncated(f"library is {len(data)} bytes, header says {length}")
        raise ChecksumError("checksum mismatch")
    if len(data) != length or kind > 1:
        raise LibraryFormatError("inconsistent header")
    r = _Reader(data[:-4], _HEAD.size)
    classes = []
    for _ in range(nclasses):
        class_id, admissible, ngens = r.unpack("<IBH")
        gens = tuple(tuple(r.take(n)) for _ in range(ngens))
        (k,) = r.unpack("<H")
        radices = r.unpack(f"<{k}I")
        size, count_all, survivors = r.unpack("<QQQ")
        bits = r.take((size + 7) // 8)
        classes.append(ClassRecord(class_id, gens, tuple(radices), size, bits, survivors,
                                   bool(admissible), None if count_all == NO_COUNT else count_all))
    totals = Counts(*r.unpack("<QQQQ"))
    if r.pos != len(r.data):
        raise LibraryFormatError("trailing bytes after trailer")
    return Library(n, _KINDS[kind], classes, totals, bool(flags & 1))


def export_tables(lib: Library, sink: TextIO) -> int:
    k = 0
    for t in lib.tables():
        sink.write(format_table(t))
        k += 1
    return k


COUNT_HEADER = "total medial 2-reductive non-2-reductive"


def format_counts(c: Counts) -> str:
    return c.row()


def export_counts(lib: Library, sink: TextIO) -> None:
    """A comment line, the column header, then one count row if the library has classes."""
    flag = " nonabelian-only" if lib.nonabelian_only else ""
    sink.write(f"# n={lib.n} kind={lib.kind}{flag}\n")
    sink.write(COUNT_HEADER + "\n")
    if lib.classes:
        sink.write(format_counts(lib.totals) + "\n")
