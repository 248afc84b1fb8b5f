"""Fixed lossless compressor used as the complexity proxy, plus the bit
serializers feeding it.

The compressor is a raw LZMA2 stream at maximum effort with the literal
context/position parameters zeroed (lc=0, lp=0, pb=0).  Two properties of
this exact configuration are load-bearing and test-pinned: the empty input
costs one byte (the measured header constant), and the stream carries no
container metadata, so equal-length inputs with isomorphic symbol
structure compress to nearly identical sizes.  Changing any parameter
invalidates the frozen acceptance measurements.
"""

import lzma

from .config import COMPRESSOR_ID

__all__ = [
    "COMPRESSOR_ID",
    "compress",
    "compressed_size_bits",
    "header_bits",
    "pack_bits",
    "pack_flat",
    "frame_lines",
    "ascii_bytes",
]

_FILTERS = [{
    "id": lzma.FILTER_LZMA2,
    "preset": 9 | lzma.PRESET_EXTREME,
    "lc": 0,
    "lp": 0,
    "pb": 0,
}]


def compress(data):
    return lzma.compress(bytes(data), format=lzma.FORMAT_RAW,
                         filters=_FILTERS)


def compressed_size_bits(data):
    """8 x compressed byte length; the package-wide complexity proxy."""
    return 8 * len(compress(data))


def header_bits():
    """Fixed cost of an empty stream, reported but never subtracted."""
    return compressed_size_bits(b"")


def pack_bits(bits):
    """MSB-first bit packing; final byte zero-padded."""
    out = bytearray()
    acc = 0
    n = 0
    for b in bits:
        acc = (acc << 1) | (b & 1)
        n += 1
        if n == 8:
            out.append(acc)
            acc, n = 0, 0
    if n:
        out.append(acc << (8 - n))
    return bytes(out)


def _value_bits(value, width):
    return [(value >> k) & 1 for k in range(width - 1, -1, -1)]


def pack_flat(values, width):
    """Pack fixed-width values back to back; one final byte pad.

    Used for source index sequences.  width 0 packs to nothing.
    """
    if width == 0:
        return b""
    bits = []
    for v in values:
        bits.extend(_value_bits(int(v), width))
    return pack_bits(bits)


def frame_lines(lines, width):
    """Pack each line of fixed-width symbol values, padding every line to
    a byte boundary.

    Per-line framing keeps the byte stream aligned with the logical line
    structure, which is what lets the compressor treat an embedded
    bit-string circuit and the raw bit string as the same-shape input.
    """
    out = bytearray()
    for line in lines:
        bits = []
        for v in line:
            bits.extend(_value_bits(int(v), width))
        out.extend(pack_bits(bits))
    return bytes(out)


def ascii_bytes(text):
    """Classical strings serialize one byte per symbol."""
    return text.encode("ascii")
