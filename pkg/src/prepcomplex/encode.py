"""Codes mapping circuits to classical symbol strings.

A Code fixes, for one gate basis: a symbol word per gate, a NEWLINE
terminator for each op line, binary digit symbols for qubit indices, and
the bit width per symbol.  Two built-in styles ship for every basis (one
symbol per gate, and two-symbol words over a three-letter alphabet) so
that code invariance can be exercised; a third fixed code realizes the
{I, N, L} classical-bit-string embedding.
"""

import math

from .circuit import Circuit, bitflip_basis
from .compressor import frame_lines
from .errors import ParseError

__all__ = [
    "Code",
    "EncodedString",
    "TranslationDictionary",
    "code_for_basis",
    "builtin_codes",
    "inl_code",
    "encode",
    "decode",
    "translate",
    "embed_classical",
    "encoded_to_bytes",
    "encoded_to_ascii",
    "encoded_from_ascii",
]

NEWLINE = "L"
DIGITS = ("0", "1")


class Code:
    """Symbol alphabet and gate-word table for one basis.

    All gate words of one code share a single length; words are distinct,
    hence trivially prefix-free and uniquely decodable together with the
    fixed-width index fields and the explicit line terminator.
    """

    __slots__ = ("id", "basis", "gate_words", "alphabet", "bits_per_symbol",
                 "word_length", "include_header", "implicit_targets",
                 "_word_to_name")

    def __init__(self, code_id, basis, gate_words, include_header=True,
                 implicit_targets=False):
        names = set(g.name for g in basis.gates)
        if set(gate_words) != names:
            raise ValueError(f"code {code_id!r} must map every basis gate")
        lengths = {len(w) for w in gate_words.values()}
        if len(lengths) != 1:
            raise ValueError("all gate words must share one length")
        if len(set(gate_words.values())) != len(gate_words):
            raise ValueError("gate words must be distinct")
        letters = sorted({ch for w in gate_words.values() for ch in w})
        structural = [NEWLINE] + ([] if implicit_targets else list(DIGITS))
        for s in structural:
            if s in letters:
                raise ValueError(f"structural symbol {s!r} collides")
        alphabet = tuple(letters + structural)
        object.__setattr__(self, "id", code_id)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "gate_words", dict(gate_words))
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "bits_per_symbol",
                          max(1, math.ceil(math.log2(len(alphabet)))))
        object.__setattr__(self, "word_length", lengths.pop())
        object.__setattr__(self, "include_header", include_header)
        object.__setattr__(self, "implicit_targets", implicit_targets)
        object.__setattr__(self, "_word_to_name",
                          {w: n for n, w in gate_words.items()})

    def __setattr__(self, name, value):
        raise AttributeError("Code is immutable")

    def symbol_value(self, symbol):
        return self.alphabet.index(symbol)

    def name_of_word(self, word):
        return self._word_to_name.get(word)


class EncodedString:
    __slots__ = ("symbols", "code", "source_circuit_id")

    def __init__(self, symbols, code, source_circuit_id="anon"):
        symbols = tuple(symbols)
        for s in symbols:
            if s not in code.alphabet:
                raise ValueError(f"symbol {s!r} outside code {code.id!r}")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "code", code)
        object.__setattr__(self, "source_circuit_id", source_circuit_id)

    def __setattr__(self, name, value):
        raise AttributeError("EncodedString is immutable")

    def __len__(self):
        return len(self.symbols)

    def raw_bits(self):
        return len(self.symbols) * self.code.bits_per_symbol


class TranslationDictionary:
    """Word-pair table between two codes; its byte size is the constant
    separating complexity measured under the two codes."""

    __slots__ = ("pairs", "size_bits")

    def __init__(self, pairs):
        object.__setattr__(self, "pairs", dict(pairs))
        text = self.to_text()
        object.__setattr__(self, "size_bits", 8 * len(text.encode("ascii")))

    def __setattr__(self, name, value):
        raise AttributeError("TranslationDictionary is immutable")

    def to_text(self):
        return "".join(f"{a} {b}\n" for a, b in sorted(self.pairs.items()))


# ---------------------------------------------------------------------------
# Built-in codes

def _single_letter_words(basis):
    words = {}
    used = set(NEWLINE) | set(DIGITS)
    for g in basis.gates:
        pick = None
        for ch in g.name.upper():
            if ch.isalpha() and ch not in used:
                pick = ch
                break
        if pick is None:
            for ch in "ABCDEFGHIJKMNOPQRSTUVWXYZ":
                if ch not in used:
                    pick = ch
                    break
        if pick is None:
            raise ValueError("alphabet exhausted")
        used.add(pick)
        words[g.name] = pick
    return words


def _two_letter_words(basis):
    letters = "ABC"
    if len(basis.gates) > len(letters) ** 2:
        raise ValueError("too many gates for the two-letter code")
    words = {}
    for i, g in enumerate(basis.gates):
        words[g.name] = letters[i // 3] + letters[i % 3]
    return words


def code_for_basis(basis, style):
    """Built-in code of the given style ("sym1" or "sym2") for a basis."""
    if style == "sym1":
        return Code(f"sym1-{basis.id}", basis, _single_letter_words(basis))
    if style == "sym2":
        return Code(f"sym2-{basis.id}", basis, _two_letter_words(basis))
    raise ValueError(f"unknown code style {style!r}")


def builtin_codes(basis):
    return {
        "sym1": code_for_basis(basis, "sym1"),
        "sym2": code_for_basis(basis, "sym2"),
    }


def inl_code():
    """The fixed 3-symbol code for bit-string embeddings.

    No header, one op per qubit in order, so the string for an n-bit input
    is exactly 2n symbols at 2 bits each.
    """
    return Code("inl", bitflip_basis(), {"I": "I", "N": "N"},
                include_header=False, implicit_targets=True)


# ---------------------------------------------------------------------------
# Encode / decode

def _index_width(num_qubits):
    # ceil(log2 N) digits per qubit index; 0 at N=1, where the only
    # possible target is implied.
    return math.ceil(math.log2(num_qubits)) if num_qubits > 1 else 0


def _digits(value, width):
    return [DIGITS[(value >> k) & 1] for k in range(width - 1, -1, -1)]


def encode(circuit, code, circuit_id="anon"):
    """Deterministic symbol string for a circuit; round-trips via decode."""
    if circuit.basis.id != code.basis.id:
        raise ValueError(
            f"circuit basis {circuit.basis.id!r} not covered by "
            f"code {code.id!r}")
    symbols = []
    if code.include_header:
        for d in f"{circuit.num_qubits:b}":
            symbols.append(d)
        symbols.append(NEWLINE)
    width = _index_width(circuit.num_qubits)
    for pos, (name, targets) in enumerate(circuit.ops):
        symbols.extend(code.gate_words[name])
        if code.implicit_targets:
            if targets != (pos,):
                raise ValueError(
                    "implicit-target code requires op i on qubit i")
        else:
            for t in targets:
                symbols.extend(_digits(t, width))
        symbols.append(NEWLINE)
    return EncodedString(symbols, code, circuit_id)


def _split_lines(symbols):
    lines = []
    current = []
    for i, s in enumerate(symbols):
        if s == NEWLINE:
            lines.append((current, i))
            current = []
        else:
            current.append(s)
    if current:
        raise ParseError("string does not end at a line boundary",
                         position=len(symbols) - 1)
    return lines


def decode(encoded, code=None):
    """Inverse of encode; reports the symbol index of any malformation."""
    code = code if code is not None else encoded.code
    symbols = encoded.symbols
    lines = _split_lines(symbols)
    if code.include_header:
        if not lines:
            raise ParseError("missing header line", position=0)
        header, end = lines[0]
        if not header or any(d not in DIGITS for d in header):
            raise ParseError("bad header digits", position=end)
        num_qubits = int("".join(header), 2)
        if num_qubits < 1:
            raise ParseError("header says zero qubits", position=end)
        body = lines[1:]
    else:
        body = lines
        num_qubits = len(body)
        if num_qubits < 1:
            raise ParseError("empty implicit-target string", position=0)
    width = _index_width(num_qubits)
    ops = []
    for lineno, (line, end) in enumerate(body):
        pos = end - len(line)
        wl = code.word_length
        word = "".join(line[:wl])
        name = code.name_of_word(word)
        if name is None:
            raise ParseError(f"unknown gate word {word!r}", position=pos)
        arity = code.basis.gate(name).arity
        if code.implicit_targets:
            if len(line) != wl:
                raise ParseError("trailing symbols on implicit-target line",
                                 position=pos + wl)
            targets = (lineno,)
        else:
            need = wl + arity * width
            if len(line) != need:
                raise ParseError(
                    f"op line has {len(line)} symbols, expected {need}",
                    position=pos + min(len(line), need))
            targets = []
            at = wl
            for _ in range(arity):
                chunk = line[at:at + width]
                if any(d not in DIGITS for d in chunk):
                    raise ParseError("bad index digit", position=pos + at)
                targets.append(int("".join(chunk), 2) if width else 0)
                at += width
            targets = tuple(targets)
        ops.append((name, targets))
    return Circuit(num_qubits, ops, code.basis)


def translate(encoded, from_code, to_code):
    """Re-encode under another code covering the same basis.

    Returns the translated string and the word-pair dictionary whose byte
    size depends only on the two codes.
    """
    if from_code.basis.id != to_code.basis.id:
        raise ValueError(
            f"codes cover different bases: {from_code.basis.id!r} vs "
            f"{to_code.basis.id!r}")
    circuit = decode(encoded, from_code)
    out = encode(circuit, to_code, circuit_id=encoded.source_circuit_id)
    pairs = {}
    if from_code.id != to_code.id:
        for name, w in from_code.gate_words.items():
            w2 = to_code.gate_words[name]
            if w != w2:
                pairs[w] = w2
    return out, TranslationDictionary(pairs)


def embed_classical(x):
    """Bit string -> NOT/identity circuit plus its {I, N, L} string.

    The circuit applies N on qubit i where x_i = 1 and marks I elsewhere;
    running it yields |x> exactly, and the string has 2 |x| symbols.
    """
    if not x:
        raise ValueError("empty bit string")
    if any(ch not in "01" for ch in x):
        raise ValueError("bit string must be over {0, 1}")
    code = inl_code()
    ops = [("N" if ch == "1" else "I", (i,)) for i, ch in enumerate(x)]
    circuit = Circuit(len(x), ops, code.basis)
    return circuit, encode(circuit, code, circuit_id=f"embed-{len(x)}b")


# ---------------------------------------------------------------------------
# Serialization

def encoded_to_bytes(encoded):
    """Bit-pack at bits_per_symbol, each op line padded to a byte."""
    code = encoded.code
    lines = []
    current = []
    for s in encoded.symbols:
        current.append(code.symbol_value(s))
        if s == NEWLINE:
            lines.append(current)
            current = []
    if current:
        lines.append(current)
    return frame_lines(lines, code.bits_per_symbol)


def encoded_to_ascii(encoded):
    return " ".join(encoded.symbols) + "\n"


def encoded_from_ascii(text, code, source_circuit_id="anon"):
    return EncodedString(text.split(), code, source_circuit_id)
