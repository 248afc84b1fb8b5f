import numpy as np
import pytest

from prepcomplex.circuit import Circuit, run, standard_basis
from prepcomplex.compressor import (
    ascii_bytes,
    compress,
    compressed_size_bits,
    frame_lines,
    header_bits,
    pack_bits,
    pack_flat,
)
from prepcomplex.encode import (
    builtin_codes,
    code_for_basis,
    decode,
    embed_classical,
    encode,
    encoded_from_ascii,
    encoded_to_ascii,
    encoded_to_bytes,
    inl_code,
    translate,
)
from prepcomplex.errors import ParseError

APPENDIX_STRING = "N L I L N L N L I L N L I L I L"


# ---------------------------------------------------------------------------
# compressor

def test_header_constant_is_one_byte():
    # Frozen property of the raw LZMA2 configuration; everything that
    # reports "plus header" relies on this staying 8 bits.
    assert header_bits() == 8


def test_pack_bits():
    assert pack_bits([1, 0, 1, 1, 0, 1, 0, 0]) == b"\xb4"
    assert pack_bits([1]) == b"\x80"
    assert pack_bits([]) == b""


def test_pack_flat():
    assert pack_flat([1, 0, 1], 1) == b"\xa0"
    assert pack_flat([3, 1], 2) == b"\xd0"
    assert pack_flat([5, 5, 5], 0) == b""


def test_frame_lines_pads_each_line():
    assert frame_lines([[1], [0]], 1) == b"\x80\x00"
    assert frame_lines([[1, 1, 1, 1, 1, 1, 1, 1, 1]], 1) == b"\xff\x80"


def test_compress_deterministic_and_lossless_proxy():
    data = b"pattern" * 1000
    assert compress(data) == compress(data)
    periodic = compressed_size_bits(data)
    rng = np.random.default_rng(0)
    noise = bytes(rng.integers(0, 256, size=7000, dtype=np.uint8))
    assert periodic < 0.1 * compressed_size_bits(noise)


# ---------------------------------------------------------------------------
# built-in codes

def test_sym1_alphabet():
    code = code_for_basis(standard_basis(), "sym1")
    assert code.gate_words == {"H": "H", "S": "S", "T": "T", "CNOT": "C"}
    assert code.alphabet == ("C", "H", "S", "T", "L", "0", "1")
    assert code.bits_per_symbol == 3
    assert code.word_length == 1


def test_sym2_words():
    code = code_for_basis(standard_basis(), "sym2")
    assert code.gate_words == {"H": "AA", "S": "AB", "T": "AC", "CNOT": "BA"}
    assert code.bits_per_symbol == 3
    assert code.word_length == 2


def test_inl_code_shape():
    code = inl_code()
    assert code.alphabet == ("I", "N", "L")
    assert code.bits_per_symbol == 2
    assert not code.include_header
    assert code.implicit_targets


def test_empty_circuit_encodes_header_only():
    b = standard_basis()
    code = code_for_basis(b, "sym1")
    s = encode(Circuit(2, [], b), code)
    assert s.symbols == ("1", "0", "L")
    assert s.raw_bits() == 9


def test_encode_basis_mismatch():
    code = inl_code()
    b = standard_basis()
    with pytest.raises(ValueError):
        encode(Circuit(1, [("H", (0,))], b), code)


# ---------------------------------------------------------------------------
# roundtrip and errors

def _random_circuit(basis, rng, num_qubits=4, max_ops=50):
    names = basis.names()
    ops = []
    for _ in range(int(rng.integers(0, max_ops + 1))):
        name = names[int(rng.integers(len(names)))]
        arity = basis.gate(name).arity
        ts = rng.choice(num_qubits, size=arity, replace=False)
        ops.append((name, tuple(int(t) for t in ts)))
    return Circuit(num_qubits, ops, basis)


@pytest.mark.parametrize("style", ["sym1", "sym2"])
def test_roundtrip_random_circuits(style):
    b = standard_basis()
    code = code_for_basis(b, style)
    rng = np.random.default_rng(17)
    for _ in range(100):
        c = _random_circuit(b, rng)
        back = decode(encode(c, code))
        assert back.ops == c.ops
        assert back.num_qubits == c.num_qubits


def test_roundtrip_single_qubit_widthless_indices():
    # N=1 has zero index digits; the one legal target is implied.
    b = standard_basis()
    code = code_for_basis(b, "sym1")
    c = Circuit(1, [("H", (0,)), ("T", (0,))], b)
    s = encode(c, code)
    assert s.symbols == ("1", "L", "H", "L", "T", "L")
    assert decode(s).ops == c.ops


def test_truncated_string_reports_position():
    b = standard_basis()
    code = code_for_basis(b, "sym1")
    c = Circuit(2, [("H", (0,))], b)
    s = encode(c, code)
    clipped = encoded_from_ascii(
        " ".join(s.symbols[:-1]), code)
    with pytest.raises(ParseError) as err:
        decode(clipped)
    assert err.value.position is not None


def test_bad_gate_word_position():
    code = code_for_basis(standard_basis(), "sym1")
    s = encoded_from_ascii("1 0 L 0 0 0 L", code)
    with pytest.raises(ParseError):
        decode(s)


def test_ascii_serialization_roundtrip():
    b = standard_basis()
    code = code_for_basis(b, "sym1")
    s = encode(Circuit(2, [("CNOT", (0, 1))], b), code)
    text = encoded_to_ascii(s)
    assert text == "1 0 L C 0 1 L\n"
    assert encoded_from_ascii(text, code).symbols == s.symbols


# ---------------------------------------------------------------------------
# translation

def test_translate_identity_code():
    b = standard_basis()
    code = code_for_basis(b, "sym1")
    s = encode(_random_circuit(b, np.random.default_rng(3)), code)
    out, d = translate(s, code, code)
    assert out.symbols == s.symbols
    assert d.size_bits == 0


def test_translate_sym1_to_sym2_semantics():
    b = standard_basis()
    codes = builtin_codes(b)
    rng = np.random.default_rng(5)
    c = _random_circuit(b, rng)
    s1 = encode(c, codes["sym1"])
    s2, d = translate(s1, codes["sym1"], codes["sym2"])
    assert decode(s2).ops == c.ops
    got = run(decode(s2))
    want = run(c)
    assert np.array_equal(got.amplitudes, want.amplitudes)
    assert d.size_bits == 8 * len(d.to_text().encode("ascii"))
    assert d.size_bits > 0


def test_translation_dictionary_constant_across_lengths():
    b = standard_basis()
    codes = builtin_codes(b)
    sizes = []
    for n_ops in (5, 50, 400):
        ops = [("H", (i % 3,)) for i in range(n_ops)]
        s = encode(Circuit(3, ops, b), codes["sym1"])
        _, d = translate(s, codes["sym1"], codes["sym2"])
        sizes.append(d.size_bits)
    assert len(set(sizes)) == 1


def test_translate_basis_mismatch():
    s = embed_classical("01")[1]
    with pytest.raises(ValueError):
        translate(s, inl_code(), code_for_basis(standard_basis(), "sym1"))


# ---------------------------------------------------------------------------
# classical embedding

def test_embed_reproduces_reference_string():
    circuit, s = embed_classical("10110100")
    assert " ".join(s.symbols) == APPENDIX_STRING
    assert len(s) == 2 * 8
    assert s.raw_bits() == 32
    out = run(circuit)
    amps = out.amplitudes
    assert amps[int("10110100", 2)] == 1.0
    assert int("10110100", 2) == 180


def test_embed_all_zero():
    circuit, s = embed_classical("00")
    assert " ".join(s.symbols) == "I L I L"
    assert run(circuit).amplitudes[0] == 1.0


def test_embed_roundtrip_and_exact_runs():
    rng = np.random.default_rng(9)
    for n in (1, 5, 9, 16):
        x = "".join(str(int(v)) for v in rng.integers(0, 2, size=n))
        circuit, s = embed_classical(x)
        assert decode(s).ops == circuit.ops
        out = run(circuit)
        assert out.amplitudes[int(x, 2)] == 1.0


def test_embed_rejects_bad_input():
    with pytest.raises(ValueError):
        embed_classical("")
    with pytest.raises(ValueError):
        embed_classical("10a1")


def test_embedded_bytes_track_classical_bytes():
    # Line framing gives one byte per input bit, the same footprint as
    # byte-per-symbol classical serialization; the compressed sizes must
    # then track each other closely (the full sweep is in acceptance).
    rng = np.random.default_rng(13)
    for n in (64, 256, 1024):
        x = "".join(str(int(v)) for v in rng.integers(0, 2, size=n))
        _, s = embed_classical(x)
        payload = encoded_to_bytes(s)
        assert len(payload) == n
        diff = abs(compressed_size_bits(payload)
                   - compressed_size_bits(ascii_bytes(x)))
        assert diff <= 64 * 8


def test_encoded_to_bytes_framing():
    # "N L" lines pack to one byte each: N=01, L=10 -> 01100000.
    _, s = embed_classical("10")
    assert encoded_to_bytes(s) == bytes([0b01100000, 0b00100000])
