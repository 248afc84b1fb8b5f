"""Computable complexity upper bounds.

Three families live here: measured bounds (raw and compressed lengths of
encoded circuits, and the minimum over candidate circuits), the closed-form
formula battery (all logs base 2, results in bits), and two counting
harnesses (a toy description machine for the pigeonhole argument and the
basis-projection bound).  Nothing in this module claims to compute true
algorithmic complexity; every number is an upper bound or a proxy.
"""

import math
from collections import namedtuple
from dataclasses import dataclass, field

import numpy as np

from .circuit import prepares_with_precision
from .compressor import COMPRESSOR_ID, compressed_size_bits, header_bits
from .encode import code_for_basis, encode, encoded_to_bytes
from .errors import EmptyCandidateError, SizeError

__all__ = [
    "ComplexityEstimate",
    "raw_length_bound",
    "compressed_bound",
    "min_over_candidates",
    "formula_bounds",
    "FORMULA_KINDS",
    "compressible_fraction",
    "noncomplex_fraction",
    "toy_machine_census",
    "vitanyi_bound",
    "VitanyiBound",
    "estimate_csv_header",
    "estimate_csv_row",
]

_METHODS = ("raw_length", "compressed", "min_over_candidates", "formula")


@dataclass(frozen=True)
class ComplexityEstimate:
    bits: float
    method: str
    epsilon: float = None
    basis_id: str = None
    code_id: str = None
    candidate_count: int = 0
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in _METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.bits < 0:
            raise ValueError("bits must be nonnegative")
        if self.method == "formula" and "formula" not in self.detail:
            raise ValueError("formula estimates must carry the formula name")


def raw_length_bound(encoded):
    """Symbol count x bits per symbol; the trivial length bound."""
    return ComplexityEstimate(
        bits=float(encoded.raw_bits()),
        method="raw_length",
        basis_id=encoded.code.basis.id,
        code_id=encoded.code.id,
    )


def compressed_bound(encoded):
    """Compressed size of the bit-serialized string, in bits.

    Deterministic for the fixed compressor configuration; the stream
    header constant is reported alongside, never subtracted.
    """
    bits = compressed_size_bits(encoded_to_bytes(encoded))
    return ComplexityEstimate(
        bits=float(bits),
        method="compressed",
        basis_id=encoded.code.basis.id,
        code_id=encoded.code.id,
        detail={"header_bits": header_bits()},
    )


def min_over_candidates(state, epsilon, generators, code_style="sym1"):
    """Minimum compressed bound over candidate circuits for a state.

    `generators` is a sequence of (name, producer) pairs; each producer is
    called with (state, epsilon) and returns an iterable of circuits.  A
    candidate that misses the precision target is recorded as rejected,
    never silently dropped.  Ties break toward the earliest generator.
    Returns (estimate, winning encoded string).
    """
    best = None           # (bits, gen_index, name, encoded)
    accepted = 0
    rejected = []
    codes = {}
    for gen_index, (gen_name, producer) in enumerate(generators):
        for circuit in producer(state, epsilon):
            ok = prepares_with_precision(
                circuit, circuit.basis, state, epsilon)
            if not ok:
                rejected.append(gen_name)
                continue
            accepted += 1
            basis = circuit.basis
            code = codes.get(basis.id)
            if code is None:
                code = code_for_basis(basis, code_style)
                codes[basis.id] = code
            enc = encode(circuit, code, circuit_id=gen_name)
            bits = compressed_size_bits(encoded_to_bytes(enc))
            key = (bits, gen_index)
            if best is None or key < best[0]:
                best = (key, gen_name, enc)
    if best is None:
        raise EmptyCandidateError(
            f"no candidate reached precision {epsilon}"
            + (f"; rejected: {sorted(set(rejected))}" if rejected else ""))
    (bits, _), winner, enc = best
    estimate = ComplexityEstimate(
        bits=float(bits),
        method="min_over_candidates",
        epsilon=epsilon,
        basis_id=enc.code.basis.id,
        code_id=enc.code.id,
        candidate_count=accepted,
        detail={
            "winner": winner,
            "rejected": tuple(rejected),
            "header_bits": header_bits(),
        },
    )
    return estimate, enc


# ---------------------------------------------------------------------------
# Formula battery

def _check(cond, message):
    if not cond:
        raise ValueError(message)


def _common(n, epsilon):
    _check(n >= 1 and int(n) == n, f"N must be a positive integer, got {n}")
    _check(0 < epsilon < 1, f"epsilon must be in (0, 1), got {epsilon}")


def _preliminary(n, epsilon):
    _common(n, epsilon)
    without = -(2 ** n) * math.log2(epsilon)
    return without + n, {"without_linear_term": without}


def _ball_volume(n, epsilon):
    _common(n, epsilon)
    return -math.log2(2.0 ** (-n) * epsilon ** (2 ** n)), {}


def _general(n, epsilon):
    _common(n, epsilon)
    return -(n ** 2) * (2 ** n) * math.log2(epsilon), {}


def _graph_exact(n):
    _check(n >= 1 and int(n) == n, f"N must be a positive integer, got {n}")
    return n + n * (n - 1) / 2, {}


def _graph_sk(n, epsilon):
    _common(n, epsilon)
    return n ** 2 - math.log2(epsilon / n ** 2), {}


def _weighted_graph(n, epsilon):
    _common(n, epsilon)
    return -(n ** 2) * math.log2(epsilon / n ** 2), {}


def _copies(n, m, epsilon):
    _common(n, epsilon)
    _check(m >= 1 and int(m) == m, f"m must be a positive integer, got {m}")
    return -(n ** 2) * (2 ** n) * math.log2(epsilon / m), {}


def _per_copy(n, m, epsilon):
    base, _ = _copies(n, m, epsilon)
    log_term = math.log2(m)
    return base + log_term, {"base": base, "log_term": log_term}


def _separable(partition, epsilon):
    _check(len(partition) >= 1, "empty partition")
    j = len(partition)
    _check(all(nj >= 1 and int(nj) == nj for nj in partition),
           f"invalid partition {partition}")
    _check(0 < epsilon < 1, f"epsilon must be in (0, 1), got {epsilon}")
    total = sum(-(nj ** 2) * (2 ** nj) * math.log2(epsilon / j)
                for nj in partition)
    return total, {"factors": len(partition)}


def _fully_separable(n, epsilon):
    _common(n, epsilon)
    return -2 * n * math.log2(epsilon / n), {}


def _schumacher(n, s, epsilon, dict_size):
    _common(n, epsilon)
    _check(s >= 0, f"entropy must be nonnegative, got {s}")
    _check(dict_size >= 1, f"dictionary size must be >= 1, got {dict_size}")
    ns = n * s
    return -dict_size * (ns ** 2) * (2.0 ** ns) * math.log2(epsilon), {}


def _sentence(k_index_bits, word_length, dict_size):
    _check(k_index_bits >= 0, "index bits must be nonnegative")
    _check(word_length >= 1, "word length must be >= 1")
    _check(dict_size >= 1, "dictionary size must be >= 1")
    return k_index_bits + word_length * dict_size, {
        "index_part": float(k_index_bits),
        "dictionary_cap": float(word_length * dict_size),
    }


_FORMULAS = {
    "preliminary": _preliminary,
    "ball_volume": _ball_volume,
    "general": _general,
    "graph_exact": _graph_exact,
    "graph_sk": _graph_sk,
    "weighted_graph": _weighted_graph,
    "copies": _copies,
    "per_copy": _per_copy,
    "separable": _separable,
    "fully_separable": _fully_separable,
    "schumacher": _schumacher,
    "sentence": _sentence,
}

FORMULA_KINDS = tuple(sorted(_FORMULAS))


def formula_bounds(kind, *args, **kwargs):
    """Evaluate one closed-form bound; exact arithmetic, bits."""
    try:
        fn = _FORMULAS[kind]
    except KeyError:
        raise ValueError(
            f"unknown formula kind {kind!r}; known: {FORMULA_KINDS}"
        ) from None
    bits, detail = fn(*args, **kwargs)
    detail = {"formula": kind, **detail}
    epsilon = kwargs.get("epsilon")
    if epsilon is None:
        for a in args:
            if isinstance(a, float) and 0 < a < 1:
                epsilon = a
                break
    return ComplexityEstimate(bits=float(bits), method="formula",
                              epsilon=epsilon, detail=detail)


# ---------------------------------------------------------------------------
# Counting harnesses

def compressible_fraction(n, c):
    """(2^c - 1) / 2^n: the share of n-bit strings that could have a
    description shorter than c bits."""
    _check(c > 0, f"threshold must be positive, got {c}")
    _check(n >= 1, f"string length must be >= 1, got {n}")
    return (2.0 ** c - 1.0) / 2.0 ** n


def noncomplex_fraction(n, epsilon, c):
    """Returns (raw value 2^(N^2 2^N log eps + c), value clamped to 1)."""
    _common(n, epsilon)
    exponent = (n ** 2) * (2 ** n) * math.log2(epsilon) + c
    raw = 2.0 ** exponent
    return raw, min(raw, 1.0)


# Toy description machine over {0, 1}:
#   0 <payload>              emit the payload
#   1 <rrrr> <payload>       emit the payload r+2 times (r in 0..15)
# Uniquely decodable by the leading bit; descriptions shorter than 5 bits
# cannot start with 1.
_CENSUS_CAP = 22
_REPEAT_HEADER = 5  # instruction bit + 4-bit repeat field


def toy_machine_census(c):
    """Count distinct outputs of all descriptions of length < c.

    Returns (distinct output count, bound 2^c - 1, holds).  Output strings
    are tracked as (1 << len) | value integer keys so the empty output is
    representable.
    """
    _check(c >= 1 and int(c) == c, f"threshold must be a positive integer")
    if c > _CENSUS_CAP:
        raise SizeError(f"census capped at c <= {_CENSUS_CAP}, got {c}")
    outputs = set()
    for length in range(1, c):
        # LITERAL: payload of length-1 bits; keys are exactly the integer
        # range [2^(length-1), 2^length).
        payload_bits = length - 1
        outputs.update(range(1 << payload_bits, 1 << (payload_bits + 1)))
        # REPEAT: needs the 5-bit header.
        if length >= _REPEAT_HEADER:
            w = length - _REPEAT_HEADER
            for r in range(16):
                t = r + 2
                if w == 0:
                    outputs.add(1)  # empty payload emits the empty string
                    continue
                unit = (1 << (w * t)) - 1
                base = unit // ((1 << w) - 1)  # 0b000..1 repeated t times
                for v in range(1 << w):
                    outputs.add((1 << (w * t)) | (v * base))
    bound = 2 ** c - 1
    distinct = len(outputs)
    return distinct, bound, distinct <= bound


VitanyiBound = namedtuple(
    "VitanyiBound",
    ["basis_index", "description_bits", "penalty_bits", "total", "eps_vit"])


def vitanyi_bound(state):
    """Best basis-state description: N bits for the index plus the
    fidelity penalty ceil(-log2 |<e_j|phi>|^2); total never exceeds 2N."""
    n = state.num_qubits
    probs = np.abs(state.amplitudes) ** 2
    j = int(np.argmax(probs))
    pmax = float(probs[j])
    # pmax >= 2^-N by pigeonhole, so the log is at most N; the small slack
    # keeps an exact power of two from rounding its ceiling up.
    penalty = math.ceil(-math.log2(pmax) - 1e-12) if pmax < 1.0 else 0
    penalty = max(0, penalty)
    return VitanyiBound(
        basis_index=j,
        description_bits=n,
        penalty_bits=penalty,
        total=n + penalty,
        eps_vit=1.0 - 1.0 / 2 ** n,
    )


# ---------------------------------------------------------------------------
# Report rows

_CSV_COLUMNS = ("state_id", "N", "epsilon", "method", "bits", "basis",
                "code", "candidate_count", "compressor_id")


def estimate_csv_header():
    return ",".join(_CSV_COLUMNS)


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, float):
        if value == int(value) and abs(value) < 1e15:
            return str(int(value))
        return format(value, ".10g")
    return str(value)


def estimate_csv_row(state_id, num_qubits, estimate):
    cells = (
        state_id,
        num_qubits,
        _fmt(estimate.epsilon),
        estimate.method,
        _fmt(estimate.bits),
        estimate.basis_id or "",
        estimate.code_id or "",
        estimate.candidate_count,
        COMPRESSOR_ID,
    )
    return ",".join(str(c) for c in cells)
