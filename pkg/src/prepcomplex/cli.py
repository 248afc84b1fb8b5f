"""Command-line front end.

Subcommands: compile, estimate, bounds, source-exp, embed, report.  The
first five read and write delimited text; report is the only path that
renders figures.  Every failure surfaces as a single 'error: <reason>'
line on stderr with exit status 2, and repeated runs with the same
arguments produce byte-identical output files.

Inputs may be files (state, graph, or continuous-circuit text, sniffed
by their headers) or named state families like ghz-3, plus-2, zero-4,
bits-0110.
"""

import argparse
import math
import os
import sys

import numpy as np

from .bounds import (
    estimate_csv_header,
    estimate_csv_row,
    formula_bounds,
    min_over_candidates,
)
from .circuit import circuit_to_text
from .compressor import COMPRESSOR_ID
from .encode import embed_classical, encoded_to_ascii
from .errors import ParseError
from .sources import (
    bernoulli_letters,
    entropy_rate_experiment,
    source_csv_header,
)
from .statevec import StateVector, basis_state, zero_state
from .synth import (
    SKParams,
    compile_to_basis,
    continuous_from_text,
    graph_from_text,
    graph_state_circuit,
    graph_state_vector,
    prepare_state_exact,
    run_continuous,
    standard_generators,
    weighted_graph_state_circuit,
)
from .config import DEFAULT_MAX_DEPTH, DEFAULT_NET_L0

__all__ = ["main"]


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # single-line machine-parseable failures, no usage dump
    def error(self, message):
        raise CliError(message)


# ---------------------------------------------------------------------------
# Input handling

def state_to_text(state):
    lines = [f"qubits {state.num_qubits}"] + state.dump_lines()
    return "\n".join(lines) + "\n"


def state_from_text(text):
    """Parse 'qubits N' plus 'index re im' amplitude lines; omitted
    indices are zero."""
    num_qubits = None
    amps = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if num_qubits is None:
            if parts[0] != "qubits" or len(parts) != 2:
                raise ParseError("expected 'qubits N' header", lineno)
            try:
                num_qubits = int(parts[1])
            except ValueError:
                raise ParseError("qubit count is not an integer",
                                 lineno) from None
            if not 1 <= num_qubits <= 20:
                raise ParseError(f"qubit count {num_qubits} out of range",
                                 lineno)
            amps = np.zeros(2 ** num_qubits, dtype=complex)
            continue
        if len(parts) != 3:
            raise ParseError("expected 'index re im'", lineno)
        try:
            idx = int(parts[0])
            re, im = float(parts[1]), float(parts[2])
        except ValueError:
            raise ParseError("malformed amplitude line", lineno) from None
        if not 0 <= idx < amps.size:
            raise ParseError(f"amplitude index {idx} out of range", lineno)
        amps[idx] = re + 1j * im
    if num_qubits is None:
        raise ParseError("missing 'qubits N' header", 0)
    try:
        return StateVector(num_qubits, amps)
    except ValueError as exc:
        raise ParseError(str(exc), 0) from None


def family_state(name):
    """Named state families; None when the name is not one."""
    head, _, tail = name.partition("-")
    if head == "zero" and tail.isdigit():
        return zero_state(int(tail))
    if head == "plus" and tail.isdigit():
        n = int(tail)
        return StateVector(n, np.full(2 ** n, 2.0 ** (-n / 2)))
    if head == "ghz" and tail.isdigit():
        n = int(tail)
        amps = np.zeros(2 ** n, dtype=complex)
        amps[0] = amps[-1] = 1 / math.sqrt(2)
        return StateVector(n, amps)
    if head == "bits" and tail and all(c in "01" for c in tail):
        return basis_state(len(tail), int(tail, 2))
    return None


def _sniff(text):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertices"):
            return "graph"
        if line.startswith("qubits"):
            break
        return "unknown"
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line.startswith("basis"):
            return "circuit" if line.split()[1:] == ["continuous"] \
                else "unknown"
    return "state"


def load_input(spec):
    """Resolve a CLI input to ('state'|'graph'|'circuit', payload, id)."""
    fam = family_state(spec)
    if fam is not None:
        return "state", fam, spec
    if not os.path.exists(spec):
        raise CliError(f"no such input: {spec}")
    with open(spec, "r", encoding="ascii") as fh:
        text = fh.read()
    kind = _sniff(text)
    name = os.path.splitext(os.path.basename(spec))[0]
    if kind == "graph":
        return "graph", graph_from_text(text), name
    if kind == "circuit":
        return "circuit", continuous_from_text(text), name
    if kind == "state":
        return "state", state_from_text(text), name
    raise CliError(f"unrecognized input format in {spec}")


def _write(path, text):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# Shared options

def _add_common(p):
    p.add_argument("--config", help="key=value defaults file")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--compressor", default=COMPRESSOR_ID,
                   help="compressor id (only the built-in is supported)")


def _add_synth(p):
    p.add_argument("--epsilon", type=float, default=1e-2)
    p.add_argument("--basis", default="standard")
    p.add_argument("--code", default="sym1", choices=("sym1", "sym2"))
    p.add_argument("--sk-l0", type=int, default=DEFAULT_NET_L0)
    p.add_argument("--sk-depth", type=int, default=DEFAULT_MAX_DEPTH)


_CONFIG_KEYS = {"epsilon": float, "basis": str, "code": str,
                "sk_l0": int, "sk_depth": int, "seed": int,
                "trials": int, "p": float, "out": str}


def apply_config(args, argv):
    """Fill argument defaults from a key=value file; explicit flags win."""
    if not getattr(args, "config", None):
        return
    path = args.config
    if not os.path.exists(path):
        raise CliError(f"no such config file: {path}")
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if not sep or not key:
                raise CliError(f"config line {lineno}: expected key=value")
            if key not in _CONFIG_KEYS:
                raise CliError(f"config line {lineno}: unknown key {key!r}")
            if not hasattr(args, key):
                continue
            flag = "--" + key.replace("_", "-")
            if any(a == flag or a.startswith(flag + "=") for a in argv):
                continue
            try:
                setattr(args, key, _CONFIG_KEYS[key](value))
            except ValueError:
                raise CliError(
                    f"config line {lineno}: bad value for {key}") from None


def _check_common(args):
    if args.compressor != COMPRESSOR_ID:
        raise CliError(
            f"unsupported compressor {args.compressor!r}; "
            f"only {COMPRESSOR_ID!r} is configured")
    basis = getattr(args, "basis", "standard")
    if basis != "standard":
        raise CliError(f"unsupported basis {basis!r}")
    eps = getattr(args, "epsilon", None)
    if eps is not None and not 0 < eps <= 1:
        raise CliError(f"epsilon must be in (0, 1], got {eps}")


def _params(args):
    try:
        return SKParams(l0=args.sk_l0, depth=args.sk_depth)
    except ValueError as exc:
        raise CliError(str(exc)) from None


# ---------------------------------------------------------------------------
# Subcommands

def cmd_compile(args, argv):
    apply_config(args, argv)
    _check_common(args)
    kind, payload, _ = load_input(args.input)
    if kind == "state":
        continuous = prepare_state_exact(payload)
    elif kind == "graph":
        continuous = weighted_graph_state_circuit(payload)
    else:
        continuous = payload
    circuit = compile_to_basis(continuous, epsilon=args.epsilon,
                               params=_params(args))
    _write(args.out, circuit_to_text(circuit))
    if args.dump_state:
        _write(args.dump_state, state_to_text(run_continuous(continuous)))
    return 0


def cmd_estimate(args, argv):
    apply_config(args, argv)
    _check_common(args)
    kind, payload, state_id = load_input(args.input)
    params = _params(args)
    generators = standard_generators(params=params)
    if kind == "graph":
        graph = payload
        state = graph_state_vector(graph)

        def graph_candidates(_state, epsilon):
            if not graph.weighted:
                yield graph_state_circuit(graph)

        generators = [("graph", graph_candidates)] + generators
    elif kind == "circuit":
        state = run_continuous(payload)
    else:
        state = payload
    est, _ = min_over_candidates(state, args.epsilon, generators,
                                 code_style=args.code)
    rows = [estimate_csv_header(),
            estimate_csv_row(state_id, state.num_qubits, est)]
    _write(args.out, "\n".join(rows) + "\n")
    return 0


def cmd_bounds(args, argv):
    apply_config(args, argv)
    _check_common(args)
    values = []
    for a in args.args:
        try:
            v = float(a)
        except ValueError:
            raise CliError(f"formula arguments must be numeric, got {a!r}")
        values.append(int(v) if v == int(v) else v)
    try:
        est = formula_bounds(args.kind, *values)
    except (ValueError, TypeError) as exc:
        raise CliError(str(exc)) from None
    arg_text = ";".join(str(v) for v in values)
    bits = est.bits
    bits_text = str(int(bits)) if bits == int(bits) else format(bits, ".10g")
    _write(args.out,
           "kind,args,bits\n" + f"{args.kind},{arg_text},{bits_text}\n")
    return 0


def cmd_source_exp(args, argv):
    apply_config(args, argv)
    _check_common(args)
    if not 0 <= args.p <= 1:
        raise CliError(f"emission probability must be in [0, 1], got "
                       f"{args.p}")
    try:
        m_values = [int(m) for m in args.m_values.split(",") if m]
    except ValueError:
        raise CliError(f"bad m list {args.m_values!r}") from None
    if not m_values or any(m < 1 for m in m_values):
        raise CliError("m values must be positive integers")
    if args.trials < 1:
        raise CliError("trials must be >= 1")
    source = bernoulli_letters(args.p)
    rows = entropy_rate_experiment(source, m_values, trials=args.trials,
                                   master_seed=args.seed)
    _write(args.out, "\n".join([source_csv_header()] + rows) + "\n")
    return 0


def cmd_embed(args, argv):
    apply_config(args, argv)
    _check_common(args)
    if not args.bits or any(c not in "01" for c in args.bits):
        raise CliError(f"embed wants a 0/1 string, got {args.bits!r}")
    circuit, encoded = embed_classical(args.bits)
    out = encoded_to_ascii(encoded)
    if args.circuit_out:
        _write(args.circuit_out, circuit_to_text(circuit))
    _write(args.out, out)
    return 0


def cmd_report(args, argv):
    apply_config(args, argv)
    _check_common(args)
    from . import report
    written = []
    if args.estimates:
        written += report.render_estimate_report(args.estimates,
                                                 args.out_dir)
    if args.source_csv:
        written += report.render_source_report(args.source_csv,
                                               args.out_dir)
    if not written:
        raise CliError("report needs --estimates and/or --source-csv")
    sys.stdout.write("".join(p + "\n" for p in written))
    return 0


# ---------------------------------------------------------------------------

def build_parser():
    top = _Parser(prog="prepcomplex",
                  description="preparation-complexity toolkit")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile",
                       help="lower a state, graph, or continuous circuit "
                            "onto the discrete basis")
    p.add_argument("input")
    p.add_argument("--dump-state", help="also write the target state")
    _add_synth(p)
    _add_common(p)
    p.set_defaults(fn=cmd_compile)

    p = sub.add_parser("estimate",
                       help="minimum compressed-bits estimate for a state")
    p.add_argument("input")
    _add_synth(p)
    _add_common(p)
    p.set_defaults(fn=cmd_estimate)

    p = sub.add_parser("bounds", help="evaluate a closed-form bound")
    p.add_argument("kind")
    p.add_argument("args", nargs="*")
    _add_common(p)
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("source-exp",
                       help="entropy-rate experiment for a Bernoulli "
                            "letter source")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--m-values", default="1000,10000,100000")
    p.add_argument("--trials", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    p.set_defaults(fn=cmd_source_exp)

    p = sub.add_parser("embed",
                       help="embed a classical bit string as a circuit")
    p.add_argument("bits")
    p.add_argument("--circuit-out", help="also write the circuit text")
    _add_common(p)
    p.set_defaults(fn=cmd_embed)

    p = sub.add_parser("report", help="render figures from result CSVs")
    p.add_argument("--estimates", help="estimate CSV to plot")
    p.add_argument("--source-csv", help="rate-experiment CSV to plot")
    p.add_argument("--out-dir", help="figure directory (default: beside "
                                     "the CSV)")
    _add_common(p)
    p.set_defaults(fn=cmd_report)
    return top


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args, argv)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - last-resort guard
        print(f"error: internal: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
