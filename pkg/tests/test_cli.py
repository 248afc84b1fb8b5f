"""CLI surface: parsing, dispatch, determinism, error reporting."""

import math
import subprocess
import sys

import numpy as np
import pytest

from prepcomplex.circuit import circuit_from_text, run, standard_basis
from prepcomplex.cli import family_state, main, state_from_text, state_to_text
from prepcomplex.errors import ParseError
from prepcomplex.statevec import StateVector, fidelity, zero_state
from prepcomplex.synth import (
    ContinuousCircuit,
    Graph,
    continuous_to_text,
    graph_state_vector,
    graph_to_text,
)

FAST = ["--sk-l0", "16", "--sk-depth", "4"]


def bell():
    return StateVector(2, np.array([1, 0, 0, 1]) / math.sqrt(2))


# ---------------------------------------------------------------------------
# Input plumbing

def test_family_states():
    assert np.allclose(family_state("zero-3").amplitudes,
                       zero_state(3).amplitudes)
    assert family_state("ghz-2") is not None
    assert np.allclose(family_state("ghz-2").amplitudes, bell().amplitudes)
    assert np.allclose(family_state("plus-1").amplitudes,
                       np.array([1, 1]) / math.sqrt(2))
    assert family_state("bits-0110").amplitudes[6] == 1.0
    assert family_state("nope-3") is None
    assert family_state("bits-012") is None


def test_state_text_roundtrip():
    s = bell()
    back = state_from_text(state_to_text(s))
    assert back.num_qubits == 2
    assert np.allclose(back.amplitudes, s.amplitudes)


def test_state_from_text_errors():
    with pytest.raises(ParseError):
        state_from_text("index 0 1 0\n")
    with pytest.raises(ParseError):
        state_from_text("qubits 1\n5 1 0\n")
    with pytest.raises(ParseError):
        state_from_text("qubits 1\n0 0.5 0\n")  # not normalized
    with pytest.raises(ParseError):
        state_from_text("qubits 1\n0 one 0\n")


# ---------------------------------------------------------------------------
# bounds

def test_bounds_formula(capsys):
    assert main(["bounds", "general", "2", "0.25"]) == 0
    out = capsys.readouterr().out
    assert out == "kind,args,bits\ngeneral,2;0.25,32\n"


def test_bounds_unknown_kind(capsys):
    assert main(["bounds", "wat", "1"]) == 2
    err = capsys.readouterr().err
    assert err.startswith("error: ")
    assert err.count("\n") == 1


def test_bounds_non_numeric(capsys):
    assert main(["bounds", "general", "two", "0.25"]) == 2
    assert capsys.readouterr().err.startswith("error: ")


# ---------------------------------------------------------------------------
# compile

def test_compile_family_to_file(tmp_path):
    out = tmp_path / "bell.circ"
    dump = tmp_path / "bell.state"
    rc = main(["compile", "ghz-2", "--epsilon", "0.001", *FAST,
               "--out", str(out), "--dump-state", str(dump)])
    assert rc == 0
    circuit = circuit_from_text(out.read_text(), standard_basis())
    assert fidelity(run(circuit), bell()) >= 1 - 0.001
    dumped = state_from_text(dump.read_text())
    assert fidelity(dumped, bell()) == pytest.approx(1.0, abs=1e-12)


def test_compile_state_file(tmp_path):
    src = tmp_path / "in.state"
    src.write_text(state_to_text(bell()))
    out = tmp_path / "out.circ"
    rc = main(["compile", str(src), "--epsilon", "0.01", *FAST,
               "--out", str(out)])
    assert rc == 0
    circuit = circuit_from_text(out.read_text(), standard_basis())
    assert fidelity(run(circuit), bell()) >= 0.99


def test_compile_graph_file(tmp_path):
    g = Graph(2, [(0, 1)])
    src = tmp_path / "g.graph"
    src.write_text(graph_to_text(g))
    out = tmp_path / "g.circ"
    rc = main(["compile", str(src), "--epsilon", "0.01", *FAST,
               "--out", str(out)])
    assert rc == 0
    circuit = circuit_from_text(out.read_text(), standard_basis())
    assert fidelity(run(circuit), graph_state_vector(g)) >= 0.99


def test_compile_continuous_circuit_file(tmp_path):
    cc = ContinuousCircuit(1, [("ry", 0.8, (0,))])
    src = tmp_path / "c.cont"
    src.write_text(continuous_to_text(cc))
    out = tmp_path / "c.circ"
    rc = main(["compile", str(src), "--epsilon", "0.01", *FAST,
               "--out", str(out)])
    assert rc == 0
    from prepcomplex.synth import run_continuous
    circuit = circuit_from_text(out.read_text(), standard_basis())
    assert fidelity(run(circuit), run_continuous(cc)) >= 0.99


def test_compile_rejects_discrete_circuit_text(tmp_path):
    src = tmp_path / "d.circ"
    src.write_text("qubits 1\nbasis standard\nH 0\n")
    assert main(["compile", str(src)]) == 2


def test_missing_input(capsys):
    assert main(["compile", "no-such-file.state"]) == 2
    err = capsys.readouterr().err
    assert err.startswith("error: ")
    assert err.count("\n") == 1


def test_bad_epsilon(capsys):
    assert main(["compile", "ghz-2", "--epsilon", "1.5"]) == 2
    assert "epsilon" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# estimate

def test_estimate_csv_deterministic(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    for path in (a, b):
        rc = main(["estimate", "zero-4", "--epsilon", "0.01", *FAST,
                   "--out", str(path)])
        assert rc == 0
    assert a.read_bytes() == b.read_bytes()
    header, row = a.read_text().splitlines()
    assert header == ("state_id,N,epsilon,method,bits,basis,code,"
                      "candidate_count,compressor_id")
    cells = row.split(",")
    assert cells[0] == "zero-4"
    assert cells[1] == "4"
    assert cells[2] == "0.01"
    assert cells[3] == "min_over_candidates"
    assert float(cells[4]) > 0
    assert cells[8] == "lzma2-raw-p9e-lc0lp0pb0"


def test_estimate_graph_input(tmp_path):
    g = Graph(3, [(0, 1), (1, 2), (0, 2)])
    src = tmp_path / "tri.graph"
    src.write_text(graph_to_text(g))
    out = tmp_path / "tri.csv"
    rc = main(["estimate", str(src), "--epsilon", "0.01", *FAST,
               "--out", str(out)])
    assert rc == 0
    row = out.read_text().splitlines()[1].split(",")
    assert row[0] == "tri"
    assert row[1] == "3"
    assert float(row[4]) > 0


def test_estimate_sym2_code(tmp_path):
    out = tmp_path / "s.csv"
    rc = main(["estimate", "bits-01", "--epsilon", "0.05", "--code", "sym2",
               *FAST, "--out", str(out)])
    assert rc == 0
    assert out.read_text().splitlines()[1].split(",")[6].startswith("sym")


# ---------------------------------------------------------------------------
# source-exp

def test_source_exp_deterministic(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    argv = ["source-exp", "--p", "0.25", "--m-values", "200,400",
            "--trials", "2", "--seed", "3"]
    for path in (a, b):
        assert main(argv + ["--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0] == "m,trial,bits,bits_per_emission,H,source_id,seed"
    assert len(lines) == 5
    assert lines[1].split(",")[5] == "bernoulli-0.25"


def test_source_exp_validation(capsys):
    assert main(["source-exp", "--p", "2.0"]) == 2
    assert main(["source-exp", "--p", "0.5", "--m-values", "abc"]) == 2
    assert main(["source-exp", "--p", "0.5", "--trials", "0"]) == 2
    capsys.readouterr()


# ---------------------------------------------------------------------------
# embed

def test_embed_appendix_string(capsys):
    assert main(["embed", "10110100"]) == 0
    out = capsys.readouterr().out
    assert out == "N L I L N L N L I L N L I L I L\n"


def test_embed_writes_circuit(tmp_path):
    out = tmp_path / "e.txt"
    circ = tmp_path / "e.circ"
    rc = main(["embed", "01", "--out", str(out),
               "--circuit-out", str(circ)])
    assert rc == 0
    assert out.read_text() == "I L N L\n"
    from prepcomplex.circuit import bitflip_basis
    circuit = circuit_from_text(circ.read_text(), bitflip_basis())
    assert [n for n, _ in circuit.ops] == ["I", "N"]


def test_embed_rejects_non_bits(capsys):
    assert main(["embed", "10a"]) == 2
    assert capsys.readouterr().err.startswith("error: ")


# ---------------------------------------------------------------------------
# config file

def test_config_defaults_and_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("epsilon = 0.5\nsk_l0 = 16\nsk_depth = 3\n")
    out1 = tmp_path / "c1.csv"
    rc = main(["estimate", "zero-2", "--config", str(cfg),
               "--out", str(out1)])
    assert rc == 0
    assert out1.read_text().splitlines()[1].split(",")[2] == "0.5"

    out2 = tmp_path / "c2.csv"
    rc = main(["estimate", "zero-2", "--config", str(cfg),
               "--epsilon", "0.25", "--out", str(out2)])
    assert rc == 0
    assert out2.read_text().splitlines()[1].split(",")[2] == "0.25"


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("tachyons=9\n")
    assert main(["estimate", "zero-2", "--config", str(cfg)]) == 2
    assert "unknown key" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# shared guards

def test_unsupported_compressor(capsys):
    assert main(["bounds", "general", "2", "0.25",
                 "--compressor", "zlib"]) == 2
    assert "compressor" in capsys.readouterr().err


def test_unsupported_basis(capsys):
    assert main(["compile", "ghz-2", "--basis", "clifford"]) == 2
    assert "basis" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# report

def test_report_renders_figures(tmp_path, capsys):
    src_csv = tmp_path / "rates.csv"
    assert main(["source-exp", "--p", "0.25", "--m-values", "200,400",
                 "--trials", "2", "--seed", "1",
                 "--out", str(src_csv)]) == 0
    est_csv = tmp_path / "est.csv"
    assert main(["estimate", "zero-3", "--epsilon", "0.05", *FAST,
                 "--out", str(est_csv)]) == 0
    figdir = tmp_path / "figs"
    rc = main(["report", "--source-csv", str(src_csv),
               "--estimates", str(est_csv), "--out-dir", str(figdir)])
    assert rc == 0
    written = capsys.readouterr().out.splitlines()
    assert len(written) == 2
    for path in written:
        assert path.startswith(str(figdir))
        assert path.endswith(".png")
        with open(path, "rb") as fh:
            assert fh.read(8).startswith(b"\x89PNG")


def test_report_requires_some_input(capsys):
    assert main(["report"]) == 2
    assert capsys.readouterr().err.startswith("error: ")


# ---------------------------------------------------------------------------
# module entry point

def test_module_invocation():
    proc = subprocess.run(
        [sys.executable, "-m", "prepcomplex.cli", "bounds", "graph_exact",
         "5"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "kind,args,bits\ngraph_exact,5,15\n"
    bad = subprocess.run(
        [sys.executable, "-m", "prepcomplex.cli", "frobnicate"],
        capture_output=True, text=True)
    assert bad.returncode == 2
    assert bad.stderr.startswith("error: ")