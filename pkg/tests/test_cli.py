from __future__ import annotations

import json
import subprocess
import sys

import pytest

from deltaip import formats
from deltaip.cli import main
from deltaip.instances import random_two_per_column_ip, random_two_per_row_ip
from deltaip.oracle import brute_force_ip


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_solve_ip_rows(tmp_path, capsys):
    ip = random_two_per_row_ip(4, 4, 6, 2).ip
    path = write(tmp_path, "a.ip", formats.format_ip(ip))
    code, out, _ = run(capsys, "solve-ip", "--rows", path)
    res = formats.result_from_json(out)
    want = brute_force_ip(ip)
    assert code == (1 if want.status == "infeasible" else 0)
    assert (res.status, res.objective) == (want.status, want.objective)


def test_solve_ip_cols_is_deterministic(tmp_path, capsys):
    ip = random_two_per_column_ip(2, 4, 3, 4).ip
    path = write(tmp_path, "b.ip", formats.format_ip(ip))
    first = run(capsys, "solve-ip", "--cols", path)
    second = run(capsys, "solve-ip", "--cols", path)
    assert first == second
    assert formats.result_from_json(first[1]).objective == brute_force_ip(ip).objective


def test_solve_ip_input_errors(tmp_path, capsys):
    bad = write(tmp_path, "bad.ip", "IP 1 1\n")
    assert run(capsys, "solve-ip", "--rows", bad)[0] == 2
    assert run(capsys, "solve-ip", "--rows", str(tmp_path / "missing.ip"))[0] == 2
    dense = write(tmp_path, "d.ip", "IP 1 3\n1 1 1\nRHS 1\nOBJ 1 1 1\nLB 0 0 0\nUB 1 1 1\n")
    assert run(capsys, "solve-ip", "--rows", dense)[0] == 2
    low = write(tmp_path, "l.ip", "IP 1 1\n2\nRHS 3\nOBJ 1\nLB 0\nUB 5\n")
    assert run(capsys, "solve-ip", "--rows", "--delta", "1", low)[0] == 2


def test_solve_ip_infeasible(tmp_path, capsys):
    path = write(tmp_path, "i.ip", "IP 2 1\n1\n-1\nRHS 0 -1\nOBJ 1\n")
    code, out, _ = run(capsys, "solve-ip", "--rows", path)
    assert code == 1 and json.loads(out)["status"] == "infeasible"


def test_solve_stableset(tmp_path, capsys):
    path = write(tmp_path, "c5.g", "GRAPH 5 5\nE 0 1\nE 1 2\nE 2 3\nE 3 4\nE 0 4\n")
    code, out, _ = run(capsys, "solve-stableset", path)
    data = json.loads(out)
    assert code == 0 and data["weight"] == "2" and len(data["vertices"]) == 2


def test_analyze(tmp_path, capsys):
    tri = write(tmp_path, "t.g", "GRAPH 3 3\nE 0 1\nE 1 2\nE 0 2\n")
    assert run(capsys, "analyze", "ocp", tri)[1].strip() == "ocp = 1"
    assert run(capsys, "analyze", "oct", tri)[1].strip() == "oct = 1"
    assert run(capsys, "analyze", "delta", tri)[1].strip() == "delta = 2"
    code, out, _ = run(capsys, "analyze", "resilience", tri, "--rho", "1")
    assert code == 0 and "not resilient" in out


def test_gen_outputs_parse(capsys):
    code, out, _ = run(capsys, "gen", "escher", "3")
    assert code == 0 and formats.parse_graph(out).graph.n == 18
    code, out, _ = run(capsys, "gen", "k4n1")
    assert formats.parse_embed(out).m == 6
    code, out, _ = run(capsys, "gen", "random-ip", "--seed", "3", "--delta", "2")
    assert formats.parse_ip(out).n == 5
    assert run(capsys, "gen", "random-ip", "--seed", "3", "--delta", "2")[1] == out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "prop-dual", "--trials", "5", "--seed", "7")
    assert code == 0 and out.strip() == "PASS 5/5"


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "solve-ip", "x.ip")[0] == 2


def test_console_script_entry_point(tmp_path):
    path = write(tmp_path, "t.g", "GRAPH 3 3\nE 0 1\nE 1 2\nE 0 2\n")
    proc = subprocess.run([sys.executable, "-m", "deltaip.cli", "analyze", "ocp", path],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "ocp = 1"
