import json

import pytest

from suppvar.cli import (
    EXIT_NOT_GRADABLE,
    EXIT_PARSE,
    IdealParseError,
    format_ideal,
    main,
    parse_ideal,
)
from suppvar.monomial import Monomial, MonomialSeq

from conftest import cycle_seq, random_minimal_seq


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_ideal_grammar():
    s = parse_ideal("x1*x2, x2*x3,x3^2")
    assert s.gens == (
        Monomial({1: 1, 2: 1}),
        Monomial({2: 1, 3: 1}),
        Monomial({3: 2}),
    )
    assert s.d == 3
    assert parse_ideal("x2 * x5 ^ 3").d == 5


def test_parse_ideal_errors():
    for bad in ("", "x0", "y1", "x1*", "x1,,x2", "x1^x"):
        with pytest.raises(IdealParseError):
            parse_ideal(bad)


def test_round_trip_random_ideals():
    import random

    rng = random.Random(20)
    for _ in range(25):
        s = random_minimal_seq(rng, rng.randrange(1, 5), 4)
        assert parse_ideal(format_ideal(s)).gens == s.gens


def test_edge_cycle_command(capsys):
    code, out, _ = run_cli(capsys, "edge-cycle", "6")
    assert code == 0
    assert out.strip() == "x1*x2,x2*x3,x3*x4,x4*x5,x5*x6,x6*x1"
    code, out, _ = run_cli(capsys, "edge-cycle", "3")
    assert code == 0
    assert out.strip() == "x1*x2,x2*x3,x3*x1"
    code, out, _ = run_cli(capsys, "edge-cycle", "14")
    assert code == 0
    assert out.strip().startswith("x1*x2,x2*x3") and out.strip().endswith("x14*x1")
    code, _, err = run_cli(capsys, "edge-cycle", "2")
    assert code == EXIT_PARSE


def test_compute_six_cycle(capsys):
    code, out, _ = run_cli(capsys, "compute", "x1*x2,x2*x3,x3*x4,x4*x5,x5*x6,x6*x1")
    assert code == 0
    payload = json.loads(out)
    assert payload["classification"] == "Sextic135246"
    assert payload["components"] == [{"generators": ["a1*a3*a5+a2*a4*a6"]}]


def test_compute_regular_sequence(capsys):
    code, out, _ = run_cli(capsys, "compute", "x1^2,x2^2")
    assert code == 0
    assert json.loads(out)["kind"] == "origin_only"


def test_compute_parse_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "compute", "x1*+")
    assert code == EXIT_PARSE


def test_compute_nongradable_exit_and_witness(capsys):
    code, _, err = run_cli(capsys, "compute", "x1*x2,x3*x4,x5*x6,x1*x3*x5,x2*x4*x6")
    assert code == EXIT_NOT_GRADABLE
    for cls in ("{}", "{1}", "{1,2}", "{4}", "{1,2,3,4,5}"):
        assert cls in err


def test_compute_oracle_only_on_nongradable(capsys):
    code, out, _ = run_cli(
        capsys, "compute", "x1*x2,x3*x4,x5*x6,x1*x3*x5,x2*x4*x6", "--oracle-only"
    )
    assert code == 0
    assert json.loads(out)["engine"] == "chat"


def test_verify_command(capsys):
    code, out, _ = run_cli(
        capsys,
        "verify",
        "x1*x2,x2*x3,x3*x4,x4*x5,x5*x6,x6*x1",
        "a1*a3*a5+a2*a4*a6",
        "--samples", "20",
        "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["agreed"] is True
    assert payload["fail_probability_bound"] <= 2**-40


def test_verify_disagree_exit(capsys):
    code, out, _ = run_cli(
        capsys,
        "verify",
        "x1*x2,x2*x3,x3*x4,x4*x5,x5*x6,x6*x1",
        "a1",
        "--samples", "10",
        "--json",
    )
    assert code == 1
    assert json.loads(out)["witness"] is not None


def test_diagnose_command(capsys):
    ideal = ",".join(f"x{i}*x{i % 7 + 1}" for i in range(1, 8))
    code, out, _ = run_cli(capsys, "diagnose", ideal, "1,3,5")
    assert code == 0
    assert "M_J  = {1,2,3,4,5}" in out
    assert "{2,4}" in out
    assert "ksgn{1,2,3,5} = -1" in out


def test_weak_grading_command(capsys):
    code, out, _ = run_cli(capsys, "weak-grading", "x1*x2,x2*x3,x3*x4,x4*x5", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["gradable"] is True
    code, out, _ = run_cli(
        capsys, "weak-grading", "x1*x2,x3*x4,x5*x6,x1*x3*x5,x2*x4*x6", "--json"
    )
    assert code == EXIT_NOT_GRADABLE
    payload = json.loads(out)
    assert payload["gradable"] is False


def test_enumerate6_dry_run(capsys):
    code, out, _ = run_cli(capsys, "enumerate6", "--dry-run", "--graph", "0", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["graphs"] == 1


def test_enumerate6_single_graph_by_edges(capsys):
    code, out, _ = run_cli(
        capsys, "enumerate6", "--graph", "1-2;3-4;5-6", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["graphs"] == 1


def test_determinism_same_seed(capsys):
    args = ("compute", "x1*x2,x2*x3,x3*x4,x4*x5,x5*x6,x6*x1", "--seed", "7")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2
