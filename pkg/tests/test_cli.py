import importlib
import inspect
import json

import pytest

from floer_workbench import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# command table coverage


DOMAIN_MODULES = ("complexes", "homology", "connect_sum", "invariants",
                  "fixtures", "lattice", "polyid")


def public_functions(modname):
    module = importlib.import_module("floer_workbench." + modname)
    out = set()
    for name, obj in vars(module).items():
        if name.startswith("_"):
            continue
        if inspect.isfunction(obj) and obj.__module__ == module.__name__:
            out.add("%s.%s" % (modname, name))
    return out


def test_every_operation_has_exactly_one_command():
    """The command table partitions the public operation surface."""
    table_entries = [op for ops in cli.COMMAND_TABLE.values() for op in ops]
    assert len(table_entries) == len(set(table_entries)), "duplicate assignment"
    expected = set()
    for modname in DOMAIN_MODULES:
        expected |= public_functions(modname)
    assert set(table_entries) == expected


def test_command_table_matches_parser_and_handlers():
    parser = cli.build_parser()
    sub = next(a for a in parser._actions
               if isinstance(a, type(parser._subparsers._group_actions[0])))
    commands = set(sub.choices)
    assert commands == set(cli.COMMAND_TABLE)
    assert commands == set(cli._HANDLERS)


def test_table_names_resolve_to_callables():
    for ops in cli.COMMAND_TABLE.values():
        for dotted in ops:
            modname, funcname = dotted.split(".")
            module = importlib.import_module("floer_workbench." + modname)
            assert callable(getattr(module, funcname))


# ---------------------------------------------------------------------------
# exit codes


def test_exit_zero_on_success(capsys):
    code, out, err = run(capsys, "validate", "--fixture", "Pplus")
    assert code == 0
    assert "valid: true" in out
    assert err == ""


def test_exit_one_on_domain_failure(tmp_path, capsys):
    doc = tmp_path / "bad.fx"
    doc.write_text("kind\n  admissible\ngenerators\n  a 0\n  b 1\n"
                   "differential\n  a b 1\nu\ndelta\ndelta_prime\n")
    code, out, err = run(capsys, "validate", "--file", str(doc))
    assert code == 1
    assert "valid: false" in out


def test_exit_one_on_negative_level(capsys):
    code, out, err = run(capsys, "verify-sum-bound",
                         "--a", "TrefoilLikeSynthetic",
                         "--b", "TrefoilLikeSynthetic",
                         "--c", "NilpotentLadder:2", "--n", "2")
    assert code == 1
    assert "no bound" in err


def test_exit_two_on_usage_errors(capsys):
    assert run(capsys, "validate", "--fixture", "Zzz")[0] == 2
    assert run(capsys, "validate")[0] == 2
    assert run(capsys, "eta", "--class", "1,2,3")[0] == 2
    assert run(capsys, "phi", "--file", "/no/such/file")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


# ---------------------------------------------------------------------------
# reports


def test_reports_are_self_describing(capsys):
    _, out, _ = run(capsys, "phi", "--fixture", "Pplus", "--u-param", "2")
    assert "u-param 2" in out
    assert "mode: minus" in out
    assert "class: rho4" in out


def test_phi_minus_report_shape(capsys):
    code, out, _ = run(capsys, "phi", "--fixture", "Pplus")
    assert code == 0
    assert "span-dim: 1" in out
    assert "nilpotent-on-cyclic-subspace: false" in out
    assert "filtration-order: none" in out


def test_phi_plus_mode(capsys):
    code, out, _ = run(capsys, "phi", "--fixture", "TrefoilLikeSynthetic",
                       "--mode", "plus")
    assert code == 0
    assert "mode: plus" in out
    assert "agree: true" in out


def test_h_report(capsys):
    code, out, _ = run(capsys, "h", "--fixture", "nPplusModel:3")
    assert code == 0
    assert "h: -3" in out
    assert "mutual-triviality: true" in out


def test_connect_sum_report(capsys):
    code, out, _ = run(capsys, "connect-sum", "--a", "Pplus", "--b", "Pplus",
                       "--homology")
    assert code == 0
    assert "homology-dims: 0:2 4:2" in out


def test_eta_report_nonzero(capsys):
    code, out, _ = run(capsys, "eta", "--class", "w0", "--blocks", "1")
    assert code == 0
    assert "count: 16" in out


def test_rationals_never_decimal(capsys):
    _, out, _ = run(capsys, "verify-sum-bound",
                    "--a", "TrefoilLikeSynthetic",
                    "--b", "TrefoilLikeSynthetic")
    assert "pairing: 1/2" in out
    assert "0.5" not in out


def test_json_carries_same_data(capsys):
    _, text, _ = run(capsys, "extremal", "--class", "w0")
    _, blob, _ = run(capsys, "extremal", "--class", "w0", "--json")
    payload = json.loads(blob)
    assert payload["command"] == "extremal"
    assert payload["extremal"] is True
    assert payload["min-charge-k"] == 1
    for line in text.strip().splitlines():
        key, value = line.split(": ", 1)
        assert key in payload


def test_documents_round_trip_through_cli(tmp_path, capsys):
    _, doc, _ = run(capsys, "fixtures", "--emit", "NilpotentLadder:3")
    path = tmp_path / "ladder.fx"
    path.write_text(doc)
    code, out, _ = run(capsys, "validate", "--file", str(path))
    assert code == 0
    assert "valid: true" in out


def test_random_document_generation_deterministic(capsys):
    _, first, _ = run(capsys, "fixtures", "--random", "nilpotent",
                      "--order", "2", "--seed", "11")
    _, second, _ = run(capsys, "fixtures", "--random", "nilpotent",
                       "--order", "2", "--seed", "11")
    assert first == second
    assert "# psi" in first
    _, third, _ = run(capsys, "fixtures", "--random", "nilpotent",
                      "--order", "2", "--seed", "12")
    assert third != first


def test_byte_identical_reruns(capsys):
    invocations = [
        ("validate", "--fixture", "Pminus"),
        ("homology", "--fixture", "NilpotentLadder:2"),
        ("reduce", "--fixture", "Pplus"),
        ("dualize", "--fixture", "Pminus"),
        ("connect-sum", "--a", "Pplus", "--b", "Pplus", "--search"),
        ("disjoint-union", "--a", "NilpotentLadder:1", "--b",
         "NilpotentLadder:2", "--homology"),
        ("phi", "--fixture", "TrefoilLikeSynthetic"),
        ("h", "--fixture", "Pminus"),
        ("eta", "--class", "w0", "--list"),
        ("extremal", "--class", "root"),
        ("verify-sum-bound", "--a", "TrefoilLikeSynthetic", "--b",
         "TrefoilLikeSynthetic", "--c", "TrefoilLikeSynthetic"),
        ("poly-identities", "--max-n", "2"),
        ("fixtures",),
    ]
    for argv in invocations:
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first == second, argv


def test_eta_bytes_stable_across_worker_counts(capsys, monkeypatch):
    outputs = set()
    for threads in ("1", "2", "3"):
        monkeypatch.setenv("FLOER_WORKBENCH_THREADS", threads)
        outputs.add(run(capsys, "eta", "--class", "w0^2", "--list"))
    monkeypatch.delenv("FLOER_WORKBENCH_THREADS")
    outputs.add(run(capsys, "eta", "--class", "w0^2", "--list",
                    "--workers", "5"))
    assert len(outputs) == 1


def test_descent_obstruction_maps_to_domain_error(tmp_path, capsys):
    doc = tmp_path / "obstructed.fx"
    doc.write_text(
        "kind\n  homology_sphere\n"
        "generators\n  a1 1\n  b4 4\n  c5 5\n"
        "differential\n  c5 b4 -1\n"
        "u\n  a1 c5 1\n"
        "delta\n  a1 2\n"
        "delta_prime\n  b4 1\n")
    code, out, _ = run(capsys, "validate", "--file", str(doc))
    assert code == 0, out
    code, _, err = run(capsys, "reduce", "--file", str(doc))
    assert code == 1
    assert "descend" in err or "descent" in err


def test_connect_sum_usage_requires_factors(capsys):
    code, _, err = run(capsys, "connect-sum", "--a", "Pplus")
    assert code == 2
    assert "right factor" in err
