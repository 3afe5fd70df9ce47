"""The command-line interface: output shapes, exit codes, determinism."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from nestohedra.cli import main


def _run(capsys, argv: list[str]) -> tuple[int, str, str]:
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# invariants


def test_invariants_json_for_the_four_cycle(capsys) -> None:
    code, out, _ = _run(capsys, ["invariants", "--graph", "bipartite:2,2"])
    assert code == 0
    payload = json.loads(out)
    assert payload["facets"] == 12
    assert payload["f_vector"] == [20, 30, 12, 1]
    assert payload["dimension"] == 3
    assert payload["gamma"] == ["1", "6"]


def test_invariants_csv_for_the_triangle(capsys) -> None:
    code, out, _ = _run(
        capsys, ["invariants", "--graph", "complete:3", "--format", "csv"]
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "quantity,value"
    assert "f_vector,6;6;1" in lines
    assert "gamma,1;2" in lines


def test_invariants_json_for_an_edge(capsys) -> None:
    code, out, _ = _run(capsys, ["invariants", "--graph", "edges:2:0-1"])
    assert code == 0
    payload = json.loads(out)
    assert payload["f_vector"] == [2, 1]
    assert payload["gamma"] == ["1"]


def test_invariants_rejects_a_bad_graph_spec(capsys) -> None:
    code, _, err = _run(capsys, ["invariants", "--graph", "nonsense:4"])
    assert code == 2
    assert "error:" in err


# ---------------------------------------------------------------------------
# verify


def test_verify_pe_to_order_seven(capsys) -> None:
    code, out, _ = _run(
        capsys, ["verify", "--family", "pe", "--max-order", "7"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert payload["reports"][0]["checked"] == 7
    assert payload["reports"][0]["mismatches"] == []


def test_verify_all_families_csv_rows_are_sorted(capsys) -> None:
    code, out, _ = _run(
        capsys, ["verify", "--max-order", "4", "--format", "csv"]
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "family,k,l,status"
    assert all(line.endswith(",ok") for line in lines[1:])
    by_family: dict[str, list[tuple[int, int]]] = {}
    for line in lines[1:]:
        fam, k, l, _ = line.split(",")
        by_family.setdefault(fam, []).append((int(k), int(l)))
    assert list(by_family) == ["pe", "st", "starmarked", "nabla-because", "because-because"]
    for indices in by_family.values():
        assert indices == sorted(indices, key=lambda s: (sum(s), s))


def test_verify_rejects_orders_beyond_the_truncation(capsys) -> None:
    code, _, err = _run(capsys, ["verify", "--family", "pe", "--max-order", "99"])
    assert code == 2
    assert "truncation" in err


# ---------------------------------------------------------------------------
# identities


def test_identities_pass_at_order_eight(capsys) -> None:
    code, out, _ = _run(capsys, ["identities", "--order", "8"])
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert len(payload["results"]) == 8


def test_identities_reject_order_one(capsys) -> None:
    code, _, err = _run(capsys, ["identities", "--order", "1"])
    assert code == 2
    assert "order" in err


def test_identities_reject_orders_beyond_ten(capsys) -> None:
    code, _, _ = _run(capsys, ["identities", "--order", "11"])
    assert code == 2


def test_corrupted_identities_fail_with_a_named_identity(capsys) -> None:
    code, out, _ = _run(
        capsys,
        ["identities", "--order", "6", "--corrupt", "pe", "--format", "csv"],
    )
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "identity,passed,mismatch_k,mismatch_l"
    assert lines[1] == "I1,false,2,0"


# ---------------------------------------------------------------------------
# gal-scan


def test_gal_scan_bipartite_family(capsys) -> None:
    code, out, _ = _run(
        capsys,
        ["gal-scan", "--family", "because-because", "--bound", "7", "--format", "csv"],
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "family,k,l,dimension,gamma,status"
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 23
    indices = {(int(r[1]), int(r[2])) for r in rows}
    wanted = {(m, n) for m in range(1, 7) for n in range(1, 7) if m + n <= 7}
    assert wanted <= indices
    assert all(r[5] == "ok" for r in rows)


def test_gal_scan_json_carries_gamma_vectors(capsys) -> None:
    code, out, _ = _run(
        capsys, ["gal-scan", "--family", "pe", "--bound", "4"]
    )
    assert code == 0
    payload = json.loads(out)
    report = payload["reports"][0]
    assert report["checked"] == 4
    assert report["violations"] == []
    hexagon = next(g for g in report["gammas"] if (g["k"], g["l"]) == (3, 0))
    assert hexagon["gamma"] == ["1", "2"]


def test_gal_scan_connected_graph_classes(capsys) -> None:
    code, out, _ = _run(
        capsys,
        ["gal-scan", "--graph-class", "connected", "--nodes", "4", "--format", "csv"],
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "graph,dimension,gamma,status"
    assert len(lines) == 7
    assert all(line.endswith(",ok") for line in lines[1:])


def test_gal_scan_usage_errors(capsys) -> None:
    assert _run(capsys, ["gal-scan", "--bound", "0"])[0] == 2
    assert _run(capsys, ["gal-scan"])[0] == 2
    assert _run(capsys, ["gal-scan", "--family", "pe", "--nodes", "3"])[0] == 2
    assert (
        _run(capsys, ["gal-scan", "--graph-class", "connected", "--bound", "3"])[0]
        == 2
    )
    assert (
        _run(capsys, ["gal-scan", "--graph-class", "connected", "--nodes", "9"])[0]
        == 2
    )
    assert (
        _run(
            capsys,
            ["gal-scan", "--family", "because-because", "--bound", "10"],
        )[0]
        == 2
    )


# ---------------------------------------------------------------------------
# shared plumbing


def test_help_exits_zero(capsys) -> None:
    assert _run(capsys, ["--help"])[0] == 0


def test_unknown_command_exits_two(capsys) -> None:
    assert _run(capsys, ["frobnicate"])[0] == 2


def test_output_is_deterministic_across_runs_and_jobs(capsys) -> None:
    argv = ["gal-scan", "--graph-class", "connected", "--nodes", "5", "--format", "csv"]
    first = _run(capsys, argv)
    second = _run(capsys, argv)
    parallel = _run(capsys, argv[:-2] + ["--jobs", "4", "--format", "csv"])
    assert first == second == parallel


def test_iso_memo_flag_does_not_change_output(capsys) -> None:
    argv = ["invariants", "--graph", "bipartite:2,3"]
    plain = _run(capsys, argv)
    with_iso = _run(capsys, argv + ["--iso-memo"])
    assert plain == with_iso


def test_config_file_raises_the_truncation(capsys, tmp_path: Path) -> None:
    config = tmp_path / "settings.cfg"
    config.write_text("# scan deeper\norder = 9\n", encoding="utf-8")
    code, out, _ = _run(
        capsys,
        ["verify", "--family", "pe", "--max-order", "9", "--config", str(config)],
    )
    assert code == 0
    assert json.loads(out)["reports"][0]["checked"] == 9


def test_config_file_errors(capsys, tmp_path: Path) -> None:
    bad_value = tmp_path / "bad.cfg"
    bad_value.write_text("order = soon\n", encoding="utf-8")
    assert _run(capsys, ["identities", "--config", str(bad_value)])[0] == 2

    unknown = tmp_path / "unknown.cfg"
    unknown.write_text("speed = 11\n", encoding="utf-8")
    assert _run(capsys, ["identities", "--config", str(unknown)])[0] == 2

    missing = tmp_path / "missing.cfg"
    assert _run(capsys, ["identities", "--config", str(missing)])[0] == 2


def test_jobs_flag_rejects_nonpositive_values(capsys) -> None:
    code, _, err = _run(
        capsys, ["identities", "--order", "3", "--jobs", "0"]
    )
    assert code == 2
    assert "jobs" in err
