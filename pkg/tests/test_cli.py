"""The thin CLI client: config handling, rendering, exit codes, determinism."""

import json
from fractions import Fraction

import pytest

from subdisc.cli import (
    EXIT_FAIL,
    EXIT_OK,
    EXIT_USAGE,
    UsageError,
    main,
    parse_config,
)


def test_parse_basic():
    cfg = parse_config(["spectral", "--prefix", "1,9", "--tail", "9"])
    assert cfg.command == "spectral"
    assert cfg.prefix == [1, 9] and cfg.tail == 9
    assert cfg.n_max == 200 and cfg.digits == 30


def test_parse_config_file_and_overrides(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"prefix": [1, 1, 3], "tail": 4, "n_max": 50, "digits": 12}))
    cfg = parse_config(["twist", "--config", str(path)])
    assert cfg.prefix == [1, 1, 3] and cfg.tail == 4
    assert cfg.n_max == 50 and cfg.digits == 12
    # command-line flags win over file values
    cfg2 = parse_config(["twist", "--config", str(path), "--n", "80", "--tail", "4"])
    assert cfg2.n_max == 80


def test_parse_errors():
    with pytest.raises(UsageError):
        parse_config(["spectral"])  # missing --tail
    with pytest.raises(UsageError):
        parse_config(["spectral", "--tail", "1", "--digits", "3"])
    with pytest.raises(UsageError):
        parse_config(["spectral", "--prefix", "1,x", "--tail", "1"])
    with pytest.raises(UsageError):
        parse_config([])


def test_spectral_output_round_trips(capsys):
    assert main(["spectral", "--tail", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    values = {}
    for line in out.splitlines():
        if " = " in line:
            key, _, value = line.partition(" = ")
            values[key.strip()] = value.strip()
    # printed exact rationals re-parse to equal values
    assert Fraction(values["mu"]) == Fraction(1, 2)
    assert Fraction(values["lambda"]) == Fraction(5, 2)
    assert Fraction(values["density"]) == Fraction(3, 4)
    assert values["Q"] == "2x - 5"


def test_normalisation_shown_in_label(capsys):
    assert main(["spectral", "--prefix", "1,9", "--tail", "9"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "sequence (1, 9, 9, ...)"


def test_count_command(capsys):
    assert main(["count", "--tail", "1", "--n", "4"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "3,12" in out.splitlines()


def test_determinism(capsys):
    main(["discrepancy", "--tail", "1", "--n", "12"])
    first = capsys.readouterr().out
    main(["discrepancy", "--tail", "1", "--n", "12"])
    assert capsys.readouterr().out == first


def test_catalan_check_pass(capsys):
    assert main(["catalan-check", "--tail", "1", "--n", "60"]) == EXIT_OK
    assert "PASS" in capsys.readouterr().out


def test_twist_command(capsys):
    assert main(["twist", "--prefix", "1,1,3", "--tail", "4", "--n", "30"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "R = x" in out
    assert "g = x + 2" in out


def test_usage_exit_codes(capsys):
    assert main(["spectral", "--prefix", "0,4", "--tail", "2"]) == EXIT_USAGE
    capsys.readouterr()
    assert main(["bogus"]) == EXIT_USAGE
    capsys.readouterr()
    assert main(["count", "--tail", "0"]) == EXIT_USAGE


def test_figures_writes_csvs(tmp_path, capsys):
    out_dir = tmp_path / "figs"
    rc = main([
        "figures", "--tail", "1", "--n", "6",
        "--names", "second-eigenvalue-ratio,complex-modulus-ratio",
        "--out", str(out_dir),
    ])
    assert rc == EXIT_OK
    files = sorted(p.name for p in out_dir.iterdir())
    assert files == ["complex-modulus-ratio.csv", "second-eigenvalue-ratio.csv"]
    text = (out_dir / "complex-modulus-ratio.csv").read_text()
    assert text.startswith("n,value\n")


def test_discrepancy_out_file(tmp_path, capsys):
    out = tmp_path / "d.csv"
    assert main(["discrepancy", "--tail", "1", "--n", "6", "--out", str(out)]) == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "n,value"
    assert lines[1] == "0,0.25"


def test_verification_fail_maps_to_exit_3(monkeypatch, capsys):
    import subdisc.cli as cli

    def fake_post(cfg, path, payload):
        return {
            "sequence": "(1, 1, ...)",
            "passed": False,
            "checked": 10,
            "first_mismatch": "n=4: 0 != -2",
            "identity_checked": True,
            "twist_checked": True,
            "detail": "direct identity: FAIL",
        }

    monkeypatch.setattr(cli, "_post", fake_post)
    assert main(["catalan-check", "--tail", "1"]) == EXIT_FAIL
    assert "FAIL" in capsys.readouterr().out


def test_cli_against_live_server(capsys):
    # end-to-end over a real socket: serve with uvicorn, point the client at it
    import socket
    import threading
    import time

    import uvicorn

    from subdisc.service.app import create_app

    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        port = sock.getsockname()[1]
    config = uvicorn.Config(create_app(), host="127.0.0.1", port=port, log_level="error")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    try:
        for _ in range(100):
            if server.started:
                break
            time.sleep(0.05)
        assert server.started, "server did not start"
        rc = main(["spectral", "--tail", "1", "--server", f"http://127.0.0.1:{port}"])
        out = capsys.readouterr().out
        assert rc == EXIT_OK
        assert "lambda = 5/2" in out
    finally:
        server.should_exit = True
        thread.join(timeout=5)
