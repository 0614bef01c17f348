import json

import pytest

from knapsackga.cli import build_parser, main
from knapsackga.commands.base_command import ExitCode
from knapsackga.commands.command_registry import get_command_registry
from knapsackga.core.config import KnapsackSettings
from knapsackga.core.exceptions import CommandNotFoundError
from knapsackga.core.models import (
    AttackReport,
    Ciphertext,
    PrivateKey,
    PublicKey,
    RunResult,
)


def _keygen(private, public, *extra: str) -> int:
    return main(
        ["keygen", *extra, "--private-out", str(private), "--public-out", str(public)]
    )


@pytest.fixture
def keys(tmp_path):
    private, public = tmp_path / "private.json", tmp_path / "public.json"
    assert _keygen(private, public, "--n", "8", "--seed", "3") == ExitCode.OK
    return private, public


def test_every_subcommand_is_registered():
    registry = get_command_registry()
    for name in ("keygen", "encrypt", "decrypt", "attack", "oracle", "solve", "sweep"):
        assert registry.has_command(name)
    with pytest.raises(CommandNotFoundError):
        registry.get_command("nope")
    assert build_parser(registry).prog == "knapsackga"


def test_keygen_is_reproducible(capsys, tmp_path, keys):
    private, public = keys
    assert "public key fingerprint:" in capsys.readouterr().out

    again = tmp_path / "again.json"
    assert _keygen(again, tmp_path / "p.json", "--seed", "3") == ExitCode.OK
    assert again.read_bytes() == private.read_bytes()
    assert PrivateKey.from_file(private).public_key() == PublicKey.from_file(public)


def test_degenerate_key(tmp_path):
    private = tmp_path / "a.json"
    assert _keygen(private, tmp_path / "b.json", "--n", "1") == ExitCode.OK
    assert PrivateKey.from_file(private).n == 1


def test_encrypt_decrypt_pipeline(tmp_path, keys):
    private, public = keys
    ciphertext, plaintext = tmp_path / "ct.json", tmp_path / "pt.bin"

    code = main(
        [
            "encrypt",
            "--public",
            str(public),
            "--text",
            "hello",
            "--out",
            str(ciphertext),
        ]
    )
    assert code == ExitCode.OK
    assert Ciphertext.from_file(ciphertext).byte_len == 5

    code = main(
        [
            "decrypt",
            "--private",
            str(private),
            "--in",
            str(ciphertext),
            "--out",
            str(plaintext),
        ]
    )
    assert code == ExitCode.OK
    assert plaintext.read_bytes() == b"hello"


def test_keygen_encrypt_attack_pipeline(tmp_path, keys):
    _, public = keys
    ciphertext, report = tmp_path / "ct.json", tmp_path / "report.json"
    main(["encrypt", "--public", str(public), "--text", "ok", "--out", str(ciphertext)])

    code = main(
        [
            "attack",
            "--ciphertext",
            str(ciphertext),
            "--public",
            str(public),
            "--stop-on-first",
            "--seed",
            "1",
            "--out",
            str(report),
        ]
    )
    assert code == ExitCode.OK
    loaded = AttackReport.from_file(report)
    assert loaded.plaintext == "ok"
    assert loaded.complete


def test_partial_attack_exits_3(tmp_path):
    public = PublicKey(weights=(2, 4, 6, 8, 10, 12, 14, 16)).to_file(
        tmp_path / "even.json"
    )
    ciphertext = Ciphertext(n=8, byte_len=1, blocks=[3]).to_file(tmp_path / "ct.json")
    code = main(
        [
            "attack",
            "--ciphertext",
            str(ciphertext),
            "--public",
            str(public),
            "--max-gen",
            "5",
            "--pop",
            "10",
        ]
    )
    assert code == ExitCode.PARTIAL


def test_oracle_lists_solutions(capsys):
    assert main(["oracle", "--weights", "2,4,6,8,10,12", "--target", "20"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[-1] == "count: 5"
    assert lines[:-1] == sorted(lines[:-1])
    assert "000101" in lines


def test_oracle_reads_instance_files(tmp_path, capsys):
    path = tmp_path / "instance.yaml"
    path.write_text("weights: [5, 7, 21, 33, 37, 91]\ntarget: 112\n")
    assert main(["oracle", "--instance", str(path)]) == 0
    assert capsys.readouterr().out.splitlines() == ["001001", "count: 1"]


def test_oracle_guard_is_invalid_input():
    weights = ",".join(str(w) for w in range(1, 32))
    code = main(["oracle", "--weights", weights, "--target", "5"])
    assert code == ExitCode.INVALID_INPUT


def test_solve_writes_a_run_result(tmp_path):
    config = tmp_path / "ga.yaml"
    config.write_text("population_size: 30\nmutation_rate: 0.7\n")
    out = tmp_path / "run.json"
    code = main(
        [
            "solve",
            "--weights",
            "2,4,6,8,10,12",
            "--target",
            "20",
            "--ga-config",
            str(config),
            "--max-gen",
            "50",
            "--out",
            str(out),
        ]
    )
    assert code == ExitCode.OK
    result = RunResult.from_file(out)
    assert result.params_echo.population_size == 30
    assert result.params_echo.mutation_rate == 0.7
    assert result.generations_executed == 50


def test_solve_logs_progress_at_debug(capsys):
    argv = ["solve", "--weights", "2,4,6", "--target", "5", "--max-gen", "200"]
    assert main(["--log-level", "debug", *argv]) == ExitCode.OK
    captured = capsys.readouterr()
    assert "Generation 200: best fitness" in captured.err
    assert json.loads(captured.out)["solution_count"] == 0


def _sweep_config(tmp_path):
    config = tmp_path / "sweep.json"
    config.write_text(
        json.dumps(
            {
                "instances": [{"weights": [1, 3, 5, 7, 9, 11], "target": 20}],
                "crossover_rates": [2, 4],
                "mutation_rates": [0.5, 0.8],
                "repeats": 2,
                "base_params": {"population_size": 10, "max_generations": 10},
            }
        )
    )
    return config


def test_sweep_command(tmp_path, capsys):
    config = _sweep_config(tmp_path)
    out = tmp_path / "out"
    code = main(["sweep", "--config", str(config), "--seed", "5", "--out", str(out)])
    assert code == ExitCode.OK
    assert (out / "sweep_cells.csv").exists()
    tables = sorted(path.name for path in out.glob("experiment_*.csv"))
    assert tables == ["experiment_1.csv", "experiment_2.csv"]
    assert capsys.readouterr().out.startswith("cells: 8")


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["oracle", "--weights", "1,2", "--target", "x"],
        ["oracle", "--weights", "1,-2", "--target", "1"],
        ["oracle", "--target", "1"],
        ["sweep", "--out", "x"],
        ["--log-level", "chatty", "oracle", "--weights", "1", "--target", "1"],
    ],
)
def test_invalid_input_exits_1(argv):
    assert main(argv) == ExitCode.INVALID_INPUT


def test_missing_file_exits_2(tmp_path):
    code = main(
        [
            "decrypt",
            "--private",
            str(tmp_path / "missing.json"),
            "--in",
            str(tmp_path / "ct.json"),
        ]
    )
    assert code == ExitCode.IO_ERROR


def test_malformed_key_file_exits_1(tmp_path):
    path = tmp_path / "private.json"
    path.write_text('{"superincreasing": [1, 1], "modulus": 5, "multiplier": 2}')
    ciphertext = Ciphertext(n=2, byte_len=0, blocks=[]).to_file(tmp_path / "ct.json")
    code = main(["decrypt", "--private", str(path), "--in", str(ciphertext)])
    assert code == ExitCode.INVALID_INPUT


def test_environment_seed_is_used(monkeypatch, tmp_path):
    monkeypatch.setenv("KNAP_SEED", "3")
    assert _keygen(tmp_path / "env.json", tmp_path / "p.json") == ExitCode.OK
    assert _keygen(tmp_path / "flag.json", tmp_path / "q.json", "--seed", "3") == 0
    assert (tmp_path / "env.json").read_bytes() == (tmp_path / "flag.json").read_bytes()


def test_invalid_environment_exits_1(monkeypatch):
    monkeypatch.setenv("KNAP_LOG_LEVEL", "LOUD")
    code = main(["oracle", "--weights", "1", "--target", "1"])
    assert code == ExitCode.INVALID_INPUT


def test_sweep_config_falls_back_to_environment_seed(monkeypatch, tmp_path):
    config = _sweep_config(tmp_path)
    flag, env, unseeded = tmp_path / "flag", tmp_path / "env", tmp_path / "unseeded"
    argv = ["sweep", "--config", str(config)]
    assert main([*argv, "--out", str(unseeded)]) == ExitCode.OK
    assert main([*argv, "--seed", "7", "--out", str(flag)]) == ExitCode.OK
    monkeypatch.setenv("KNAP_SEED", "7")
    assert main([*argv, "--out", str(env)]) == ExitCode.OK

    cells = (env / "sweep_cells.csv").read_bytes()
    assert cells == (flag / "sweep_cells.csv").read_bytes()
    assert cells != (unseeded / "sweep_cells.csv").read_bytes()


def test_sweep_config_layers_environment_and_flags(monkeypatch, tmp_path):
    path = tmp_path / "sweep.yaml"
    path.write_text(
        "instances:\n  - {weights: [2, 4, 6], target: 6}\n"
        "crossover_rates: [2]\nmutation_rates: [0.5]\nrepeats: 1\n"
    )
    monkeypatch.setenv("KNAP_POPULATION_SIZE", "12")
    monkeypatch.setenv("KNAP_MAX_GENERATIONS", "4")
    registry = get_command_registry()
    args = build_parser(registry).parse_args(
        ["sweep", "--config", str(path), "--max-gen", "9", "--out", "out"]
    )
    config = registry.get_command("sweep")._load_config(args, KnapsackSettings())
    assert config.base_params.population_size == 12
    assert config.base_params.max_generations == 9
    assert config.base_params.mutation_rate == 0.6


def test_paper_sweep_is_complete_and_reproducible(tmp_path):
    first, second = tmp_path / "first", tmp_path / "second"
    argv = ["sweep", "--paper", "--pop", "6", "--max-gen", "3", "--seed", "2"]
    assert main([*argv, "--out", str(first)]) == ExitCode.OK
    assert main([*argv, "--jobs", "2", "--out", str(second)]) == ExitCode.OK

    cells = (first / "sweep_cells.csv").read_bytes()
    assert len(cells.decode().splitlines()) == 401
    assert cells == (second / "sweep_cells.csv").read_bytes()
    assert len(list(first.glob("experiment_*.csv"))) == 20


def test_attack_rejects_infeasible_block(tmp_path, capsys):
    public = PublicKey(weights=(2, 4, 6, 8, 10, 12, 14, 16)).to_file(
        tmp_path / "even.json"
    )
    ciphertext = Ciphertext(n=8, byte_len=1, blocks=[73]).to_file(tmp_path / "ct.json")
    code = main(["attack", "--ciphertext", str(ciphertext), "--public", str(public)])
    assert code == ExitCode.INVALID_INPUT
    err = capsys.readouterr().err
    assert "block 0" in err
    assert "infeasible" in err


def test_attack_on_empty_ciphertext(tmp_path, keys):
    _, public = keys
    ciphertext = Ciphertext(n=8, byte_len=0, blocks=[]).to_file(tmp_path / "ct.json")
    report = tmp_path / "report.json"
    code = main(
        [
            "attack",
            "--ciphertext",
            str(ciphertext),
            "--public",
            str(public),
            "--out",
            str(report),
        ]
    )
    assert code == ExitCode.OK
    loaded = AttackReport.from_file(report)
    assert loaded.plaintext == ""
    assert loaded.recovered_blocks == []
    assert loaded.complete


def test_keygen_rejects_zero_block_size(tmp_path):
    assert _keygen(tmp_path / "a.json", tmp_path / "b.json", "--n", "0") == 1


def test_keygen_unwritable_path_exits_2(tmp_path):
    private = tmp_path / "missing" / "private.json"
    assert _keygen(private, tmp_path / "public.json") == ExitCode.IO_ERROR


@pytest.mark.parametrize(
    "extra",
    [["--jobs", "0"], ["--pop", "0"], ["--max-gen", "0"]],
)
def test_sweep_rejects_explicit_zero(tmp_path, extra):
    config = _sweep_config(tmp_path)
    argv = ["sweep", "--config", str(config), "--out", str(tmp_path / "out"), *extra]
    assert main(argv) == ExitCode.INVALID_INPUT


def test_attack_rejects_zero_jobs(tmp_path, keys):
    _, public = keys
    ciphertext = Ciphertext(n=8, byte_len=0, blocks=[]).to_file(tmp_path / "ct.json")
    argv = ["attack", "--ciphertext", str(ciphertext), "--public", str(public)]
    assert main([*argv, "--jobs", "0"]) == ExitCode.INVALID_INPUT
