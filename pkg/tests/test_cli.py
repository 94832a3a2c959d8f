import csv
import json
from pathlib import Path

import pytest

from dyad.services.cli.commands.utils import column_units
from dyad.services.cli.dependencies import get_settings
from dyad.services.cli.main import build_parser, main
from dyad.services.cli.schemas import RunConfig, Sweep

ROOT = Path(__file__).resolve().parents[1]
CONFIGS = ROOT / "configs"
GOLDEN = Path(__file__).parent / "golden"


def _write_config(tmp_path: Path, payload: dict, name: str = "run.json") -> Path:
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def _read_csv(path: Path) -> list[dict[str, str]]:
    with path.open(newline="", encoding="utf-8") as handle:
        return list(csv.DictReader(handle))


def _last_event(text: str) -> dict:
    lines = [line for line in text.splitlines() if line.startswith("{")]
    return json.loads(lines[-1])


def _small_run(**overrides) -> dict:
    payload = {
        "system": {"kind": "rydberg", "n": 70, "lambda0_um": 448.0},
        "geometry": {"k0R": [0.77, 2.0]},
        "times": [0.5, 1.0],
        "observables": ["populations", "displacement"],
    }
    payload.update(overrides)
    return payload


def test_full_observable_header_matches_golden_file(
    tmp_path: Path, clean_settings
) -> None:
    output = tmp_path / "full.csv"
    code = main(["run", str(CONFIGS / "li70_full.json"), "--output", str(output)])
    assert code == 0
    raw = output.read_bytes()
    header = raw.split(b"\r\n", 1)[0].decode()
    expected = (GOLDEN / "full_columns.txt").read_text(encoding="utf-8").strip()
    assert header == expected
    rows = _read_csv(output)
    assert len(rows) == 3 * 11
    assert [float(row["k0R"]) for row in rows[:11]] == [0.5] * 11


def test_output_does_not_depend_on_thread_count(
    tmp_path: Path, clean_settings
) -> None:
    config = str(CONFIGS / "li70_full.json")
    single, pooled = tmp_path / "one.csv", tmp_path / "three.csv"
    assert main(["run", config, "--output", str(single), "--threads", "1"]) == 0
    assert main(["run", config, "--output", str(pooled), "--threads", "3"]) == 0
    assert single.read_bytes() == pooled.read_bytes()


def test_rows_are_sorted_by_separation_then_time(
    tmp_path: Path, clean_settings
) -> None:
    config = _write_config(
        tmp_path,
        _small_run(geometry={"k0R": [2.0, 0.77]}, times=[1.0, 0.5]),
    )
    output = tmp_path / "sorted.csv"
    assert main(["run", str(config), "--output", str(output)]) == 0
    keys = [(float(row["k0R"]), float(row["T_s"])) for row in _read_csv(output)]
    assert keys == sorted(keys)
    assert len(keys) == 4


def test_displacement_config_peaks_near_reference_separation(
    tmp_path: Path, clean_settings
) -> None:
    output = tmp_path / "scan.csv"
    code = main(
        ["run", str(CONFIGS / "li70_displacement.json"), "--output", str(output)]
    )
    assert code == 0
    rows = _read_csv(output)
    assert len(rows) == 200
    peak = max(rows, key=lambda row: abs(float(row["S_CM_m"])))
    assert 0.65 <= float(peak["k0R"]) <= 0.9
    assert float(peak["S_CM_m"]) > 0


def test_json_format_to_standard_output(
    tmp_path: Path, clean_settings, capsys: pytest.CaptureFixture[str]
) -> None:
    config = _write_config(tmp_path, _small_run())
    assert main(["run", str(config), "--format", "json"]) == 0
    table = json.loads(capsys.readouterr().out)
    assert table["columns"] == [
        "k0R",
        "T_s",
        "P_A",
        "P_B",
        "P_gamma",
        "unitarity_defect",
        "S_CM_m",
    ]
    assert table["units"] == ["1", "s", "1", "1", "1", "1", "m"]
    assert len(table["rows"]) == 4


def test_environment_supplies_default_format(
    tmp_path: Path, clean_settings, monkeypatch: pytest.MonkeyPatch, capsys
) -> None:
    monkeypatch.setenv("DYAD_OUTPUT_FORMAT", "json")
    get_settings.cache_clear()
    config = _write_config(tmp_path, _small_run())
    assert main(["run", str(config)]) == 0
    assert "columns" in json.loads(capsys.readouterr().out)


def test_empty_observables_are_rejected(
    tmp_path: Path, clean_settings, capsys: pytest.CaptureFixture[str]
) -> None:
    config = _write_config(tmp_path, _small_run(observables=[]))
    assert main(["run", str(config)]) == 1
    event = _last_event(capsys.readouterr().err)
    assert event["type"] == "validation_error"
    assert event["data"]["errors"][0]["loc"] == ["observables"]


def test_inverted_sweep_is_rejected(
    tmp_path: Path, clean_settings, capsys: pytest.CaptureFixture[str]
) -> None:
    config = _write_config(
        tmp_path,
        _small_run(geometry={"k0R": {"start": 3.0, "stop": 1.0, "count": 5}}),
    )
    assert main(["run", str(config)]) == 1
    assert _last_event(capsys.readouterr().err)["type"] == "validation_error"


def test_missing_config_is_a_validation_error(
    tmp_path: Path, clean_settings, capsys: pytest.CaptureFixture[str]
) -> None:
    assert main(["run", str(tmp_path / "absent.json")]) == 1
    event = _last_event(capsys.readouterr().err)
    assert event["data"]["errors"][0]["type"] == "FileNotFoundError"


def test_under_resolved_emission_grid_exits_with_numerical_error(
    tmp_path: Path, clean_settings, capsys: pytest.CaptureFixture[str]
) -> None:
    config = _write_config(
        tmp_path,
        _small_run(
            geometry={"k0R": 15.0},
            times=[0.5],
            observables=["emission"],
            quadrature={"order": 4},
        ),
    )
    assert main(["run", str(config)]) == 2
    event = _last_event(capsys.readouterr().err)
    assert event["type"] == "numerical_error"
    assert event["data"]["kind"] == "QuadratureError"
    assert float(event["data"]["context"]["k0R"]) == 15.0
    assert event["data"]["context"]["order"] == "4"


def test_verify_quick_passes(clean_settings) -> None:
    assert main(["verify", "--level", "quick"]) == 0


def test_parser_requires_a_command() -> None:
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_config_schema_normalizes_input() -> None:
    config = RunConfig.model_validate(
        {
            "system": {
                "kind": "explicit",
                "mu_A_Cm": [0.0, 0.0, 1e-29],
                "mu_B_Cm": [0.0, 1e-29, 0.0],
                "omega0": 1e10,
                "mass_kg": 1e-26,
            },
            "geometry": {"k0R": [2.0, 0.5, 2.0], "axis": [0.0, 2.0, 0.0]},
            "observables": ["displacement", "populations"],
        }
    )
    assert config.observables == ["populations", "displacement"]
    assert config.geometry.axis == (0.0, 1.0, 0.0)
    assert list(config.geometry.values()) == [0.5, 2.0]
    assert list(config.time_values()) == [1.0]
    pair = config.build_pair()
    assert pair.separation == pytest.approx(1.0)
    assert pair.gamma0 > 0


def test_explicit_system_requires_equal_dipoles() -> None:
    with pytest.raises(ValueError, match="equal magnitudes"):
        RunConfig.model_validate(
            {
                "system": {
                    "kind": "explicit",
                    "mu_A_Cm": [0.0, 0.0, 1e-29],
                    "mu_B_Cm": [0.0, 0.0, 2e-29],
                    "omega0": 1e10,
                    "mass_kg": 1e-26,
                },
                "geometry": {"k0R": 1.0},
                "observables": ["populations"],
            }
        )


def test_log_sweep_spacing() -> None:
    sweep = Sweep(start=0.1, stop=10.0, count=3, spacing="log")
    assert list(sweep.values()) == pytest.approx([0.1, 1.0, 10.0])
    with pytest.raises(ValueError, match="positive start"):
        Sweep(start=0.0, stop=1.0, count=3, spacing="log")


def test_rydberg_axis_along_dipoles_is_rejected(
    tmp_path: Path, clean_settings, capsys: pytest.CaptureFixture[str]
) -> None:
    with pytest.raises(ValueError, match="perpendicular to z"):
        RunConfig.model_validate(
            _small_run(geometry={"k0R": 0.77, "axis": [0.0, 0.0, 1.0]})
        )
    config = _write_config(
        tmp_path, _small_run(geometry={"k0R": 0.77, "axis": [1.0, 0.0, 1.0]})
    )
    assert main(["run", str(config)]) == 1
    assert _last_event(capsys.readouterr().err)["type"] == "validation_error"


def test_rydberg_dipoles_stay_perpendicular_to_any_accepted_axis() -> None:
    config = RunConfig.model_validate(
        _small_run(geometry={"k0R": 0.77, "axis": [1.0, 1.0, 0.0]})
    )
    pair = config.build_pair()
    assert abs(pair.mu_A @ pair.rhat) < 1e-12 * pair.dipole_norm
    assert abs(pair.mu_B @ pair.rhat) < 1e-12 * pair.dipole_norm
    assert pair.separation == pytest.approx(1.0)


def test_every_golden_column_has_an_si_unit() -> None:
    header = (GOLDEN / "full_columns.txt").read_text(encoding="utf-8").strip()
    columns = header.split(",")
    units = dict(zip(columns, column_units(columns), strict=True))
    assert units["T_s"] == "s"
    assert units["Gamma_emit_per_s"] == "1/s"
    assert units["S_CM_m"] == "m"
    assert {units[c] for c in columns if c.startswith(("Fc_", "Fnc_", "Foff_"))} == {"N"}
    assert units["Pdot_gamma_R"] == "N"
    assert {units[c] for c in ("k0R", "P_A", "P_B", "P_gamma")} == {"1"}
