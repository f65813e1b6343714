import json

import pytest

from commands.cone import load_generators
from exceptions import TableMismatchError
from main import main
from services import tables
from services.tables import inequality_digest, table_digest
from utils.cache import JsonCache
from utils.database import SweepStore, get_engine
from utils.output import OutputEnvelope


class TestRoots:
    def test_text(self, run_cli):
        code, out, _ = run_cli("roots")
        lines = out.splitlines()
        assert code == 0
        assert len(lines) == 12
        assert lines[0] == "1: e1+e2"
        assert lines[11] == "12: e1-e2"

    def test_json(self, run_json):
        code, payload = run_json("roots")
        assert code == 0
        assert payload["command"] == "roots"
        assert payload["result"][6] == {"index": 7, "eps": [1, 0, -1, 0]}

    def test_csv(self, run_cli):
        code, out, _ = run_cli("roots", "--format", "csv")
        lines = out.splitlines()
        assert lines[0] == "index,eps1,eps2,eps3,eps4"
        assert lines[1] == "1,1,1,0,0"
        assert len(lines) == 13

    def test_output_is_deterministic(self, run_cli):
        assert run_cli("roots", "--format", "json") == run_cli("roots", "--format", "json")


class TestRepresentationCommands:
    def test_dim(self, run_cli):
        assert run_cli("dim", "0,1,0,0") == (0, "28\n", "")

    def test_essential_with_table_check(self, run_json):
        code, payload = run_json("essential", "1,0,0,0", "--check-tables")
        assert code == 0
        assert payload["result"]["count"] == 8
        assert payload["result"]["table_check"] == "match"
        assert payload["result"]["signatures"][1] == {"hw": [1, 0, 0, 0], "p": [0] * 11 + [1]}

    def test_essential_text(self, run_cli):
        code, out, _ = run_cli("essential", "0,0,0,1")
        assert code == 0
        assert out.splitlines()[-1] == "8 essential signatures of highest weight (0,0,0,1)"
        assert "p2+p6" in out

    def test_table_mismatch(self, run_cli, monkeypatch):
        monkeypatch.setitem(tables.FUNDAMENTAL_TABLES, 3, ("0", "p10", "p9", "p8", "p3", "p2", "p1", "p2+p10"))
        code, _, err = run_cli("essential", "0,0,1,0", "--check-tables")
        assert code == 3
        assert "omega_3 differ from the transcribed table" in err

    def test_ambient_guard(self, run_cli, monkeypatch):
        monkeypatch.setenv("ESSIG_AMBIENT_LIMIT", "10")
        code, _, err = run_cli("essential", "2,0,0,0")
        assert code == 2
        assert "error: Ambient tensor space" in err

    def test_ambient_guard_json(self, run_json, monkeypatch):
        monkeypatch.setenv("ESSIG_AMBIENT_LIMIT", "10")
        code, payload = run_json("essential", "2,0,0,0")
        assert code == 2
        assert payload["result"]["error"]["error_code"] == "AMBIENT_TOO_LARGE"


class TestConeCommand:
    @pytest.mark.slow
    def test_compare_with_transcription(self, run_json, cache_dir):
        code, payload = run_json("cone", "--source", "table", "--compare")
        assert code == 0
        assert payload["result"]["generators"] == 52
        assert payload["result"]["compare"]["match"] is True
        assert len(list(cache_dir.glob("facets-*.json"))) == 1
        # second run reads the cached facets
        assert run_json("cone", "--source", "table")[1]["result"]["facets"] == payload["result"]["facets"]

    def test_cached_run_is_byte_identical(self, run_cli, cache_dir):
        code, first, _ = run_cli("cone", "--source", "table", "--format", "json")
        assert code == 0
        assert len(list(cache_dir.glob("facets-*.json"))) == 1
        code, second, _ = run_cli("cone", "--source", "table", "--format", "json")
        assert code == 0
        assert second == first

    def test_table_edit_changes_the_facet_key(self, cache_dir, monkeypatch):
        cache = JsonCache(str(cache_dir))
        before = table_digest(load_generators(cache, "table"))
        monkeypatch.setitem(tables.FUNDAMENTAL_TABLES, 3, ("0", "p10", "p9", "p8", "p3", "p2", "p1", "p2+p10"))
        after = load_generators(cache, "table")
        assert table_digest(after) != before
        assert (0, 0, 1, 0) + (0, 1) + (0,) * 7 + (1, 0, 0) in after

    def test_cached_computed_generators_follow_the_tables(self, cache_dir, monkeypatch):
        cache = JsonCache(str(cache_dir))
        rays = load_generators(cache, "computed")
        assert len(list(cache_dir.glob("generators-computed-*.json"))) == 1
        assert load_generators(cache, "computed") == rays
        monkeypatch.setitem(tables.FUNDAMENTAL_TABLES, 3, ("0", "p10", "p9", "p8", "p3", "p2", "p1", "p2+p10"))
        with pytest.raises(TableMismatchError):
            load_generators(cache, "computed")


class TestLatticeCommands:
    def test_count(self, run_cli):
        assert run_cli("count", "0,1,0,0") == (0, "28\n", "")

    def test_decompose(self, run_json):
        code, payload = run_json("decompose", "1,1,0,0", "1,0,0,0,0,0,0,0,0,0,1,1")
        assert code == 0
        parts = payload["result"]["parts"]
        assert sorted(part["hw"] for part in parts) == [[0, 1, 0, 0], [1, 0, 0, 0]]
        assert 2 in payload["result"]["tight_items"]

    def test_decompose_text(self, run_cli):
        code, out, _ = run_cli("decompose", "0,1,0,0", "1,0,0,0,0,0,0,0,0,0,1,0")
        assert code == 0
        assert "  omega_2: p1+p11" in out.splitlines()

    def test_decompose_non_member(self, run_cli):
        code, _, err = run_cli("decompose", "1,0,0,0", "0,0,0,0,0,0,0,0,0,0,0,2")
        assert code == 1
        assert "not a point of the cone" in err

    def test_decompose_failure(self, run_cli, monkeypatch):
        monkeypatch.setitem(tables.FUNDAMENTAL_TABLES, 1, ("0",))
        code, _, _ = run_cli("decompose", "1,0,0,0", "0,0,0,0,0,0,0,0,0,0,0,1")
        assert code == 4

    def test_verify_without_store(self, run_json, cache_dir):
        code, payload = run_json("verify", "--max-total", "1", "--no-store")
        assert code == 0
        assert payload["result"]["totals"]["equal"] == 5
        assert not cache_dir.exists()

    def test_verify_with_store(self, run_cli, cache_dir):
        code, out, _ = run_cli("verify", "--max-total", "1")
        assert code == 0
        assert out.splitlines()[-1] == "5 rows: 5 equal, 0 unequal, 0 skipped"
        assert (cache_dir / "essig.db").exists()
        assert run_cli("verify", "--max-total", "1")[0] == 0
        assert run_cli("verify", "--max-total", "1", "--fresh")[0] == 0

    def test_verify_reports_stored_mismatch(self, run_json, cache_dir):
        store = SweepStore(get_engine(f"sqlite:///{cache_dir / 'essig.db'}"), inequality_digest())
        store.save((1, 0, 0, 0), 7, 8, 0.1)
        code, payload = run_json("verify", "--max-total", "1")
        assert code == 3
        assert payload["result"]["error"]["error_code"] == "SWEEP_MISMATCH"
        assert run_json("verify", "--max-total", "1", "--fresh")[0] == 0

    def test_verify_budget(self, run_cli):
        code, out, _ = run_cli("verify", "--max-total", "1", "--no-store", "--point-budget", "10")
        assert code == 0
        assert "0,1,0,0: skipped (weyl_dim 28 exceeds point budget 10)" in out

    def test_verify_csv_to_file(self, run_cli, tmp_path):
        target = tmp_path / "sweep.csv"
        code, out, _ = run_cli("verify", "--no-store", "--format", "csv", "--out", str(target))
        assert code == 0
        assert out == ""
        header = target.read_text(encoding="utf-8").splitlines()[0]
        assert header == "k1,k2,k3,k4,count,weyl,equal,elapsed_ms,skipped_reason"


class TestUsage:
    def test_missing_command(self, run_cli):
        code, _, err = run_cli()
        assert code == 1
        assert "error:" in err

    def test_bad_weight(self, run_cli):
        code, _, err = run_cli("dim", "1,2,3")
        assert code == 1
        assert "expected 4 coefficients" in err

    def test_bad_format(self, run_cli):
        assert run_cli("roots", "--format", "xml")[0] == 1

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["--version"])
        assert excinfo.value.code == 0
        assert "0.1.0" in capsys.readouterr().out

    def test_envelope_parses(self, run_cli):
        _, out, _ = run_cli("count", "1,0,0,0", "--format", "json")
        envelope = OutputEnvelope.model_validate_json(out)
        assert envelope.result == {"hw": [1, 0, 0, 0], "count": 8}
        assert json.loads(out)["parameters"] == {"weight": [1, 0, 0, 0]}

    def test_negative_max_total(self, run_cli):
        code, _, err = run_cli("verify", "--max-total", "-1", "--no-store")
        assert code == 1
        assert "--max-total must be non-negative" in err
