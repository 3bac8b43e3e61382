import json

import pytest

from knotcert.cli import default_cache_path, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestVerify:
    def test_topterm_pass(self, capsys):
        code, out, _ = run(capsys, "verify", "topterm", "--n", "2")
        assert code == 0
        assert "[   pass] topterm-n2" in out
        assert "1 pass, 0 fail" in out

    def test_json_report_shape(self, capsys):
        code, out, _ = run(capsys, "verify", "genus", "--n", "2", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["summary"]["fail"] == 0
        entry = doc["entries"][0]
        assert entry["claim"] == "genus-n2"
        assert entry["status"] == "pass"
        assert set(entry) == {"claim", "statement", "status", "computed", "seconds"}

    def test_lspace_includes_negative_control(self, capsys):
        code, out, _ = run(capsys, "verify", "lspace", "--k-max", "3")
        assert code == 0
        assert "negative-control" in out

    def test_dehornoy_sweep(self, capsys):
        code, out, _ = run(capsys, "verify", "dehornoy", "--n-max", "3")
        assert code == 0
        assert "dehornoy-n2" in out and "dehornoy-n3" in out

    def test_verify_all_desk(self, capsys):
        code, out, _ = run(capsys, "verify", "all", "--level", "desk", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["summary"]["fail"] == 0
        assert doc["summary"]["pass"] > 100
        claims = [e["claim"] for e in doc["entries"]]
        assert claims == sorted(claims)

    def test_threads_match_serial(self, capsys):
        code1, out1, _ = run(capsys, "verify", "slopes", "--k-max", "20", "--json")
        code2, out2, _ = run(capsys, "verify", "slopes", "--k-max", "20", "--json", "--threads", "4")
        assert code1 == code2 == 0
        strip = lambda doc: [
            {k: v for k, v in e.items() if k != "seconds"} for e in doc["entries"]
        ]
        assert strip(json.loads(out1)) == strip(json.loads(out2))

    def test_ito_even_n(self, capsys):
        code, out, _ = run(capsys, "verify", "ito", "--n", "2")
        assert code == 0
        assert "ito-control-t23" in out and "ito-kn-n2" in out

    def test_ito_odd_n_needs_genus(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["verify", "ito", "--n", "3"])
        assert err.value.code == 2

    def test_ito_odd_n_with_genus_is_unknown(self, capsys):
        code, out, _ = run(capsys, "verify", "ito", "--n", "3", "--genus", "7")
        assert code == 0
        assert "[unknown] ito-kn-n3" in out

    def test_genus_odd_rejected(self):
        with pytest.raises(SystemExit) as err:
            main(["verify", "genus", "--n", "3"])
        assert err.value.code == 2

    def test_status_mapping(self):
        from knotcert.cli import Claim, _execute
        from knotcert.errors import BudgetExceededError

        def budget():
            raise BudgetExceededError("too big", spent=10)

        def crash():
            raise KeyError("boom")

        assert _execute(Claim("a", "s", lambda: (True, "x"))).status == "pass"
        assert _execute(Claim("b", "s", lambda: (False, "x"))).status == "fail"
        assert _execute(Claim("c", "s", lambda: (None, "x"))).status == "unknown"
        skipped = _execute(Claim("d", "s", budget))
        assert skipped.status == "skipped"
        assert "budget exceeded" in skipped.computed
        crashed = _execute(Claim("e", "s", crash))
        assert crashed.status == "fail"
        assert "KeyError" in crashed.computed

    def test_budget_yields_skip_in_fresh_process(self):
        import subprocess
        import sys

        # 10 strands exceed the Hecke cap and the walk budget is tiny, so
        # the claim must be skipped rather than failed
        proc = subprocess.run(
            [
                sys.executable, "-m", "knotcert.cli",
                "verify", "topterm", "--n", "5", "--node-budget", "10",
            ],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert "[skipped] topterm-n5" in proc.stdout
        assert "0 fail" in proc.stdout


class TestTraintrackMaps:
    def test_user_map_passes(self, tmp_path, capsys):
        from knotcert.traintrack import kn_map, map_to_json

        path = tmp_path / "map.json"
        path.write_text(json.dumps(map_to_json(kn_map(3))))
        code, out, _ = run(capsys, "verify", "traintrack", "--map", str(path))
        assert code == 0
        assert "usermap" in out

    def test_bad_map_fails(self, tmp_path, capsys):
        from knotcert.traintrack import kn_map, map_to_json

        data = map_to_json(kn_map(3))
        data["edge_image"]["e1"] = ["e5", "-e5", "e5"]
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(data))
        code, out, _ = run(capsys, "verify", "traintrack", "--map", str(path))
        assert code == 1
        assert "[   fail]" in out

    def test_missing_file_fails(self, capsys):
        code, _, err = run(capsys, "verify", "traintrack", "--map", "/nonexistent.json")
        assert code == 1


class TestInvariants:
    def test_trefoil_text(self, capsys):
        code, out, _ = run(capsys, "invariants", "--braid", "1 1 1", "--no-cache")
        assert code == 0
        assert "2*v^2 + v^2*z^2 - v^4" in out
        assert "alexander" in out
        assert "determinant: 3" in out

    def test_json_output(self, capsys):
        code, out, _ = run(
            capsys, "invariants", "--braid", "strands=3 1 -2", "--json", "--no-cache"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["homfly"] == "1"
        assert doc["components"] == 1

    def test_skein_engine_agrees(self, capsys):
        _, out_h, _ = run(capsys, "invariants", "--braid", "1 1 1 1 1", "--json", "--no-cache")
        _, out_s, _ = run(
            capsys,
            "invariants", "--braid", "1 1 1 1 1", "--engine", "skein", "--json", "--no-cache",
        )
        assert json.loads(out_h)["homfly"] == json.loads(out_s)["homfly"]

    def test_word_length_cap(self):
        with pytest.raises(SystemExit) as err:
            main(["invariants", "--braid", " ".join(["1"] * 99), "--max-letters", "10"])
        assert err.value.code == 2

    def test_garbage_braid_rejected(self):
        with pytest.raises(SystemExit) as err:
            main(["invariants", "--braid", "1 x 2"])
        assert err.value.code == 2


class TestFamily:
    def test_word_emission(self, capsys):
        code, out, _ = run(capsys, "family", "cable", "--n", "1")
        assert code == 0
        assert out.strip() == "strands=2 1 1 1"

    def test_kn_letter_count(self, capsys):
        code, out, _ = run(capsys, "family", "kn", "--n", "3")
        assert code == 0
        word = out.strip()
        assert word.startswith("strands=6 ")
        assert len(word.split()) == 1 + 3 * 9 + 3 * 3 - 1

    def test_hyphenated_name(self, capsys):
        code, out, _ = run(capsys, "family", "beta-conjugated", "--n", "2")
        assert code == 0

    def test_bad_parameter_rejected(self):
        with pytest.raises(SystemExit) as err:
            main(["family", "kn", "--n", "0"])
        assert err.value.code == 2


class TestCache:
    def test_path_respects_xdg(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("XDG_CACHE_HOME", str(tmp_path))
        assert str(default_cache_path()).startswith(str(tmp_path))
        code, out, _ = run(capsys, "cache", "path")
        assert code == 0
        assert out.strip() == str(default_cache_path())

    def test_stats_and_clear(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("XDG_CACHE_HOME", str(tmp_path))
        # a braid no other test touches, so the in-process memo cannot
        # swallow the cache write
        code, _, _ = run(capsys, "invariants", "--braid", "strands=5 1 -2 3 -4 4 2")
        assert code == 0
        code, out, _ = run(capsys, "cache", "stats")
        assert code == 0
        assert json.loads(out)["records"] >= 1
        code, out, _ = run(capsys, "cache", "clear")
        assert code == 0
        code, out, _ = run(capsys, "cache", "stats")
        assert json.loads(out)["records"] == 0


class TestUsage:
    def test_no_command(self):
        with pytest.raises(SystemExit) as err:
            main([])
        assert err.value.code == 2

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["--version"])
        assert err.value.code == 0
