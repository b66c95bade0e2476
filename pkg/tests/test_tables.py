import json

import pytest

from specalt.tables import (KnotRecord, load_table, analyze, analyze_all,
                            emit_tables, diff_tables, TableError, AnalyzeConfig,
                            bound_consistency_ok, natural_key)
from specalt.cli import main as cli_main

from conftest import TREFOIL_PD


class TestLoadTable:
    def test_bundled_loads_clean(self, bundled):
        assert len(bundled) >= 55

    def test_missing_file(self):
        with pytest.raises(TableError):
            load_table("/nonexistent/table.csv")

    def test_header_mismatch(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("name,code\nfoo,bar\n")
        with pytest.raises(TableError):
            load_table(str(p))

    def test_per_row_errors_with_line_numbers(self, tmp_path):
        p = tmp_path / "t.csv"
        p.write_text("name,pd,signature,u,genus\n"
                     f'good,"{TREFOIL_PD}",-2,1,1\n'
                     'bad,"X[1,2]",,,\n')
        records, errors = load_table(str(p))
        assert len(records) == 1
        assert len(errors) == 1 and "line 3" in errors[0]

    def test_u_set_cell(self, tmp_path):
        p = tmp_path / "t.csv"
        p.write_text("name,pd,signature,u,genus\n"
                     f'k,"{TREFOIL_PD}",-2,3;4,1\n')
        records, _ = load_table(str(p))
        assert records[0].known_u == frozenset({3, 4})


class TestAnalyze:
    def test_trefoil_record(self):
        rec = KnotRecord("3_1", TREFOIL_PD, known_signature=-2)
        row = analyze(rec)
        assert row.ok
        assert (row.sigma, row.nullity, row.det) == (-2, 0, 3)
        assert row.u_text() == "1" and row.c4_text() == "1"

    def test_signature_mismatch_fails_row(self):
        rec = KnotRecord("bad", TREFOIL_PD, known_signature=2)
        row = analyze(rec)
        assert not row.ok
        assert "sigma" in row.provenance

    def test_non_special_gets_bounds_only(self):
        from specalt.families import rational_link
        rec = KnotRecord("4_1", rational_link([2, 2]).to_pd_text())
        row = analyze(rec)
        assert row.ok
        assert row.u_upper is None
        assert "bounds only" in row.provenance

    def test_parse_failure_row(self):
        row = analyze(KnotRecord("junk", "X[1,2,3,4] X[1,2,3,4]"))
        assert not row.ok

    def test_parallel_matches_serial(self, bundled):
        subset = [r for r in bundled if r.name in ("3_1", "hopf", "7_4", "5_2")]
        serial = analyze_all(subset, jobs=1)
        parallel = analyze_all(subset, jobs=2)
        assert [r.to_json() | {"seconds": 0} for r in serial] == \
            [r.to_json() | {"seconds": 0} for r in parallel]


class TestEmitAndDiff:
    def rows(self):
        recs = [KnotRecord("3_1", TREFOIL_PD, known_signature=-2)]
        return analyze_all(recs)

    def test_markdown(self):
        text = emit_tables(self.rows())
        assert "| 3_1 | 1 | 1 | -2 | 1 |" in text

    def test_csv_roundtrip(self, tmp_path):
        rows = self.rows()
        text = emit_tables(rows, fmt="csv")
        assert text.splitlines()[0] == "K,u,c4,sigma,g"
        assert "3_1,1,1,-2,1" in text
        # emitted tables are themselves valid diff targets
        p = tmp_path / "emitted.csv"
        p.write_text(text)
        result = diff_tables(rows, str(p))
        assert result.clean and not result.loose

    def test_diff_clean(self, tmp_path):
        p = tmp_path / "expected.csv"
        p.write_text("name,u,c4,sigma,genus\n3_1,1,1,-2,1\n")
        result = diff_tables(self.rows(), str(p))
        assert result.clean and not result.loose

    def test_diff_mismatch(self, tmp_path):
        p = tmp_path / "expected.csv"
        p.write_text("name,u,c4,sigma,genus\n3_1,2,1,-2,1\n")
        result = diff_tables(self.rows(), str(p))
        assert not result.clean

    def test_diff_containment_is_loose(self, tmp_path):
        recs = [KnotRecord("9_35", "", None, None, None)]
        from specalt import families
        recs = [KnotRecord("9_35", families.knot_9_35().to_pd_text())]
        p = tmp_path / "expected.csv"
        p.write_text("name,u,c4,sigma,genus\n9_35,3,2,-2,1\n")
        result = diff_tables(analyze_all(recs), str(p))
        assert result.clean          # {2;3} contains 3 and 2: consistent
        assert len(result.loose) == 2

    def test_natural_sort(self):
        names = ["12a1035", "12a144", "12a97", "11a362"]
        assert sorted(names, key=natural_key) == \
            ["11a362", "12a97", "12a144", "12a1035"]

    def test_natural_sort_mixed_shapes(self):
        # digit-led and alpha-led names must compare without type errors
        names = ["hopf", "3_1", "t2_4", "12a97", "ladder_3"]
        ordered = sorted(names, key=natural_key)
        assert set(ordered) == set(names)

    def test_emit_mixed_names(self, bundled):
        rows = analyze_all([r for r in bundled if r.name in ("3_1", "hopf")],
                           AnalyzeConfig(decide=False))
        text = emit_tables(rows)
        assert "3_1" in text and "hopf" in text

    def test_bound_consistency_on_bundled(self, bundled):
        rows = analyze_all([r for r in bundled if r.name in
                            ("3_1", "7_4", "9_35", "hopf", "k23_medial")])
        assert all(bound_consistency_ok(r) for r in rows)

    def test_bundled_regression_diff_clean(self, bundled):
        """Full run against the frozen expected table: byte-level regression
        guard for the entire pipeline."""
        from specalt.tables import data_path
        rows = analyze_all(bundled, AnalyzeConfig())
        result = diff_tables(rows, data_path("fixtures_expected.csv"))
        assert result.clean, result.mismatches
        assert not result.loose, result.loose


class TestJobsEnvVar:
    def test_spec_jobs_env_default(self, bundled, monkeypatch):
        import specalt.tables as tables_mod
        monkeypatch.setenv("SPECALT_JOBS", "2")
        subset = [r for r in bundled if r.name in ("3_1", "hopf")]
        rows = tables_mod.analyze_all(subset)   # jobs=None reads the env var
        assert [r.name for r in rows] == ["3_1", "hopf"]
        assert all(r.ok for r in rows)


class TestCLI:
    def test_analyze_name(self, capsys):
        rc = cli_main(["analyze", "3_1"])
        out = capsys.readouterr().out
        assert rc == 0 and "sigma=-2" in out

    def test_analyze_pd(self, capsys):
        rc = cli_main(["analyze", TREFOIL_PD])
        assert rc == 0

    def test_trailing_global_flags(self, capsys):
        rc = cli_main(["analyze", "3_1", "--json"])
        out = json.loads(capsys.readouterr().out)
        assert rc == 0 and out["u"] == "1"

    def test_analyze_dt_code(self, capsys):
        rc = cli_main(["analyze", "4 6 2", "--json"])
        out = json.loads(capsys.readouterr().out)
        assert rc == 0 and out["determinant"] == 3 and out["genus"] == "1"

    def test_analyze_unknown_name(self, capsys):
        rc = cli_main(["analyze", "99a999"])
        assert rc == 2

    def test_embed_json(self, capsys):
        rc = cli_main(["--json", "embed", "3_1"])
        out = json.loads(capsys.readouterr().out)
        assert rc == 0 and out["admissible"] is True

    def test_search(self, capsys):
        rc = cli_main(["search", "3_1", "--changes", "1"])
        out = capsys.readouterr().out
        assert rc == 0 and "some" in out

    def test_tables_with_diff(self, tmp_path, capsys):
        csv_path = tmp_path / "small.csv"
        csv_path.write_text("name,pd,signature,u,genus\n"
                            f'3_1,"{TREFOIL_PD}",-2,1,1\n')
        exp = tmp_path / "expected.csv"
        exp.write_text("name,u,c4,sigma,genus\n3_1,1,1,-2,1\n")
        rc = cli_main(["tables", str(csv_path), "--diff", str(exp)])
        assert rc == 0

    def test_tables_diff_mismatch_exit_1(self, tmp_path, capsys):
        csv_path = tmp_path / "small.csv"
        csv_path.write_text("name,pd,signature,u,genus\n"
                            f'3_1,"{TREFOIL_PD}",-2,1,1\n')
        exp = tmp_path / "expected.csv"
        exp.write_text("name,u,c4,sigma,genus\n3_1,4,4,-2,1\n")
        rc = cli_main(["tables", str(csv_path), "--diff", str(exp)])
        assert rc == 1

    def test_tables_input_error_exit_2(self, capsys):
        rc = cli_main(["tables", "/nonexistent.csv"])
        assert rc == 2
