"""Loading, validation and round-tripping of the CSV formats."""

import pytest

from fuzzyrel import (
    AttributeSpec,
    DomainError,
    FormatError,
    LevelMap,
    Linear,
    ValidationError,
    load_locations,
    load_matrix,
    load_relation,
    merge_relation,
    relation_to_csv,
)
from fuzzyrel.tables import format_grouping, format_table

from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "data"


class TestLoadRelation:
    def test_suppliers_row_count(self, suppliers_db):
        assert len(suppliers_db.relation("SUPPLIERS")) == 18

    def test_set_valued_cell(self, tmp_path, hair_matrix):
        path = tmp_path / "r.csv"
        path.write_text("Hair\nBlond|Bleached\n")
        from fuzzyrel import ExplicitMatrix

        rel = load_relation(path, [AttributeSpec("Hair", ExplicitMatrix(hair_matrix))])
        assert rel.tuples[0].get("Hair") == frozenset({"Blond", "Bleached"})

    def test_numeric_cells_become_numbers(self, suppliers_db):
        statuses = {
            v for t in suppliers_db.relation("SUPPLIERS").tuples
            for v in t.get("STATUS")
        }
        assert all(isinstance(v, int) for v in statuses)

    def test_header_must_match_schema(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("Wrong\nx\n")
        with pytest.raises(FormatError):
            load_relation(path, [AttributeSpec("Right")])

    def test_cell_count_error_names_line(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("A,B\nx,y\nonly-one\n")
        with pytest.raises(FormatError, match=r":3:"):
            load_relation(path, [AttributeSpec("A"), AttributeSpec("B")])

    def test_out_of_range_numeric(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("S\n120\n")
        with pytest.raises(DomainError):
            load_relation(path, [AttributeSpec("S", Linear(100))])

    def test_unknown_label_rejected(self, tmp_path, effect_matrix):
        from fuzzyrel import ExplicitMatrix

        path = tmp_path / "r.csv"
        path.write_text("E\nMild\n")
        with pytest.raises(DomainError):
            load_relation(path, [AttributeSpec("E", ExplicitMatrix(effect_matrix))])

    def test_empty_set_member_rejected(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("A\nx||y\n")
        with pytest.raises(FormatError):
            load_relation(path, [AttributeSpec("A")])


class TestLoadMatrix:
    def test_effect_matrix(self, effect_matrix):
        assert len(effect_matrix.labels) == 8
        assert effect_matrix.degree("Minimal", "Irreversible") == 0.0

    def test_asymmetric_rejected(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("s,a,b\na,1.0,0.5\nb,0.4,1.0\n")
        with pytest.raises(ValidationError):
            load_matrix(path)

    def test_bad_diagonal_rejected(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("s,a,b\na,0.9,0.5\nb,0.5,1.0\n")
        with pytest.raises(ValidationError):
            load_matrix(path)

    def test_label_mismatch_rejected(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("s,a,b\nb,1.0,0.5\na,0.5,1.0\n")
        with pytest.raises(FormatError):
            load_matrix(path)


class TestLoadLocations:
    def test_gb_coordinates(self):
        locs = load_locations(DATA / "gb" / "gb_locations.csv")
        assert locs["Peterborough"] == (1.7492, 1.5739)
        assert len(locs) == 23

    def test_header_required(self, tmp_path):
        path = tmp_path / "l.csv"
        path.write_text("name,x,y\nA,1,1\n")
        with pytest.raises(FormatError):
            load_locations(path)


class TestRoundTrip:
    def test_plain_relation(self, tmp_path, suppliers_db):
        rel = suppliers_db.relation("SUPPLIERS")
        path = tmp_path / "out.csv"
        path.write_text(relation_to_csv(rel))
        assert load_relation(path, rel.schema) == rel

    def test_merged_relation_with_set_cells(self, tmp_path, suppliers_db):
        rel = merge_relation(
            suppliers_db.relation("SUPPLIERS"), suppliers_db.levels(0.6)
        )
        path = tmp_path / "out.csv"
        path.write_text(relation_to_csv(rel))
        assert load_relation(path, rel.schema) == rel


class TestRendering:
    def test_deterministic(self, suppliers_db):
        rel = merge_relation(
            suppliers_db.relation("SUPPLIERS"), suppliers_db.levels(0.6)
        )
        assert format_table(rel) == format_table(rel)
        assert relation_to_csv(rel) == relation_to_csv(rel)

    def test_braces_only_for_multivalue_cells(self, suppliers_db):
        text = format_table(suppliers_db.relation("SUPPLIERS"))
        assert "{" not in text  # all input cells are singletons

    def test_grouping_format(self, suppliers_db):
        from fuzzyrel import classes_over, partition_line

        g = classes_over(
            suppliers_db.temporal_domain("STATUS"), partition_line(100, 0.8)
        )
        lines = format_grouping(g).splitlines()
        assert lines[0] == "1: {10}"
        assert lines[-1] == "5: {80, 90}"
