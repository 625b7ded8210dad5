import pytest

from parityd import (
    BadLabelValue,
    BadScoreValue,
    Dataset,
    DatasetSchema,
    DuplicateEntityId,
    EmptyDataset,
    EntityRecord,
    InvalidConfig,
    MissingColumn,
    ParseOptions,
    TooManyGroups,
    UNKNOWN_GROUP,
    parse_csv,
    serialize_csv,
    validate,
)

BASIC_SCHEMA = DatasetSchema(
    label_column="label",
    attribute_columns=("race",),
    score_column="score",
    entity_id_column="id",
)


def test_direct_field_mapping():
    raw = b"id,score,label,race\na,0.9,1,African-American\n"
    dataset = parse_csv(raw, BASIC_SCHEMA)
    record = dataset.records[0]
    assert record.entity_id == "a"
    assert record.score == 0.9
    assert record.label == 1
    assert record.attributes == {"race": "African-American"}


def test_empty_attribute_cell_becomes_unknown_group():
    raw = b"id,score,label,race\na,0.9,1,\n"
    dataset = parse_csv(raw, BASIC_SCHEMA)
    assert dataset.records[0].attributes["race"] == UNKNOWN_GROUP


def test_header_only_file_is_empty_dataset():
    with pytest.raises(EmptyDataset):
        parse_csv(b"id,score,label,race\n", BASIC_SCHEMA)
    with pytest.raises(EmptyDataset):
        parse_csv(b"", BASIC_SCHEMA)


def test_missing_column_names_the_column():
    with pytest.raises(MissingColumn) as excinfo:
        parse_csv(b"id,score,race\na,0.9,x\n", BASIC_SCHEMA)
    assert "label" in str(excinfo.value)


def test_bad_label_reports_one_based_data_row():
    raw = b"id,score,label,race\na,0.9,1,x\nb,0.8,maybe,y\n"
    with pytest.raises(BadLabelValue) as excinfo:
        parse_csv(raw, BASIC_SCHEMA)
    assert "2" in str(excinfo.value)
    assert "maybe" in str(excinfo.value)


def test_bad_and_nonfinite_scores_rejected():
    with pytest.raises(BadScoreValue):
        parse_csv(b"id,score,label,race\na,high,1,x\n", BASIC_SCHEMA)
    with pytest.raises(BadScoreValue):
        parse_csv(b"id,score,label,race\na,inf,1,x\n", BASIC_SCHEMA)
    with pytest.raises(BadScoreValue):
        parse_csv(b"id,score,label,race\na,nan,1,x\n", BASIC_SCHEMA)


def test_duplicate_entity_id_rejected():
    raw = b"id,score,label,race\na,0.9,1,x\na,0.8,0,y\n"
    with pytest.raises(DuplicateEntityId):
        parse_csv(raw, BASIC_SCHEMA)


def test_label_spellings_and_case():
    raw = b"id,score,label,race\na,1,TRUE,x\nb,2,No,x\nc,3,t,x\nd,4,0,x\n"
    dataset = parse_csv(raw, BASIC_SCHEMA)
    assert [r.label for r in dataset.records] == [1, 0, 1, 0]


def test_synthesized_ids_without_id_column():
    schema = DatasetSchema(
        label_column="label", attribute_columns=("race",), score_column="score"
    )
    raw = b"score,label,race\n0.9,1,x\n0.8,0,y\n"
    dataset = parse_csv(raw, schema)
    ids = [r.entity_id for r in dataset.records]
    assert len(set(ids)) == 2


def test_utf8_bom_is_stripped():
    raw = "id,score,label,race\na,0.9,1,x\n".encode("utf-8-sig")
    dataset = parse_csv(raw, BASIC_SCHEMA)
    assert dataset.records[0].entity_id == "a"


def test_blank_lines_skipped():
    raw = b"id,score,label,race\na,0.9,1,x\n\nb,0.8,0,y\n"
    dataset = parse_csv(raw, BASIC_SCHEMA)
    assert dataset.row_count == 2


def test_too_many_groups_rejected():
    lines = ["id,score,label,race"]
    for i in range(60):
        lines.append(f"e{i},0.5,1,group{i}")
    with pytest.raises(TooManyGroups):
        parse_csv("\n".join(lines).encode(), BASIC_SCHEMA)
    # A tighter cap applies through options.
    with pytest.raises(TooManyGroups):
        parse_csv(
            b"id,score,label,race\na,1,1,x\nb,2,0,y\n",
            BASIC_SCHEMA,
            ParseOptions(distinct_value_cap=1),
        )


def test_alternate_delimiter():
    raw = b"id;score;label;race\na;0.9;1;x\n"
    dataset = parse_csv(raw, BASIC_SCHEMA, ParseOptions(delimiter=";"))
    assert dataset.records[0].score == 0.9


def test_schema_validation():
    with pytest.raises(InvalidConfig):
        DatasetSchema(label_column="label", attribute_columns=())
    with pytest.raises(InvalidConfig):
        DatasetSchema(label_column="label", attribute_columns=("race",))
    with pytest.raises(InvalidConfig):
        DatasetSchema(
            label_column="label",
            attribute_columns=("label",),
            score_column="score",
        )
    with pytest.raises(InvalidConfig):
        DatasetSchema(
            label_column="label",
            attribute_columns=("race", "race"),
            score_column="score",
        )


def test_round_trip_is_lossless():
    raw = (
        b"id,score,decision,label,race,sex\n"
        b"a,0.125,1,1,African-American,Male\n"
        b"b,0.333333333333,0,0,,Female\n"
        b"c,7,1,0,Other,Male\n"
    )
    schema = DatasetSchema(
        label_column="label",
        attribute_columns=("race", "sex"),
        score_column="score",
        decision_column="decision",
        entity_id_column="id",
    )
    first = parse_csv(raw, schema)
    second = parse_csv(serialize_csv(first), schema)
    assert first == second
    assert first.content_hash() == second.content_hash()


def test_content_hash_changes_with_content():
    a = parse_csv(b"id,score,label,race\na,0.9,1,x\n", BASIC_SCHEMA)
    b = parse_csv(b"id,score,label,race\na,0.9,0,x\n", BASIC_SCHEMA)
    assert a.content_hash() != b.content_hash()
    assert a.content_hash().startswith("sha256:")


def test_validate_clean_dataset_is_quiet():
    raw = b"id,score,label,race\na,1,1,x\nb,2,0,x\nc,3,1,y\nd,4,0,y\n"
    assert validate(parse_csv(raw, BASIC_SCHEMA)) == []


def test_validate_single_valued_attribute():
    raw = b"id,score,label,race\na,1,1,x\nb,2,0,x\n"
    diagnostics = validate(parse_csv(raw, BASIC_SCHEMA))
    assert [d.code for d in diagnostics] == ["SingleValuedAttribute"]
    assert diagnostics[0].attribute == "race"


def test_validate_flags_undefined_metrics_ahead():
    # Group y has only positive labels (LN=0 kills FPR); group x has only
    # negative labels (LP=0 kills FNR).
    raw = b"id,score,label,race\na,1,0,x\nb,2,0,x\nc,3,1,y\nd,4,1,y\n"
    diagnostics = validate(parse_csv(raw, BASIC_SCHEMA))
    flagged = {(d.group, d.metric) for d in diagnostics if d.code == "UndefinedMetricAhead"}
    assert flagged == {("x", "FNR"), ("y", "FPR")}


def test_validate_small_group_threshold():
    raw = b"id,score,label,race\na,1,1,x\nb,2,0,x\nc,3,1,y\n"
    diagnostics = validate(parse_csv(raw, BASIC_SCHEMA), min_group_size=2)
    assert any(d.code == "SmallGroup" and d.group == "y" for d in diagnostics)


def test_validate_zero_row_dataset_errors():
    dataset = Dataset(schema=BASIC_SCHEMA, records=())
    diagnostics = validate(dataset)
    assert [d.severity for d in diagnostics] == ["error"]
    assert diagnostics[0].code == "EmptyDataset"


def test_records_preserve_input_order():
    raw = b"id,score,label,race\nz,1,1,x\na,2,0,y\nm,3,1,x\n"
    dataset = parse_csv(raw, BASIC_SCHEMA)
    assert [r.entity_id for r in dataset.records] == ["z", "a", "m"]


def test_parse_is_deterministic():
    raw = b"id,score,label,race\na,0.9,1,x\nb,0.8,0,y\n"
    assert parse_csv(raw, BASIC_SCHEMA) == parse_csv(raw, BASIC_SCHEMA)


def test_serialize_orders_columns_canonically():
    # Input column order differs from the canonical id,score,decision,label
    # order; serialization must not depend on it.
    shuffled = b"race,label,id,score\nx,1,a,0.9\n"
    canonical = b"id,score,label,race\na,0.9,1,x\n"
    left = parse_csv(shuffled, BASIC_SCHEMA)
    right = parse_csv(canonical, BASIC_SCHEMA)
    assert serialize_csv(left) == serialize_csv(right)
    assert left.content_hash() == right.content_hash()


def test_record_with_quoted_comma_value():
    raw = b'id,score,label,race\na,0.9,1,"Native American, Plains"\n'
    dataset = parse_csv(raw, BASIC_SCHEMA)
    assert dataset.records[0].attributes["race"] == "Native American, Plains"
    assert parse_csv(serialize_csv(dataset), BASIC_SCHEMA) == dataset
