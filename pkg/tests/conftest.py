from pathlib import Path

import pytest

from parityd import (
    AuditConfig,
    DatasetSchema,
    ParityConfig,
    ReferenceStrategy,
    ThresholdPolicy,
    parse_csv,
)

PKG_ROOT = Path(__file__).resolve().parent.parent
COMPAS_PATH = PKG_ROOT / "data" / "compas.csv"
GOLDEN_DIR = PKG_ROOT / "tests" / "golden"

COMPAS_SCHEMA = DatasetSchema(
    label_column="label",
    attribute_columns=("race", "sex", "age_cat"),
    score_column="score",
    entity_id_column="entity_id",
)

# Fixed baseline used throughout: the historically favored group of each
# attribute, with the conventional decile >= 5 decision rule.
COMPAS_CONFIG = AuditConfig(
    threshold=ThresholdPolicy.score_cutoff(5.0),
    reference=ReferenceStrategy.fixed(
        {"race": "Caucasian", "sex": "Male", "age_cat": "25-45"}
    ),
    parity=ParityConfig(tau=0.8),
)

# Nine rows engineered to hit every verdict class in one audit: the
# majority group A is the reference and makes no errors, B draws finite
# and infinite failing ratios, C has no positive labels so FNR is
# undefined. The single-valued "site" column forces a diagnostic.
SMALL_CSV = b"""id,score,picked,outcome,grp,site
r1,0.9,1,1,A,s1
r2,0.8,1,1,A,s1
r3,0.4,0,0,A,s1
r4,0.3,0,0,A,s1
r5,0.8,1,0,B,s1
r6,0.2,0,1,B,s1
r7,0.7,1,1,B,s1
r8,0.6,1,0,C,s1
r9,0.1,0,0,C,s1
"""

SMALL_SCHEMA = DatasetSchema(
    label_column="outcome",
    attribute_columns=("grp", "site"),
    score_column="score",
    decision_column="picked",
    entity_id_column="id",
)


@pytest.fixture(scope="session")
def compas_dataset():
    return parse_csv(COMPAS_PATH.read_bytes(), COMPAS_SCHEMA)


@pytest.fixture(scope="session")
def compas_report(compas_dataset):
    from parityd import run_audit

    return run_audit(compas_dataset, COMPAS_CONFIG)


@pytest.fixture()
def small_dataset():
    return parse_csv(SMALL_CSV, SMALL_SCHEMA)


@pytest.fixture()
def small_report(small_dataset):
    from parityd import run_audit

    return run_audit(
        small_dataset,
        AuditConfig(
            threshold=ThresholdPolicy.pre_binarized(),
            reference=ReferenceStrategy.majority(),
        ),
    )
