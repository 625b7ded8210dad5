"""Generate data/compas.csv, a deterministic recidivism-audit fixture.

The fixture mirrors the published Broward County pretrial population:
7214 defendants scored in 2013-2014, risk deciles 1-10, a two-year
recidivism label, and race/sex/age-category attributes. Group sizes and
per-group confusion counts under the conventional decile >= 5 decision
rule are calibrated to the published group rates, so a fairness audit of
this file lands on the documented disparity pattern (roughly doubled
false positive rate for African-American vs Caucasian defendants, a 1.6x
FPR ratio for under-25s vs 25-45, a 1.32x FDR ratio for women vs men,
and FDR parity across race).

Construction: rows are built one confusion cell at a time. Within a
cell, each attribute's value list carries its exact multiplicity and is
shuffled independently before the lists are zipped, so every attribute's
margin is exact no matter how the joint distribution falls out. The
script recounts everything from the emitted rows and fails loudly on any
drift, so regeneration is safe.

Usage: python tools/make_compas_fixture.py [out_path]
"""

import csv
import random
import sys
from pathlib import Path

SEED = 20140415
CUTOFF = 5  # decile >= 5 reads as a positive (high-risk) decision

# Per-attribute confusion counts (tp, fp, tn, fn) under decile >= 5.
CALIBRATION = {
    "race": {
        "African-American": (1369, 804, 991, 532),
        "Caucasian": (506, 349, 1138, 461),
        "Hispanic": (116, 85, 320, 116),
        "Other": (60, 46, 198, 73),
        "Asian": (5, 4, 19, 4),
        "Native American": (5, 3, 5, 5),
    },
    "sex": {
        "Male": (1773, 1021, 2074, 951),
        "Female": (288, 270, 597, 240),
    },
    "age_cat": {
        "<25": (642, 355, 318, 214),
        "25-45": (1210, 732, 1487, 680),
        ">45": (209, 204, 866, 297),
    },
}

CELLS = ("tp", "fp", "tn", "fn")
GLOBAL_CELLS = {"tp": 2061, "fp": 1291, "tn": 2671, "fn": 1191}
# (label, decision) pattern of each confusion cell.
CELL_OUTCOME = {"tp": (1, 1), "fp": (0, 1), "tn": (0, 0), "fn": (1, 0)}


def _cell_values(attribute: str, cell_index: int, rng: random.Random) -> list:
    values = []
    for group, counts in CALIBRATION[attribute].items():
        values.extend([group] * counts[cell_index])
    rng.shuffle(values)
    return values


def build_rows(rng: random.Random) -> list[dict]:
    rows = []
    for cell_index, cell in enumerate(CELLS):
        total = GLOBAL_CELLS[cell]
        columns = {attr: _cell_values(attr, cell_index, rng) for attr in CALIBRATION}
        for attr, values in columns.items():
            assert len(values) == total, f"{attr} {cell} margin does not sum to {total}"
        label, decision = CELL_OUTCOME[cell]
        for i in range(total):
            score = rng.randint(CUTOFF, 10) if decision == 1 else rng.randint(1, CUTOFF - 1)
            rows.append(
                {
                    "score": score,
                    "label": label,
                    **{attr: columns[attr][i] for attr in CALIBRATION},
                }
            )
    rng.shuffle(rows)
    for ordinal, row in enumerate(rows, start=1):
        row["entity_id"] = ordinal
    return rows


def recount(rows: list[dict]) -> dict:
    counted = {
        attr: {group: [0, 0, 0, 0] for group in groups}
        for attr, groups in CALIBRATION.items()
    }
    for row in rows:
        decision = 1 if row["score"] >= CUTOFF else 0
        if decision == 1:
            cell = 0 if row["label"] == 1 else 1
        else:
            cell = 2 if row["label"] == 0 else 3
        for attr in CALIBRATION:
            counted[attr][row[attr]][cell] += 1
    return counted


def verify(rows: list[dict]) -> None:
    counted = recount(rows)
    for attr, groups in CALIBRATION.items():
        for group, expected in groups.items():
            actual = tuple(counted[attr][group])
            assert actual == expected, f"{attr}/{group}: {actual} != {expected}"
    assert len(rows) == sum(GLOBAL_CELLS.values()) == 7214

    def rate(attr, group, num_cell, den_cells):
        tp, fp, tn, fn = CALIBRATION[attr][group]
        cells = {"tp": tp, "fp": fp, "tn": tn, "fn": fn}
        return cells[num_cell] / sum(cells[c] for c in den_cells)

    def fpr(attr, group):
        return rate(attr, group, "fp", ("fp", "tn"))

    def fdr(attr, group):
        return rate(attr, group, "fp", ("fp", "tp"))

    checks = [
        ("race FPR AA/Caucasian", fpr("race", "African-American") / fpr("race", "Caucasian"),
         1.7, 2.2),
        ("age FPR <25 / 25-45", fpr("age_cat", "<25") / fpr("age_cat", "25-45"), 1.45, 1.75),
        ("sex FDR Female/Male", fdr("sex", "Female") / fdr("sex", "Male"), 1.25, 1.45),
    ]
    for group in CALIBRATION["race"]:
        checks.append(
            (f"race FDR {group}/Caucasian", fdr("race", group) / fdr("race", "Caucasian"),
             0.8, 1.25)
        )
    for name, value, lo, hi in checks:
        assert lo <= value <= hi, f"{name} = {value:.4f} outside [{lo}, {hi}]"
        print(f"  {name} = {value:.4f} in [{lo}, {hi}]")


def main() -> None:
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("data/compas.csv")
    rows = build_rows(random.Random(SEED))
    verify(rows)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="") as handle:
        writer = csv.DictWriter(
            handle,
            fieldnames=["entity_id", "score", "label", "race", "sex", "age_cat"],
            lineterminator="\n",
        )
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    print(f"wrote {len(rows)} rows to {out}")


if __name__ == "__main__":
    main()
