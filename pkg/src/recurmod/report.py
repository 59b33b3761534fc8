"""JSON and CSV renderings of analysis results."""

from __future__ import annotations

import csv
import io
import json

SCHEMA_VERSION = 1

CSV_FIELDS = ["variant", "modulus", "complete", "periodLength", "uniform", "gcdInvariant",
              "invariantClass", "missing", "histogram"]


def to_json(command: str, result) -> str:
    doc = {"schemaVersion": SCHEMA_VERSION, "command": command, "result": result}
    return json.dumps(doc, indent=2) + "\n"


def reports_to_csv(reports, variant: str = "w") -> str:
    """One row per modulus; list-valued fields are space separated."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for rep in reports:
        d = rep.as_dict()
        writer.writerow({
            "variant": variant,
            "modulus": d["modulus"],
            "complete": int(d["complete"]),
            "periodLength": d["periodLength"],
            "uniform": int(d["uniform"]),
            "gcdInvariant": d["gcdInvariant"],
            "invariantClass": " ".join(map(str, d["invariantClass"])),
            "missing": " ".join(map(str, d["missing"])),
            "histogram": " ".join(f"{r}:{c}" for r, c in d["histogram"].items()),
        })
    return buf.getvalue()


def rows_to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
