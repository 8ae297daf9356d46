import csv
import json
import os
from typing import Any, Dict, Iterable, Sequence


def format_value(value: Any) -> str:
    """
    Formats a table cell: floats with 17 significant digits, booleans as
    true/false, everything else with str().
    """
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_table(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> int:
    """
    Writes a CSV table with a header row; returns the number of data rows.
    """
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    count = 0
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(v) for v in row])
            count += 1
    return count


def write_summary(path: str, summary: Dict[str, Any]):
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(summary, f, ensure_ascii=False, indent=4, sort_keys=True)
        f.write("\n")
