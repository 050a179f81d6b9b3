import json
import math
import sys
from typing import Dict, List, Optional, TextIO
import pandas as pd
from plane_matroids.core.formats import chirotope_to_record
from plane_matroids.core.orientability import MinimalityReport, SearchResult
from plane_matroids.core.types import Diagnosis, Report, Verdict

def make_report(
    command:str,
    inputs:dict,
    verdict:Verdict,
    result:Optional[dict]=None,
    certificates:Optional[dict]=None,
    counters:Optional[dict]=None,
    wall_time:Optional[float]=None,
) -> Report:
    report: Report = {"command": command, "inputs": inputs, "verdict": verdict}
    if result is not None:
        report["result"] = result
    if certificates is not None:
        report["certificates"] = certificates
    if counters is not None:
        report["counters"] = counters
    if wall_time is not None:
        report["wall_time"] = round(wall_time, 6)
    return report

def orientability_verdict(result:SearchResult) -> Verdict:
    return {
        "found": "orientable",
        "none": "non-orientable",
        "budget-exhausted": "inconclusive",
    }[result.outcome]

def search_section(result:SearchResult) -> dict:
    section = {"outcome": result.outcome, "nodes": result.nodes}
    if result.chirotope is not None:
        section["elements"] = list(result.chirotope.elements)
        section["chirotope"] = chirotope_to_record(result.chirotope)
    return section

def minimality_sections(report:MinimalityReport) -> Dict[str, dict]:
    return {
        "matroid": search_section(report.search),
        "deletions": {e: search_section(result) for e, result in report.deletions.items()},
        "rank_dropping": list(report.rank_dropping),
    }

def diagnosis_section(diagnosis:Diagnosis) -> dict:
    return diagnosis.as_dict()

def table_records(table:pd.DataFrame) -> List[dict]:
    """DataFrame rows as JSON-ready dicts; missing values become null."""
    records = []
    for row in table.to_dict(orient="records"):
        records.append({
            key: (None if isinstance(value, float) and math.isnan(value) else value)
            for key, value in row.items()
        })
    return records

def _default(value):
    # numpy scalars coming out of pandas
    if hasattr(value, "item"):
        return value.item()
    raise TypeError(f"not JSON serializable: {type(value).__name__}")

def emit(document, stream:TextIO=None) -> None:
    stream = stream or sys.stdout
    stream.write(json.dumps(document, indent=2, default=_default) + "\n")
