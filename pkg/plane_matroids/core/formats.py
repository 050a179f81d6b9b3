"""
JSON interchange formats.

- matroid: {"elements": [...], "flats": [[...], ...]}, sorted deterministically
- arrangement: [{"name": ..., "line": [A, B, C]}, ...]
- chirotope: {"i,j,k": -1 | 0 | 1} over sorted element positions
- element map: {element: "[x,y,z]"}
"""
import json
from pathlib import Path
from typing import Dict, List, Mapping, Sequence, Union
from plane_matroids.core.embed import ElementMap
from plane_matroids.core.families import Arrangement
from plane_matroids.core.gf import FieldSpec
from plane_matroids.core.matroid import LineMatroid, natural_key, require_valid
from plane_matroids.core.orientability import Chirotope
from plane_matroids.core.projplane import parse_point
from plane_matroids.core.types import LineRecord, MatroidRecord

PathLike = Union[str, Path]

#===============================================#
#------------------- Matroids ------------------#
#===============================================#

def matroid_to_record(M:LineMatroid) -> MatroidRecord:
    flats = [sorted(flat, key=natural_key) for flat in M.flats]
    flats.sort(key=lambda flat: [natural_key(e) for e in flat])
    return {"elements": sorted(M.elements, key=natural_key), "flats": flats}

def matroid_from_record(record:Mapping) -> LineMatroid:
    """Parse and validate; element order is kept as written."""
    if not isinstance(record, Mapping) or set(record) != {"elements", "flats"}:
        raise ValueError('matroid record needs exactly the keys "elements" and "flats"')
    elements, flats = record["elements"], record["flats"]
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise ValueError('"elements" must be an array of strings')
    if not isinstance(flats, list) or not all(isinstance(flat, list) for flat in flats):
        raise ValueError('"flats" must be an array of arrays')
    return require_valid(LineMatroid(tuple(elements), tuple(frozenset(flat) for flat in flats)))

def save_matroid(M:LineMatroid, path:PathLike) -> None:
    Path(path).write_text(json.dumps(matroid_to_record(M), indent=2) + "\n", encoding="utf-8")

def load_matroid(path:PathLike) -> LineMatroid:
    try:
        record = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as error:
        raise ValueError(f"{path} is not valid JSON: {error}") from None
    return matroid_from_record(record)

#===============================================#
#----------------- Arrangements ----------------#
#===============================================#

def arrangement_to_records(arr:Arrangement) -> List[LineRecord]:
    return [{"name": name, "line": list(line)} for name, line in zip(arr.names, arr.lines)]

def arrangement_from_records(records:Sequence[Mapping]) -> Arrangement:
    try:
        names = tuple(record["name"] for record in records)
        lines = tuple(tuple(record["line"]) for record in records)
    except (KeyError, TypeError):
        raise ValueError('arrangement entries need "name" and "line"') from None
    return Arrangement(names, lines)

#===============================================#
#------------------ Chirotopes -----------------#
#===============================================#

def chirotope_to_record(chi:Chirotope) -> Dict[str, int]:
    return {",".join(str(k) for k in key): value for key, value in sorted(chi.signs.items())}

def chirotope_from_record(elements:Sequence[str], record:Mapping[str, int]) -> Chirotope:
    signs = {}
    for key, value in record.items():
        try:
            triple = tuple(int(k) for k in key.split(","))
        except ValueError:
            raise ValueError(f"bad chirotope key: {key!r}") from None
        if len(triple) != 3 or list(triple) != sorted(set(triple)):
            raise ValueError(f"chirotope keys must be sorted index triples: {key!r}")
        signs[triple] = value
    return Chirotope(tuple(elements), signs)

#===============================================#
#----------------- Element Maps ----------------#
#===============================================#

def element_map_to_record(img:Mapping) -> Dict[str, str]:
    return {name: str(point) for name, point in img.items()}

def element_map_from_record(spec:FieldSpec, record:Mapping[str, str]) -> ElementMap:
    return ElementMap({name: parse_point(spec, text) for name, text in record.items()})
