"""
Output helpers: every command builds a JSON-ready payload and, where it is tabular,
a pandas DataFrame. render() turns either into json, csv or text.
"""

import json
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import pandas as pd

FORMATS = ('json', 'csv', 'text')


@dataclass
class Report:
    payload: Any
    table: Optional[pd.DataFrame] = None

    def render(self, fmt: str = 'json') -> str:
        if fmt not in FORMATS:
            raise ValueError(f"Unknown format {fmt!r}; expected one of {FORMATS}")
        if fmt == 'json':
            return json.dumps(self.payload, sort_keys=True, indent=2) + "\n"
        table = self.table if self.table is not None else flatten(self.payload)
        if fmt == 'csv':
            return table.to_csv(index=False)
        return table.to_string(index=False) + "\n"


def flatten(payload: Any) -> pd.DataFrame:
    if isinstance(payload, list):
        return pd.json_normalize(payload)
    if isinstance(payload, dict):
        frame = pd.json_normalize(payload)
        return frame.reindex(sorted(frame.columns), axis=1)
    return pd.DataFrame({'value': [payload]})


def joined(items: List[str]) -> str:
    return "; ".join(items)


def cells_frame(cells) -> pd.DataFrame:
    return pd.DataFrame([{
        'sequence': ",".join(map(str, c.sequence)) if c.sequence else "",
        'initial_ideal': str(c.initial_ideal),
        'facets': joined(c.facets.describe('b')),
        'interior_weight': str(c.interior_weight),
        'depth': c.depth,
    } for c in cells], columns=['sequence', 'initial_ideal', 'facets', 'interior_weight', 'depth'])


def census_payload(census: Dict[int, int]) -> Dict[str, int]:
    return {str(depth): census.get(depth, 0) for depth in (0, 1, 2)}


def census_frame(census: Dict[int, int]) -> pd.DataFrame:
    return pd.DataFrame({'depth': [0, 1, 2], 'cells': [census.get(k, 0) for k in (0, 1, 2)]})


def catalog_frame(entries: List[dict]) -> pd.DataFrame:
    return pd.DataFrame([{
        'sequence': ",".join(map(str, e['sequence'])),
        'canonical_permutation': ",".join(map(str, e['canonical_permutation'])),
        'initial_ideal': e['initial_ideal_text'],
        'gb': joined(e['gb_text']),
        'cone': joined(e['cone_text']),
    } for e in entries])


def checks_frame(results: List[dict]) -> pd.DataFrame:
    return pd.DataFrame(results, columns=['name', 'passed', 'detail'])
