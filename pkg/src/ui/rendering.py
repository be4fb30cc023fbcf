"""Plain-text and CSV views of tables, orbit reports and check results."""
from pathlib import Path
from typing import Any, Dict, List, Union

import pandas as pd

from ..core.chartab import CharacterTable
from ..core.corpus_runner import CheckResult, RunReport
from ..core.galois_orbits import GaloisOrbits
from ..utils.numbers import lcm_all


def table_frame(ct: CharacterTable) -> pd.DataFrame:
    """Rows X.i, columns headed by class name over class size."""
    columns = pd.MultiIndex.from_arrays(
        [list(ct.classes.names), [str(s) for s in ct.sizes]], names=['class', 'size']
    )
    data = [[v.render(with_conductor=False) for v in row] for row in ct.values]
    index = [f'X.{i + 1}' for i in range(ct.k)]
    return pd.DataFrame(data, index=index, columns=columns)


def class_conductors(ct: CharacterTable) -> List[int]:
    return [
        lcm_all(row[c].minimize().conductor for row in ct.values) for c in range(ct.k)
    ]


def render_table(ct: CharacterTable) -> str:
    frame = table_frame(ct)
    frame.insert(0, ('degree', ''), list(ct.degrees))
    footer = '  '.join(f'{name}:{e}' for name, e in zip(ct.classes.names, class_conductors(ct)))
    return (f'Character table, order {ct.order}, {ct.k} classes\n'
            f'{frame.to_string()}\n\nconductors  {footer}\n')


def orbits_frame(go: GaloisOrbits) -> pd.DataFrame:
    records = [{
        'orbit': n,
        'rows': ' '.join(f'X.{i + 1}' for i in orbit.rows),
        'degree': orbit.degree,
        'size': orbit.size,
        'field_index': orbit.field_index,
    } for n, orbit in enumerate(go.orbits)]
    return pd.DataFrame(records, columns=['orbit', 'rows', 'degree', 'size', 'field_index'])


def render_orbits(go: GaloisOrbits) -> str:
    frame = orbits_frame(go)
    return (f'Galois orbits, order {go.table.order}, exponent {go.table.e}\n'
            f'{frame.to_string(index=False)}\n')


def _yes_no(value: Any) -> str:
    if value is None:
        return '-'
    return 'yes' if value else 'no'


def render_check(result: CheckResult) -> str:
    lines = [f'{result.name} (order {result.order})']
    lines.append(f'  structural      {result.structural}')
    if result.structural.note:
        lines.append(f'                  {result.structural.note}')
    if result.verdict is not None:
        lines.append(f'  GC*             {_yes_no(result.verdict.gcstar)}')
        lines.append(f'  GC              {_yes_no(result.verdict.gc)}')
        lines.append(f'  distinct        {_yes_no(result.verdict.distinct_degrees)}')
        for item in result.verdict.witness_list():
            rows = ', '.join(f'X.{i + 1}' for i in item['rows'])
            lines.append(f"  witness         {item['predicate']}: {rows}")
    else:
        lines.append(f'  verdict         {result.note or "not computed"}')
    if result.table_passed is not None:
        status = 'verified' if result.table_passed else f'FAILED: {result.table_failure}'
        lines.append(f'  table           {status}')
    for audit in result.audits:
        status = 'ok' if audit['passed'] else f"FAILED: {audit['failure']}"
        lines.append(f"  audit {audit['name']:<18}{status}")
    if result.corollary_b is not None:
        lines.append(f"  degree label    {result.corollary_b['label']} "
                     f"(agrees: {_yes_no(result.corollary_b['passed'])})")
    lines.append(f'  consistent      {_yes_no(result.consistent)}')
    return '\n'.join(lines) + '\n'


def corpus_frame(report: Union[RunReport, Dict[str, Any]]) -> pd.DataFrame:
    entries = report.entries if isinstance(report, RunReport) else report['entries']
    records = []
    for e in entries:
        structural = e.get('structural', {})
        params = ','.join(str(p) for p in structural.get('params', []))
        records.append({
            'name': e['name'],
            'order': e.get('order'),
            'structural': f"{structural.get('tag', '-')}({params})" if params
            else structural.get('tag', '-'),
            'gcstar': e.get('gcstar'),
            'distinct_degrees': e.get('distinct_degrees'),
            'consistent': e.get('consistent'),
            'ok': e['ok'],
            'detail': '; '.join(e.get('expectation_failures', [])) or e.get('error', '')
            or e.get('note', ''),
            **({'seconds': e['seconds']} if 'seconds' in e else {}),
        })
    return pd.DataFrame(records)


def render_corpus(report: RunReport) -> str:
    frame = corpus_frame(report)
    return (f'{frame.to_string(index=False)}\n\n'
            f'{report.passed} of {len(report.entries)} entries passed\n')


def export_csv(report: RunReport, path: Union[str, Path]) -> None:
    corpus_frame(report).to_csv(path, index=False)
