"""Table retrieval through the cache, single-group checks and the corpus sweep."""
import logging
import multiprocessing
import time
from concurrent.futures import Future, ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from tqdm import tqdm

from .. import __version__
from . import catalog
from .cache_manager import CacheManager, MemoryMonitor
from .catalog import CorpusEntry, corpus_entry_from_dict
from .chartab import CharacterTable, character_table, direct_product_table, verify_table
from .classifier import (StructuralClass, Verdict, classify_spec, consistency_of,
                         corollary_b_of, expected_matches, recognize_nonsolvable,
                         structural_audits, verdict_by_definition)
from .config import PERFORMANCE_CONFIG
from .errors import BudgetExceededError, GalconjError, SpecError, TableError
from .galois_orbits import (GaloisOrbits, action_law_audit, conjugation_audit,
                            definitional_cross_check, galois_orbits, orbit_invariant_audit)
from .groups import GroupSpec, realize_shared
from ..utils.jsonio import write_json

logger = logging.getLogger(__name__)


def obtain_table(spec: GroupSpec, cache: Optional[CacheManager] = None,
                 budget: Optional[int] = None) -> CharacterTable:
    """Character table from the cache, from factor tables, or computed and then cached."""
    if cache is not None:
        data = cache.load_table(spec)
        if data is not None:
            try:
                return CharacterTable.from_json(data)
            except TableError as e:
                logger.warning(f'Cached table for {spec.display_name} is unusable: {e}')
    if spec.kind == 'direct-product':
        left, right = (obtain_table(f, cache, budget) for f in spec.payload['factors'])
        table = direct_product_table(left, right)
    else:
        table = character_table(realize_shared(spec, budget))
    if cache is not None:
        cache.save_table(spec, table.to_json())
    return table


def _realizable(spec: GroupSpec) -> bool:
    order = catalog.spec_order(spec)
    return order is None or order <= PERFORMANCE_CONFIG['structure_realize_limit']


@dataclass
class CheckResult:
    """Everything `check` reports about one group."""
    name: str
    order: Optional[int]
    structural: StructuralClass
    verdict: Optional[Verdict]
    consistent: bool
    structural_only: bool
    table_passed: Optional[bool] = None
    table_failure: Optional[str] = None
    audits: List[Dict[str, Any]] = field(default_factory=list)
    corollary_b: Optional[Dict[str, Any]] = None
    note: Optional[str] = None
    table: Optional[CharacterTable] = field(default=None, repr=False)
    orbits: Optional[GaloisOrbits] = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        if not self.consistent or self.table_passed is False:
            return False
        if any(not a['passed'] for a in self.audits):
            return False
        return not (self.corollary_b and self.corollary_b['passed'] is False)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'name': self.name,
            'order': self.order,
            'structural': self.structural.to_dict(),
            'consistent': self.consistent,
            'structural_only': self.structural_only,
            'audits': self.audits,
            'passed': self.passed,
        }
        if self.verdict is not None:
            data.update({
                'gcstar': self.verdict.gcstar,
                'gc': self.verdict.gc,
                'distinct_degrees': self.verdict.distinct_degrees,
                'witness': self.verdict.witness_list(),
            })
        if self.table_passed is not None:
            data['table'] = {'passed': self.table_passed, 'failure': self.table_failure}
        if self.corollary_b is not None:
            data['corollary_b'] = self.corollary_b
        if self.note:
            data['note'] = self.note
        return data


def check_spec(spec: GroupSpec, cache: Optional[CacheManager] = None,
               name: Optional[str] = None, budget: Optional[int] = None) -> CheckResult:
    """Compute table, orbits, verdicts and structure, and cross-check them."""
    name = name or spec.display_name
    table: Optional[CharacterTable] = None
    try:
        table = obtain_table(spec, cache, budget)
    except BudgetExceededError as e:
        logger.warning(f'{name}: structural verdict only ({e})')

    verdict = None
    orbits = None
    audits = []
    table_passed = table_failure = None
    if table is not None:
        report = verify_table(table)
        table_passed, table_failure = report.passed, report.failure
        orbits = galois_orbits(table)
        verdict = verdict_by_definition(table, orbits)
        for audit in (orbit_invariant_audit(orbits), definitional_cross_check(table),
                      action_law_audit(table), conjugation_audit(orbits)):
            audits.append(audit.to_dict())

    group = realize_shared(spec, budget) if _realizable(spec) else None
    structural = classify_spec(spec, table, group, budget)
    if table is not None and orbits is not None:
        for audit in structural_audits(structural, table, orbits, group):
            audits.append(audit.to_dict())

    consistency = consistency_of(structural, verdict)
    corollary = corollary_b_of(structural, verdict)
    return CheckResult(
        name=name,
        order=table.order if table is not None else catalog.spec_order(spec),
        structural=structural,
        verdict=verdict,
        consistent=consistency.consistent,
        structural_only=consistency.structural_only,
        table_passed=table_passed,
        table_failure=table_failure,
        audits=audits,
        corollary_b=corollary.to_dict(),
        note=consistency.note,
        table=table,
        orbits=orbits,
    )


def check_catalog_entry(entry: CorpusEntry) -> CheckResult:
    fp = catalog.fingerprint(entry.catalog)
    structural = recognize_nonsolvable(order=fp.order)
    if structural is None:
        raise GalconjError(f'{entry.catalog} is not recognized by its own fingerprint')
    return CheckResult(name=entry.name, order=fp.order, structural=structural, verdict=None,
                       consistent=True, structural_only=True, note=catalog.CATALOG_ONLY_NOTE)


def _expectation_failures(entry: CorpusEntry, result: CheckResult) -> List[str]:
    failures = []
    if not expected_matches(result.structural, entry.expected_tag, entry.expected_params):
        failures.append(f'expected {entry.expected_tag}{list(entry.expected_params)}, '
                        f'got {result.structural}')
    if entry.expected_gcstar is not None:
        actual = result.verdict.gcstar if result.verdict else result.structural.positive
        if actual != entry.expected_gcstar:
            failures.append(f'expected gcstar={entry.expected_gcstar}, got {actual}')
    if entry.expected_distinct_degrees is not None and result.verdict is not None:
        if result.verdict.distinct_degrees != entry.expected_distinct_degrees:
            failures.append(f'expected distinct_degrees={entry.expected_distinct_degrees}, '
                            f'got {result.verdict.distinct_degrees}')
    return failures


def run_entry(entry_data: Dict[str, Any], cache_dir: Optional[str],
              timings: bool = False, budget: Optional[int] = None) -> Dict[str, Any]:
    """Check one corpus entry; picklable so the pool can run it in a worker process."""
    entry = corpus_entry_from_dict(entry_data)
    cache = CacheManager(cache_dir) if cache_dir else None
    start = time.perf_counter()
    try:
        if entry.error is not None:
            raise SpecError(entry.error)
        if entry.catalog_only:
            result = check_catalog_entry(entry)
        else:
            result = check_spec(entry.spec, cache, entry.name, budget)
        data = result.to_dict()
        failures = _expectation_failures(entry, result)
        data['expectation_failures'] = failures
        data['ok'] = result.passed and not failures
    except GalconjError as e:
        logger.error(f'{entry.name}: {e}')
        data = {'name': entry.name, 'error': f'{type(e).__name__}: {e}', 'ok': False}
    if timings:
        data['seconds'] = round(time.perf_counter() - start, 3)
    return data


@dataclass
class RunReport:
    version: str
    entries: List[Dict[str, Any]]
    memory_mb: Optional[float] = None

    @property
    def passed(self) -> int:
        return sum(1 for e in self.entries if e['ok'])

    @property
    def failed(self) -> int:
        return len(self.entries) - self.passed

    @property
    def exit_code(self) -> int:
        return 0 if self.failed == 0 else 1

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'version': self.version,
            'entries': self.entries,
            'summary': {
                'total': len(self.entries),
                'passed': self.passed,
                'failed': self.failed,
                'consistent': sum(1 for e in self.entries if e.get('consistent')),
                'structural_only': sum(1 for e in self.entries if e.get('structural_only')),
            },
        }
        if self.memory_mb is not None:
            data['memory_mb'] = self.memory_mb
        return data

    def write(self, path: Union[str, Path]) -> None:
        write_json(path, self.to_json())


def _collect(payload: Dict[str, Any], future: 'Future[Dict[str, Any]]') -> Dict[str, Any]:
    try:
        return future.result()
    except Exception as e:
        logger.error(f"{payload['name']}: worker failed: {e!r}")
        return {'name': payload['name'], 'error': f'{type(e).__name__}: {e}', 'ok': False}


def run_corpus(entries: Sequence[CorpusEntry], cache_dir: Optional[str] = None,
               jobs: int = 1, timings: bool = False, progress: bool = True,
               budget: Optional[int] = None) -> RunReport:
    """Check every entry, in parallel when ``jobs > 1``; entries keep their input order.

    Workers use the spawn start method. A worker that dies becomes a failed entry.
    """
    payloads = [e.to_dict() for e in entries]
    results: List[Dict[str, Any]] = []
    bar = tqdm(total=len(payloads), desc='corpus', unit='group', disable=not progress or None)
    if jobs <= 1:
        for payload in payloads:
            results.append(run_entry(payload, cache_dir, timings, budget))
            bar.update(1)
    else:
        context = multiprocessing.get_context('spawn')
        with ProcessPoolExecutor(max_workers=jobs, mp_context=context) as pool:
            futures = [pool.submit(run_entry, p, cache_dir, timings, budget) for p in payloads]
            for payload, future in zip(payloads, futures):
                results.append(_collect(payload, future))
                bar.update(1)
    bar.close()
    report = RunReport(version=__version__, entries=results)
    if timings:
        report.memory_mb = round(MemoryMonitor().snapshot(), 1)
    logger.info(f'Corpus: {report.passed} of {len(results)} entries passed')
    return report
