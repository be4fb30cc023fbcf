from typing import Any, Dict, List, Optional
import gc
import hashlib
import json
import logging
import os
from datetime import datetime

import psutil

from .config import PERFORMANCE_CONFIG
from .groups import GroupSpec
from ..utils.jsonio import write_json


class MemoryMonitor:
    def __init__(self, threshold_mb: int = PERFORMANCE_CONFIG['memory_threshold']):
        self.threshold_bytes = threshold_mb * 1024 * 1024
        self.logger = logging.getLogger(__name__)

    def snapshot(self) -> float:
        """Resident memory of this process in MB."""
        return psutil.Process().memory_info().rss / 1024 / 1024

    def check_memory_usage(self) -> bool:
        rss = psutil.Process().memory_info().rss
        if rss > self.threshold_bytes:
            self.logger.warning(f"Memory usage exceeded threshold: {rss / 1024 / 1024:.2f}MB")
            return True
        return False

    def cleanup(self) -> None:
        gc.collect()


class CacheManager:
    """Character-table cache keyed by the SHA-256 of the canonical spec JSON."""

    def __init__(self, cache_dir: str, enabled: bool = True):
        self.cache_dir = str(cache_dir)
        self.enabled = enabled
        self.memory_monitor = MemoryMonitor()
        self.logger = logging.getLogger(__name__)
        if enabled:
            self.ensure_directories()

    def ensure_directories(self) -> None:
        try:
            os.makedirs(os.path.join(self.cache_dir, 'tables'), exist_ok=True)
        except OSError as e:
            self.logger.warning(f"Cache disabled, cannot create {self.cache_dir}: {e}")
            self.enabled = False

    @staticmethod
    def key_for(spec: GroupSpec) -> str:
        return hashlib.sha256(spec.canonical_json().encode('utf-8')).hexdigest()

    def table_path(self, spec: GroupSpec) -> str:
        return os.path.join(self.cache_dir, 'tables', f'{self.key_for(spec)}.json')

    def load_table(self, spec: GroupSpec) -> Optional[Dict[str, Any]]:
        """Cached table JSON, or None on a miss or an unreadable entry."""
        if not self.enabled:
            return None
        path = self.table_path(spec)
        if not os.path.exists(path):
            return None
        try:
            with open(path, 'r', encoding='utf-8') as f:
                entry = json.load(f)
            if entry.get('spec') != spec.canonical_json():
                self.logger.warning(f"Cache entry {path} belongs to another spec, ignoring it")
                return None
            self.logger.debug(f"Cache hit for {spec.display_name}")
            return entry['table']
        except Exception as e:
            self.logger.warning(f"Failed to read cache entry {path}: {str(e)}")
            return None

    def save_table(self, spec: GroupSpec, table_json: Dict[str, Any]) -> bool:
        if not self.enabled:
            return False
        try:
            if self.memory_monitor.check_memory_usage():
                self.memory_monitor.cleanup()
            write_json(self.table_path(spec), {
                'spec': spec.canonical_json(),
                'table': table_json,
            })
            return True
        except Exception as e:
            self.logger.warning(f"Failed to save cache entry: {str(e)}")
            return False

    def list_entries(self, max_count: int = 50) -> List[Dict[str, Any]]:
        """Cached tables, newest first."""
        tables_dir = os.path.join(self.cache_dir, 'tables')
        if not os.path.isdir(tables_dir):
            return []
        entries = []
        for name in os.listdir(tables_dir):
            if name.endswith('.json'):
                full_path = os.path.join(tables_dir, name)
                entries.append({
                    'path': full_path,
                    'key': name[:-len('.json')],
                    'date': datetime.fromtimestamp(os.path.getmtime(full_path)),
                })
        entries.sort(key=lambda x: x['date'], reverse=True)
        return entries[:max_count]

    def clear(self) -> int:
        removed = 0
        for entry in self.list_entries(max_count=10 ** 9):
            try:
                os.remove(entry['path'])
                removed += 1
            except OSError as e:
                self.logger.warning(f"Failed to remove {entry['path']}: {e}")
        return removed
