import json
import os
import tempfile
import unittest
from unittest.mock import Mock, patch

from src.core import catalog
from src.core.cache_manager import CacheManager, MemoryMonitor


class TestCacheManager(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.cache = CacheManager(os.path.join(self.tmp.name, 'cache'))
        self.spec = catalog.family_spec('cyclic', [3])
        self.table = {'classes': [], 'characters': []}

    def tearDown(self):
        self.tmp.cleanup()

    def test_creates_tables_directory(self):
        self.assertTrue(os.path.isdir(os.path.join(self.tmp.name, 'cache', 'tables')))

    def test_save_then_load(self):
        self.assertIsNone(self.cache.load_table(self.spec))
        self.assertTrue(self.cache.save_table(self.spec, self.table))
        self.assertEqual(self.cache.load_table(self.spec), self.table)

    def test_key_is_stable(self):
        again = catalog.family_spec('cyclic', [3])
        self.assertEqual(CacheManager.key_for(self.spec), CacheManager.key_for(again))
        self.assertEqual(len(CacheManager.key_for(self.spec)), 64)
        other = catalog.family_spec('cyclic', [4])
        self.assertNotEqual(CacheManager.key_for(self.spec), CacheManager.key_for(other))

    def test_entry_for_another_spec_is_a_miss(self):
        other = catalog.family_spec('cyclic', [4])
        with open(self.cache.table_path(self.spec), 'w', encoding='utf-8') as f:
            json.dump({'spec': other.canonical_json(), 'table': self.table}, f)
        self.assertIsNone(self.cache.load_table(self.spec))

    def test_unreadable_entry_is_a_miss(self):
        with open(self.cache.table_path(self.spec), 'w', encoding='utf-8') as f:
            f.write('{"spec": ')
        self.assertIsNone(self.cache.load_table(self.spec))

    def test_disabled_cache(self):
        cache = CacheManager(os.path.join(self.tmp.name, 'off'), enabled=False)
        self.assertFalse(cache.save_table(self.spec, self.table))
        self.assertIsNone(cache.load_table(self.spec))
        self.assertFalse(os.path.exists(os.path.join(self.tmp.name, 'off')))

    def test_unwritable_directory_disables_cache(self):
        blocker = os.path.join(self.tmp.name, 'file')
        with open(blocker, 'w') as f:
            f.write('x')
        cache = CacheManager(os.path.join(blocker, 'cache'))
        self.assertFalse(cache.enabled)

    def test_list_and_clear(self):
        self.assertEqual(self.cache.list_entries(), [])
        self.cache.save_table(self.spec, self.table)
        self.cache.save_table(catalog.family_spec('cyclic', [5]), self.table)
        entries = self.cache.list_entries()
        self.assertEqual(len(entries), 2)
        self.assertIn(CacheManager.key_for(self.spec), {e['key'] for e in entries})
        self.assertEqual(self.cache.clear(), 2)
        self.assertEqual(self.cache.list_entries(), [])


class TestMemoryMonitor(unittest.TestCase):
    @patch('psutil.Process')
    def test_threshold(self, mock_process):
        mock_process.return_value.memory_info.return_value = Mock(rss=300 * 1024 * 1024)
        monitor = MemoryMonitor(threshold_mb=256)
        with self.assertLogs('src.core.cache_manager', level='WARNING'):
            self.assertTrue(monitor.check_memory_usage())
        self.assertAlmostEqual(monitor.snapshot(), 300.0)

    @patch('psutil.Process')
    def test_below_threshold(self, mock_process):
        mock_process.return_value.memory_info.return_value = Mock(rss=10 * 1024 * 1024)
        self.assertFalse(MemoryMonitor(threshold_mb=256).check_memory_usage())

    @patch('gc.collect')
    def test_cleanup_collects(self, mock_collect):
        MemoryMonitor().cleanup()
        mock_collect.assert_called_once()


if __name__ == '__main__':
    unittest.main()
