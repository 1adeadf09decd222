"""
Tests for the verdict cache
"""

import os
import tempfile

from pcw.cache import VerdictCache


def test_put_and_get():
    with tempfile.TemporaryDirectory() as tmp:
        cache = VerdictCache(os.path.join(tmp, 'nested', 'verdicts.db'))
        assert cache.get('scp', 'core', '|- p', 4) is None

        cache.put('scp', 'core', '|- p -> p', 4, 'proof', 3, {'rule': 'imp_r'})
        hit = cache.get('scp', 'core', '|- p -> p', 4)
        assert hit == {'status': 'proof', 'explored': 3, 'result': {'rule': 'imp_r'}}
        # depth is part of the key
        assert cache.get('scp', 'core', '|- p -> p', 5) is None


def test_stats_and_clear():
    with tempfile.TemporaryDirectory() as tmp:
        cache = VerdictCache(os.path.join(tmp, 'verdicts.db'))
        cache.put('scp', 'core', '|- p', 4, 'open', 2)
        cache.put('sil', 'core', '|- p', 4, 'open', 2)
        cache.put('scp', 'core', '|- p -> p', 4, 'proof', 3)
        cache.get('scp', 'core', '|- p', 4)
        cache.get('scp', 'core', '|- p', 4)

        stats = cache.stats()
        assert stats['entries'] == 3
        assert stats['by_status'] == {'open': 2, 'proof': 1}
        assert stats['hits'] == 2

        cache.clear()
        stats = cache.stats()
        assert stats['entries'] == 0
        assert stats['hits'] == 0


def test_metadata():
    with tempfile.TemporaryDirectory() as tmp:
        cache = VerdictCache(os.path.join(tmp, 'verdicts.db'))
        assert cache.get_metadata('missing') is None
        cache.set_metadata('version', '1')
        assert cache.get_metadata('version') == '1'
