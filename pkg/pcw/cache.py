"""
SQLite verdict cache for pcw
"""

import json
import logging
import sqlite3
from pathlib import Path
from typing import Any, Dict, Final, Optional

LOGGER: Final = logging.getLogger(__name__)


class VerdictCache:
    """SQLite-based cache of proof search verdicts

    Entries are keyed by (calculus, variant, goal, depth); a verdict found at
    one depth says nothing about another.
    """

    def __init__(self, cache_path: str):
        self.cache_path = cache_path
        self.ensure_cache_dir()
        self.init_database()

    def ensure_cache_dir(self) -> None:
        """Ensure cache directory exists"""
        cache_dir = Path(self.cache_path).parent
        cache_dir.mkdir(parents=True, exist_ok=True)

    def init_database(self) -> None:
        """Initialize SQLite database with required tables"""
        with sqlite3.connect(self.cache_path) as conn:
            conn.execute('''
                CREATE TABLE IF NOT EXISTS verdicts (
                    calculus TEXT NOT NULL,
                    variant TEXT NOT NULL,
                    goal TEXT NOT NULL,
                    depth INTEGER NOT NULL,
                    status TEXT NOT NULL,
                    explored INTEGER,
                    result TEXT,
                    cached_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP,
                    PRIMARY KEY (calculus, variant, goal, depth)
                )
            ''')
            conn.execute('CREATE INDEX IF NOT EXISTS idx_status ON verdicts(status)')
            conn.execute('''
                CREATE TABLE IF NOT EXISTS cache_metadata (
                    key TEXT PRIMARY KEY,
                    value TEXT,
                    updated_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
                )
            ''')

    def get(self, calculus: str, variant: str, goal: str, depth: int) -> Optional[Dict[str, Any]]:
        """Cached verdict, or None"""
        with sqlite3.connect(self.cache_path) as conn:
            conn.row_factory = sqlite3.Row
            row = conn.execute(
                'SELECT * FROM verdicts WHERE calculus = ? AND variant = ? AND goal = ? '
                'AND depth = ?',
                (calculus, variant, goal, depth)
            ).fetchone()
        if row is None:
            return None
        LOGGER.debug("cache hit: %s %s depth %d", calculus, goal, depth)
        self._bump('hits')
        return {
            'status': row['status'],
            'explored': row['explored'],
            'result': json.loads(row['result']) if row['result'] else None,
        }

    def put(self, calculus: str, variant: str, goal: str, depth: int, status: str,
            explored: int, result: Optional[Dict[str, Any]] = None) -> None:
        """Store a verdict"""
        with sqlite3.connect(self.cache_path) as conn:
            conn.execute('''
                INSERT OR REPLACE INTO verdicts
                (calculus, variant, goal, depth, status, explored, result)
                VALUES (?, ?, ?, ?, ?, ?, ?)
            ''', (calculus, variant, goal, depth, status, explored,
                  json.dumps(result, sort_keys=True) if result is not None else None))

    def stats(self) -> Dict[str, Any]:
        """Entry counts per status plus hit count"""
        with sqlite3.connect(self.cache_path) as conn:
            rows = conn.execute(
                'SELECT status, COUNT(*) FROM verdicts GROUP BY status ORDER BY status'
            ).fetchall()
        counts = {status: n for status, n in rows}
        return {
            'cache_file': self.cache_path,
            'entries': sum(counts.values()),
            'by_status': counts,
            'hits': int(self.get_metadata('hits') or 0),
        }

    def clear(self) -> None:
        """Clear all cached verdicts"""
        with sqlite3.connect(self.cache_path) as conn:
            conn.execute('DELETE FROM verdicts')
            conn.execute('DELETE FROM cache_metadata')

    def set_metadata(self, key: str, value: str) -> None:
        with sqlite3.connect(self.cache_path) as conn:
            conn.execute('''
                INSERT OR REPLACE INTO cache_metadata (key, value)
                VALUES (?, ?)
            ''', (key, value))

    def get_metadata(self, key: str) -> Optional[str]:
        with sqlite3.connect(self.cache_path) as conn:
            row = conn.execute(
                'SELECT value FROM cache_metadata WHERE key = ?',
                (key,)
            ).fetchone()
            return row[0] if row else None

    def _bump(self, key: str) -> None:
        self.set_metadata(key, str(int(self.get_metadata(key) or 0) + 1))
