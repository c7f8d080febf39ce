"""In-memory memo table for conditioned counts, and problem hashing"""
import hashlib
import json
import threading
import time
from typing import Any, Dict, Optional

from ..models import Problem
from ..textio.formatter import format_problem


class MemoryCache:
    """Thread-safe in-memory cache with optional TTL and a size cap.

    When full, the oldest entries are evicted first.
    """

    def __init__(self, max_entries: int = 200000, ttl: Optional[int] = None):
        self.cache: Dict[str, tuple[Any, float]] = {}
        self.max_entries = max_entries
        self.ttl = ttl
        self.hits = 0
        self.misses = 0
        self._lock = threading.Lock()

    def _get_cache_key(self, data: Any) -> str:
        """Generate cache key from data"""
        if isinstance(data, str):
            content = data
        else:
            content = json.dumps(data, sort_keys=True)
        return hashlib.md5(content.encode()).hexdigest()

    def _expired(self, timestamp: float) -> bool:
        return self.ttl is not None and time.time() - timestamp >= self.ttl

    def get(self, key: Any) -> Optional[Any]:
        cache_key = self._get_cache_key(key)
        with self._lock:
            entry = self.cache.get(cache_key)
            if entry is not None:
                value, timestamp = entry
                if not self._expired(timestamp):
                    self.hits += 1
                    return value
                del self.cache[cache_key]
            self.misses += 1
        return None

    def set(self, key: Any, value: Any) -> None:
        cache_key = self._get_cache_key(key)
        with self._lock:
            if cache_key not in self.cache and len(self.cache) >= self.max_entries:
                # dicts keep insertion order
                del self.cache[next(iter(self.cache))]
            self.cache[cache_key] = (value, time.time())

    def clear(self) -> None:
        with self._lock:
            self.cache.clear()
            self.hits = self.misses = 0

    def clear_expired(self) -> int:
        """Clear expired entries"""
        with self._lock:
            expired_keys = [k for k, (_, ts) in self.cache.items() if self._expired(ts)]
            for key in expired_keys:
                del self.cache[key]
        return len(expired_keys)

    def stats(self) -> Dict[str, int]:
        with self._lock:
            return {"entries": len(self.cache), "hits": self.hits, "misses": self.misses}


def problem_hash(problem: Problem) -> str:
    """md5 of the canonical text form of a problem"""
    return hashlib.md5(format_problem(problem).encode()).hexdigest()
