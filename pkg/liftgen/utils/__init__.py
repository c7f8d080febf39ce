from .cache import MemoryCache, problem_hash

__all__ = ['MemoryCache', 'problem_hash']
