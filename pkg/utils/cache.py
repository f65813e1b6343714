# ==============================================================================
# utils/cache.py - JSON cache for generators and facets
# ==============================================================================

import json
import logging
import os
import tempfile
from typing import Any, Optional

from exceptions import CacheError

logger = logging.getLogger(__name__)


class JsonCache:
    """Named JSON documents in one directory, written atomically"""

    def __init__(self, directory: str):
        self.directory = directory

    def path(self, name: str) -> str:
        return os.path.join(self.directory, name)

    def load(self, name: str) -> Optional[Any]:
        path = self.path(name)
        if not os.path.exists(path):
            logger.debug(f"Cache miss: {path}")
            return None
        try:
            with open(path, "r", encoding="utf-8") as handle:
                data = json.load(handle)
        except (OSError, ValueError) as e:
            raise CacheError(path, str(e))
        logger.debug(f"Cache hit: {path}")
        return data

    def store(self, name: str, data: Any) -> str:
        path = self.path(name)
        try:
            os.makedirs(self.directory, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
                json.dump(data, handle, sort_keys=True, indent=2)
                handle.write("\n")
            os.replace(tmp, path)
        except OSError as e:
            raise CacheError(path, str(e))
        logger.info(f"Cached {name} in {self.directory}")
        return path
