import json
import os
import tempfile
from datetime import datetime
from typing import Dict, Optional

from constants import default_cache_path, engine_version
from utils.logger import logger


class ResultsCache:
	"""
	JSON file of finished searches, keyed by graph descriptor and k.

	Layout: {"engine_version": ..., "entries": {descriptor: {k: entry}}}.
	A file from another engine version is read as empty.
	"""
	def __init__(self, path: Optional[str] = None):
		self.path = path or default_cache_path
		self._data = self._load()

	def _load(self) -> Dict:
		empty = {"engine_version": engine_version, "entries": {}}
		if not os.path.exists(self.path):
			return empty
		try:
			with open(self.path) as f:
				data = json.load(f)
		except (OSError, json.JSONDecodeError) as e:
			logger.warning(f"ignoring unreadable results cache {self.path}: {e}")
			return empty
		if data.get("engine_version") != engine_version:
			logger.info(f"results cache {self.path} is from engine {data.get('engine_version')}, starting fresh")
			return empty
		return data

	def _save(self):
		directory = os.path.dirname(os.path.abspath(self.path))
		fd, tmp_path = tempfile.mkstemp(prefix=".rubbling-", suffix=".json", dir=directory)
		try:
			with os.fdopen(fd, "w") as f:
				json.dump(self._data, f, indent=2, sort_keys=True)
			os.replace(tmp_path, self.path)
		except Exception:
			if os.path.exists(tmp_path):
				os.remove(tmp_path)
			raise

	def insert(self, descriptor: str, k: int, entry: Dict, provenance: str = "derived"):
		record = dict(entry)
		record["provenance"] = provenance
		record["created_at"] = datetime.utcnow().isoformat()
		self._data["entries"].setdefault(descriptor, {})[str(k)] = record
		self._save()

	def get(self, descriptor: str, k: int) -> Optional[Dict]:
		return self._data["entries"].get(descriptor, {}).get(str(k))

	def clear(self):
		self._data = {"engine_version": engine_version, "entries": {}}
		self._save()

	def __len__(self) -> int:
		return sum(len(by_k) for by_k in self._data["entries"].values())

	# search-facing helpers
	def get_result(self, graph, k: int) -> Optional[Dict]:
		return self.get(graph.descriptor(), k)

	def put_result(self, graph, k: int, result: Dict):
		self.insert(graph.descriptor(), k, result)
