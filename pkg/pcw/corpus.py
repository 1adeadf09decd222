"""
Golden proof store for pcw
"""

import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, Final, List, Optional

from .errors import CorpusError
from .kernel import Calculus, Proof, decode_proof, encode_proof

LOGGER: Final = logging.getLogger(__name__)


@dataclass
class Entry:
    """One golden file: the proof and the calculus it lives in"""
    name: str
    calculus: str
    variant: Optional[str]
    proof: Proof

    @property
    def calc_id(self) -> str:
        if self.variant and self.variant != 'core':
            return f"{self.calculus}+{self.variant}"
        return self.calculus


def read_document(path: str) -> Dict[str, Any]:
    """Load a proof document; a bare proof node is accepted too"""
    try:
        with open(path, 'r') as f:
            data = json.load(f)
    except OSError as e:
        raise CorpusError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise CorpusError(f"{path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise CorpusError(f"{path}: expected a JSON object")
    if 'proof' not in data:
        data = {'proof': data}
    return data


class ProofStore:
    """Read and write golden proof files in a corpus directory

    Writes go through a temporary file and a rename, so a reader never sees
    half a document.
    """

    def __init__(self, corpus_dir: str, resolve: Callable[[str, Optional[str]], Calculus]):
        self.corpus_dir = corpus_dir
        self.resolve = resolve
        self._dirty: Dict[str, Entry] = {}

    def path_for(self, name: str) -> str:
        if not name.endswith('.json'):
            name = f"{name}.json"
        return os.path.join(self.corpus_dir, name)

    def list(self) -> List[str]:
        """Names of the proofs in the corpus, sorted"""
        if not os.path.isdir(self.corpus_dir):
            return []
        return sorted(p.stem for p in Path(self.corpus_dir).glob('*.json'))

    def load(self, name: str) -> Entry:
        path = self.path_for(name) if not os.path.exists(name) else name
        data = read_document(path)
        calculus = data.get('calculus')
        if not isinstance(calculus, str):
            raise CorpusError(f"{path}: missing 'calculus'")
        variant = data.get('variant')
        calc = self.resolve(calculus, variant)
        proof = decode_proof(data['proof'], calc)
        LOGGER.debug("loaded %s (%s)", path, calc.id)
        return Entry(Path(path).stem, calculus, variant, proof)

    def entries(self) -> List[Entry]:
        return [self.load(name) for name in self.list()]

    def save(self, entry: Entry) -> str:
        """Write an entry atomically; returns the path written"""
        os.makedirs(self.corpus_dir, exist_ok=True)
        path = self.path_for(entry.name)
        data: Dict[str, Any] = {'calculus': entry.calculus, 'proof': encode_proof(entry.proof)}
        if entry.variant:
            data['variant'] = entry.variant
        temp_file = f"{path}.tmp"
        try:
            with open(temp_file, 'w') as f:
                json.dump(data, f, indent=2, sort_keys=True)
                f.write('\n')
            os.rename(temp_file, path)
        except OSError as e:
            raise CorpusError(f"cannot write {path}: {e}") from e
        LOGGER.debug("saved %s", path)
        return path

    def stage(self, entry: Entry) -> None:
        """Queue an entry; staged entries are written when the store closes"""
        self._dirty[entry.name] = entry

    def flush(self) -> List[str]:
        written = [self.save(entry) for entry in self._dirty.values()]
        self._dirty.clear()
        return written

    def __enter__(self) -> 'ProofStore':
        return self

    def __exit__(self, exc_type: Any, exc_val: Any, exc_tb: Any) -> None:
        if exc_type is None:
            self.flush()
