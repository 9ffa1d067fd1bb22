"""Generate-validate qualitative question answering."""

from pathlib import Path

from . import _core
from ._core import QualeError, Qrkb, canonical_logical_form, load_corpus, properties

__all__ = ["Engine", "QualeError", "Qrkb", "canonical_logical_form", "load_corpus", "properties"]

_PACKAGED_DATA = Path(__file__).with_name("data")


class Engine(_core.Engine):
    """Templates, knowledge base and chunker loaded from a data directory.

    Scorers are "gold", "lexical" or a callable (premise, hypothesis) -> float.
    """

    def __init__(self, data_dir=None):
        if data_dir is None and _PACKAGED_DATA.is_dir():
            data_dir = str(_PACKAGED_DATA)
        super().__init__(None if data_dir is None else str(data_dir))
