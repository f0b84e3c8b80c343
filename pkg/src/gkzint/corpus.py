"""Built-in example configurations."""
import warnings

from .config import validate_configuration

_CORPUS = {
    "E1": (1, [(1,), (1,)]),
    "E2": (2, [(1, 0), (0, 1), (2, -1)]),
    "E3": (2, [(1, 0), (0, 1)]),
    "E4": (1, [(1,), (1,), (1,)]),
    "E5": (2, [(1, 0), (0, 1), (2, -1), (-1, 2)]),
}


def corpus_names():
    return list(_CORPUS)


def corpus_config(name):
    n, vectors = _CORPUS[name]
    with warnings.catch_warnings():
        # E1 and E4 repeat vectors on purpose
        warnings.simplefilter("ignore")
        return validate_configuration(n, vectors, name=name)


def corpus():
    """E1..E5 as validated configurations."""
    return [corpus_config(name) for name in _CORPUS]
