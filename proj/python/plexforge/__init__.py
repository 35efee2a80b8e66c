"""Latin squares, k-plexes and nonexistence certificates.

Squares and entry sets are native objects; everything structured comes back
as plain dicts with the same fields the command-line tool prints.
"""

import json

from . import _core
from ._core import (
    EntrySet,
    LatinSquare,
    PlexforgeError,
    build_cyclic,
    canonical_key,
    conjugates,
    delta,
    delta_signature,
    find_order6_example,
    is_plex,
    random_square,
    relabel,
)

__all__ = [
    "EntrySet",
    "LatinSquare",
    "PlexforgeError",
    "build_cyclic",
    "build_plex",
    "build_square",
    "canonical_key",
    "certify",
    "classify",
    "conjugates",
    "count_plexes",
    "delta",
    "delta_signature",
    "enumerate_completions",
    "find_order6_example",
    "find_plex",
    "is_plex",
    "log_bound",
    "random_square",
    "relabel",
    "run_criterion",
    "verify",
]


def build_square(variant, *, n=0, k=0, m=0):
    """Square for one of: kk2 (k, m), mod4 (n), mod10of12 (m), mod2of12 (m), special (n)."""
    return _core.build_square(variant, n, k, m)


def build_plex(variant, *, n=0, k=0, m=0):
    """The verified plex that goes with build_square(variant, ...)."""
    return _core.build_plex(variant, n, k, m)


def _search(square, k, count, node_limit, solution_limit, seed, jobs, delta_pruning):
    out = json.loads(
        _core.search_json(square, k, count, node_limit, solution_limit, seed, jobs, delta_pruning)
    )
    if "witness" in out:
        out["witness"] = EntrySet(square.order, [tuple(map(int, w.split())) for w in out["witness"]])
    return out


def find_plex(square, k=1, *, node_limit=None, seed=0, jobs=1, delta_pruning=False):
    return _search(square, k, False, node_limit, None, seed, jobs, delta_pruning)


def count_plexes(square, k=1, *, node_limit=None, solution_limit=None, seed=0, jobs=1, delta_pruning=False):
    return _search(square, k, True, node_limit, solution_limit, seed, jobs, delta_pruning)


def enumerate_completions(rows, order=None):
    """All completions of the latin rectangle given by `rows`."""
    if order is None:
        order = len(rows[0])
    return _core.enumerate_completions(order, [list(r) for r in rows])


def certify(square, *, method="matching", k=1, m=1, r=0, tighten=True):
    return json.loads(_core.certify_json(square, method, k, m, r, tighten))


def verify(certificate, square):
    return _core.verify_json(json.dumps(certificate), square)


def classify(squares):
    return json.loads(_core.classify_json(list(squares)))


def log_bound(formula, *, n=0, k=0, a=0, m=0, mode="quadratic"):
    """extension (n, k), stepcount (a, m) or species-floor (n, mode)."""
    return json.loads(_core.bound_json(formula, n, k, a, m, mode))


def run_criterion(criterion):
    passed, name, detail = _core.run_criterion(criterion)
    return {"id": criterion, "passed": passed, "name": name, "detail": detail}
