"""Discrete logarithms in small-characteristic finite fields.

Target-field elements are JSON strings (lists of coefficient encodings);
large integers are returned as Python ints.
"""

import json

from . import _qpdlog
from ._qpdlog import BudgetExhausted, Error, InvalidInput, Setup, ValidationError

__all__ = [
    "Setup",
    "descend",
    "verify_relation",
    "solve",
    "membership",
    "bluher_image",
    "echelon",
    "solve_final",
    "Error",
    "InvalidInput",
    "BudgetExhausted",
    "ValidationError",
]


def descend(setup, z, seed=1, e=0, proof=False):
    out = json.loads(_qpdlog.descend(setup, z, seed, e, proof))
    out["relation"] = {int(j): int(v) for j, v in out["relation"].items()}
    return out


def verify_relation(setup, z, relation):
    text = json.dumps({str(j): str(v) for j, v in relation.items()})
    return _qpdlog.verify_relation(setup, z, text)


def _report(text):
    rep = json.loads(text)
    if rep["x"] is not None:
        rep["x"] = int(rep["x"])
    return rep


def solve(setup, g, h, seed=1, threads=0, max_retries=8):
    return _report(_qpdlog.solve(setup, g, h, seed, threads, max_retries, 0))


def membership(setup, g, h, rounds, seed=1, threads=0):
    return _report(_qpdlog.solve(setup, g, h, seed, threads, 0, rounds))


def bluher_image(p, k, i=1, level=1):
    return json.loads(_qpdlog.bluher_image(p, i, k, level))


def echelon(rows, N, carried=()):
    return json.loads(_qpdlog.echelon([list(r) for r in rows], str(N), [list(c) for c in carried]))


def solve_final(alpha, beta, N):
    out = json.loads(_qpdlog.solve_final(str(alpha), str(beta), str(N)))
    return None if out["x"] is None else int(out["x"])
