"""Interaction calculus engine: reduction, predecessors and reversibility."""

import json

from ._icalc import (
    IcalcError,
    System,
    arity_characterization,
    builtin_names,
    canonical_key,
    congruent,
    random_config,
    reduces_in_one_step,
)
from . import _icalc

__all__ = [
    "IcalcError",
    "System",
    "arity_characterization",
    "builtin_names",
    "canonical_key",
    "check",
    "congruent",
    "diamond",
    "expand",
    "random_config",
    "reduce",
    "reduces_in_one_step",
    "search",
    "witness",
]


def _system(s):
    return s if isinstance(s, System) else System(s)


def check(system):
    return json.loads(_icalc.check_json(_system(system)))


def reduce(system, config, strategy="interaction-first", fuel=10000):
    return json.loads(_icalc.reduce_json(_system(system), config, strategy, fuel))


def expand(system, config):
    return json.loads(_icalc.expand_json(_system(system), config))


def diamond(system, config, mode="one", depth=2):
    return json.loads(_icalc.diamond_json(_system(system), config, mode, depth))


def witness(system):
    return json.loads(_icalc.witness_json(_system(system)))["witness"]


def search(system, samples=100, size=4, depth=2, seed=0):
    return json.loads(_icalc.search_json(_system(system), samples, size, depth, seed))
