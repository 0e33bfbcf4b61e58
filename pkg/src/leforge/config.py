"""Run-wide settings: resource caps and the seed for generic choices.

Settings live in a context variable so library calls, tests and the CLI can
override them locally::

    with settings(seed=7, k_max=20):
        local_colength_origin(I)
"""

from __future__ import annotations

import contextlib
import contextvars
import os
import random
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Settings:
    seed: int = 0
    k_max: int = 40
    max_degree: int = 64
    max_basis: int = 20000
    retry_budget: int = 8


def _initial() -> Settings:
    env = os.environ.get("LEFORGE_SEED")
    return Settings(seed=int(env)) if env not in (None, "") else Settings()


_current: contextvars.ContextVar[Settings] = contextvars.ContextVar("leforge_settings", default=_initial())


def current() -> Settings:
    return _current.get()


@contextlib.contextmanager
def settings(**overrides):
    """Temporarily replace fields of the active :class:`Settings`."""
    token = _current.set(replace(_current.get(), **overrides))
    try:
        yield _current.get()
    finally:
        _current.reset(token)


def rng(tag: str) -> random.Random:
    """A generator seeded by the active seed and a purpose tag.

    String seeding goes through SHA-512 in CPython, so streams are stable
    across processes regardless of hash randomisation.
    """
    return random.Random(f"leforge:{current().seed}:{tag}")
