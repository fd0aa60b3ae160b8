"""Resource caps shared by every module.

Defaults can be overridden per process with ``LAWFORGE_CAPS``, a comma
separated list such as ``"pairs=2000,enumeration=500000"``.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields, replace

ENV_VAR = "LAWFORGE_CAPS"


class CapExceeded(RuntimeError):
    """A configured size or budget cap would be exceeded."""


@dataclass(frozen=True)
class Caps:
    field_order: int = 2**20
    enumeration: int = 2_000_000
    closure: int = 2_000_000
    # |G| bound for exhaustive |G|^2 pair evaluation.
    pairs: int = 1500
    # |G| bound for building a dense Cayley table.
    table: int = 2500
    word_length: int = 10_000_000
    element_order_iterations: int = 1_000_000

    def to_dict(self) -> dict:
        return asdict(self)


def parse_caps(text: str, base: Caps | None = None) -> Caps:
    base = base or Caps()
    names = {f.name for f in fields(Caps)}
    updates = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in names:
            raise ValueError(f"bad caps entry {item!r}; known caps: {sorted(names)}")
        updates[key] = int(value)
    return replace(base, **updates)


_current: Caps | None = None


def get_caps() -> Caps:
    global _current
    if _current is None:
        env = os.environ.get(ENV_VAR)
        _current = parse_caps(env) if env else Caps()
    return _current


def set_caps(caps: Caps | None) -> None:
    """Install process-wide caps; ``None`` re-reads the environment next time."""
    global _current
    _current = caps
