"""Transcript parsing: normalization plus bounded fuzzy matching, tuned so
that recognition misspellings can delay a food order but never a stop."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .commands import Command, EmergencyStop, Serve, Stop

DEFAULT_MAX_EDIT = 2
SAFETY_MAX_EDIT = 1  # hard cap for "stop"/"emergency", regardless of config

SAFETY_TOKENS = {
    "stop": ("stop",),
    "emergency": ("emergency", "emergency stop"),
}

_PUNCT = re.compile(r"[^\w\s]")
_WS = re.compile(r"\s+")


@dataclass
class Lexicon:
    """Canonical command token -> synonym list (foods plus safety words)."""

    foods: dict[str, list[str]] = field(default_factory=dict)

    def __post_init__(self):
        seen = set()
        for token, syns in self.foods.items():
            for s in (token, *syns):
                n = normalize(s)
                if not n:
                    raise ValueError(f"empty lexicon entry under {token!r}")
                if n in seen:
                    raise ValueError(f"duplicate lexicon entry: {n!r}")
                seen.add(n)

    @classmethod
    def from_menu(cls, menu) -> "Lexicon":
        return cls({slot.name: list(slot.synonyms) for slot in menu.slots.values()})


@dataclass(frozen=True)
class NoMatch:
    reason: str  # "empty" | "no_match" | "ambiguous"
    best_candidate: str | None = None
    distance: int | None = None


def normalize(text: str) -> str:
    return _WS.sub(" ", _PUNCT.sub(" ", text.lower())).strip()


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance, iterative two-row DP."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def parse(text: str, lex: Lexicon, max_edit: int = DEFAULT_MAX_EDIT) -> Command | NoMatch:
    """Resolve a transcript to a command.

    Safety first: any input within edit distance 1 of a safety word parses
    as that safety command and no food is ever accepted in that case. Food
    matches accept the unique nearest token within max_edit; ties between
    different foods are rejected as ambiguous.
    """
    if max_edit < 0:
        raise ValueError(f"max_edit must be >= 0, got {max_edit}")
    norm = normalize(text)
    if not norm:
        return NoMatch("empty")

    safety_cmds = {"stop": Stop(), "emergency": EmergencyStop()}
    best_safety, d_safety = None, None
    for token in sorted(SAFETY_TOKENS):
        for syn in SAFETY_TOKENS[token]:
            d = levenshtein(norm, syn)
            if d_safety is None or d < d_safety:
                best_safety, d_safety = token, d
    if d_safety <= min(SAFETY_MAX_EDIT, 1):
        return safety_cmds[best_safety]

    best_food, d_food, n_at_best = None, None, 0
    for token in sorted(lex.foods):
        d = min(
            levenshtein(norm, normalize(s))
            for s in (token, *lex.foods[token])
        )
        if d_food is None or d < d_food:
            best_food, d_food, n_at_best = token, d, 1
        elif d == d_food:
            n_at_best += 1
    if best_food is None:
        return NoMatch("no_match")
    if d_food == 0 and n_at_best == 1:
        return Serve(best_food)
    if d_food <= max_edit:
        if n_at_best > 1:
            return NoMatch("ambiguous", best_food, d_food)
        return Serve(best_food)
    return NoMatch("no_match", best_food, d_food)
