from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .syntax import render_word

Word = tuple[int, ...]


class BudgetExceeded(RuntimeError):
    """A search hit its configured resource limit; no verdict was reached."""


@dataclass(frozen=True)
class Answer:
    nonempty: bool
    witness: Optional[Word] = None
    algo: str = ""
    form: object = None  # CanonicalForm equal to the whole intersection, when the route builds one

    def __post_init__(self):
        if self.nonempty and self.witness is None:
            raise ValueError("a nonempty answer needs a witness")

    @property
    def empty(self) -> bool:
        return not self.nonempty

    @property
    def verdict(self) -> str:
        return "NONEMPTY" if self.nonempty else "EMPTY"

    def __str__(self) -> str:
        if self.nonempty:
            return f"NONEMPTY witness={render_word(self.witness)} algo={self.algo}"
        return f"EMPTY algo={self.algo}"


def empty(algo: str) -> Answer:
    return Answer(False, None, algo)


def found(witness, algo: str, form=None) -> Answer:
    return Answer(True, tuple(witness), algo, form)
