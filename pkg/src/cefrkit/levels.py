"""CEFR proficiency levels, rated dimensions, and language codes."""

from __future__ import annotations

import enum


class CEFRLevel(enum.IntEnum):
    """The six CEFR levels, ordered from beginner to advanced."""

    A1 = 0
    A2 = 1
    B1 = 2
    B2 = 3
    C1 = 4
    C2 = 5

    def __str__(self):
        return self.name

    @classmethod
    def parse(cls, text: str) -> "CEFRLevel":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValueError(f"not a CEFR level: {text!r}") from None


class Dimension(enum.Enum):
    """The seven rated proficiency dimensions."""

    overall = "overall"
    grammatical_accuracy = "grammar"
    orthographic_control = "orthography"
    vocabulary_range = "vocab_range"
    vocabulary_control = "vocab_control"
    coherence_cohesion = "coherence"
    sociolinguistic_appropriateness = "sociolinguistic"

    def __str__(self):
        return self.name

    @property
    def column(self) -> str:
        """Header name of this dimension in the label table."""
        return self.value

    @classmethod
    def parse(cls, text: str) -> "Dimension":
        text = text.strip()
        for member in cls:
            if text == member.name or text == member.value:
                return member
        raise ValueError(f"not a proficiency dimension: {text!r}")


class Language(enum.Enum):
    """Languages covered by the corpus."""

    de = "de"
    it = "it"
    cz = "cz"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, text: str) -> "Language":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown language code: {text!r}") from None


DIMENSIONS = tuple(Dimension)
LEVELS = tuple(CEFRLevel)
LANGUAGES = tuple(Language)
