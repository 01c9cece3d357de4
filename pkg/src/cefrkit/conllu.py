"""Reading and writing the CoNLL-U token format."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


class ConlluError(ValueError):
    """Raised for malformed CoNLL-U input; carries the offending line number."""

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class Token:
    """One syntactic word: surface form, UPOS tag, head index, relation."""

    form: str
    upos: str
    head: int
    deprel: str


Sentence = list[Token]

_NUM_COLUMNS = 10


def parse_conllu(text: str) -> list[Sentence]:
    """Parse CoNLL-U text into sentences of Tokens.

    Multiword-range lines ("1-2") and empty-node lines ("1.1") are skipped;
    only FORM, UPOS, HEAD and DEPREL are kept.
    """
    sentences: list[Sentence] = []
    current: Sentence = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.rstrip("\n")
        if not line.strip():
            if current:
                sentences.append(current)
                current = []
            continue
        if line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != _NUM_COLUMNS:
            raise ConlluError(
                f"expected {_NUM_COLUMNS} tab-separated columns, got {len(fields)}",
                line_no,
            )
        token_id = fields[0]
        if "-" in token_id or "." in token_id:
            # multiword range or empty node: not a syntactic word
            continue
        try:
            head = int(fields[6])
        except ValueError:
            raise ConlluError(f"non-integer HEAD: {fields[6]!r}", line_no) from None
        current.append(Token(form=fields[1], upos=fields[3], head=head, deprel=fields[7]))
    if current:
        sentences.append(current)
    return sentences


def serialize_conllu(sentences: Iterable[Sentence]) -> str:
    """Render sentences back to CoNLL-U; unset columns become underscores."""
    lines = []
    for sentence in sentences:
        for i, tok in enumerate(sentence, start=1):
            lines.append(
                "\t".join(
                    [str(i), tok.form, "_", tok.upos, "_", "_", str(tok.head), tok.deprel, "_", "_"]
                )
            )
        lines.append("")
    return "\n".join(lines)
