"""Question tokenization and trie-based multi-word entity extraction.

Extraction is a greedy left-to-right scan: at each token position the longest
surface form starting there wins and the scan jumps past it. This keeps
matching linear in the question length and fully determined by the network's
entity dictionary.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass

_WORD_RE = re.compile(r"\S+")
_PUNCT = string.punctuation


@dataclass(frozen=True)
class Token:
    text: str
    start: int
    end: int


@dataclass(frozen=True)
class TokenSequence:
    tokens: tuple[Token, ...]

    def texts(self) -> tuple[str, ...]:
        return tuple(t.text for t in self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, index):
        return self.tokens[index]


def tokenize(text: str) -> TokenSequence:
    """Lowercase, split on whitespace, strip edge punctuation per token.

    Tokens that strip down to nothing are dropped. Spans index into the
    original text and cover exactly the kept characters.
    """
    tokens = []
    for m in _WORD_RE.finditer(text):
        raw = m.group()
        stripped = raw.strip(_PUNCT)
        if not stripped:
            continue
        offset = raw.index(stripped[0]) if raw != stripped else 0
        start = m.start() + offset
        tokens.append(Token(stripped.lower(), start, start + len(stripped)))
    return TokenSequence(tuple(tokens))


@dataclass(frozen=True)
class EntityMatch:
    entity_id: str
    token_span: tuple[int, int]
    surface_form: str


class _TrieNode:
    __slots__ = ("children", "entity_id", "form")

    def __init__(self):
        self.children: dict[str, _TrieNode] = {}
        self.entity_id: str | None = None
        self.form: str | None = None


@dataclass(frozen=True)
class EntityMatcher:
    """Immutable token trie over entity surface forms.

    ``network_version`` records which network snapshot the matcher was built
    from so the answering pipeline can reject stale matchers.
    """

    root: _TrieNode
    forms: dict[str, str]
    network_version: int | None = None

    def lookup(self, form: str) -> str | None:
        """Entity id for an exact surface form, or None."""
        return self.forms.get(" ".join(tokenize(form).texts()))


def build_matcher(
    dictionary, network_version: int | None = None
) -> EntityMatcher:
    """Build a matcher from (surface form, entity id) pairs.

    Forms are tokenized with the question tokenizer so matching is insensitive
    to casing and edge punctuation. Entries must have at least one token.
    """
    root = _TrieNode()
    forms: dict[str, str] = {}
    for form, entity_id in dictionary:
        words = tokenize(form).texts()
        if not words:
            raise ValueError(f"dictionary form {form!r} has no tokens")
        node = root
        for word in words:
            node = node.children.setdefault(word, _TrieNode())
        node.entity_id = entity_id
        node.form = " ".join(words)
        forms[node.form] = entity_id
    return EntityMatcher(root=root, forms=forms, network_version=network_version)


def matcher_for_network(network) -> EntityMatcher:
    from .network import entity_dictionary

    return build_matcher(entity_dictionary(network), network_version=network.version)


def greedy_matches(matcher: EntityMatcher, tokens: TokenSequence) -> list[EntityMatch]:
    """Every span the greedy longest-match scan emits, in order.

    Spans never overlap and each is the longest dictionary match starting at
    its position. Entity ids may repeat; this is the diagnostic view.
    """
    words = tokens.texts()
    out: list[EntityMatch] = []
    i = 0
    n = len(words)
    while i < n:
        node = matcher.root
        best: tuple[int, str, str] | None = None
        j = i
        while j < n:
            node = node.children.get(words[j])
            if node is None:
                break
            j += 1
            if node.entity_id is not None:
                best = (j, node.entity_id, node.form)
        if best is not None:
            end, entity_id, form = best
            out.append(EntityMatch(entity_id, (i, end), form))
            i = end
        else:
            i += 1
    return out


def extract_entities(matcher: EntityMatcher, tokens: TokenSequence) -> list[EntityMatch]:
    """Greedy matches with duplicate entity ids dropped (first span kept)."""
    seen: set[str] = set()
    out = []
    for match in greedy_matches(matcher, tokens):
        if match.entity_id in seen:
            continue
        seen.add(match.entity_id)
        out.append(match)
    return out
