"""Parser for WordNet 3.x flat files and hypernym-graph word similarity.

Reads the standard ``index.<pos>`` / ``data.<pos>`` layout: index lines are
``lemma pos synset_cnt p_cnt [ptr_symbol...] sense_cnt tagsense_cnt
synset_offset...`` and data lines are ``synset_offset lex_filenum ss_type
w_cnt word lex_id [word lex_id...] p_cnt [pointer...] | gloss``. License
header lines start with two spaces. Only hypernym pointers (``@`` and the
instance form ``@i``) become graph edges; all other pointer types are
ignored, so partial installs (nouns only, or nouns plus verbs) load cleanly.

Word similarity is Wu-Palmer over the hypernym hierarchy:
``2 * depth(lcs) / (depth(a) + depth(b))`` with the deepest common ancestor
as the LCS and depth 1 at hierarchy roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import DanglingPointer, ParseError

VALID_SS_TYPES = frozenset("nvasr")
_HYPERNYM_SYMBOLS = frozenset({"@", "@i"})

SynsetId = tuple[str, int]


@dataclass(frozen=True)
class Synset:
    pos: str
    offset: int
    lemmas: tuple[str, ...]
    hypernyms: tuple[SynsetId, ...]

    @property
    def id(self) -> SynsetId:
        return (self.pos, self.offset)


def normalize_lemma(word: str) -> str:
    return word.strip().lower().replace(" ", "_")


def _parse_data(text: str, filename: str) -> dict[SynsetId, Synset]:
    synsets: dict[SynsetId, Synset] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.startswith("  ") or not line.strip():
            continue
        columns = line.split("|")[0].split()
        where = f"{filename}:{lineno}"
        try:
            offset = int(columns[0])
            ss_type = columns[2]
            if ss_type not in VALID_SS_TYPES:
                raise ParseError(f"{where}: invalid ss_type {ss_type!r}")
            w_cnt = int(columns[3], 16)
            words = tuple(columns[4 + 2 * k] for k in range(w_cnt))
            ptr_base = 4 + 2 * w_cnt
            p_cnt = int(columns[ptr_base])
            hypernyms = []
            for k in range(p_cnt):
                sym, target, target_pos, _src = columns[
                    ptr_base + 1 + 4 * k : ptr_base + 5 + 4 * k
                ]
                if sym in _HYPERNYM_SYMBOLS:
                    hypernyms.append((target_pos, int(target)))
        except ParseError:
            raise
        except (IndexError, ValueError) as exc:
            raise ParseError(f"{where}: malformed data line ({exc})") from None
        # Satellite adjectives share the adjective hierarchy position.
        pos = "a" if ss_type == "s" else ss_type
        synsets[(pos, offset)] = Synset(
            pos=pos, offset=offset, lemmas=words, hypernyms=tuple(hypernyms)
        )
    return synsets


def _parse_index(text: str, filename: str) -> dict[str, list[SynsetId]]:
    index: dict[str, list[SynsetId]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.startswith("  ") or not line.strip():
            continue
        columns = line.split()
        where = f"{filename}:{lineno}"
        try:
            lemma, pos = columns[0], columns[1]
            synset_cnt = int(columns[2])
            if synset_cnt < 1 or len(columns) < 3 + synset_cnt:
                raise ValueError("synset count does not match offsets")
            offsets = [int(c) for c in columns[-synset_cnt:]]
        except (IndexError, ValueError) as exc:
            raise ParseError(f"{where}: malformed index line ({exc})") from None
        pos = "a" if pos == "s" else pos
        index.setdefault(normalize_lemma(lemma), []).extend(
            (pos, off) for off in offsets
        )
    return index


class WordNetLexicon:
    """Immutable synset store with precomputed depths and ancestor closures."""

    def __init__(
        self,
        synsets: dict[SynsetId, Synset],
        lemma_index: dict[str, list[SynsetId]],
    ):
        for sid, synset in synsets.items():
            for hid in synset.hypernyms:
                if hid not in synsets:
                    raise DanglingPointer(
                        f"synset {sid} points at missing hypernym {hid}"
                    )
        for lemma, ids in lemma_index.items():
            for sid in ids:
                if sid not in synsets:
                    raise DanglingPointer(
                        f"index entry {lemma!r} points at missing synset {sid}"
                    )
        self._synsets = synsets
        self._lemma_index = lemma_index
        self._depths, self._ancestors = self._index_hierarchy()
        self._wup_cache: dict[tuple[str, str], float] = {}

    def _index_hierarchy(self):
        """Depths and ancestor closures in one parents-first pass (Kahn).

        Depth is the minimum hypernym-path length counted from a virtual
        root, so hierarchy roots sit at depth 1. Leftover nodes after the
        sweep mean a hypernym cycle.
        """
        children: dict[SynsetId, list[SynsetId]] = {}
        unresolved = {}
        queue = []
        for sid, synset in self._synsets.items():
            unresolved[sid] = len(synset.hypernyms)
            if not synset.hypernyms:
                queue.append(sid)
            for parent in synset.hypernyms:
                children.setdefault(parent, []).append(sid)
        depths: dict[SynsetId, int] = {}
        ancestors: dict[SynsetId, frozenset[SynsetId]] = {}
        while queue:
            nxt = []
            for sid in queue:
                parents = self._synsets[sid].hypernyms
                if not parents:
                    depths[sid] = 1
                    ancestors[sid] = frozenset((sid,))
                else:
                    depths[sid] = 1 + min(depths[p] for p in parents)
                    closure = {sid}
                    for p in parents:
                        closure.update(ancestors[p])
                    ancestors[sid] = frozenset(closure)
                for child in children.get(sid, ()):
                    unresolved[child] -= 1
                    if unresolved[child] == 0:
                        nxt.append(child)
            queue = nxt
        if len(depths) != len(self._synsets):
            stuck = next(s for s in self._synsets if s not in depths)
            raise ParseError(f"hypernym cycle through synset {stuck}")
        return depths, ancestors

    def __len__(self) -> int:
        return len(self._synsets)

    @property
    def synset_ids(self) -> list[SynsetId]:
        return sorted(self._synsets)

    def synset(self, synset_id: SynsetId) -> Synset:
        return self._synsets[synset_id]

    def depth(self, synset_id: SynsetId) -> int:
        return self._depths[synset_id]

    def synsets(self, word: str) -> list[Synset]:
        """Synsets for a lemma; lookup is case- and space-insensitive."""
        ids = self._lemma_index.get(normalize_lemma(word), [])
        return [self._synsets[sid] for sid in ids]

    def lowest_common_subsumer(
        self, a: SynsetId, b: SynsetId
    ) -> SynsetId | None:
        """Deepest shared hypernym ancestor; ties go to the smaller offset."""
        common = self._ancestors[a] & self._ancestors[b]
        if not common:
            return None
        return max(common, key=lambda sid: (self._depths[sid], -sid[1]))

    def wup_similarity(self, word_a: str, word_b: str) -> float:
        """Best Wu-Palmer score over all sense pairs, in [0, 1].

        Out-of-vocabulary comparisons fall back to exact string match after
        normalization.
        """
        key = (normalize_lemma(word_a), normalize_lemma(word_b))
        if key[0] > key[1]:
            key = (key[1], key[0])
        cached = self._wup_cache.get(key)
        if cached is not None:
            return cached
        score = self._wup_uncached(key[0], key[1])
        self._wup_cache[key] = score
        return score

    def _wup_uncached(self, norm_a: str, norm_b: str) -> float:
        ids_a = self._lemma_index.get(norm_a, [])
        ids_b = self._lemma_index.get(norm_b, [])
        if not ids_a or not ids_b:
            return 1.0 if norm_a == norm_b else 0.0
        best = 0.0
        for sa in ids_a:
            for sb in ids_b:
                lcs = self.lowest_common_subsumer(sa, sb)
                if lcs is None:
                    continue
                score = 2.0 * self._depths[lcs] / (
                    self._depths[sa] + self._depths[sb]
                )
                if score > best:
                    best = score
        return best


def load_lexicon(index_document: str, data_document: str,
                 filename: str = "data") -> WordNetLexicon:
    """Lexicon from one index/data document pair."""
    synsets = _parse_data(data_document, filename)
    index = _parse_index(index_document, f"index.{filename}")
    return WordNetLexicon(synsets, index)


def load_lexicon_dir(path: str | Path) -> WordNetLexicon:
    """Lexicon from a directory holding noun and/or verb database files.

    Adjectives and adverbs have no hypernym hierarchy and are intentionally
    not loaded; those words take the string-equality fallback.
    """
    path = Path(path)
    synsets: dict[SynsetId, Synset] = {}
    index: dict[str, list[SynsetId]] = {}
    found = False
    for pos_name in ("noun", "verb"):
        index_file = path / f"index.{pos_name}"
        data_file = path / f"data.{pos_name}"
        if not (index_file.exists() and data_file.exists()):
            continue
        found = True
        synsets.update(
            _parse_data(data_file.read_text(encoding="utf-8"), data_file.name)
        )
        for lemma, ids in _parse_index(
            index_file.read_text(encoding="utf-8"), index_file.name
        ).items():
            index.setdefault(lemma, []).extend(ids)
    if not found:
        raise ParseError(f"no index.noun/data.noun or index.verb/data.verb under {path}")
    return WordNetLexicon(synsets, index)
