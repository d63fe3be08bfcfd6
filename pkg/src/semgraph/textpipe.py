"""Transcript cleaning, sentence segmentation, and noun extraction.

Cleaning removes bracketed annotations like "[Laughter]", clock-style
timestamps, and leading speaker labels ("J3:"). Noun extraction runs either
in dictionary mode (a token is a noun iff its singular form is in the noun
lexicon, modulo a small function-word stoplist) or in pretagged mode, which
consumes token/POS TSV produced by any external tagger and trusts its noun
tags. Dictionary mode over-captures verb/noun homographs; reports carry the
extraction mode so the two paths are never conflated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import PipelineError, UnknownWordError
from .taxonomy import Lexicon, SemanticNet

_BRACKETED = re.compile(r"\[[^\]\n]*\]")
_TIMESTAMP = re.compile(r"\b\d{1,2}:\d{2}(?::\d{2})?\b")
_SPEAKER = re.compile(r"^\s*([A-Za-z][\w.'-]{0,24}):\s+")
_WHITESPACE = re.compile(r"[ \t]+")
_TOKEN = re.compile(r"[A-Za-z][A-Za-z'\-]*")

# sentence-final punctuation followed by whitespace and an uppercase opener
_SENTENCE_END = re.compile(r"([.!?]+)\s+(?=[\"'(]?[A-Z0-9])")
_ABBREVIATIONS = frozenset({
    "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "no", "vs", "etc",
    "e.g", "i.e", "inc", "ltd", "fig", "al", "dept", "approx",
})

#: high-frequency function/auxiliary words and light verbs that are also
#: WordNet nouns and would otherwise flood dictionary-mode extraction
#: (single-character tokens are skipped unconditionally)
DEFAULT_STOPLIST = frozenset({
    # articles, pronouns, demonstratives, question words
    "a", "an", "the", "i", "you", "he", "she", "it", "we", "they", "me",
    "him", "her", "us", "them", "this", "that", "these", "those", "there",
    "here", "when", "where", "who", "whom", "what", "why", "how",
    # auxiliaries and copulas
    "can", "could", "may", "might", "must", "shall", "should", "will",
    "would", "do", "does", "did", "done", "have", "has", "had", "having",
    "be", "being", "been", "am", "is", "are", "was", "were",
    # number words
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine",
    "ten",
    # discourse markers and particles
    "yes", "no", "not", "so", "if", "then", "than", "as", "at", "by",
    "for", "from", "in", "into", "of", "off", "on", "to", "up", "with",
    "while", "about", "okay", "ok", "yeah", "right", "well",
    # light verbs whose noun senses are rare in conversation
    "think", "make", "makes", "try", "tries", "use", "uses", "look",
    "looks", "go", "goes", "get", "gets", "put", "puts", "take", "takes",
    "give", "gives", "say", "says", "see", "sees", "want", "wants",
    "mean", "let", "lets", "feel", "feels", "keep", "keeps", "turn",
    "help", "call", "tell", "find", "leave", "start", "stop",
    # vague quantity fillers
    "kind", "sort", "lot", "lots", "bit", "little", "much", "thing",
    "things", "something", "anything", "nothing", "everything",
})

# WordNet noun detachment rules, applied in order
_DETACHMENT_RULES = (("s", ""), ("ses", "s"), ("xes", "x"), ("zes", "z"),
                     ("ches", "ch"), ("shes", "sh"), ("men", "man"),
                     ("ies", "y"))


@dataclass(frozen=True)
class Utterance:
    speaker: str | None
    text: str       # cleaned
    raw: str        # original line, for audit


@dataclass(frozen=True)
class Transcript:
    source_id: str
    utterances: tuple[Utterance, ...]

    @property
    def text(self) -> str:
        return "\n".join(u.text for u in self.utterances if u.text)


def clean_line(line: str) -> tuple[str | None, str]:
    """Clean one line; returns (speaker label or None, cleaned text).

    Annotations and timestamps go first so their removal cannot expose a new
    line start; the speaker rule then runs to a fixpoint. Together this makes
    cleaning idempotent on its own output.
    """
    line = _BRACKETED.sub(" ", line)
    line = _TIMESTAMP.sub(" ", line)
    speaker = None
    while True:
        m = _SPEAKER.match(line)
        if not m:
            break
        if speaker is None:
            speaker = m.group(1)
        line = line[m.end():]
    return speaker, _WHITESPACE.sub(" ", line).strip()


def clean(raw_text: str, source_id: str = "") -> Transcript:
    """Clean a raw transcript into utterances (idempotent on the text)."""
    utterances = []
    for line in raw_text.splitlines():
        if not line.strip():
            continue
        speaker, text = clean_line(line)
        utterances.append(Utterance(speaker, text, raw=line))
    return Transcript(source_id, tuple(utterances))


def split_sentences(text: str) -> list[str]:
    """Split cleaned text into sentences; newlines always break sentences."""
    sentences: list[str] = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        start = 0
        for m in _SENTENCE_END.finditer(line):
            before = line[start:m.start()].rstrip()
            last = before.rsplit(" ", 1)[-1].lower() if before else ""
            if last in _ABBREVIATIONS or re.fullmatch(r"[a-z]", last):
                continue
            sentence = line[start:m.end(1)].strip()
            if sentence:
                sentences.append(sentence)
            start = m.end()
        tail = line[start:].strip()
        if tail:
            sentences.append(tail)
    return sentences


def singularize(token: str, lexicon: Lexicon) -> str | None:
    """WordNet noun morphology: return the lexicon form of a token's base.

    Candidate order: the token itself, its possessive-stripped form, the
    exception list, then the detachment rules; the first candidate present
    in the lexicon wins. Lookup tries exact case, then lowercase.
    """
    def lookup(candidate: str) -> str | None:
        if candidate in lexicon.word_to_id:
            return candidate
        lower = candidate.lower()
        if lower in lexicon.word_to_id:
            return lower
        return None

    candidates = [token]
    if token.endswith("'s") and len(token) > 2:
        candidates.append(token[:-2])
    for source in (token, token.lower()):
        for base in lexicon.exceptions.get(source, ()):
            candidates.append(base)
    for suffix, replacement in _DETACHMENT_RULES:
        for source in (token, token.lower()):
            if source.endswith(suffix) and len(source) > len(suffix):
                candidates.append(source[:-len(suffix)] + replacement)
    for candidate in candidates:
        hit = lookup(candidate)
        if hit is not None:
            return hit
    return None


@dataclass(frozen=True)
class NounOccurrence:
    token_index: int
    sentence_index: int
    surface: str
    noun: str
    sense_count: int


@dataclass
class NounSequence:
    """Ordered nouns extracted from one conversation."""

    source_id: str
    entries: list[NounOccurrence]
    word_count: int
    tokens_per_sentence: list[int]
    dropped: list[str]
    extraction_mode: str
    collocations: bool = False

    @property
    def nouns(self) -> list[str]:
        return [e.noun for e in self.entries]

    def sentence_noun_counts(self) -> list[int]:
        counts = [0] * len(self.tokens_per_sentence)
        for e in self.entries:
            counts[e.sentence_index] += 1
        return counts

    def to_json_lines(self) -> list[dict]:
        return [{"token_index": e.token_index, "sentence_index": e.sentence_index,
                 "surface": e.surface, "noun": e.noun,
                 "sense_count": e.sense_count} for e in self.entries]


def extract_nouns(transcript: Transcript | str, net: SemanticNet,
                  mode: str = "dictionary", collocations: bool = False,
                  stoplist: frozenset[str] | None = None,
                  pretagged: str | None = None) -> NounSequence:
    """Extract normalized nouns from a cleaned transcript.

    In pretagged mode ``pretagged`` holds TSV text (token<TAB>tag per line,
    blank line = sentence break) and the transcript argument is used only
    for the source id.
    """
    if mode not in ("dictionary", "pretagged"):
        raise ValueError(f"unknown extraction mode {mode!r}")
    if isinstance(transcript, str):
        transcript = clean(transcript)
    stoplist = DEFAULT_STOPLIST if stoplist is None else stoplist
    lexicon = net.lexicon

    if mode == "pretagged":
        if pretagged is None:
            raise PipelineError("pretagged mode requires a token/tag stream")
        sentences = _parse_pretagged(pretagged)
    else:
        sentences = [[(tok, None) for tok in _TOKEN.findall(s)]
                     for s in split_sentences(transcript.text)]

    entries: list[NounOccurrence] = []
    dropped: list[str] = []
    tokens_per_sentence = [len(s) for s in sentences]
    token_index = 0
    for s_idx, sentence in enumerate(sentences):
        i = 0
        while i < len(sentence):
            token, tag = sentence[i]
            advance = 1
            if tag is not None and not tag.startswith("NN"):
                i += 1
                token_index += 1
                continue
            if tag is None and (len(token) < 2 or token.lower() in stoplist):
                i += 1
                token_index += 1
                continue
            noun = None
            if collocations and i + 1 < len(sentence):
                joined = token + "_" + sentence[i + 1][0]
                noun = singularize(joined, lexicon)
                if noun is not None:
                    advance = 2
            if noun is None:
                noun = singularize(token, lexicon)
            if noun is not None:
                entries.append(NounOccurrence(
                    token_index, s_idx, token if advance == 1 else
                    token + " " + sentence[i + 1][0], noun,
                    len(lexicon.senses(noun))))
            elif tag is not None:
                dropped.append(token)
            i += advance
            token_index += advance

    return NounSequence(transcript.source_id, entries,
                        word_count=sum(tokens_per_sentence),
                        tokens_per_sentence=tokens_per_sentence,
                        dropped=dropped, extraction_mode=mode,
                        collocations=collocations)


def _parse_pretagged(text: str) -> list[list[tuple[str, str]]]:
    sentences: list[list[tuple[str, str]]] = [[]]
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            if sentences[-1]:
                sentences.append([])
            continue
        fields = line.rstrip("\n").split("\t")
        if len(fields) != 2 or not fields[0] or not fields[1]:
            raise PipelineError(
                f"malformed pretagged line {line_no}: {line!r} "
                "(expected token<TAB>tag)")
        sentences[-1].append((fields[0], fields[1]))
    if sentences and not sentences[-1]:
        sentences.pop()
    return sentences
