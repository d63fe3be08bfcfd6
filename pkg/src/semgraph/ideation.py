"""Divergence-ranked idea suggestion and the interactive ideation session.

Given a base noun set describing a design task, every candidate noun is
scored by the average pairwise similarity of base + candidate; candidates
are ranked ascending (most divergent first). A session tracks proposals and
accept/reject decisions: accepted candidates join the base set, rejected
ones are never proposed again.
"""

from __future__ import annotations

import itertools
import threading
import uuid
from dataclasses import dataclass, field

from .errors import SessionError, UnknownWordError
from .measures import MeasureId, average_pairwise_similarity, parse_measure
from .taxonomy import SemanticNet
from .textpipe import singularize

#: session default, the recommended fast + statistically strong similarity
DEFAULT_MEASURE = "sim:lin:sanchez-batet"


def resolve_noun(net: SemanticNet, token: str) -> str | None:
    """Resolve user input to a lexicon word (underscores for spaces, exact
    case first, then morphological normalization)."""
    normalized = net.lexicon.normalize(token)
    if normalized in net.lexicon.word_to_id:
        return normalized
    return singularize(normalized, net.lexicon)


def resolve_nouns(net: SemanticNet, tokens: list[str]) -> tuple[list[str], list[str]]:
    """Resolve a list of tokens; returns (resolved, unresolvable)."""
    resolved, bad = [], []
    for token in tokens:
        word = resolve_noun(net, token)
        (resolved if word is not None else bad).append(word or token)
    return resolved, bad


@dataclass(frozen=True)
class Proposal:
    candidate: str
    projected_average: float
    delta: float


def rank_candidates(net: SemanticNet, base: list[str], candidates: list[str],
                    measure: MeasureId | str = DEFAULT_MEASURE,
                    k: int | None = None) -> tuple[float, list[Proposal]]:
    """Current base average plus candidates ranked most-divergent-first.

    Candidates equal to a base noun are skipped; ties broken alphabetically.
    """
    if isinstance(measure, str):
        measure = parse_measure(measure)
    base = sorted({net.lexicon.normalize(b) for b in base})
    if len(base) < 2:
        raise ValueError("base set needs at least 2 distinct nouns")
    base_avg = average_pairwise_similarity(net, base, measure)
    proposals = []
    for cand in sorted(set(candidates)):
        cand = net.lexicon.normalize(cand)
        if cand in base:
            continue
        avg = average_pairwise_similarity(net, base + [cand], measure)
        proposals.append(Proposal(cand, avg, avg - base_avg))
    proposals.sort(key=lambda p: (p.projected_average, p.candidate))
    if k is not None:
        proposals = proposals[:k]
    return base_avg, proposals


@dataclass
class DecisionRecord:
    candidate: str
    decision: str          # accepted | rejected
    resulting_average: float


@dataclass
class IdeationSession:
    """State of one human-in-the-loop suggestion session."""

    session_id: str
    net: SemanticNet
    base: list[str]
    measure: MeasureId
    pool: list[str]
    history: list[DecisionRecord] = field(default_factory=list)
    current_average: float = 0.0
    averages: list[float] = field(default_factory=list)   # after each accept
    _proposed: set[str] = field(default_factory=set)
    _decided: set[str] = field(default_factory=set)
    lock: threading.Lock = field(default_factory=threading.Lock)

    @classmethod
    def start(cls, net: SemanticNet, base: list[str],
              measure: MeasureId | str = DEFAULT_MEASURE,
              candidates: list[str] | None = None,
              session_id: str | None = None) -> "IdeationSession":
        resolved, bad = resolve_nouns(net, base)
        if bad:
            raise UnknownWordError(", ".join(bad))
        if len(set(resolved)) < 2:
            raise ValueError("base set needs at least 2 distinct nouns")
        if isinstance(measure, str):
            measure = parse_measure(measure)
        if not measure.is_similarity:
            raise ValueError(f"{measure} is not a similarity measure")
        pool_resolved, pool_bad = resolve_nouns(net, candidates or [])
        if pool_bad:
            raise UnknownWordError(", ".join(pool_bad))
        base_sorted = sorted(set(resolved))
        session = cls(session_id or uuid.uuid4().hex[:12], net, base_sorted,
                      measure, sorted(set(pool_resolved) - set(base_sorted)))
        session.current_average = average_pairwise_similarity(
            net, session.base, measure)
        session.averages = [session.current_average]
        return session

    def remaining_pool(self) -> list[str]:
        return [c for c in self.pool if c not in self._decided]

    def propose(self, k: int | None = None) -> list[Proposal]:
        remaining = self.remaining_pool()
        if not remaining:
            return []
        _, proposals = rank_candidates(self.net, self.base, remaining,
                                       self.measure, k)
        self._proposed.update(p.candidate for p in proposals)
        return proposals

    def decide(self, candidate: str, decision: str) -> DecisionRecord:
        candidate = self.net.lexicon.normalize(candidate)
        if decision not in ("accepted", "rejected"):
            raise SessionError(f"decision must be accepted or rejected, "
                               f"got {decision!r}", code="bad_decision")
        if candidate not in self._proposed:
            raise SessionError(f"candidate {candidate!r} was never proposed",
                               code="unknown_candidate")
        if candidate in self._decided:
            raise SessionError(f"candidate {candidate!r} already decided",
                               code="double_decision")
        self._decided.add(candidate)
        if decision == "accepted":
            self.base = sorted(self.base + [candidate])
            self.current_average = average_pairwise_similarity(
                self.net, self.base, self.measure)
            self.averages.append(self.current_average)
        record = DecisionRecord(candidate, decision, self.current_average)
        self.history.append(record)
        return record

    def state(self) -> dict:
        return {
            "session_id": self.session_id,
            "measure": str(self.measure),
            "base": list(self.base),
            "pool": self.remaining_pool(),
            "current_average": self.current_average,
            "averages": list(self.averages),
            "history": [{"candidate": r.candidate, "decision": r.decision,
                         "resulting_average": r.resulting_average}
                        for r in self.history],
        }


class SessionStore:
    """In-memory session registry with optional JSONL event persistence."""

    def __init__(self, log_dir: str | None = None):
        self._sessions: dict[str, IdeationSession] = {}
        self._lock = threading.Lock()
        self.log_dir = log_dir

    def create(self, net: SemanticNet, base: list[str],
               measure: MeasureId | str = DEFAULT_MEASURE,
               candidates: list[str] | None = None) -> IdeationSession:
        session = IdeationSession.start(net, base, measure, candidates)
        with self._lock:
            self._sessions[session.session_id] = session
        self._log(session, {"event": "start", "state": session.state()})
        return session

    def get(self, session_id: str) -> IdeationSession:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise SessionError(f"unknown session {session_id!r}",
                               code="unknown_session")
        return session

    def _log(self, session: IdeationSession, event: dict) -> None:
        if not self.log_dir:
            return
        import json
        from pathlib import Path
        path = Path(self.log_dir) / f"{session.session_id}.jsonl"
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, sort_keys=True) + "\n")

    def log_decision(self, session: IdeationSession,
                     record: DecisionRecord) -> None:
        self._log(session, {"event": "decision", "candidate": record.candidate,
                            "decision": record.decision,
                            "resulting_average": record.resulting_average})
