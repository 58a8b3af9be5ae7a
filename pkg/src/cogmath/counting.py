"""Acquisition of number-word meanings.

A learner knows the count list in order but maps only the first
``knower_level`` words to exact set sizes; every later word means "more
than k". It refines one word at a time by proposing a set size and having
the environment check it. Once ``leap_threshold`` words are known it
generalises: word n denotes size n for the whole list.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from cogmath.errors import AlreadyConverged, OutOfRange, SizeBeyondVocabulary

NUMBER_WORDS = (
    "one two three four five six seven eight nine ten eleven twelve thirteen "
    "fourteen fifteen sixteen seventeen eighteen nineteen twenty"
).split()

SCHEDULES = ("deterministic", "seeded")


def number_words(n: int) -> list[str]:
    return NUMBER_WORDS[:n] + [f"word{i}" for i in range(len(NUMBER_WORDS) + 1, n + 1)]


def tokens(n: int) -> list[str]:
    """Object tokens a, b, ..., z, a1, b1, ..."""
    return [chr(97 + i % 26) + (str(i // 26) if i >= 26 else "") for i in range(n)]


@dataclass(frozen=True)
class Curriculum:
    words: tuple[str, ...]
    objects: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(self.words))
        object.__setattr__(self, "objects", tuple(self.objects))
        if not self.words:
            raise ValueError("curriculum needs at least one number word")
        if len(set(self.words)) != len(self.words):
            raise ValueError("number words must be distinct")
        if len(self.objects) < len(self.words):
            raise ValueError("need at least as many object tokens as number words")

    @classmethod
    def standard(cls, size: int) -> "Curriculum":
        return cls(tuple(number_words(size)), tuple(tokens(size)))


@dataclass(frozen=True, order=True)
class FiniteSet:
    """A collection of indistinguishable tokens; only its size matters."""

    size: int

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("set size is non-negative")


def subset_successor(s: FiniteSet) -> FiniteSet:
    """Union with one fresh token."""
    return FiniteSet(s.size + 1)


@dataclass(frozen=True)
class MoreThan:
    level: int

    def __str__(self):
        return f"more-than({self.level})"


@dataclass(frozen=True)
class LogEvent:
    step: int
    word: str
    set_size: int
    verdict: bool
    knower_level: int

    def line(self) -> str:
        return f"{self.step}\t{self.word}\t{self.set_size}\t{str(self.verdict).lower()}\t{self.knower_level}"


@dataclass
class Learner:
    curriculum: Curriculum
    leap_threshold: int = 3
    schedule: str = "deterministic"
    seed: int | None = None
    knower_level: int = 0
    leaped: bool = False
    association_log: list[LogEvent] = field(default_factory=list)

    def __post_init__(self):
        if self.schedule not in SCHEDULES:
            raise ValueError(f"schedule must be one of {SCHEDULES}")
        if not 1 <= self.leap_threshold <= len(self.curriculum.words):
            raise ValueError("leap threshold must lie within the vocabulary")
        self._rng = random.Random(self.seed)
        self._pending: list[int] = []

    @property
    def vocabulary(self) -> int:
        return len(self.curriculum.words)

    def word(self, index: int) -> str:
        return self.curriculum.words[index - 1]

    def candidates(self) -> list[int]:
        """Set sizes to propose for the next unlearned word, in order.

        Every word above one is first tried against the whole collection
        (its "more than k" reading); then sizes k+1, k+2, ... follow, in
        increasing order or, for the seeded schedule, shuffled.
        """
        k = self.knower_level
        everything = len(self.curriculum.objects)
        sizes = list(range(k + 1, everything + 1))
        if self.schedule == "seeded":
            self._rng.shuffle(sizes)
        if k >= 1 and sizes[0] != everything:
            sizes.remove(everything)
            sizes.insert(0, everything)
        return sizes

    def max_proposals(self) -> int:
        """Upper bound on step() calls before the leap under any schedule."""
        n = len(self.curriculum.objects)
        return sum(n - k for k in range(self.leap_threshold))


def query(l: Learner, s: FiniteSet) -> str | MoreThan:
    if s.size < 1:
        raise ValueError("query needs a non-empty set")
    if l.leaped:
        if s.size > l.vocabulary:
            raise SizeBeyondVocabulary(f"no word for a set of {s.size}; vocabulary has {l.vocabulary}")
        return l.word(s.size)
    if s.size <= l.knower_level:
        return l.word(s.size)
    return MoreThan(l.knower_level)


def check(l: Learner, word_index: int, s: FiniteSet) -> bool:
    """Ground truth from the environment: does word ``word_index`` name ``s``?"""
    if not 1 <= word_index <= l.vocabulary:
        raise ValueError(f"word index {word_index} outside 1..{l.vocabulary}")
    return word_index == s.size


def step(l: Learner) -> LogEvent:
    """Make one proposal for the next unlearned word and record the verdict."""
    if l.leaped:
        raise AlreadyConverged("learner has already made the inductive leap")
    if not l._pending:
        l._pending = l.candidates()
    target = l.knower_level + 1
    size = l._pending.pop(0)
    ok = check(l, target, FiniteSet(size))
    if ok:
        l.knower_level = target
        l._pending = []
        if l.knower_level >= l.leap_threshold:
            l.leaped = True
    event = LogEvent(len(l.association_log) + 1, l.word(target), size, ok, l.knower_level)
    l.association_log.append(event)
    return event


def run_until_leap(l: Learner) -> list[LogEvent]:
    bound = l.max_proposals()
    events = []
    while not l.leaped:
        if len(events) >= bound:
            raise RuntimeError("learner failed to converge within its proposal bound")
        events.append(step(l))
    return events


def learner_addition(n: int, m: int, vocab_size: int) -> int:
    """``n + m`` as a set of n tokens grown by m single-token unions."""
    if n < 0 or m < 0:
        raise ValueError("addends are non-negative")
    s = FiniteSet(n)
    if s.size > vocab_size:
        raise OutOfRange(f"{n} exceeds the vocabulary of {vocab_size}")
    for _ in range(m):
        s = subset_successor(s)
        if s.size > vocab_size:
            raise OutOfRange(f"{n} + {m} exceeds the vocabulary of {vocab_size}")
    return s.size
