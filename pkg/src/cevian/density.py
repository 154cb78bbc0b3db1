"""Constructive density: a word that takes a start triangle within epsilon of a target.

Pull the target back ``k`` times through the preimage maps to get a word
``w``.  Every map shrinks distances by at least sqrt(3)/2, so
``apply_word(w, start)`` is within ``(sqrt(3)/2)**k * diameter`` of the target,
whatever the start.
"""

import json
import math
from dataclasses import dataclass

from .errors import DegenerateStart
from .maps import CONTRACTION, apply_word, format_word, parse_word, preimage_word
from .simplex import DIAMETER, AngleTriple, distance, format_float, make_triple


@dataclass(frozen=True)
class DensityCertificate:
    start: AngleTriple
    target: AngleTriple
    epsilon: float
    word: tuple
    achieved_error: float
    k_bound: int

    def to_dict(self):
        return {
            "start": list(self.start),
            "target": list(self.target),
            "epsilon": self.epsilon,
            "word": format_word(self.word),
            "achieved_error": self.achieved_error,
            "k_bound": self.k_bound,
        }

    def to_json(self, extra=None):
        def arr(t):
            return "[" + ",".join(format_float(x) for x in t) + "]"

        parts = [
            f'"start":{arr(self.start)}',
            f'"target":{arr(self.target)}',
            f'"epsilon":{format_float(self.epsilon)}',
            f'"word":"{format_word(self.word)}"',
            f'"achieved_error":{format_float(self.achieved_error)}',
            f'"k_bound":{self.k_bound}',
        ]
        for key, value in (extra or {}).items():
            parts.append(f"{json.dumps(key)}:{json.dumps(value, sort_keys=True)}")
        return "{" + ",".join(parts) + "}"

    @classmethod
    def from_dict(cls, d):
        return cls(
            AngleTriple(*map(float, d["start"])),
            AngleTriple(*map(float, d["target"])),
            float(d["epsilon"]),
            parse_word(d["word"]),
            float(d["achieved_error"]),
            int(d["k_bound"]),
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def required_depth(epsilon: float) -> int:
    """Smallest k >= 0 with ``DIAMETER * (sqrt(3)/2)**k < epsilon``."""
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    k = max(0, math.floor(math.log(epsilon / DIAMETER) / math.log(CONTRACTION)) - 1)
    # the log estimate can be off by one either way from rounding
    while DIAMETER * CONTRACTION**k >= epsilon:
        k += 1
    while k > 0 and DIAMETER * CONTRACTION ** (k - 1) < epsilon:
        k -= 1
    return k


def approximate(start, target, epsilon: float, early_exit: bool = True) -> DensityCertificate:
    start = make_triple(*start)
    target = make_triple(*target)
    if min(start) <= 0.0:
        raise DegenerateStart(f"start {tuple(start)} has a zero angle")
    k = required_depth(epsilon)
    word = preimage_word(target, k)
    if early_exit:
        for j in range(k + 1):
            err = distance(apply_word(word[:j], start), target)
            if err < epsilon:
                return DensityCertificate(start, target, float(epsilon), word[:j], err, k)
    err = distance(apply_word(word, start), target)
    return DensityCertificate(start, target, float(epsilon), word, err, k)


def verify(cert: DensityCertificate, tol: float = 1e-12) -> bool:
    """Recompute the certificate from scratch."""
    try:
        start = make_triple(*cert.start)
        target = make_triple(*cert.target)
        word = parse_word(cert.word)
    except ValueError:
        return False
    if not cert.epsilon > 0:
        return False
    err = distance(apply_word(word, start), target)
    return (
        abs(err - cert.achieved_error) <= tol
        and err < cert.epsilon
        and cert.achieved_error < cert.epsilon
        and len(word) <= cert.k_bound
    )
