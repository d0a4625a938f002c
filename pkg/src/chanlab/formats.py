"""Text formats for channels and distributions, and number printing.

Channel file::

    channel v1
    domain: 0 1
    range: 0 1
    3/4 1/4
    1/4 3/4

Distribution file::

    dist v1
    0 1/2
    1 1/2

Numeric literals are integers, rationals ``a/b`` or decimals (``0.25``,
``1e-3``).  Any rational makes the file exact; any decimal makes it float;
a file containing both is rejected.  Integers fit either mode.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .channel import DenseChannel
from .errors import ParseError
from .prob import Distribution, Prob

_INT = re.compile(r"\d+\Z")
_RAT = re.compile(r"(\d+)/(\d+)\Z")
_DEC = re.compile(r"(\d+\.\d*|\.\d+|\d+)([eE][-+]?\d+)?\Z")

CHANNEL_MAGIC = "channel v1"
DIST_MAGIC = "dist v1"


def parse_literal(token: str) -> tuple[str, object]:
    """Classify a numeric literal as ``int``, ``rational`` or ``decimal``."""
    if _INT.match(token):
        return "int", int(token)
    m = _RAT.match(token)
    if m:
        den = int(m.group(2))
        if den == 0:
            raise ValueError("zero denominator")
        return "rational", Fraction(int(m.group(1)), den)
    if _DEC.match(token):
        return "decimal", float(token)
    raise ValueError(f"not a probability literal: {token!r}")


def parse_prob(token: str) -> Prob:
    """One literal to a probability: exact unless written as a decimal."""
    kind, v = parse_literal(token)
    return float(v) if kind == "decimal" else Fraction(v)


class _Numbers:
    """Collects literals from one file and enforces a single numeric mode."""

    def __init__(self, source):
        self.source = source
        self.kind = None
        self.raw = []

    def add(self, token, line, col):
        try:
            kind, v = parse_literal(token)
        except ValueError as e:
            raise ParseError(str(e), line, col, self.source) from None
        if kind != "int":
            if self.kind is None:
                self.kind = kind
            elif self.kind != kind:
                raise ParseError("rational and decimal literals mixed in one file", line, col, self.source)
        self.raw.append(v)

    def values(self):
        conv = float if self.kind == "decimal" else Fraction
        return [conv(v) for v in self.raw]


def _tokens(line: str):
    for m in re.finditer(r"\S+", line):
        yield m.group(), m.start() + 1


def _lines(text: str):
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    return lines


def _header(lines, idx, key, source):
    if idx >= len(lines):
        raise ParseError(f"missing '{key}:' line", idx + 1, None, source)
    line = lines[idx]
    prefix = key + ":"
    if not line.startswith(prefix):
        raise ParseError(f"expected '{prefix}'", idx + 1, 1, source)
    labels = line[len(prefix):].split()
    if not labels:
        raise ParseError(f"no labels after '{prefix}'", idx + 1, len(prefix) + 1, source)
    return labels


def parse_channel(text: str, source: str = "<input>") -> DenseChannel:
    lines = _lines(text)
    if not lines or lines[0].strip() != CHANNEL_MAGIC:
        raise ParseError(f"expected '{CHANNEL_MAGIC}'", 1, 1, source)
    domain = _header(lines, 1, "domain", source)
    range_ = _header(lines, 2, "range", source)
    rows = lines[3:]
    if len(rows) != len(domain):
        raise ParseError(f"{len(rows)} matrix rows for {len(domain)} domain labels",
                         len(lines) + 1 if len(rows) < len(domain) else 4 + len(domain), None, source)
    nums = _Numbers(source)
    for i, row in enumerate(rows):
        lineno = i + 4
        toks = list(_tokens(row))
        if len(toks) != len(range_):
            raise ParseError(f"{len(toks)} entries for {len(range_)} range labels", lineno, 1, source)
        for tok, col in toks:
            nums.add(tok, lineno, col)
    flat = nums.values()
    m = len(range_)
    return DenseChannel(domain, range_, [flat[i * m:(i + 1) * m] for i in range(len(domain))])


def parse_distribution(text: str, source: str = "<input>") -> Distribution:
    lines = _lines(text)
    if not lines or lines[0].strip() != DIST_MAGIC:
        raise ParseError(f"expected '{DIST_MAGIC}'", 1, 1, source)
    labels = []
    nums = _Numbers(source)
    for i, line in enumerate(lines[1:]):
        lineno = i + 2
        toks = list(_tokens(line))
        if len(toks) != 2:
            raise ParseError("expected '<label> <prob>'", lineno, 1, source)
        labels.append(toks[0][0])
        nums.add(*toks[1], lineno)
    if not labels:
        raise ParseError("no outcomes", 2, None, source)
    return Distribution(labels, nums.values())


def format_prob(v: Prob) -> str:
    """Literal that parses back to exactly ``v``."""
    if isinstance(v, float):
        return repr(v)
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def format_channel(ch: DenseChannel) -> str:
    lines = [CHANNEL_MAGIC, "domain: " + " ".join(ch.domain), "range: " + " ".join(ch.range)]
    lines += [" ".join(format_prob(v) for v in row) for row in ch.matrix]
    return "\n".join(lines) + "\n"


def format_distribution(d: Distribution) -> str:
    lines = [DIST_MAGIC] + [f"{o} {format_prob(p)}" for o, p in d.items()]
    return "\n".join(lines) + "\n"


def format_measure(v, exact: bool = False) -> str:
    """Print a computed value.

    Floats keep 12 significant digits including trailing zeros.  Exact
    rationals print as ``a/b`` with ``exact``, otherwise to 12 significant
    digits with trailing zeros dropped, since they carry no rounding.
    """
    if v is None:
        return "none"
    if isinstance(v, (Fraction, int)):
        if exact:
            return format_prob(v)
        return "%.12g" % float(v)
    return "%#.12g" % v
