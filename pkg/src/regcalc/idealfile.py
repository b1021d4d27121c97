"""Line-oriented ideal files.

::

    # comment
    label twisted-cubic
    ring 32003 a b c d
    ideal a*c - b^2, a*d - b*c,
          b*d - c^2
    expect reg 1
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .polyring import GradedRing, Poly, PolyParseError, format_poly, is_prime, parse_poly

KEYWORDS = ("ring", "ideal", "label", "expect")


class IdealFileError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}" + (f", column {column}" if column else "") if line else ""
        super().__init__(f"{message}" + (f" ({where})" if where else ""))
        self.message = message
        self.line = line
        self.column = column


@dataclass
class IdealFile:
    char_p: int
    names: Tuple[str, ...]
    generators: List[Poly]
    label: str = ""
    expect: Dict[str, str] = field(default_factory=dict)

    @property
    def ring(self) -> GradedRing:
        return self.generators[0].ring if self.generators else GradedRing(len(self.names), self.char_p, self.names)

    def __eq__(self, other):
        if not isinstance(other, IdealFile):
            return NotImplemented
        return (self.char_p, self.names, self.label, self.expect) == \
            (other.char_p, other.names, other.label, other.expect) and \
            [g.raw for g in self.generators] == [g.raw for g in other.generators]


def parse_ideal_file(text: str, char_override: Optional[int] = None) -> IdealFile:
    """Parse an ideal file; errors carry 1-based line and column numbers."""
    ring: Optional[GradedRing] = None
    char_p = 0
    names: Tuple[str, ...] = ()
    label = ""
    expect: Dict[str, str] = {}
    body: List[str] = []
    where: List[Tuple[int, int]] = []  # (line, column) of every body character
    in_ideal = saw_ideal = False

    def add_body(segment: str, lineno: int, col: int):
        if body:
            body.append(" ")
            where.append((lineno, col))
        for k, ch in enumerate(segment):
            body.append(ch)
            where.append((lineno, col + k))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        words = line.split()
        head = words[0]
        if head in KEYWORDS:
            in_ideal = False
        if head == "ring":
            if ring is not None:
                raise IdealFileError("duplicate ring declaration", lineno)
            if len(words) < 3:
                raise IdealFileError("ring needs a characteristic and at least one variable", lineno)
            try:
                char_p = int(words[1])
            except ValueError:
                raise IdealFileError(f"bad characteristic {words[1]!r}", lineno, line.index(words[1]) + 1)
            if char_override is not None:
                char_p = char_override
            if not is_prime(char_p):
                raise IdealFileError(f"characteristic {char_p} is not prime", lineno,
                                     line.index(words[1]) + 1)
            names = tuple(words[2:])
            if len(set(names)) != len(names):
                raise IdealFileError("repeated variable name", lineno)
            for nm in names:
                if not nm.isidentifier():
                    raise IdealFileError(f"bad variable name {nm!r}", lineno, line.index(nm) + 1)
            ring = GradedRing(len(names), char_p, names)
        elif head == "label":
            label = line.split(None, 1)[1].strip() if len(words) > 1 else ""
        elif head == "expect":
            if len(words) != 3:
                raise IdealFileError("expect needs a key and a value", lineno)
            expect[words[1]] = words[2]
        elif head == "ideal":
            if ring is None:
                raise IdealFileError("missing ring declaration", lineno)
            if saw_ideal:
                raise IdealFileError("duplicate ideal declaration", lineno)
            saw_ideal = in_ideal = True
            start = line.index("ideal") + len("ideal")
            add_body(line[start:], lineno, start + 1)
        elif in_ideal:
            add_body(line, lineno, 1)
        else:
            raise IdealFileError(f"unknown directive {head!r}", lineno, 1)

    if ring is None:
        raise IdealFileError("missing ring declaration", 1 if text.strip() else 0)
    joined = "".join(body)
    gens: List[Poly] = []
    pos = 0
    k = 0
    for piece in joined.split(","):
        lead = len(piece) - len(piece.lstrip())
        begin = pos + lead
        pos += len(piece) + 1
        if not piece.strip():
            if joined.strip():
                ln, col = where[min(begin, len(where) - 1)]
                raise IdealFileError("empty generator", ln, col)
            continue
        k += 1
        try:
            f = parse_poly(ring, piece.strip())
        except PolyParseError as exc:
            ln, col = where[min(begin + exc.column - 1, len(where) - 1)]
            raise IdealFileError(f"generator {k}: {exc.message}", ln, col)
        if not f.is_homogeneous():
            ln, col = where[begin]
            raise IdealFileError(f"generator {k} not homogeneous", ln, col)
        gens.append(f)
    return IdealFile(char_p, names, gens, label, expect)


def render_ideal_file(f: IdealFile) -> str:
    ring = GradedRing(len(f.names), f.char_p, f.names)
    lines = []
    if f.label:
        lines.append(f"label {f.label}")
    lines.append("ring " + " ".join([str(f.char_p), *f.names]))
    gens = [format_poly(ring, g.raw) for g in f.generators if not g.is_zero()]
    lines.append("ideal " + ", ".join(gens))
    for k, v in f.expect.items():
        lines.append(f"expect {k} {v}")
    return "\n".join(lines) + "\n"
