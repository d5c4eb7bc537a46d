"""Bit-level concepts, concept classes, cubes, and the structural operators on them.

Concepts over a domain of n coordinates (labelled 1..n) are plain ints: bit
i-1 of the int is coordinate i.  Coordinate sets are int bitmasks with the
same convention.  Everything is immutable; operations return new values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .errors import DomainError, EmptyClassError, ParseError

MAX_WIDTH = 24


def bit(x: int) -> int:
    """Mask of the single coordinate x (1-based)."""
    return 1 << (x - 1)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def coords(mask: int) -> list[int]:
    """Ascending coordinate labels of a bitmask."""
    out = []
    x = 1
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return out


def mask_of(xs: Iterable[int]) -> int:
    m = 0
    for x in xs:
        m |= 1 << (x - 1)
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


def bits_of(mask: int) -> list[int]:
    """Single-bit masks of a bitmask, ascending."""
    out = []
    while mask:
        b = mask & -mask
        out.append(b)
        mask ^= b
    return out


def concept_to_string(c: int, n: int) -> str:
    """n-character 0/1 string, leftmost char = coordinate 1."""
    return "".join("1" if c >> i & 1 else "0" for i in range(n))


def concept_from_string(s: str) -> int:
    c = 0
    for i, ch in enumerate(s):
        if ch == "1":
            c |= 1 << i
        elif ch != "0":
            raise ParseError(f"invalid character {ch!r} in concept string {s!r}")
    return c


@dataclass(frozen=True)
class ConceptClass:
    """A nonempty, duplicate-free concept class in canonical (ascending) order.

    coord_labels records, for each local coordinate 1..n, the label it had in
    the class this one was derived from (restrictions and reductions re-index
    their domains to 1..n).  It is carried for traceability and is not part
    of equality.
    """

    n: int
    concepts: tuple[int, ...]
    coord_labels: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if not 0 <= self.n <= MAX_WIDTH:
            raise DomainError(f"domain width {self.n} outside 0..{MAX_WIDTH}")
        cs = tuple(sorted(set(self.concepts)))
        if not cs:
            raise EmptyClassError("a concept class must be nonempty")
        if cs[0] < 0 or cs[-1] >= 1 << self.n:
            raise DomainError("concept out of range for domain width")
        object.__setattr__(self, "concepts", cs)
        if not self.coord_labels:
            object.__setattr__(self, "coord_labels", tuple(range(1, self.n + 1)))
        elif len(self.coord_labels) != self.n:
            raise DomainError("coord_labels length must equal domain width")

    @classmethod
    def of(cls, n: int, concepts: Iterable[int]) -> "ConceptClass":
        return cls(n, tuple(concepts))

    @classmethod
    def from_strings(cls, strings: Iterable[str]) -> "ConceptClass":
        strings = list(strings)
        if not strings:
            raise EmptyClassError("no concept strings given")
        n = len(strings[0])
        for s in strings:
            if len(s) != n:
                raise ParseError(f"concept {s!r} has width {len(s)}, expected {n}")
        return cls(n, tuple(concept_from_string(s) for s in strings))

    @property
    def size(self) -> int:
        return len(self.concepts)

    @property
    def domain_mask(self) -> int:
        return full_mask(self.n)

    @property
    def concept_set(self) -> frozenset:
        return frozenset(self.concepts)

    def support(self) -> int:
        """Mask of coordinates on which at least two concepts differ."""
        lo = self.concepts[0]
        acc = 0
        for c in self.concepts:
            acc |= c ^ lo
        return acc

    def strings(self) -> list[str]:
        return [concept_to_string(c, self.n) for c in self.concepts]

    def is_full_cube(self) -> bool:
        return len(self.concepts) == 1 << self.n

    def __len__(self) -> int:
        return len(self.concepts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.concepts)

    def __contains__(self, c: int) -> bool:
        return c in self.concept_set


@dataclass(frozen=True)
class Cube:
    """A subcube of the hypercube: fixed bits in ``tag``, free coordinates in ``support``."""

    tag: int
    support: int

    def __post_init__(self):
        if self.tag & self.support:
            raise DomainError("cube tag must be zero on support coordinates")

    @property
    def dim(self) -> int:
        return popcount(self.support)

    def vertices(self) -> Iterator[int]:
        sub = 0
        while True:
            yield self.tag | sub
            if sub == self.support:
                return
            sub = (sub - self.support) & self.support

    def contains(self, c: int) -> bool:
        return c & ~self.support == self.tag

    def contains_cube(self, other: "Cube") -> bool:
        return (other.support & ~self.support) == 0 and other.tag & ~self.support == self.tag


def interval(c: int, d: int) -> Cube:
    """The smallest cube containing both concepts."""
    return Cube(tag=c & d, support=c ^ d)


def cube_in_class(cube: Cube, concept_set: frozenset) -> bool:
    return all(v in concept_set for v in cube.vertices())


def _check_subdomain(C: ConceptClass, Y: int) -> None:
    if Y & ~C.domain_mask:
        raise DomainError(f"coordinate set {coords(Y)} is not a subset of the domain")


def _project(c: int, ys: list[int]) -> int:
    out = 0
    for i, y in enumerate(ys):
        if c >> (y - 1) & 1:
            out |= 1 << i
    return out


def restrict(C: ConceptClass, Y: int) -> ConceptClass:
    """C|Y, re-indexed to coordinates 1..|Y| (labels record the originals)."""
    _check_subdomain(C, Y)
    ys = coords(Y)
    labels = tuple(C.coord_labels[y - 1] for y in ys)
    return ConceptClass(len(ys), tuple({_project(c, ys) for c in C}), labels)


def drop(C: ConceptClass, Y: int) -> ConceptClass:
    """C_Y = C restricted to the complement of Y."""
    _check_subdomain(C, Y)
    return restrict(C, C.domain_mask & ~Y)


def reduction_tags(concepts: Iterable[int], Y: int) -> set:
    """Tags (over the original domain) of all Y-cubes fully contained in the class."""
    want = 1 << popcount(Y)
    groups: dict = {}
    for c in concepts:
        t = c & ~Y
        groups[t] = groups.get(t, 0) + 1
    return {t for t, k in groups.items() if k == want}


def reduce(C: ConceptClass, Y: int) -> Optional[ConceptClass]:
    """C^Y over the re-indexed domain X\\Y; None when no Y-cube exists."""
    _check_subdomain(C, Y)
    tags = reduction_tags(C.concepts, Y)
    if not tags:
        return None
    ys = coords(C.domain_mask & ~Y)
    labels = tuple(C.coord_labels[y - 1] for y in ys)
    return ConceptClass(len(ys), tuple(_project(t, ys) for t in tags), labels)


def complement(C: ConceptClass) -> ConceptClass:
    """2^X minus C; raises EmptyClassError when C is the full cube."""
    rest = set(range(1 << C.n)) - C.concept_set
    if not rest:
        raise EmptyClassError("complement of the full cube is empty")
    return ConceptClass(C.n, tuple(rest), C.coord_labels)


def twist(C: ConceptClass, Y: int) -> ConceptClass:
    _check_subdomain(C, Y)
    return ConceptClass(C.n, tuple(c ^ Y for c in C), C.coord_labels)


def product(C: ConceptClass, D: ConceptClass) -> ConceptClass:
    """Cartesian product; D's coordinates are relabelled to C.n+1 .. C.n+D.n."""
    n = C.n + D.n
    if n > MAX_WIDTH:
        raise DomainError(f"product domain width {n} exceeds {MAX_WIDTH}")
    cs = tuple(c | (d << C.n) for c in C for d in D)
    return ConceptClass(n, cs)


def intersect_cube(C: ConceptClass, B: Cube) -> Optional[ConceptClass]:
    """C ∩ B over the same domain; None when the intersection is empty."""
    if B.tag | B.support >= 1 << C.n:
        raise DomainError("cube does not fit in the domain")
    cs = tuple(c for c in C if c & ~B.support == B.tag)
    if not cs:
        return None
    return ConceptClass(C.n, cs, C.coord_labels)


def carrier(C: ConceptClass, x: int) -> Optional[ConceptClass]:
    """N_x(C): union of all cubes of C having x in their support."""
    if not 1 <= x <= C.n:
        raise DomainError(f"coordinate {x} outside domain")
    b = bit(x)
    s = C.concept_set
    cs = tuple(c for c in C if c ^ b in s)
    if not cs:
        return None
    return ConceptClass(C.n, cs, C.coord_labels)


def tail(C: ConceptClass, x: int) -> Optional[ConceptClass]:
    """tail_x(C) as concepts of C_x \\ C^x, over the re-indexed domain X\\{x}."""
    if not 1 <= x <= C.n:
        raise DomainError(f"coordinate {x} outside domain")
    b = bit(x)
    s = C.concept_set
    t = [c for c in C if c ^ b not in s]
    if not t:
        return None
    ys = coords(C.domain_mask & ~b)
    labels = tuple(C.coord_labels[y - 1] for y in ys)
    return ConceptClass(len(ys), tuple(_project(c, ys) for c in t), labels)


# -- class file format -------------------------------------------------------
#
# header line          n=<int>
# one concept per line as an n-character 0/1 string, leftmost = coordinate 1
# lines starting with '#' are comments

def parse_class_text(text: str) -> ConceptClass:
    n = None
    seen: dict = {}
    concepts = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            if not line.startswith("n="):
                raise ParseError("expected header 'n=<int>'", line=lineno)
            try:
                n = int(line[2:])
            except ValueError:
                raise ParseError(f"bad width {line[2:]!r}", line=lineno) from None
            if not 1 <= n <= MAX_WIDTH:
                raise ParseError(f"width {n} outside 1..{MAX_WIDTH}", line=lineno)
            continue
        if len(line) != n:
            raise ParseError(f"concept {line!r} has width {len(line)}, expected {n}", line=lineno)
        try:
            c = concept_from_string(line)
        except ParseError as e:
            raise ParseError(str(e), line=lineno) from None
        if c in seen:
            raise ParseError(f"duplicate concept {line!r} (first at line {seen[c]})", line=lineno)
        seen[c] = lineno
        concepts.append(c)
    if n is None:
        raise ParseError("empty file: missing 'n=' header")
    if not concepts:
        raise ParseError("class file contains no concepts")
    return ConceptClass(n, tuple(concepts))


def read_class_file(path) -> ConceptClass:
    with open(path, "r", encoding="utf-8") as f:
        return parse_class_text(f.read())


def format_class(C: ConceptClass) -> str:
    lines = [f"n={C.n}"]
    lines.extend(C.strings())
    return "\n".join(lines) + "\n"


def write_class_file(path, C: ConceptClass) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_class(C))
