"""
Exact combinatorics of integer partitions: hooks, contents, dimension,
Maya sets / modified Frobenius coordinates, rim hooks, r-cores and r-quotients
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import islice
from typing import FrozenSet, Iterable, Iterator, List, Tuple

from .errors import ChargeError, ParseError
from .halfint import HalfInt, MINUS_HALF


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive parts; () is the empty partition"""

    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def part(self, i: int) -> int:
        """lambda_i with 1-based i; zero past the last row"""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def __contains__(self, square: "Square") -> bool:
        return 1 <= square.row <= self.length and 1 <= square.col <= self.parts[square.row - 1]

    def __str__(self) -> str:
        return format_partition(self)

    def __repr__(self) -> str:
        return f"Partition({self.parts})"


EMPTY = Partition(())


@dataclass(frozen=True, order=True)
class Square:
    """A box of a Young diagram, 1-based (row, col)"""

    row: int
    col: int


@dataclass(frozen=True)
class RimHook:
    """A rim hook added to (or removed from) a diagram; target is the resulting partition"""

    target: Partition
    length: int
    height: int
    content_sum: int

    @property
    def sign(self) -> int:
        """(-1)^(height+1)"""
        return 1 if self.height % 2 == 1 else -1


@dataclass(frozen=True)
class CoreQuotient:
    """r-core, r-quotient (ordered by ascending residue) and component charges"""

    core: Partition
    quotients: Tuple[Partition, ...]
    charges: Tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.quotients)


def canonical_key(partition: Partition) -> Tuple:
    """Sort key: by size, then reverse lexicographic within a size"""
    return (partition.size, tuple(-p for p in partition.parts))


def parse_partition(text: str) -> Partition:
    """Parse "4,2,1" (or "-" / "" for the empty partition)"""
    text = text.strip()
    if text in ("", "-", "()"):
        return EMPTY
    try:
        parts = [int(item) for item in text.strip("()").split(",") if item.strip()]
        return Partition(tuple(parts))
    except ValueError as e:
        raise ParseError(f"not a partition: {text!r} ({e})")


def format_partition(partition: Partition) -> str:
    if not partition.parts:
        return "-"
    return ",".join(str(p) for p in partition.parts)


@lru_cache(maxsize=None)
def _partitions(n: int, max_part: int) -> Tuple[Tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    result = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            result.append((first,) + rest)
    return tuple(result)


def enumerate_partitions(n: int) -> List[Partition]:
    """All partitions of n in reverse lexicographic order, e.g. 4, 31, 22, 211, 1111"""
    if n < 0:
        raise ValueError("n must be non-negative")
    return [Partition(parts) for parts in _partitions(n, n)]


def partitions_up_to(max_size: int) -> List[Partition]:
    """All partitions of size <= max_size in canonical order"""
    result = []
    for n in range(max_size + 1):
        result.extend(enumerate_partitions(n))
    return result


def content(square: Square) -> int:
    return square.col - square.row


def conjugate(partition: Partition) -> Partition:
    if not partition.parts:
        return EMPTY
    return Partition(tuple(
        sum(1 for p in partition.parts if p >= col)
        for col in range(1, partition.parts[0] + 1)
    ))


def squares(partition: Partition) -> List[Square]:
    """Squares in row-major order"""
    return [Square(row, col)
            for row, length in enumerate(partition.parts, 1)
            for col in range(1, length + 1)]


def hook_length(partition: Partition, square: Square) -> int:
    if square not in partition:
        raise ValueError(f"{square} lies outside {partition}")
    arm = partition.parts[square.row - 1] - square.col
    leg = conjugate(partition).parts[square.col - 1] - square.row
    return arm + leg + 1


def hook_lengths(partition: Partition) -> List[int]:
    """Hook lengths of all squares, row-major"""
    transposed = conjugate(partition)
    return [partition.parts[s.row - 1] - s.col + transposed.parts[s.col - 1] - s.row + 1
            for s in squares(partition)]


@lru_cache(maxsize=4096)
def dim(partition: Partition) -> int:
    """Number of standard Young tableaux, n! / prod h"""
    return math.factorial(partition.size) // math.prod(hook_lengths(partition))


@dataclass(frozen=True)
class MayaSet:
    """
    A subset S of Z + 1/2 that agrees with the vacuum {-1/2, -3/2, ...} up to
    finitely many positions; stored as the deviations S_+ (positive members)
    and S_- (negative non-members)
    """

    plus: FrozenSet[HalfInt] = field(default_factory=frozenset)
    minus: FrozenSet[HalfInt] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "plus", frozenset(self.plus))
        object.__setattr__(self, "minus", frozenset(self.minus))
        if any(k.twice < 0 for k in self.plus) or any(k.twice > 0 for k in self.minus):
            raise ValueError("plus must be positive and minus negative half-integers")

    @classmethod
    def vacuum(cls) -> "MayaSet":
        return cls()

    @classmethod
    def from_window(cls, elements: Iterable[HalfInt], below: HalfInt) -> "MayaSet":
        """The set made of `elements` together with every k < below"""
        members = set(elements)
        plus = {k for k in members if k.twice > 0}
        plus.update(HalfInt(t) for t in range(1, below.twice, 2))
        minus = {HalfInt(t) for t in range(below.twice, 0, 2) if HalfInt(t) not in members}
        return cls(frozenset(plus), frozenset(minus))

    def __contains__(self, k: HalfInt) -> bool:
        if k.twice > 0:
            return k in self.plus
        return k not in self.minus

    @property
    def charge(self) -> int:
        return len(self.plus) - len(self.minus)

    @property
    def energy(self):
        """sum(S_+) - sum(S_-), a Fraction"""
        return sum((k.value for k in self.plus), 0) - sum((k.value for k in self.minus), 0)

    def top(self) -> HalfInt:
        """Largest member"""
        if self.plus:
            return max(self.plus)
        k = MINUS_HALF
        while k in self.minus:
            k = k - 1
        return k

    def floor(self) -> HalfInt:
        """A half-integer f <= -1/2 such that every k < f is a member"""
        return min(self.minus) if self.minus else MINUS_HALF

    def elements(self) -> Iterator[HalfInt]:
        """Members in strictly decreasing order (an infinite stream)"""
        t = self.top().twice
        while True:
            k = HalfInt(t)
            if k in self:
                yield k
            t -= 2

    def members_from(self, bottom: HalfInt) -> List[HalfInt]:
        """Members k >= bottom, descending"""
        return [HalfInt(t) for t in range(self.top().twice, bottom.twice - 1, -2)
                if HalfInt(t) in self]

    def count_above(self, k: HalfInt) -> int:
        """#{s in S : s > k}"""
        count = sum(1 for p in self.plus if p > k)
        if k.twice < 0:
            count += (-k.twice - 1) // 2 - sum(1 for h in self.minus if h > k)
        return count

    def with_added(self, k: HalfInt) -> "MayaSet":
        if k.twice > 0:
            return MayaSet(self.plus | {k}, self.minus)
        return MayaSet(self.plus, self.minus - {k})

    def with_removed(self, k: HalfInt) -> "MayaSet":
        if k.twice > 0:
            return MayaSet(self.plus - {k}, self.minus)
        return MayaSet(self.plus, self.minus | {k})

    def shifted(self, n: int) -> "MayaSet":
        """S + n"""
        bottom = self.floor()
        return MayaSet.from_window([k + n for k in self.members_from(bottom)], bottom + n)

    def window(self) -> Tuple[HalfInt, HalfInt]:
        """Smallest [low, high] containing every deviation from the vacuum (at least [-1/2, 1/2])"""
        low = min(self.minus) if self.minus else MINUS_HALF
        high = max(self.plus) if self.plus else HalfInt(1)
        return low, high

    def __str__(self) -> str:
        head = [str(k) for k in islice(self.elements(), len(self.plus) + len(self.minus) + 2)]
        return "{" + ", ".join(head) + ", ...}"


def maya(partition: Partition) -> MayaSet:
    """S(lambda) = {lambda_i - i + 1/2}"""
    elements = [HalfInt(2 * p - 2 * i + 1) for i, p in enumerate(partition.parts, 1)]
    return MayaSet.from_window(elements, HalfInt(-2 * partition.length + 1))


def frobenius(partition: Partition) -> Tuple[FrozenSet[HalfInt], FrozenSet[HalfInt]]:
    """Modified Frobenius coordinates (S_+, S_-)"""
    s = maya(partition)
    return s.plus, s.minus


def from_maya(s: MayaSet) -> Partition:
    """Inverse of maya; the set must have charge zero"""
    if s.charge != 0:
        raise ChargeError(f"Maya set has charge {s.charge}, expected 0")
    parts = []
    for i, k in enumerate(s.elements(), 1):
        part = (k.twice + 2 * i - 1) // 2
        if part == 0:
            break
        parts.append(part)
    return Partition(tuple(parts))


def _skew_hook(bigger: Partition, smaller: Partition, length: int, target: Partition) -> RimHook:
    skew = set(squares(bigger)) - set(squares(smaller))
    return RimHook(
        target=target,
        length=length,
        height=len({s.row for s in skew}),
        content_sum=sum(content(s) for s in skew),
    )


def addable_rim_hooks(partition: Partition, r: int) -> List[RimHook]:
    """All mu = lambda + (rim hook of r squares), in canonical order of mu"""
    if r < 1:
        raise ValueError("rim hook length must be positive")
    s = maya(partition)
    low, high = s.window()
    hooks = []
    # moving a member k to the vacant k + r adds a rim hook of length r
    for t in range(low.twice, high.twice + 2 * r + 1, 2):
        destination = HalfInt(t)
        source = destination - r
        if destination in s or source not in s:
            continue
        mu = from_maya(s.with_removed(source).with_added(destination))
        hooks.append(_skew_hook(mu, partition, r, mu))
    hooks.sort(key=lambda h: canonical_key(h.target))
    return hooks


def removable_rim_hooks(partition: Partition, r: int) -> List[RimHook]:
    """All mu = lambda - (rim hook of r squares), in canonical order of mu"""
    if r < 1:
        raise ValueError("rim hook length must be positive")
    s = maya(partition)
    low, high = s.window()
    hooks = []
    for t in range(low.twice, high.twice + 2 * r + 1, 2):
        source = HalfInt(t)
        destination = source - r
        if source not in s or destination in s:
            continue
        mu = from_maya(s.with_removed(source).with_added(destination))
        hooks.append(_skew_hook(partition, mu, r, mu))
    hooks.sort(key=lambda h: canonical_key(h.target))
    return hooks


def residue_index(k: HalfInt, r: int) -> int:
    """j in 0..r-1 with k = j + 1/2 (mod r)"""
    return k.down % r


def to_component(k: HalfInt, r: int) -> HalfInt:
    """t = (k - c)/r + 1/2 for the residue c = j + 1/2 of k"""
    j = residue_index(k, r)
    return HalfInt(2 * ((k.down - j) // r) + 1)


def from_component(t: HalfInt, j: int, r: int) -> HalfInt:
    """Inverse of to_component inside residue class j"""
    return HalfInt(2 * (j + r * t.down) + 1)


def split_components(s: MayaSet, r: int) -> List[MayaSet]:
    """Split a Maya set into its r residue classes, each re-indexed by t"""
    bottom = s.floor()
    top = s.top()
    components = []
    for j in range(r):
        first = next(HalfInt(t) for t in range(bottom.twice, bottom.twice + 2 * r, 2)
                     if residue_index(HalfInt(t), r) == j)
        members = [to_component(HalfInt(t), r)
                   for t in range(first.twice, top.twice + 1, 2 * r) if HalfInt(t) in s]
        components.append(MayaSet.from_window(members, to_component(first, r)))
    return components


def combine_components(components: List[MayaSet]) -> MayaSet:
    """Inverse of split_components"""
    r = len(components)
    bottom = min(from_component(c.floor(), j, r) for j, c in enumerate(components))
    elements = []
    for j, component in enumerate(components):
        t = component.top()
        while True:
            k = from_component(t, j, r)
            if k < bottom:
                break
            if t in component:
                elements.append(k)
            t = t - 1
    return MayaSet.from_window(elements, bottom)


def core_quotient(partition: Partition, r: int) -> CoreQuotient:
    """r-core, r-quotient and charges via the residue split of S(lambda)"""
    if r < 1:
        raise ValueError("r must be a positive integer")
    components = split_components(maya(partition), r)
    charges = tuple(c.charge for c in components)
    quotients = tuple(from_maya(c.shifted(-q)) for c, q in zip(components, charges))
    core_components = [MayaSet.vacuum().shifted(q) for q in charges]
    core = from_maya(combine_components(core_components))
    return CoreQuotient(core=core, quotients=quotients, charges=charges)


def from_core_quotient(core: Partition, quotients: Iterable[Partition]) -> Partition:
    """Rebuild lambda from its r-core and r-quotient"""
    quotients = tuple(quotients)
    r = len(quotients)
    decomposition = core_quotient(core, r)
    if any(q.parts for q in decomposition.quotients):
        raise ValueError(f"{core} is not a {r}-core")
    components = [maya(q).shifted(charge) for q, charge in zip(quotients, decomposition.charges)]
    return from_maya(combine_components(components))
