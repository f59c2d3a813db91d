"""Arithmetic in (Z/NZ)* and enumeration of subgroups containing -1.

The central object is :class:`DeltaSubgroup`: a subgroup Delta of the unit
group (Z/NZ)* with -1 in Delta.  Such subgroups index the curves this package
studies; they are enumerated in a canonical order and given stable labels:

* ``"1"``   -- the smallest subgroup {+-1},
* ``"0"``   -- the full unit group,
* ``"D1"``, ``"D2"``, ... -- the intermediate subgroups, sorted by order
  (ascending) and then lexicographically on their sorted element tuple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import InputError, NotCoprime, UnknownDelta

__all__ = [
    "UnitGroup",
    "DeltaSubgroup",
    "unit_group",
    "subgroups_containing_minus1",
    "delta_by_label",
    "delta_from_elements",
    "sqrt_mod",
    "crt",
    "hall_divisors",
    "order_mod",
]


# ---------------------------------------------------------------------------
# elementary helpers


def crt(r1: int, m1: int, r2: int, m2: int) -> int:
    """Return the unique x mod m1*m2 with x = r1 (mod m1), x = r2 (mod m2).

    Requires gcd(m1, m2) == 1.
    """
    assert math.gcd(m1, m2) == 1, (m1, m2)
    if m1 == 1:
        return r2 % m2
    if m2 == 1:
        return r1 % m1
    inv = pow(m1, -1, m2)
    return (r1 + m1 * ((r2 - r1) * inv % m2)) % (m1 * m2)


def sqrt_mod(a: int, m: int) -> int | None:
    """Smallest non-negative x with x*x = a (mod m), or None.

    Exhaustive scan; the moduli in this package are tiny (m <= 4*131).
    """
    if m <= 0:
        raise ValueError(f"modulus must be positive, got {m}")
    a %= m
    for x in range(m):
        if x * x % m == a:
            return x
    return None


def hall_divisors(n: int) -> list[int]:
    """Divisors d of n with gcd(d, n/d) == 1, ascending (includes 1 and n)."""
    return [d for d in range(1, n + 1) if n % d == 0 and math.gcd(d, n // d) == 1]


def order_mod(a: int, n: int) -> int:
    """Multiplicative order of a modulo n (a must be a unit)."""
    if math.gcd(a, n) != 1:
        raise NotCoprime(f"{a} is not a unit modulo {n}")
    k, x = 1, a % n
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


# ---------------------------------------------------------------------------
# unit groups


@dataclass(frozen=True)
class UnitGroup:
    """The multiplicative group (Z/NZ)*.

    For N == 1 the group is trivial and represented by the single residue 0
    (which is congruent to 1 mod 1).
    """

    N: int
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        assert self.N >= 1
        assert self.elements, "unit group cannot be empty"

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, a: int) -> bool:
        return a % self.N in self.elements if self.N > 1 else True

    def inverse(self, a: int) -> int:
        if self.N == 1:
            return 0
        if math.gcd(a, self.N) != 1:
            raise NotCoprime(f"{a} is not a unit modulo {self.N}")
        return pow(a, -1, self.N)


@lru_cache(maxsize=None)
def unit_group(N: int) -> UnitGroup:
    """The unit group (Z/NZ)*."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if N == 1:
        return UnitGroup(1, (0,))
    elems = tuple(a for a in range(1, N) if math.gcd(a, N) == 1)
    return UnitGroup(N, elems)


# ---------------------------------------------------------------------------
# subgroups containing -1


@dataclass(frozen=True)
class DeltaSubgroup:
    """A subgroup Delta of (Z/NZ)* with -1 in Delta.

    ``elements`` is the sorted tuple of residues in [0, N).  ``label`` is the
    canonical label described in the module docstring.
    """

    N: int
    elements: tuple[int, ...]
    label: str

    def __post_init__(self) -> None:
        assert self.elements == tuple(sorted(set(self.elements)))
        if self.N > 2:
            assert (self.N - 1) in self.elements, "-1 must lie in Delta"

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        """Index of Delta in the full unit group."""
        return unit_group(self.N).order // self.order

    def __contains__(self, a: int) -> bool:
        return a % self.N in self.elements if self.N > 1 else True

    @property
    def is_minimal(self) -> bool:
        """True when Delta = {+-1}."""
        return self.order == len({1 % self.N, (self.N - 1) % self.N})

    @property
    def is_full(self) -> bool:
        return self.order == unit_group(self.N).order

    def coset_reps(self) -> tuple[int, ...]:
        """Representatives of (Z/NZ)*/Delta, each the smallest in its coset."""
        seen: set[int] = set()
        reps: list[int] = []
        for a in unit_group(self.N).elements:
            if a in seen:
                continue
            reps.append(a)
            seen.update(a * h % self.N for h in self.elements)
        return tuple(reps)

    def coset_min(self, a: int) -> int:
        """Smallest residue in the coset a*Delta (the canonical coset name)."""
        a %= self.N
        if math.gcd(a, max(self.N, 1)) != 1:
            raise NotCoprime(f"{a} is not a unit modulo {self.N}")
        return min(a * h % self.N for h in self.elements)


def _closure(N: int, gens: set[int]) -> tuple[int, ...]:
    """Subgroup of (Z/NZ)* generated by ``gens`` (all must be units)."""
    gen_set = {g % N for g in gens}
    elems = {1 % N}
    frontier = [1 % N]
    while frontier:
        x = frontier.pop()
        for g in gen_set:
            y = x * g % N
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return tuple(sorted(elems))


@lru_cache(maxsize=None)
def subgroups_containing_minus1(N: int) -> tuple[DeltaSubgroup, ...]:
    """All subgroups of (Z/NZ)* containing -1, canonically ordered and labeled.

    Order: by subgroup order ascending, ties broken lexicographically on the
    sorted element tuple.  The first entry is {+-1} (label "1"), the last is
    the full unit group (label "0"); entries in between get labels "D1",
    "D2", ...  Requires N >= 3 (below that {+-1} is already everything).
    """
    if N < 3:
        raise InputError(f"subgroup enumeration needs N >= 3, got {N}")
    units = unit_group(N)
    base = _closure(N, {N - 1})
    found: set[tuple[int, ...]] = {base}
    frontier = [base]
    while frontier:
        nxt: list[tuple[int, ...]] = []
        for sub in frontier:
            have = set(sub)
            for g in units.elements:
                if g in have:
                    continue
                bigger = _closure(N, have | {g})
                if bigger not in found:
                    found.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    ordered = sorted(found, key=lambda t: (len(t), t))
    out: list[DeltaSubgroup] = []
    inter = 0
    for elems in ordered:
        if elems == base:
            label = "1"
        elif len(elems) == units.order:
            label = "0"
        else:
            inter += 1
            label = f"D{inter}"
        out.append(DeltaSubgroup(N, elems, label))
    return tuple(out)


def delta_by_label(N: int, label: str) -> DeltaSubgroup:
    """Look up a subgroup by its canonical label ("1", "0", "D3", ...).

    Accepts a few human variants: "Δ3" and "d3" mean "D3".
    """
    canon = label.strip().replace("Δ", "D").replace("δ", "D").upper()
    for sub in subgroups_containing_minus1(N):
        if sub.label.upper() == canon:
            return sub
    raise UnknownDelta(f"no subgroup labeled {label!r} modulo {N}")


def delta_from_elements(N: int, elements: list[int] | tuple[int, ...]) -> DeltaSubgroup:
    """Canonical subgroup generated by ``elements`` together with -1.

    The input need not be closed; it is closed under multiplication and
    negation, then matched against the canonical enumeration (so the result
    carries the canonical label).
    """
    for a in elements:
        if math.gcd(a, N) != 1:
            raise NotCoprime(f"{a} is not a unit modulo {N}")
    closed = _closure(N, {a % N for a in elements} | {N - 1})
    for sub in subgroups_containing_minus1(N):
        if sub.elements == closed:
            return sub
    raise UnknownDelta(f"closure {closed} not found modulo {N}")  # pragma: no cover
