"""Diamond operators, Atkin-Lehner lifts, and the normalizer machinery.

For a Hall divisor d of N (gcd(d, N/d) = 1), the Atkin-Lehner operator W_d
acts on X_0(N); it lifts to an intermediate curve exactly when the unit
automorphism t_d (CRT-mix of a mod N/d with a^{-1} mod d) preserves Delta.
The concrete lift hat_W_d is built from a solution of a quadratic congruence
and normalizes Gamma_Delta(N); diamonds [a] always do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .congruence import is_member, schreier_generators
from .errors import DoesNotDescend, InputError, NotCoprime, NotNormalizing, UNBOUNDED
from .matrices import Mat2
from .zmodn import DeltaSubgroup, crt, delta_from_elements, unit_group

__all__ = [
    "NormalizerElement",
    "diamond",
    "diamond_matrix",
    "t_map",
    "t_image",
    "descends",
    "hat_W",
    "normalizes",
    "normalizer_element",
    "automorphism_order",
    "fricke_field_degree",
    "ORDER_CAP",
]

#: automorphism_order gives up past this power and returns UNBOUNDED.
ORDER_CAP = 24


@dataclass(frozen=True)
class NormalizerElement:
    """An integer matrix normalizing Gamma_Delta(N), with provenance.

    ``kind`` is one of "diamond", "atkin-lehner", "explicit"; ``name`` is a
    short human-readable description such as "[3]", "W^_7" or "[3]W^_7".
    """

    matrix: Mat2
    kind: str
    name: str
    N: int

    def __post_init__(self) -> None:
        assert self.matrix.det >= 1
        assert self.kind in ("diamond", "atkin-lehner", "explicit")

    @property
    def det(self) -> int:
        return self.matrix.det


def diamond_matrix(a: int, N: int) -> Mat2:
    """The diamond bracket [a]: a matrix [[a', b], [N, d']] in SL2(Z) with
    a' = a (mod N)."""
    if math.gcd(a, N) != 1:
        raise NotCoprime(f"{a} is not a unit modulo {N}")
    a %= N
    d = pow(a, -1, N)
    b = (a * d - 1) // N
    m = Mat2(a, b, N, d)
    assert m.det == 1
    return m


def diamond(a: int, N: int) -> NormalizerElement:
    """The diamond operator [a] as a normalizer element.

    Diamonds lie in Gamma_0(N), which normalizes Gamma_Delta(N), so no
    verification is needed.
    """
    return NormalizerElement(diamond_matrix(a, N), "diamond", f"[{a % N}]", N)


# ---------------------------------------------------------------------------
# the t_d unit map and descent


def t_map(N: int, d: int, a: int) -> int:
    """t_d(a): the unit congruent to a mod N/d and to a^{-1} mod d."""
    if d < 1 or N % d or math.gcd(d, N // d) != 1:
        raise InputError(f"d={d} is not a Hall divisor of N={N}")
    if math.gcd(a, N) != 1:
        raise NotCoprime(f"{a} is not a unit modulo {N}")
    inv = pow(a % d, -1, d) if d > 1 else 0
    return crt(a % (N // d), N // d, inv, d)

def t_image(N: int, d: int, delta: DeltaSubgroup) -> DeltaSubgroup:
    """The subgroup t_d(Delta), with its canonical label."""
    return delta_from_elements(N, [t_map(N, d, a) for a in delta.elements])


def descends(d: int, delta: DeltaSubgroup) -> bool:
    """True when W_d induces an automorphism of the (N, Delta) curve,
    i.e. t_d(Delta) = Delta.  Symmetric in d <-> N/d."""
    N = delta.N
    return {t_map(N, d, a) for a in delta.elements} == set(delta.elements)


# ---------------------------------------------------------------------------
# Atkin-Lehner lifts


def hat_W(d: int, delta: DeltaSubgroup) -> NormalizerElement | None:
    """The preferred Atkin-Lehner lift hat_W_d on the (N, Delta) curve.

    Raises :class:`DoesNotDescend` when t_d does not preserve Delta.  When
    it does, returns the standard matrix, or None when the defining
    congruence has no solution (the operator still descends but has no
    matrix of this shape; no fixed points arise from this construction).

    * d not in {2, 3}: x0 minimal with -d*x0^2 = 1 (mod N/d), giving
      [[d*x0, y0], [N, -d*x0]] of determinant d (for d = N this is
      [[0, -1], [N, 0]]).
    * d in {2, 3}: scan t in (0, 1, -1) for x0 with d*x0*(t-x0) = 1
      (mod N/d), giving [[d*x0, y0], [N, d*(t-x0)]].
    """
    N = delta.N
    if d < 2 or N % d or math.gcd(d, N // d) != 1:
        raise InputError(f"d={d} is not a Hall divisor >= 2 of N={N}")
    if not descends(d, delta):
        raise DoesNotDescend(f"W_{d} does not descend to (N={N}, {delta.label})")
    M = N // d
    if d not in (2, 3):
        for x0 in range(M if M > 1 else 1):
            if (-d * x0 * x0 - 1) % M == 0 if M > 1 else x0 == 0:
                y0 = (-d * x0 * x0 - 1) // M
                w = Mat2(d * x0, y0, N, -d * x0)
                assert w.det == d
                return NormalizerElement(w, "atkin-lehner", f"W^_{d}", N)
        return None
    for t in (0, 1, -1):
        for x0 in range(M):
            if (d * x0 * (t - x0) - 1) % M == 0:
                y0 = (d * d * x0 * (t - x0) - d) // N
                w = Mat2(d * x0, y0, N, d * (t - x0))
                assert w.det == d and w.trace == d * t
                return NormalizerElement(w, "atkin-lehner", f"W^_{d}", N)
    return None


# ---------------------------------------------------------------------------
# normalizer verification and orders


def normalizes(matrix: Mat2, delta: DeltaSubgroup) -> bool:
    """True when matrix * Gamma_Delta(N) * matrix^{-1} = Gamma_Delta(N).

    Checked on Schreier generators; one-sided containment suffices because
    conjugation preserves the index in SL2(Z).
    """
    N = delta.N
    m = matrix.det
    if m < 1:
        return False
    for gen in schreier_generators(N, delta):
        conj = matrix * gen * matrix.adjugate()
        if not conj.divisible_by(m):
            return False
        if not is_member(conj.divided_by(m), N, delta):
            return False
    return True


def normalizer_element(
    matrix: Mat2, delta: DeltaSubgroup, kind: str = "explicit", name: str | None = None
) -> NormalizerElement:
    """Wrap and verify an explicit candidate matrix; raises NotNormalizing."""
    if not normalizes(matrix, delta):
        raise NotNormalizing(
            f"{matrix} does not normalize Gamma_Delta({delta.N}), Delta={delta.label}"
        )
    return NormalizerElement(matrix, kind, name or str(matrix), delta.N)


def automorphism_order(w: NormalizerElement | Mat2, delta: DeltaSubgroup):
    """Order of the automorphism induced by w, or UNBOUNDED past the cap.

    w^k induces the identity exactly when w^k is a scalar multiple of a
    member of Gamma_Delta(N): det(w^k) = s^2, s | w^k entrywise, and
    w^k / s passes membership.
    """
    mat = w.matrix if isinstance(w, NormalizerElement) else w
    N = delta.N
    power = mat
    for k in range(1, ORDER_CAP + 1):
        det = power.det
        s = math.isqrt(det)
        if s * s == det and power.divisible_by(s) and is_member(power.divided_by(s), N, delta):
            return k
        power = power * mat
    return UNBOUNDED


def fricke_field_degree(delta: DeltaSubgroup) -> int:
    """Degree over Q of the field of definition of the lifts of W_N:
    phi(N) / |Delta|."""
    return unit_group(delta.N).order // delta.order
