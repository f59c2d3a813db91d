"""Bielliptic/hyperelliptic classification of intermediate modular curves.

This module decides, for each intermediate curve X_Delta(N), whether the
curve is rational, elliptic, hyperelliptic, bielliptic, or none of these,
and what that means for its set of quadratic points.  Positive results are
certified by explicit involutions together with fixed-point counts; negative
results are certified by an explicit list of elimination rules:

* ``unramified-cover`` -- a Galois cover X -> Y (genus of Y at least 2,
  Y neither hyperelliptic nor of genus <= 1) must be totally unramified
  after dividing by a common bielliptic involution, forcing
  ``g - 1 == deg * (g_Y - 1)``; a mismatch excludes biellipticity
  (valid for genus >= 6, where a bielliptic involution is unique and
  central).
* ``castelnuovo`` -- the Castelnuovo-Severi inequality applied to the pair
  (cover of Y, hypothetical bielliptic map).
* ``cusp-rationality`` / ``count-bound`` / ``lift-conflict`` -- for genus
  >= 6 a bielliptic involution descends to a hyperelliptic or bielliptic
  involution of X_0(N) (or lies in the diamond group); each candidate
  involution of X_0(N) is excluded by a field-of-definition argument, by a
  rational cusp mapping to non-rational cusps, by a fixed-point count bound,
  or by inspecting all of its lifts.
* ``covered-by-non-bielliptic`` -- a Galois cover of a curve already known
  to be neither bielliptic nor subhyperelliptic (again for genus >= 6).
* ``curated-verdict`` -- literature results for three low-genus curves out
  of reach of the counting rules.

Counting fixed points of an automorphism is done by two independent routes:
a lift analysis over the fixed points of the induced Atkin-Lehner involution
on X_0(N) (:func:`lift_fixed_points`), and a direct search for elliptic
elements in the coset of the automorphism acting on the coset space
(:func:`coset_fixed_points`).  The two must agree; tests cross-check them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

from .atkinlehner import (
    NormalizerElement,
    automorphism_order,
    descends,
    diamond_matrix,
    fricke_field_degree,
    hat_W,
    normalizes,
)
from .congruence import (
    coset_action,
    cusp_table,
    genus,
    is_member,
    transversal,
)
from .errors import InputError, InvariantError, ParityViolation
from .facts import FactBook
from .matrices import IDENTITY, Mat2
from .qforms import FixedPointSet, QForm, fixed_points_X0, reduced_classes
from .zmodn import (
    DeltaSubgroup,
    delta_by_label,
    delta_from_elements,
    hall_divisors,
    subgroups_containing_minus1,
)

__all__ = [
    "ClassificationRecord",
    "Classifier",
    "Evidence",
    "LiftReport",
    "Witness",
    "accola_certificates",
    "castelnuovo_bound",
    "census",
    "classify_curve",
    "coset_fixed_points",
    "cuspidal_fixed_count",
    "eliminate_by_cusp_rationality",
    "involution_quotient_genus",
    "lift_fixed_points",
]


# --------------------------------------------------------------------------
# small shared helpers


def _resolve(N: int, delta) -> DeltaSubgroup:
    """Accept a subgroup object, a label, or an element iterable."""
    if isinstance(delta, DeltaSubgroup):
        if delta.N != N:
            raise InputError(f"subgroup has level {delta.N}, expected {N}")
        return delta
    if isinstance(delta, str):
        return delta_by_label(N, delta)
    return delta_from_elements(N, delta)


def _full(N: int) -> DeltaSubgroup:
    """The full unit subgroup, i.e. the curve X_0(N)."""
    return delta_by_label(N, "0")


def curve_name(N: int, label: str) -> str:
    """Human-readable name of the curve with the given subgroup label."""
    if label == "0":
        return f"X_0({N})"
    if label == "1":
        return f"X_1({N})"
    return f"X_{{{label}}}({N})"


def _signed(a: int, N: int) -> int:
    """Representative of ``a mod N`` in ``(-N/2, N/2]``."""
    a %= N
    return a if a <= N // 2 else a - N


def _stabilizer_generator(form: QForm) -> Mat2 | None:
    """Generator (mod +-1) of the stabiliser of the root of ``form`` in
    SL_2(Z), for the two discriminants with extra automorphisms."""
    p, q, r = form.p, form.q, form.r
    if form.disc == -4:
        return Mat2(-q // 2, -r, p, q // 2)
    if form.disc == -3:
        return Mat2((1 - q) // 2, -r, p, (1 + q) // 2)
    return None


def involution_quotient_genus(g: int, r: int) -> int:
    """Genus of the quotient by an involution with ``r`` fixed points.

    Riemann-Hurwitz gives ``2g - 2 = 2(2g' - 2) + r``; the count must
    satisfy ``r == 2g + 2 (mod 4)`` and ``0 <= r <= 2g + 2``.
    """
    if r < 0 or r > 2 * g + 2 or (r - (2 * g + 2)) % 4 != 0:
        raise ParityViolation(
            f"impossible fixed-point count {r} for an involution on a genus-{g} curve"
        )
    return (2 * g + 2 - r) // 4


def castelnuovo_bound(n1: int, g1: int, n2: int, g2: int) -> int:
    """Castelnuovo-Severi genus bound for a curve with two independent maps
    of degrees ``n1, n2`` onto curves of genus ``g1, g2``."""
    return n1 * g1 + n2 * g2 + (n1 - 1) * (n2 - 1)


def generic_atkin_lehner(N: int, d: int) -> Mat2:
    """Some integral matrix of determinant ``d`` in the coset of the
    Atkin-Lehner operator ``W_d`` over ``Gamma_0(N)``."""
    if d == N:
        return Mat2(0, -1, N, 0)
    m = N // d
    alpha = pow(d, -1, m)
    beta = (alpha * d - 1) // m
    w = Mat2(alpha * d, beta, N, d)
    assert w.det == d
    return w


# --------------------------------------------------------------------------
# fixed points, route A: lifting along X_Delta(N) -> X_0(N)


@dataclass(frozen=True)
class LiftReport:
    """Fixed points of an automorphism lying above an Atkin-Lehner
    involution of X_0(N), computed fibre by fibre.

    ``witnesses`` holds one ``(base_index, fibre_rep, conjugacy_witness)``
    triple per fixed point: the index of the base fixed point, the diamond
    representative of the fibre point, and the upper-left class (mod N,
    signed) of the group element realising the fixed-point equation.
    """

    N: int
    delta_label: str
    candidate_name: str
    base_count: int
    fixed_elliptic: int
    fixed_cuspidal: int
    witnesses: tuple[tuple[int, int, int], ...]

    @property
    def fixed_total(self) -> int:
        return self.fixed_elliptic + self.fixed_cuspidal


def _fibre_reps(N: int, delta: DeltaSubgroup, extra_class: int | None) -> tuple[int, ...]:
    """Coset representatives of ``<Delta, extra_class>`` inside the units.

    These index the fibre of X_Delta(N) -> X_0(N) over a point whose
    stabiliser has diamond part ``extra_class`` (``None`` for a free fibre).
    """
    gens = set(delta.elements)
    if extra_class is not None:
        gens.add(extra_class % N)
    sub = delta_from_elements(N, gens)
    return sub.coset_reps()


def lift_fixed_points(
    N: int,
    delta,
    candidate: Mat2 | NormalizerElement,
    base: FixedPointSet,
) -> LiftReport:
    """Count fixed points of ``candidate`` on X_Delta(N) above the fixed
    points of the Atkin-Lehner involution W_d on X_0(N).

    ``candidate`` must normalise Gamma_Delta(N) and lie in the coset
    ``Gamma_0(N) * W_d`` (determinant ``d == base.d``).  Each base fixed
    point z_j contributes one fibre; the fibre is indexed by diamond coset
    representatives modulo the stabiliser of z_j, and a fibre point is fixed
    exactly when a twisted conjugate of the candidate falls back into
    Gamma_Delta(N), allowing a correction by the stabiliser of z_j.
    """
    delta = _resolve(N, delta)
    w = candidate.matrix if isinstance(candidate, NormalizerElement) else candidate
    name = candidate.name if isinstance(candidate, NormalizerElement) else str(w)
    d = base.d
    if w.det != d:
        raise InputError(
            f"candidate determinant {w.det} does not match the operator W_{d}"
        )
    if base.points:
        q = w * base.points[0].matrix.adjugate()
        if not (q.divisible_by(d) and q.divided_by(d).c % N == 0):
            raise InputError(
                f"candidate {w} does not lie above the Atkin-Lehner operator W_{d}"
            )

    witnesses: list[tuple[int, int, int]] = []
    for j, point in enumerate(base.points):
        primitive = QForm(
            point.form.p // point.ell,
            point.form.q // point.ell,
            point.form.r // point.ell,
        )
        stab = _stabilizer_generator(primitive)
        extra = stab.a % N if stab is not None else None
        corrections = [IDENTITY]
        if stab is not None:
            corrections.append(stab)
            if primitive.disc == -3:
                corrections.append(stab * stab)
        wj_adj = point.matrix.adjugate()
        for rep in _fibre_reps(N, delta, extra):
            g_mat = diamond_matrix(rep, N)
            g_adj = g_mat.adjugate()
            for s in corrections:
                m = w * g_mat * s.adjugate() * wj_adj * g_adj
                if not m.divisible_by(d):
                    continue
                gamma = m.divided_by(d)
                assert gamma.det == 1
                if is_member(gamma, N, delta):
                    witnesses.append((j, rep, _signed(gamma.a, N)))
                    break

    cuspidal = cuspidal_fixed_count(N, delta, w)
    return LiftReport(
        N=N,
        delta_label=delta.label,
        candidate_name=name,
        base_count=base.count,
        fixed_elliptic=len(witnesses),
        fixed_cuspidal=cuspidal,
        witnesses=tuple(witnesses),
    )


# --------------------------------------------------------------------------
# fixed points, route B: elliptic elements in the coset, orbit by orbit


def coset_fixed_points(N: int, delta, w: Mat2) -> int:
    """Number of non-cuspidal fixed points of the automorphism induced by
    ``w`` on X_Delta(N), found directly on the coset space.

    A point U_x(z) is fixed exactly when some integral elliptic element of
    determinant ``det(w)`` fixing z lands in ``+-Gamma_Delta(N) * w`` after
    conjugation by the coset transversal matrix U_x.  Elliptic elements are
    enumerated by trace and by the primitive binary quadratic form of their
    fixed point; matches are grouped by form and counted up to the action of
    the stabiliser of the form's root, which identifies coset positions
    representing one and the same point.
    """
    delta = _resolve(N, delta)
    m = w.det
    if m <= 0:
        raise InputError("automorphism matrix must have positive determinant")
    act = coset_action(N, delta)
    trans = transversal(N, delta)
    adjoints = [u.adjugate() for u in trans]
    adj_w = w.adjugate()

    traces = {0}
    for c in (1, 2, 3):
        s = isqrt(c * m)
        if s * s == c * m and s * s < 4 * m:
            traces.add(s)

    matches: dict[QForm, set[int]] = {}
    for t in sorted(traces):
        v = 4 * m - t * t
        for u in range(1, isqrt(v) + 1):
            if v % (u * u):
                continue
            d0 = -(v // (u * u))
            if d0 % 4 not in (0, 1):
                continue
            for form in reduced_classes(d0):
                if (t - u * form.q) % 2:
                    continue
                elem = Mat2(
                    (t - u * form.q) // 2,
                    -u * form.r,
                    u * form.p,
                    (t + u * form.q) // 2,
                )
                assert elem.det == m and elem.trace == t
                for x in range(act.degree):
                    p = trans[x] * elem * adjoints[x] * adj_w
                    if not p.divisible_by(m):
                        continue
                    gamma = p.divided_by(m)
                    if gamma.det == 1 and is_member(gamma, N, delta):
                        matches.setdefault(form, set()).add(x)

    count = 0
    for form, positions in matches.items():
        stab = _stabilizer_generator(form)
        if stab is None:
            count += len(positions)
            continue
        seen: set[int] = set()
        for x in sorted(positions):
            if x in seen:
                continue
            count += 1
            y = x
            while True:
                seen.add(y)
                y = act.act(y, stab)
                if y == x:
                    break
    return count


def cuspidal_fixed_count(N: int, delta, w: Mat2 | NormalizerElement) -> int:
    """Number of cusp classes of X_Delta(N) fixed by the automorphism
    induced by the normalising matrix ``w``."""
    delta = _resolve(N, delta)
    mat = w.matrix if isinstance(w, NormalizerElement) else w
    table = cusp_table(N, delta)
    return sum(
        1
        for idx in range(len(table.classes))
        if table.act_matrix(mat, idx) == idx
    )


# --------------------------------------------------------------------------
# record model


@dataclass(frozen=True)
class Witness:
    """An involution together with its verified fixed-point count."""

    name: str
    matrix: Mat2
    kind: str  # "diamond" | "atkin-lehner" | "explicit"
    fixed_elliptic: int
    fixed_cuspidal: int

    @property
    def fixed_total(self) -> int:
        return self.fixed_elliptic + self.fixed_cuspidal


@dataclass(frozen=True)
class Evidence:
    """One piece of (positive or negative) classification evidence."""

    rule: str
    detail: str
    target: tuple[int, str] | None = None
    degree: int | None = None
    facts_used: tuple[str, ...] = ()


@dataclass(frozen=True)
class ClassificationRecord:
    """Everything the classifier established about one curve."""

    N: int
    delta_label: str
    delta_elements: tuple[int, ...]
    genus: int
    status: str  # rational | elliptic | hyperelliptic | bielliptic | not-bielliptic | undecided
    is_bielliptic: bool | None
    witnesses: tuple[Witness, ...]
    hyperelliptic_witnesses: tuple[Witness, ...]
    evidence: tuple[Evidence, ...]
    facts_used: tuple[str, ...]
    quadratic_points: str  # infinite | finite | finite-conditional | n/a
    warnings: tuple[str, ...]

    @property
    def name(self) -> str:
        return curve_name(self.N, self.delta_label)


# --------------------------------------------------------------------------
# the classifier


#: Extra involution candidates for the witness search, beyond diamonds and
#: Atkin-Lehner lifts: normaliser elements mixing W_d with level structure.
#: The generic shape [[1,0],[N/2,1]] is tried for every level divisible by 4;
#: the listed matrices are the known sporadic shapes.
_EXTRA_WITNESS_MATRICES: dict[int, tuple[Mat2, ...]] = {
    40: (Mat2(-10, 1, -120, 10),),
    48: (Mat2(-6, 1, -48, 6),),
}


class Classifier:
    """Curve-by-curve classification engine with a shared memo table.

    ``facts`` controls whether curated literature inputs (complete involution
    inventories, rank data, curated verdicts) may be consulted; with the book
    disabled the classifier reports only what it derives itself.
    """

    def __init__(self, facts: FactBook | None = None):
        self.facts = facts if facts is not None else FactBook()
        self._memo: dict[tuple[int, str], ClassificationRecord] = {}
        self._in_progress: set[tuple[int, str]] = set()

    # -- public entry points ------------------------------------------------

    def classify(self, N: int, delta) -> ClassificationRecord:
        delta = _resolve(N, delta)
        key = (N, delta.label)
        if key in self._memo:
            return self._memo[key]
        if key in self._in_progress:
            raise InvariantError(f"classification cycle at {curve_name(N, delta.label)}")
        self._in_progress.add(key)
        try:
            record = self._classify(N, delta)
        finally:
            self._in_progress.discard(key)
        self._memo[key] = record
        return record

    def scope_levels(self, max_n: int) -> tuple[int, ...]:
        """Levels whose intermediate curves can have infinitely many
        quadratic points: X_0(N) subhyperelliptic or bielliptic, with at
        least one intermediate subgroup.

        The X_0(N) classification used here delimits the survey and is read
        even when the fact book is disabled.
        """
        if max_n > 256:
            raise InputError("census is supported for levels up to 256")
        out = []
        for N in range(13, max_n + 1):
            subs = subgroups_containing_minus1(N)
            inters = [s for s in subs if not s.is_minimal and not s.is_full]
            if not inters:
                continue
            if self._x0_type(N) is None:
                continue
            out.append(N)
        return tuple(out)

    def census(self, max_n: int = 131) -> tuple[ClassificationRecord, ...]:
        """Classify every intermediate curve at every level in scope."""
        records = []
        for N in self.scope_levels(max_n):
            for sub in subgroups_containing_minus1(N):
                if sub.is_minimal or sub.is_full:
                    continue
                records.append(self.classify(N, sub))
        return tuple(records)

    # -- curated X_0(N) inventory -------------------------------------------

    def _x0_type(self, N: int) -> str | None:
        """Coarse type of X_0(N) from the complete literature lists, or
        ``None`` when X_0(N) is neither subhyperelliptic nor bielliptic.
        Used only to delimit the survey scope."""
        book = self.facts
        for key, label in (
            ("x0.rational", "rational"),
            ("x0.elliptic", "elliptic"),
            ("x0.hyperelliptic", "hyperelliptic"),
            ("x0.bielliptic", "bielliptic"),
        ):
            fact = book._table[key]  # scope delimitation bypasses the switch
            if N in fact.as_levels():
                return label
        return None

    # -- main classification flow -------------------------------------------

    def _classify(self, N: int, delta: DeltaSubgroup) -> ClassificationRecord:
        g = genus(N, delta)
        label = delta.label
        warnings: list[str] = []
        if g == 0:
            return self._record(N, delta, g, "rational", None, (), (), (), "infinite", ())
        if g == 1:
            return self._record(N, delta, g, "elliptic", None, (), (), (), "infinite", ())

        biell, hyper, evidence = self._witness_search(N, delta, g)

        if hyper or g == 2:
            if g == 2 and not hyper:
                evidence = evidence + (
                    Evidence("genus-two", "every genus-2 curve is hyperelliptic"),
                )
            qp, qp_facts, qp_warn = "infinite", (), ()
            return self._record(
                N, delta, g, "hyperelliptic", bool(biell), biell, hyper,
                evidence, qp, qp_facts, warnings=qp_warn,
            )

        if biell:
            qp, qp_facts, qp_warn = self._quadratic_points_bielliptic(N)
            return self._record(
                N, delta, g, "bielliptic", True, biell, hyper, evidence,
                qp, qp_facts, warnings=qp_warn,
            )

        accola = self._accola_genus4(N, delta, g)
        if accola is not None:
            warnings.append(
                "bielliptic witness is an exceptional automorphism, "
                "not induced by a normalizer matrix"
            )
            qp, qp_facts, qp_warn = self._quadratic_points_bielliptic(N)
            return self._record(
                N, delta, g, "bielliptic", True, (), (), evidence + (accola,),
                qp, qp_facts, warnings=tuple(warnings) + qp_warn,
            )

        negative = self._eliminations(N, delta, g)
        evidence = evidence + negative
        if negative:
            qp, qp_facts, qp_warn = self._quadratic_points_not_bielliptic()
            return self._record(
                N, delta, g, "not-bielliptic", False, (), (), evidence,
                qp, qp_facts, warnings=qp_warn,
            )

        if not self.facts.enabled:
            warnings.append(
                "no decisive evidence with curated facts disabled; "
                "status downgraded to undecided"
            )
        else:
            warnings.append("no decisive evidence found")
        return self._record(
            N, delta, g, "undecided", None, (), (), evidence, "n/a", (),
            warnings=tuple(warnings),
        )

    def _record(
        self,
        N: int,
        delta: DeltaSubgroup,
        g: int,
        status: str,
        is_bielliptic: bool | None,
        biell: tuple[Witness, ...],
        hyper: tuple[Witness, ...],
        evidence: tuple[Evidence, ...],
        qp: str,
        qp_facts: tuple[str, ...] = (),
        warnings: tuple[str, ...] | list[str] = (),
    ) -> ClassificationRecord:
        facts_used = set(qp_facts)
        for ev in evidence:
            facts_used.update(ev.facts_used)
        return ClassificationRecord(
            N=N,
            delta_label=delta.label,
            delta_elements=delta.elements,
            genus=g,
            status=status,
            is_bielliptic=is_bielliptic,
            witnesses=biell,
            hyperelliptic_witnesses=hyper,
            evidence=evidence,
            facts_used=tuple(sorted(facts_used)),
            quadratic_points=qp,
            warnings=tuple(warnings),
        )

    # -- quadratic points ---------------------------------------------------

    def _quadratic_points_bielliptic(self, N: int):
        if N == 37:
            fact = self.facts.get("n37.quadratic-finite")
            if fact is not None:
                return "finite", ("n37.quadratic-finite",), ()
        else:
            fact = self.facts.get("rank0")
            if fact is not None and N in fact.as_levels():
                return "finite", ("rank0",), ()
            if fact is not None:
                return (
                    "finite-conditional",
                    (),
                    (f"level {N} lacks curated rank data; "
                     "finiteness of quadratic points not certified",),
                )
        return (
            "finite-conditional",
            (),
            ("curated rank data disabled; finiteness of quadratic points "
             "reported conditionally",),
        )

    def _quadratic_points_not_bielliptic(self):
        fact = self.facts.get("intermediate.hyperelliptic")
        if fact is not None:
            return "finite", ("intermediate.hyperelliptic",), ()
        return (
            "finite-conditional",
            (),
            ("hyperellipticity cannot be excluded without the curated "
             "inventory; finiteness of quadratic points reported "
             "conditionally",),
        )

    # -- witness search -----------------------------------------------------

    def _al_reference(self, N: int, d: int, delta: DeltaSubgroup):
        """Reference matrix above W_d, its base fixed-point set, and its
        diamond offset against the normalised hat-lift (when one exists)."""
        base = fixed_points_X0(N, d)
        hat = hat_W(d, delta)
        if base.points:
            ref = base.points[0].matrix
        elif hat is not None:
            ref = hat.matrix
        else:
            ref = generic_atkin_lehner(N, d)
        offset = 1
        if hat is not None:
            q = ref * hat.matrix.adjugate()
            assert q.divisible_by(d)
            offset = q.divided_by(d).a % N
        return ref, base, offset, hat is not None

    def _witness_candidates(self, N: int, delta: DeltaSubgroup):
        """All involution candidates tried on X_Delta(N), with names."""
        reps = delta.coset_reps()
        out: list[tuple[str, Mat2, str, FixedPointSet | None]] = []
        for b in reps:
            if b % N == 1 % N:
                continue
            if (b * b) % N in delta:
                out.append((f"[{b}]", diamond_matrix(b, N), "diamond", None))
        for d in hall_divisors(N):
            if d == 1 or not descends(d, delta):
                continue
            ref, base, offset, have_hat = self._al_reference(N, d, delta)
            for b in reps:
                mat = diamond_matrix(b, N) * ref if b != 1 else ref
                if have_hat:
                    cls = delta.coset_min(b * offset % N)
                    name = f"W^_{d}" if cls == 1 else f"[{cls}]W^_{d}"
                else:
                    name = f"[{b}]W_{d}" if b != 1 else f"W_{d}"
                out.append((name, mat, "atkin-lehner", base))
        extras = list(_EXTRA_WITNESS_MATRICES.get(N, ()))
        if N % 4 == 0:
            extras.insert(0, Mat2(1, 0, N // 2, 1))
        for mat in extras:
            if not normalizes(mat, delta):
                continue
            for b in reps:
                cand = diamond_matrix(b, N) * mat if b != 1 else mat
                name = str(mat) if b == 1 else f"[{b}]{mat}"
                out.append((name, cand, "explicit", None))
        return out

    def _witness_search(self, N: int, delta: DeltaSubgroup, g: int):
        """Verify all candidate involutions; sort them into bielliptic
        witnesses (2g-2 fixed points) and hyperelliptic witnesses (2g+2)."""
        biell: list[Witness] = []
        hyper: list[Witness] = []
        evidence: list[Evidence] = []
        for name, mat, kind, base in self._witness_candidates(N, delta):
            order = automorphism_order(mat, delta)
            if order != 2:
                continue
            if kind == "atkin-lehner" and base is not None:
                report = lift_fixed_points(N, delta, mat, base)
                elliptic, cuspidal = report.fixed_elliptic, report.fixed_cuspidal
            else:
                elliptic = coset_fixed_points(N, delta, mat)
                cuspidal = cuspidal_fixed_count(N, delta, mat)
            total = elliptic + cuspidal
            involution_quotient_genus(g, total)  # parity invariant
            if total == 2 * g - 2:
                if kind == "atkin-lehner" and mat.det == N:
                    assert fricke_field_degree(delta) == 1 or g <= 5
                witness = Witness(name, mat, kind, elliptic, cuspidal)
                biell.append(witness)
                evidence.append(Evidence(
                    "bielliptic-witness",
                    f"{name} is an involution with {total} = 2g-2 fixed points",
                ))
            elif total == 2 * g + 2:
                witness = Witness(name, mat, kind, elliptic, cuspidal)
                hyper.append(witness)
                evidence.append(Evidence(
                    "hyperelliptic-witness",
                    f"{name} is an involution with {total} = 2g+2 fixed points",
                ))
        return tuple(biell), tuple(hyper), tuple(evidence)

    # -- Accola certificates ------------------------------------------------

    def _accola_genus4(self, N: int, delta: DeltaSubgroup, g: int) -> Evidence | None:
        """Genus-4 curve with an unramified cyclic degree-3 cover of a
        genus-2 curve is bielliptic (Accola); the cover is found among the
        diamond quotients, so the certificate is machine-checkable."""
        if g != 4:
            return None
        for sub in subgroups_containing_minus1(N):
            if len(sub.elements) != 3 * len(delta.elements):
                continue
            if not set(delta.elements) <= set(sub.elements):
                continue
            gy = genus(N, sub)
            if gy != 2:
                continue
            # Riemann-Hurwitz: 2*4-2 == 3*(2*2-2) + ram forces ram == 0.
            return Evidence(
                "accola-genus4",
                f"unramified cyclic degree-3 cover of genus-2 "
                f"{curve_name(N, sub.label)}: genus-4 curve is bielliptic",
                target=(N, sub.label),
                degree=3,
            )
        return None

    def _accola_genus5(self, N: int, delta: DeltaSubgroup, g: int) -> Evidence | None:
        """Genus-5 curve, itself not hyperelliptic, with a degree-2 cover of
        a hyperelliptic genus-3 curve is bielliptic (Accola)."""
        if g != 5:
            return None
        for M, label2, deg, _galois in self._covers(N, delta):
            if deg != 2:
                continue
            target = self.classify(M, label2)
            if target.genus != 3 or target.status != "hyperelliptic":
                continue
            return Evidence(
                "accola-genus5",
                f"degree-2 cover of hyperelliptic genus-3 "
                f"{curve_name(M, label2)}: non-hyperelliptic genus-5 curve "
                f"is bielliptic",
                target=(M, label2),
                degree=2,
                facts_used=target.facts_used,
            )
        return None

    # -- cover enumeration --------------------------------------------------

    def _covers(self, N: int, delta: DeltaSubgroup):
        """Covers X_Delta(N) -> X_Delta''(M): diamond quotients at level N
        (always Galois) and level-lowering maps (Galois when of degree 2)."""
        out: list[tuple[int, str, int, bool]] = []
        deg_self = coset_action(N, delta).degree
        for sub in subgroups_containing_minus1(N):
            if len(sub.elements) <= len(delta.elements):
                continue
            if not set(delta.elements) <= set(sub.elements):
                continue
            deg = len(sub.elements) // len(delta.elements)
            out.append((N, sub.label, deg, True))
        for M in range(7, N):
            if N % M:
                continue
            image = delta_from_elements(M, {a % M for a in delta.elements} | {M - 1})
            for sub in subgroups_containing_minus1(M):
                if not set(image.elements) <= set(sub.elements):
                    continue
                deg, rem = divmod(deg_self, coset_action(M, sub).degree)
                assert rem == 0
                out.append((M, sub.label, deg, deg == 2))
        return out

    # -- negative rules -----------------------------------------------------

    def _not_subhyperelliptic(self, record: ClassificationRecord):
        """Certificate that a curve is neither of genus <= 1 nor
        hyperelliptic; returns (ok, fact_tags) and prefers machine routes."""
        if record.genus < 2 or record.status == "hyperelliptic":
            return False, ()
        if record.is_bielliptic and record.genus >= 4:
            # a bielliptic curve of genus >= 4 cannot be hyperelliptic
            # (Castelnuovo-Severi), so no curated input is needed
            return True, ()
        if record.delta_label == "0":
            fact = self.facts.get("x0.hyperelliptic")
            if fact is not None and record.N not in fact.as_levels():
                return True, ("x0.hyperelliptic",)
            return False, ()
        if record.delta_label == "1":
            fact = self.facts.get("x1.hyperelliptic")
            if fact is not None and record.N not in fact.as_levels():
                return True, ("x1.hyperelliptic",)
            return False, ()
        fact = self.facts.get("intermediate.hyperelliptic")
        if fact is not None and (record.N, record.delta_label) not in fact.as_curve_labels():
            return True, ("intermediate.hyperelliptic",)
        return False, ()

    def _eliminations(self, N: int, delta: DeltaSubgroup, g: int) -> tuple[Evidence, ...]:
        out: list[Evidence] = []
        covers = self._covers(N, delta)

        for M, label2, deg, galois in covers:
            target = self.classify(M, label2)
            gy = target.genus

            if g >= 6 and galois and gy >= 2:
                ok, tags = self._not_subhyperelliptic(target)
                if ok and g - 1 != deg * (gy - 1):
                    out.append(Evidence(
                        "unramified-cover",
                        f"g-1 = {g - 1} != {deg}*({gy}-1): the degree-{deg} "
                        f"Galois cover of {curve_name(M, label2)} admits no "
                        f"totally unramified descent of a bielliptic quotient",
                        target=(M, label2),
                        degree=deg,
                        facts_used=tags,
                    ))

            applicable = deg % 2 == 1 or (deg == 2 and gy >= 2)
            if applicable:
                bound = castelnuovo_bound(deg, gy, 2, 1)
                if g > bound:
                    out.append(Evidence(
                        "castelnuovo",
                        f"genus {g} exceeds the Castelnuovo-Severi bound "
                        f"{bound} for a degree-{deg} map to "
                        f"{curve_name(M, label2)} (genus {gy}) together with "
                        f"a bielliptic map",
                        target=(M, label2),
                        degree=deg,
                    ))

            if g >= 6 and galois and target.status == "not-bielliptic":
                ok, tags = self._not_subhyperelliptic(target)
                if ok:
                    out.append(Evidence(
                        "covered-by-non-bielliptic",
                        f"degree-{deg} Galois cover of {curve_name(M, label2)}, "
                        f"which is neither bielliptic nor subhyperelliptic",
                        target=(M, label2),
                        degree=deg,
                        facts_used=tuple(sorted(set(tags) | set(target.facts_used))),
                    ))

        ev = self._involution_elimination(N, delta, g)
        if ev is not None:
            out.append(ev)

        fact = self.facts.get(f"verdict.{N}.{delta.label}")
        if fact is not None and fact.value == "not-bielliptic":
            out.append(Evidence(
                "curated-verdict",
                f"curated: {fact.citation}",
                facts_used=(fact.key,),
            ))
        return tuple(out)

    # -- candidate involutions of X_0(N) ------------------------------------

    def _x0_candidates(self, N: int):
        """Hyperelliptic/bielliptic involution candidates on X_0(N) with a
        completeness guarantee, or ``None`` when facts are disabled."""
        completeness = self.facts.get("x0.involution-completeness")
        if completeness is None:
            return None, ()
        g0 = genus(N, _full(N))
        cands: list[tuple[str, Mat2, str]] = []
        for d in hall_divisors(N):
            if d == 1:
                continue
            w = generic_atkin_lehner(N, d)
            total = fixed_points_X0(N, d).count + cuspidal_fixed_count(N, "0", w)
            if total in (2 * g0 - 2, 2 * g0 + 2):
                cands.append((f"W_{d}", w, "atkin-lehner"))
        tags = {"x0.involution-completeness"}
        extra = self.facts.get(f"x0.extra-involutions.{N}")
        if extra is not None:
            tags.add(extra.key)
            for mat in extra.as_matrices():
                cands.append((str(mat), mat, "explicit"))
        return cands, tuple(sorted(tags))

    def _cusp_obstruction(self, N: int, delta: DeltaSubgroup, w: Mat2) -> str | None:
        """A rational cusp whose image cusp on X_0(N) has no rational cusp
        of X_Delta(N) above it; obstructs a Q-rational lift of ``w``."""
        table = cusp_table(N, delta)
        table0 = cusp_table(N, _full(N))
        proj = [table0.class_of(*cls.rep) for cls in table.classes]
        for i, cls in enumerate(table.classes):
            if not cls.is_rational:
                continue
            image = table0.act_matrix(w, proj[i])
            fibre = [j for j, pj in enumerate(proj) if pj == image]
            assert fibre
            if all(not table.classes[j].is_rational for j in fibre):
                rep = cls.rep
                return (
                    f"rational cusp ({rep[0]};{rep[1]}) maps to a cusp of "
                    f"X_0({N}) with no rational cusp above it"
                )
        return None

    def _involution_elimination(
        self,
        N: int,
        delta: DeltaSubgroup,
        g: int,
        stages: tuple[str, ...] = ("field", "cusp", "count", "lift"),
    ) -> Evidence | None:
        """Exclude every possible image on X_0(N) of a bielliptic involution.

        For genus >= 6 a bielliptic involution of X_Delta(N) is unique and
        central, hence defined over Q and descending to X_0(N).  Its image
        is either trivial (the involution is a diamond) or a hyperelliptic/
        bielliptic involution of X_0(N).  Diamonds are ruled out by the
        witness search; each X_0(N) candidate is excluded by one of the
        requested stages.
        """
        if g < 6:
            return None
        cands, tags = self._x0_candidates(N)
        if cands is None:
            return None
        # A bielliptic involution inside the diamond group would have shown
        # its 2g-2 fixed points; verify that no diamond attains the count.
        for b in delta.coset_reps():
            if b == 1 or (b * b) % N not in delta:
                continue
            mat = diamond_matrix(b, N)
            if automorphism_order(mat, delta) != 2:
                continue
            total = coset_fixed_points(N, delta, mat)
            total += cuspidal_fixed_count(N, delta, mat)
            if total == 2 * g - 2:
                return None
        full = _full(N)
        deg = coset_action(N, delta).degree // coset_action(N, full).degree
        details = ["no diamond involution attains 2g-2 fixed points"]
        used_stages: set[str] = set()
        for name, w, kind in cands:
            reason = None
            if "field" in stages and kind == "atkin-lehner" and w.det == N:
                k = fricke_field_degree(delta)
                if k > 1:
                    reason = (
                        f"lifts are defined over a degree-{k} cyclotomic "
                        f"subfield, not over Q"
                    )
                    used_stages.add("field")
            if reason is None and "cusp" in stages:
                cusp = self._cusp_obstruction(N, delta, w)
                if cusp is not None:
                    reason = cusp
                    used_stages.add("cusp")
            if reason is None and "count" in stages:
                if kind == "atkin-lehner":
                    total0 = fixed_points_X0(N, w.det).count
                else:
                    total0 = coset_fixed_points(N, "0", w)
                total0 += cuspidal_fixed_count(N, "0", w)
                if 2 * g - 2 > deg * total0:
                    reason = (
                        f"2g-2 = {2 * g - 2} exceeds {deg}*{total0}, the "
                        f"maximum pulled back from X_0({N})"
                    )
                    used_stages.add("count")
            if reason is None and "lift" in stages:
                if not normalizes(w, delta):
                    reason = "does not normalize the congruence subgroup, so admits no lift"
                    used_stages.add("lift")
                else:
                    good_lift = False
                    for b in delta.coset_reps():
                        lift = diamond_matrix(b, N) * w if b != 1 else w
                        if automorphism_order(lift, delta) != 2:
                            continue
                        total = coset_fixed_points(N, delta, lift)
                        total += cuspidal_fixed_count(N, delta, lift)
                        involution_quotient_genus(g, total)
                        if total == 2 * g - 2:
                            good_lift = True
                            break
                    if not good_lift:
                        reason = "no lift is an involution with 2g-2 fixed points"
                        used_stages.add("lift")
            if reason is None:
                return None
            details.append(f"{name}: {reason}")
        if "lift" in used_stages:
            rule = "lift-conflict"
        elif "count" in used_stages:
            rule = "count-bound"
        elif "cusp" in used_stages:
            rule = "cusp-rationality"
        else:
            rule = "field-of-definition"
        return Evidence(rule, "; ".join(details), facts_used=tags)


# --------------------------------------------------------------------------
# module-level convenience API

_DEFAULT: Classifier | None = None


def _default_classifier() -> Classifier:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = Classifier(FactBook.from_environment())
    return _DEFAULT


def classify_curve(N: int, delta) -> ClassificationRecord:
    """Classify one curve with the default (fact-enabled) classifier."""
    return _default_classifier().classify(N, delta)


def census(max_n: int = 131) -> tuple[ClassificationRecord, ...]:
    """Classify all intermediate curves at levels up to ``max_n``."""
    return _default_classifier().census(max_n)


def eliminate_by_cusp_rationality(N: int, delta, facts: FactBook | None = None) -> Evidence | None:
    """Exclude biellipticity using only the field-of-definition and
    cusp-rationality stages of the X_0(N) involution analysis."""
    clf = Classifier(facts) if facts is not None else _default_classifier()
    delta = _resolve(N, delta)
    return clf._involution_elimination(
        N, delta, genus(N, delta), stages=("field", "cusp")
    )


def accola_certificates(N: int, delta, facts: FactBook | None = None) -> tuple[Evidence, ...]:
    """Accola-type biellipticity certificates for genus-4 and genus-5 curves."""
    clf = Classifier(facts) if facts is not None else _default_classifier()
    delta = _resolve(N, delta)
    g = genus(N, delta)
    out = []
    ev4 = clf._accola_genus4(N, delta, g)
    if ev4 is not None:
        out.append(ev4)
    ev5 = clf._accola_genus5(N, delta, g)
    if ev5 is not None:
        out.append(ev5)
    return tuple(out)
