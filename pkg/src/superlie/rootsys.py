"""Extended affine root supersystems: classification, reflections, axioms.

A system is a finite set of integer vectors (coordinates in the Z-span of
the roots) with a rational symmetric form.  Roots split into radical ones
(pairing to zero with everything), real ones ((a,a) != 0) and nonsingular
isotropic ones ((a,a) = 0 but not radical).

Systems cut out of infinite graded families carry a membership boundary:
elements outside it have unknown membership, and any axiom whose witness
would have to live there is reported as skipped rather than decided.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import linalg
from .abelian import SymmetricGroupForm, gadd, gneg, gscale
from .reports import Report
from .scalars import Rat


class NonRealRootError(ValueError):
    """An operation needing (a, a) != 0 was applied to an isotropic root."""


class NonIntegralReflectionError(ValueError):
    """2(a,b)/(a,a) is not an integer, so the reflection leaves the lattice."""


class BrokenStringError(ValueError):
    """A root string has a gap or exceeds the scan cap."""


class RatioViolationError(ValueError):
    """k*alpha in R for k outside {0, ±1, ±2, ±1/2}."""


@dataclass(frozen=True)
class RootSupersystem:
    form: SymmetricGroupForm
    roots: tuple            # sorted tuple of integer coordinate tuples
    radical_roots: frozenset
    real_roots: frozenset
    nonsingular_roots: frozenset
    span_basis: tuple       # HNF basis rows of the Z-span of the roots
    known: Callable | None = None  # membership boundary; None = everything known

    @property
    def rank(self) -> int:
        return self.form.rank

    def is_known(self, g) -> bool:
        return True if self.known is None else bool(self.known(g))

    def pairing(self, a, b):
        return self.form.eval(a, b)

    def cartan_int(self, a, b):
        """2(b,a)/(a,a) for real a; raises for isotropic a."""
        na = self.form.eval(a, a)
        if not na:
            raise NonRealRootError(f"root {a} is isotropic")
        return 2 * self.form.eval(a, b) / na


def classify(roots, form: SymmetricGroupForm, known: Callable | None = None) -> RootSupersystem:
    """Recompute the root partition caches; deterministic storage order."""
    rs = sorted({tuple(int(x) for x in r) for r in roots})
    for r in rs:
        if len(r) != form.rank:
            raise ValueError(f"root {r} does not match form rank {form.rank}")
    radical, real, nonsingular = set(), set(), set()
    for r in rs:
        if form.in_radical(r):
            radical.add(r)
        elif form.eval(r, r):
            real.add(r)
        else:
            nonsingular.add(r)
    span = linalg.hnf([list(r) for r in rs])
    return RootSupersystem(
        form=form,
        roots=tuple(rs),
        radical_roots=frozenset(radical),
        real_roots=frozenset(real),
        nonsingular_roots=frozenset(nonsingular),
        span_basis=tuple(tuple(row) for row in span),
        known=known,
    )


def reflect(system: RootSupersystem, alpha, beta):
    """r_alpha(beta) = beta - (2(a,b)/(a,a)) alpha, for real alpha."""
    n = system.cartan_int(alpha, beta)
    if n.denominator != 1:
        raise NonIntegralReflectionError(
            f"2({alpha},{beta})/({alpha},{alpha}) = {n} is not an integer")
    return tuple(b - int(n) * a for a, b in zip(alpha, beta))


@dataclass(frozen=True)
class StringScan:
    """The k-interval {k : beta + k alpha in R} with boundary bookkeeping."""

    members: tuple            # sorted k values found
    p: int | None             # -min k when the negative end is confirmed
    q: int | None             # max k when the positive end is confirmed
    gap_at: int | None        # a missing k strictly inside the found range
    capped: bool              # scan hit the safety cap before finding an end


def _member_ks(system: RootSupersystem, alpha, beta) -> list[int]:
    """All integer k with beta + k alpha in R, by direct enumeration."""
    pivot = next(i for i, x in enumerate(alpha) if x)
    ks = []
    for g in system.roots:
        num = g[pivot] - beta[pivot]
        if num % alpha[pivot]:
            continue
        k = num // alpha[pivot]
        if all(x == b + k * a for x, a, b in zip(g, alpha, beta)):
            ks.append(k)
    return sorted(ks)


def _string_scan(system: RootSupersystem, alpha, beta, cap: int) -> StringScan:
    if system.known is None:
        # finite fully-known set: enumerate members exactly, gaps included
        ks = _member_ks(system, alpha, beta)
        gap_at = None
        for a, b in zip(ks, ks[1:]):
            if b != a + 1:
                gap_at = a + 1
                break
        return StringScan(members=tuple(ks), p=-ks[0], q=ks[-1],
                          gap_at=gap_at, capped=False)
    rootset = set(system.roots)
    members = [0]
    ends: dict[int, int | None] = {}
    capped = False
    for direction in (1, -1):
        k = direction
        end = None
        while abs(k) <= cap:
            g = gadd(beta, gscale(k, alpha))
            if g in rootset:
                members.append(k)
                k += direction
                continue
            if system.is_known(g):
                end = k - direction
            break
        else:
            capped = True
        ends[direction] = end
    members.sort()
    gap_at = None
    for a, b in zip(members, members[1:]):
        if b != a + 1:
            gap_at = a + 1
            break
    q = ends[1] if ends[1] is not None else None
    p = -ends[-1] if ends[-1] is not None else None
    return StringScan(members=tuple(members), p=p, q=q, gap_at=gap_at, capped=capped)


def root_string(system: RootSupersystem, alpha, beta):
    """(p, q, members) of the alpha-string through beta, checked exactly.

    The string must be a bounded integer interval containing 0 with
    p - q = 2(beta,alpha)/(alpha,alpha); gaps and cap overruns raise.
    """
    alpha, beta = tuple(alpha), tuple(beta)
    if not system.form.eval(alpha, alpha):
        raise NonRealRootError(f"root {alpha} is isotropic")
    if beta not in set(system.roots):
        raise ValueError(f"{beta} is not a root")
    cap = 4 * max(1, len(system.roots))
    scan = _string_scan(system, alpha, beta, cap)
    if scan.capped:
        raise BrokenStringError(
            f"string of {beta} along {alpha} is unbounded within the scan cap {cap}")
    if scan.gap_at is not None:
        raise BrokenStringError(
            f"string of {beta} along {alpha} has a gap at k = {scan.gap_at}")
    if scan.p is None or scan.q is None:
        raise BrokenStringError(
            f"string of {beta} along {alpha} leaves the known region")
    n = system.cartan_int(alpha, beta)
    if n != scan.p - scan.q:
        raise BrokenStringError(
            f"p - q = {scan.p - scan.q} differs from 2(b,a)/(a,a) = {n}")
    members = tuple(gadd(beta, gscale(k, alpha)) for k in scan.members)
    return scan.p, scan.q, members


def ratio_check(system: RootSupersystem, alpha, strict: bool = True):
    """All rational k with k*alpha in R; verifies k in {0, ±1, ±2, ±1/2}."""
    alpha = tuple(alpha)
    if not system.form.eval(alpha, alpha):
        raise NonRealRootError(f"root {alpha} is isotropic")
    pivot = next(i for i, x in enumerate(alpha) if x)
    ks = set()
    for g in system.roots:
        k = Rat(g[pivot], alpha[pivot])
        if all(Rat(x) == k * a for x, a in zip(g, alpha)):
            ks.add(k)
    allowed = {Rat(0), Rat(1), Rat(-1), Rat(2), Rat(-2), Rat(1, 2), Rat(-1, 2)}
    if strict and not ks <= allowed:
        bad = sorted(ks - allowed)
        raise RatioViolationError(f"ratios {[str(k) for k in bad]} for root {alpha}")
    return ks


def check_axioms(system: RootSupersystem) -> Report:
    """The five defining axioms, exhaustively over the stored root set.

    The ambient group is the Z-span of the roots (the span axiom reports
    the computed lattice basis).  On boundary-carrying systems, instances
    whose witnesses fall outside the known region are counted as skipped.
    """
    rep = Report(title="root supersystem axioms")
    rootset = set(system.roots)
    zero = (0,) * system.rank

    rep.check("S1: zero is a root", zero in rootset,
              {"roots": [list(r) for r in system.roots[:8]]})
    rep.note("S1: ambient group is the Z-span of the roots",
             {"lattice_basis": [list(r) for r in system.span_basis]})

    bad = None
    skipped = 0
    for r in system.roots:
        neg = gneg(r)
        if neg in rootset:
            continue
        if system.is_known(neg):
            bad = {"root": list(r)}
            break
        skipped += 1
    rep.check("S2: symmetry R = -R", bad is None, bad)
    if skipped:
        rep.skip("S2: instances outside the known region", {"count": skipped})

    reals = sorted(system.real_roots)
    bad = None
    for a in reals:
        for b in system.roots:
            n = system.cartan_int(a, b)
            if n.denominator != 1:
                bad = {"alpha": list(a), "beta": list(b), "value": str(n)}
                break
        if bad:
            break
    rep.check("S3: integrality of 2(a,b)/(a,a)", bad is None, bad)

    cap = 4 * max(1, len(system.roots))
    bad = None
    skipped = 0
    for a in reals:
        for b in system.roots:
            scan = _string_scan(system, a, b, cap)
            if scan.capped:
                bad = {"alpha": list(a), "beta": list(b), "reason": "cap exceeded",
                       "cap": cap}
                break
            if scan.gap_at is not None:
                bad = {"alpha": list(a), "beta": list(b), "gap_at": scan.gap_at}
                break
            if scan.p is None or scan.q is None:
                skipped += 1
                continue
            n = system.cartan_int(a, b)
            if n != scan.p - scan.q:
                bad = {"alpha": list(a), "beta": list(b),
                       "p": scan.p, "q": scan.q, "cartan": str(n)}
                break
        if bad:
            break
    rep.check("S4: root strings are bounded intervals with p-q = 2(b,a)/(a,a)",
              bad is None, bad)
    if skipped:
        rep.skip("S4: strings leaving the known region", {"count": skipped})

    imaginary = sorted(system.nonsingular_roots | ({zero} if zero in rootset else set()))
    bad = None
    skipped = 0
    for a in imaginary:
        for b in system.roots:
            if not system.form.eval(a, b):
                continue
            plus, minus = gadd(b, a), gadd(b, gneg(a))
            if plus in rootset or minus in rootset:
                continue
            if system.is_known(plus) and system.is_known(minus):
                bad = {"alpha": list(a), "beta": list(b)}
                break
            skipped += 1
        if bad:
            break
    rep.check("S5: isotropic connectivity", bad is None, bad)
    if skipped:
        rep.skip("S5: instances outside the known region", {"count": skipped})

    bad = None
    for a in reals:
        try:
            ratio_check(system, a)
        except RatioViolationError as exc:
            bad = {"alpha": list(a), "detail": str(exc)}
            break
    rep.check("ratio restriction at real roots", bad is None, bad)

    bad = None
    skipped = 0
    for a in reals:
        for b in system.roots:
            try:
                r = reflect(system, a, b)
            except NonIntegralReflectionError:
                continue  # already reported under S3
            if r in rootset:
                continue
            if system.is_known(r):
                bad = {"alpha": list(a), "beta": list(b), "image": list(r)}
                break
            skipped += 1
        if bad:
            break
    rep.check("reflections preserve the root set", bad is None, bad)
    if skipped:
        rep.skip("reflections landing outside the known region", {"count": skipped})
    return rep


def rebase_rational_tuples(tuples, form_fn):
    """Integer re-basing of rational vectors into their Z-span.

    form_fn(a, b) must be a bilinear rational form on the vectors' span.
    Returns (coords, form): integer coordinates over an HNF basis of the
    lattice the vectors generate, and the form on that basis, so that
    form.eval(coords[a], coords[b]) == form_fn(a, b) exactly.
    """
    tuples = list(tuples)
    for t in tuples:
        for x in t:
            if hasattr(x, "im") and getattr(x, "im"):
                raise ValueError("vectors must be rational")
    denom = 1
    for t in tuples:
        for x in t:
            denom = _lcm(denom, Rat(x).denominator)
    rows = [[int(Rat(x) * denom) for x in t] for t in tuples]
    basis = linalg.hnf(rows)
    coords = {}
    for t, row in zip(tuples, rows):
        c = linalg.lattice_coords(basis, row)
        if c is None:
            raise AssertionError("vector outside its own lattice span")
        coords[t] = tuple(c)
    rational_basis = [tuple(Rat(x, denom) for x in b) for b in basis]
    gram = tuple(tuple(form_fn(bi, bj) for bj in rational_basis)
                 for bi in rational_basis)
    return coords, SymmetricGroupForm(gram=gram)


def weight_lattice(datum):
    """Integer re-basing of a root datum's rational weights.

    Returns (coords, form): coords maps each root (a rational weight tuple)
    to its integer coordinates over an HNF basis of the Z-span of the
    roots, and form is the transferred form expressed on that basis, so
    form.eval(coords[a], coords[b]) == datum.root_form(a, b) exactly.
    """
    m = len(datum.cartan)
    gram_rows = [{j: c for j, c in enumerate(r) if c}
                 for r in datum.cartan_gram]

    def form_fn(a, b):
        rhs = {l: Rat(a[l]) for l in range(m) if a[l]}
        t = linalg.solve(gram_rows, m, rhs)
        if t is None:
            raise ValueError("Cartan form does not represent a root vector")
        val = Rat(0)
        for l, c in t.items():
            val = val + c * Rat(b[l])
        return val

    return rebase_rational_tuples(datum.roots, form_fn)


def from_root_datum(datum) -> RootSupersystem:
    """Re-base a root datum's rational weights into their Z-span.

    The roots become integer coordinate vectors over an HNF lattice basis
    and the transferred form is carried along, so axiom checking matches
    the algebra's root functionals value for value.
    """
    coords, form = weight_lattice(datum)
    return classify(list(coords.values()), form)


def _lcm(a: int, b: int) -> int:
    from math import gcd
    return a * b // gcd(a, b)
