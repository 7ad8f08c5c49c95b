"""Lie superalgebras presented by structure constants.

An algebra is a finite homogeneous basis, a parity per basis element, the
full bracket tensor [b_i, b_j] in basis coordinates, and optionally an
invariant bilinear form (Gram matrix), a Cartan subset of the basis, and a
weight table.  Verification routines check the defining axioms exactly and
return reports with first-failure witnesses.

Conventions: elements are sparse dicts over basis indices; |x| denotes the
parity of a homogeneous element; the graded Jacobi identity is used in its
cyclic form

    (-1)^{|x||z|}[[x,y],z] + (-1)^{|z||y|}[[z,x],y] + (-1)^{|y||x|}[[y,z],x] = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .linalg import vaxpy_inplace
from .reports import Report
from .scalars import Rat, as_scalar, scalar_key, scalar_to_string


class NotAWeightBasisError(ValueError):
    """The declared weight table fails [h, b] = wt_b(h) b on some pair."""


@dataclass(frozen=True)
class LieSuperalgebra:
    basis_labels: tuple[str, ...]
    parity: tuple[int, ...]
    structure: dict  # (i, j) -> {k: scalar}; absent pair means zero bracket
    gram: tuple | None = None          # tuple of tuples of scalars
    cartan: tuple[int, ...] | None = None
    weights: dict | None = None        # basis index -> tuple over cartan order
    field: str = "Q"

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    def bracket_basis(self, i: int, j: int) -> dict:
        if not (0 <= i < self.dim and 0 <= j < self.dim):
            raise IndexError(f"basis index out of range: ({i}, {j})")
        return self.structure.get((i, j), {})

    def bracket(self, x: dict, y: dict) -> dict:
        """Bilinear extension of the structure constants."""
        out: dict = {}
        for i, xi in x.items():
            if not (0 <= i < self.dim):
                raise IndexError(f"basis index out of range: {i}")
            for j, yj in y.items():
                cij = self.structure.get((i, j))
                if cij:
                    vaxpy_inplace(out, xi * yj, cij)
        for j in y:
            if not (0 <= j < self.dim):
                raise IndexError(f"basis index out of range: {j}")
        return out

    def form(self, x: dict, y: dict):
        if self.gram is None:
            raise ValueError("algebra has no bilinear form")
        total = Rat(0)
        for i, xi in x.items():
            row = self.gram[i]
            for j, yj in y.items():
                total = total + xi * yj * row[j]
        return total

    def parity_of(self, v: dict):
        """0 or 1 for homogeneous nonzero v, None for zero or mixed."""
        seen = {self.parity[i] for i in v}
        if len(seen) == 1:
            return seen.pop()
        return None

    def label_vector(self, v: dict) -> str:
        terms = []
        for i in sorted(v):
            terms.append(f"{scalar_to_string(v[i])}*{self.basis_labels[i]}")
        return " + ".join(terms) if terms else "0"


@dataclass
class RootDatum:
    """Roots of a weight decomposition and the form transferred to them.

    Roots are tuples of scalars (values on the Cartan basis, in Cartan
    order).  t_alpha maps each root to the Cartan coefficient vector of its
    representative; the transferred form is (a, b) = t_a . gram . t_b.
    """

    cartan: tuple[int, ...]
    roots: tuple = ()
    even_roots: frozenset = frozenset()
    odd_roots: frozenset = frozenset()
    spaces: dict = field(default_factory=dict)       # root -> tuple of basis indices
    t_alpha: dict = field(default_factory=dict)      # root -> {cartan position: scalar}
    cartan_gram: tuple = ()

    def root_form(self, a, b):
        """Transferred form (a,b) = (t_a, t_b); equals sum t_a[l] * b[l]."""
        ta = self.t_alpha[a]
        total = Rat(0)
        for l, c in ta.items():
            total = total + c * b[l]
        return total

    def is_real(self, a) -> bool:
        return bool(self.root_form(a, a))

    @property
    def zero(self):
        return tuple(Rat(0) for _ in self.cartan)


def _jacobi_residual(L: LieSuperalgebra, i: int, j: int, k: int) -> dict:
    pi, pj, pk = L.parity[i], L.parity[j], L.parity[k]

    def sgn(a, b):
        return -1 if (a and b) else 1

    res: dict = {}
    vaxpy_inplace(res, Rat(sgn(pi, pk)), L.bracket(L.bracket_basis(i, j), {k: Rat(1)}))
    vaxpy_inplace(res, Rat(sgn(pk, pj)), L.bracket(L.bracket_basis(k, i), {j: Rat(1)}))
    vaxpy_inplace(res, Rat(sgn(pj, pi)), L.bracket(L.bracket_basis(j, k), {i: Rat(1)}))
    return res


def verify_superalgebra(L: LieSuperalgebra) -> Report:
    """Grading, anti-supercommutativity, and the graded Jacobi identity."""
    rep = Report(title="superalgebra axioms")
    d = L.dim

    bad = None
    for (i, j), c in L.structure.items():
        want = (L.parity[i] + L.parity[j]) % 2
        for k, x in c.items():
            if x and L.parity[k] != want:
                bad = {"pair": (L.basis_labels[i], L.basis_labels[j]),
                       "component": L.basis_labels[k]}
                break
        if bad:
            break
    rep.check("bracket grading", bad is None, bad)

    bad = None
    for i in range(d):
        for j in range(i, d):
            sign = -1 if (L.parity[i] and L.parity[j]) else 1
            lhs = L.bracket_basis(i, j)
            rhs = linalg.vscale(Rat(-sign), L.bracket_basis(j, i))
            if lhs != rhs:
                bad = {"pair": (L.basis_labels[i], L.basis_labels[j]),
                       "residual": L.label_vector(linalg.vsub(lhs, rhs))}
                break
        if bad:
            break
    rep.check("anti-supercommutativity", bad is None, bad)

    bad = None
    for i in range(d):
        for j in range(i, d):
            for k in range(j, d):
                res = _jacobi_residual(L, i, j, k)
                if res:
                    bad = {"triple": (L.basis_labels[i], L.basis_labels[j],
                                      L.basis_labels[k]),
                           "residual": L.label_vector(res)}
                    break
            if bad:
                break
        if bad:
            break
    rep.check("graded Jacobi identity", bad is None, bad)
    return rep


def verify_form(L: LieSuperalgebra) -> Report:
    """Supersymmetry, evenness, invariance, and nondegeneracy of the form."""
    if L.gram is None:
        raise ValueError("algebra has no bilinear form to verify")
    rep = Report(title="bilinear form")
    d = L.dim
    g = L.gram

    bad = None
    for i in range(d):
        for j in range(d):
            sign = -1 if (L.parity[i] and L.parity[j]) else 1
            if g[i][j] != sign * g[j][i]:
                bad = {"pair": (L.basis_labels[i], L.basis_labels[j])}
                break
        if bad:
            break
    rep.check("supersymmetry", bad is None, bad)

    bad = None
    for i in range(d):
        for j in range(d):
            if L.parity[i] != L.parity[j] and g[i][j]:
                bad = {"pair": (L.basis_labels[i], L.basis_labels[j])}
                break
        if bad:
            break
    rep.check("evenness", bad is None, bad)

    bad = None
    for i in range(d):
        for j in range(d):
            for k in range(d):
                lhs = L.form(L.bracket_basis(i, j), {k: Rat(1)})
                rhs = L.form({i: Rat(1)}, L.bracket_basis(j, k))
                if lhs != rhs:
                    bad = {"triple": (L.basis_labels[i], L.basis_labels[j],
                                      L.basis_labels[k]),
                           "lhs": lhs, "rhs": rhs}
                    break
            if bad:
                break
        if bad:
            break
    rep.check("invariance", bad is None, bad)

    rep.check("nondegeneracy", linalg.gram_nondegenerate([list(r) for r in g]), None)

    if L.cartan is not None:
        block = [[g[i][j] for j in L.cartan] for i in L.cartan]
        rep.check("nondegeneracy on the Cartan part",
                  linalg.gram_nondegenerate(block), None)

    if L.weights is not None and L.cartan is not None:
        bad = None
        for i in range(d):
            for j in range(d):
                wi, wj = L.weights[i], L.weights[j]
                if any(a + b for a, b in zip(wi, wj)) and g[i][j]:
                    bad = {"pair": (L.basis_labels[i], L.basis_labels[j]),
                           "weights": (list(map(str, wi)), list(map(str, wj)))}
                    break
            if bad:
                break
        rep.check("weight spaces pair only across opposite weights",
                  bad is None, bad)
    return rep


def weight_decomposition(L: LieSuperalgebra) -> RootDatum:
    """Verify the declared weight table and assemble the root datum.

    Requires a Cartan subset (even, weight zero) and a weight per basis
    element; verifies [h, b] = wt_b(h) b for every Cartan h and basis b,
    then computes each root's Cartan representative by solving against the
    Cartan Gram block.
    """
    if L.cartan is None or L.weights is None:
        raise ValueError("weight decomposition needs cartan and weights")
    if L.gram is None:
        raise ValueError("weight decomposition needs the bilinear form")
    m = len(L.cartan)
    for pos, h in enumerate(L.cartan):
        if L.parity[h]:
            raise NotAWeightBasisError(f"Cartan element {L.basis_labels[h]} is odd")
        if any(L.weights[h]):
            raise NotAWeightBasisError(
                f"Cartan element {L.basis_labels[h]} has nonzero weight")
    for b in range(L.dim):
        wt = L.weights[b]
        if len(wt) != m:
            raise NotAWeightBasisError(f"weight of {L.basis_labels[b]} has wrong length")
        for pos, h in enumerate(L.cartan):
            got = L.bracket_basis(h, b)
            want = {b: Rat(1) * wt[pos]} if wt[pos] else {}
            if got != want:
                raise NotAWeightBasisError(
                    f"[{L.basis_labels[h]}, {L.basis_labels[b]}] = "
                    f"{L.label_vector(got)}, expected {L.label_vector(want)}")

    spaces: dict = {}
    even_roots, odd_roots = set(), set()
    for b in range(L.dim):
        wt = tuple(as_scalar(w) for w in L.weights[b])
        spaces.setdefault(wt, []).append(b)
        (odd_roots if L.parity[b] else even_roots).add(wt)

    cartan_gram = tuple(tuple(L.gram[i][j] for j in L.cartan) for i in L.cartan)
    gram_rows = [{j: c for j, c in enumerate(row) if c} for row in cartan_gram]
    t_alpha = {}
    for root in spaces:
        rhs = {l: root[l] for l in range(m) if root[l]}
        sol = linalg.solve(gram_rows, m, rhs)
        if sol is None:
            raise ValueError("form on the Cartan part does not represent root "
                             + str([str(x) for x in root]))
        t_alpha[root] = sol

    roots = tuple(sorted(spaces, key=lambda r: tuple(scalar_key(x) for x in r)))
    return RootDatum(
        cartan=tuple(L.cartan),
        roots=roots,
        even_roots=frozenset(even_roots),
        odd_roots=frozenset(odd_roots),
        spaces={r: tuple(sorted(spaces[r])) for r in roots},
        t_alpha=t_alpha,
        cartan_gram=cartan_gram,
    )


def t_alpha_vector(datum: RootDatum, root) -> dict:
    """t_alpha as a sparse vector over the algebra's basis indices."""
    return {datum.cartan[l]: c for l, c in datum.t_alpha[root].items() if c}


def axiom1_witnesses(L: LieSuperalgebra, datum: RootDatum) -> dict:
    """First basis pair per (root, parity) with 0 != [x, y] in the Cartan.

    Returns {(root, parity): (i, j)} for every nonzero root and parity with
    a nonempty weight space; missing keys mean no witness exists.
    """
    cartan_set = set(datum.cartan)
    out = {}
    zero = datum.zero
    for root in datum.roots:
        if root == zero:
            continue
        neg = tuple(-x for x in root)
        if neg not in datum.spaces:
            continue
        for par in (0, 1):
            xs = [i for i in datum.spaces[root] if L.parity[i] == par]
            ys = [j for j in datum.spaces[neg] if L.parity[j] == par]
            found = None
            for i in xs:
                for j in ys:
                    br = L.bracket_basis(i, j)
                    if br and set(br) <= cartan_set:
                        found = (i, j)
                        break
                if found:
                    break
            if found is not None:
                out[(root, par)] = found
    return out


def _ad_matrix_cols(L: LieSuperalgebra, x: dict) -> list[dict]:
    return [L.bracket(x, {j: Rat(1)}) for j in range(L.dim)]


def is_ad_nilpotent(L: LieSuperalgebra, x: dict, cap: int | None = None) -> bool:
    """ad_x^k = 0 for some k <= cap (default: dim of the algebra)."""
    cap = L.dim if cap is None else cap
    cols = _ad_matrix_cols(L, x)
    for j in range(L.dim):
        v = {j: Rat(1)}
        for _ in range(cap):
            v = linalg.mat_vec(cols, v)
            if not v:
                break
        if v:
            return False
    return True


def verify_eals(L: LieSuperalgebra, datum: RootDatum) -> Report:
    """The two extra axioms on top of a verified super-toral triple.

    (1) every nonzero root alpha (per parity) has a weight-basis pair with
        0 != [x_a, x_{-a}] in the Cartan, and every such witness satisfies
        [x_a, x_{-a}] = (x_a, x_{-a}) t_a;
    (2) for every real root and every weight basis vector x, ad_x is
        nilpotent (exponent bounded by dim L).
    """
    rep = Report(title="extended affine axioms")
    zero = datum.zero
    witnesses = axiom1_witnesses(L, datum)

    bad = None
    for root in datum.roots:
        if root == zero:
            continue
        for par in (0, 1):
            space = [i for i in datum.spaces[root] if L.parity[i] == par]
            if not space:
                continue
            if (root, par) not in witnesses:
                bad = {"root": [str(x) for x in root], "parity": par}
                break
        if bad:
            break
    rep.check("axiom 1: sl2-pair witnesses at every nonzero root", bad is None, bad)

    bad = None
    for (root, par), (i, j) in sorted(witnesses.items(), key=lambda kv: str(kv[0])):
        br = L.bracket_basis(i, j)
        pairing = L.form({i: Rat(1)}, {j: Rat(1)})
        want = linalg.vscale(pairing, t_alpha_vector(datum, root))
        if br != want:
            bad = {"root": [str(x) for x in root],
                   "pair": (L.basis_labels[i], L.basis_labels[j]),
                   "bracket": L.label_vector(br),
                   "expected": L.label_vector(want)}
            break
    rep.check("witness brackets equal (x,y) t_alpha", bad is None, bad)

    bad = None
    for root in datum.roots:
        if not datum.is_real(root):
            continue
        for i in datum.spaces[root]:
            if not is_ad_nilpotent(L, {i: Rat(1)}):
                bad = {"root": [str(x) for x in root], "vector": L.basis_labels[i]}
                break
        if bad:
            break
    rep.check("axiom 2: ad-nilpotency at real roots", bad is None, bad)

    rep.note("axiom 1 witnesses", {
        str([str(x) for x in root]) + f" parity {par}":
            (L.basis_labels[i], L.basis_labels[j])
        for (root, par), (i, j) in witnesses.items()})
    return rep


def even_part(L: LieSuperalgebra) -> LieSuperalgebra:
    """Restriction to the even basis indices (a plain Lie algebra)."""
    keep = [i for i in range(L.dim) if L.parity[i] == 0]
    reindex = {old: new for new, old in enumerate(keep)}
    structure = {}
    for (i, j), c in L.structure.items():
        if i in reindex and j in reindex:
            newc = {reindex[k]: x for k, x in c.items() if k in reindex and x}
            # components outside the even part cannot occur for a graded bracket
            if newc:
                structure[(reindex[i], reindex[j])] = newc
    gram = None
    if L.gram is not None:
        gram = tuple(tuple(L.gram[i][j] for j in keep) for i in keep)
    cartan = None
    if L.cartan is not None:
        cartan = tuple(reindex[i] for i in L.cartan if i in reindex)
    weights = None
    if L.weights is not None:
        weights = {reindex[i]: L.weights[i] for i in keep}
    return LieSuperalgebra(
        basis_labels=tuple(L.basis_labels[i] for i in keep),
        parity=tuple(0 for _ in keep),
        structure=structure,
        gram=gram,
        cartan=cartan,
        weights=weights,
        field=L.field,
    )


def structural_root_checks(L: LieSuperalgebra, datum: RootDatum) -> Report:
    """Exhaustive structural facts about the root system of a verified algebra."""
    rep = Report(title="structural root facts")
    zero = datum.zero
    roots = set(datum.roots)
    real = {r for r in datum.roots if datum.is_real(r)}
    r0 = datum.even_roots
    r1 = datum.odd_roots

    def dbl(r):
        return tuple(x + x for x in r)

    bad = None
    for a in sorted(r1 & real, key=str):
        if dbl(a) not in r0:
            bad = {"root": [str(x) for x in a]}
            break
    rep.check("odd real root doubles into an even root", bad is None, bad)

    bad = None
    for a in sorted(real, key=str):
        if dbl(a) in r1:
            bad = {"root": [str(x) for x in a]}
            break
    rep.check("no real root doubles into an odd root", bad is None, bad)

    bad = None
    for a in sorted(real, key=str):
        if dbl(a) not in roots and a not in r0:
            bad = {"root": [str(x) for x in a]}
            break
    rep.check("real roots with no double are even", bad is None, bad)

    bad = None
    isotropic_even = [a for a in sorted(r0, key=str) if not datum.root_form(a, a)]
    for a in isotropic_even:
        for b in sorted(r0, key=str):
            if datum.root_form(a, b):
                bad = {"roots": ([str(x) for x in a], [str(x) for x in b])}
                break
        if bad:
            break
    rep.check("isotropic even roots are orthogonal to all even roots",
              bad is None, bad)

    nonsingular = {a for a in datum.roots
                   if a != zero and not datum.root_form(a, a)
                   and any(datum.root_form(a, b) for b in datum.roots)}
    bad = None
    for a in sorted(nonsingular & r0, key=str):
        if a != zero:
            bad = {"root": [str(x) for x in a]}
            break
    rep.check("no nonzero even root is nonsingular-isotropic", bad is None, bad)

    zero_space_even = all(L.parity[i] == 0 for i in datum.spaces.get(zero, ()))
    if zero_space_even:
        bad = None
        for a in sorted((r0 & r1) - {zero}, key=str):
            bad = {"root": [str(x) for x in a]}
            break
        rep.check("no nonzero root is both even and odd", bad is None, bad)
    else:
        rep.skip("no nonzero root is both even and odd",
                 {"reason": "zero weight space is not purely even"})

    bad = None
    for a in sorted(datum.roots, key=str):
        for b in sorted(datum.roots, key=str):
            if not datum.root_form(a, b):
                continue
            plus = tuple(x + y for x, y in zip(a, b))
            minus = tuple(y - x for x, y in zip(a, b))
            if plus not in roots and minus not in roots:
                bad = {"roots": ([str(x) for x in a], [str(x) for x in b])}
                break
        if bad:
            break
    rep.check("non-orthogonal roots connect by a step", bad is None, bad)
    return rep
