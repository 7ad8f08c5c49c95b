"""Exact sparse linear algebra over the package's scalar types.

Vectors are dicts ``{index: nonzero scalar}``; an absent key means zero.
Matrices appear either as a list of sparse rows or as a list of sparse
columns, whichever the caller finds natural.  Everything is exact; the
elimination engine keeps rows fully reduced (RREF invariant) so coordinate
extraction is a single reduction pass.
"""

from __future__ import annotations

from .scalars import Rat, sdiv


def vadd(u: dict, v: dict) -> dict:
    out = dict(u)
    for k, c in v.items():
        s = out.get(k, 0) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vsub(u: dict, v: dict) -> dict:
    out = dict(u)
    for k, c in v.items():
        s = out.get(k, 0) - c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vscale(c, v: dict) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vaxpy_inplace(acc: dict, c, v: dict) -> None:
    """acc += c*v, dropping cancelled entries."""
    if not c:
        return
    for k, x in v.items():
        s = acc.get(k, 0) + c * x
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


def vneg(v: dict) -> dict:
    return {k: -c for k, c in v.items()}


def vdot(u: dict, v: dict):
    small, big = (u, v) if len(u) <= len(v) else (v, u)
    total = Rat(0)
    for k, c in small.items():
        x = big.get(k)
        if x is not None:
            total = total + c * x
    return total


def mat_vec(cols: list[dict], v: dict) -> dict:
    """Apply a matrix given by columns to a sparse vector."""
    out: dict = {}
    for j, c in v.items():
        vaxpy_inplace(out, c, cols[j])
    return out


class Echelon:
    """Incremental reduced row echelon form with optional combination tracking.

    With ``track=True`` every stored row knows its expression as a linear
    combination of the vectors handed to :meth:`add`, keyed by their tags.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.rowof: dict = {}    # pivot index -> row dict (pivot entry == 1)
        self.comboof: dict = {}  # pivot index -> combination dict (track mode)
        self._count = 0

    @property
    def rank(self) -> int:
        return len(self.rowof)

    def pivots(self):
        return sorted(self.rowof)

    def reduce(self, v: dict):
        """Return (residual, combo) with v = residual + sum(combo[t] * added[t])."""
        v = dict(v)
        combo: dict = {}
        for p in [p for p in v if p in self.rowof]:
            c = v.get(p)
            if not c:
                continue
            row = self.rowof[p]
            for k, x in row.items():
                s = v.get(k, 0) - c * x
                if s:
                    v[k] = s
                else:
                    v.pop(k, None)
            if self.track:
                vaxpy_inplace(combo, c, self.comboof[p])
        return v, combo

    def add(self, v: dict, tag=None) -> bool:
        """Insert v; True if the rank grew, False if v was already in the span."""
        if tag is None:
            tag = self._count
        self._count += 1
        res, combo = self.reduce(v)
        if not res:
            self._last_combo = combo
            return False
        piv = min(res)
        inv = sdiv(1, res[piv])
        row = {k: c * inv for k, c in res.items()}
        if self.track:
            rcombo = {t: -c * inv for t, c in combo.items()}
            vaxpy_inplace(rcombo, inv, {tag: Rat(1)})
            # rcombo now expresses the normalized row over the added vectors
            rcombo = {t: c for t, c in rcombo.items() if c}
        else:
            rcombo = None
        # keep existing rows reduced against the new pivot
        for p, other in self.rowof.items():
            c = other.get(piv)
            if c:
                for k, x in row.items():
                    s = other.get(k, 0) - c * x
                    if s:
                        other[k] = s
                    else:
                        other.pop(k, None)
                if self.track:
                    occ = self.comboof[p]
                    vaxpy_inplace(occ, -c, rcombo)
        self.rowof[piv] = row
        if self.track:
            self.comboof[piv] = rcombo
        return True

    def contains(self, v: dict) -> bool:
        res, _ = self.reduce(v)
        return not res

    def coords(self, v: dict):
        """Express v over the added vectors' tags, or None if not in the span."""
        res, combo = self.reduce(v)
        if res:
            return None
        return combo

    def basis(self) -> list[dict]:
        return [self.rowof[p] for p in sorted(self.rowof)]


def span_rank(vectors) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def solve(rows: list[dict], ncols: int, rhs: dict):
    """Exact solution x of M x = rhs for M given by sparse rows, else None.

    Deterministic pivoting: columns are introduced in index order and each
    takes the lowest available row index as pivot.
    """
    cols: list[dict] = [{} for _ in range(ncols)]
    for i, row in enumerate(rows):
        for j, c in row.items():
            if c:
                cols[j][i] = c
    ech = Echelon(track=True)
    for j in range(ncols):
        ech.add(cols[j], tag=j)
    combo = ech.coords(rhs)
    if combo is None:
        return None
    return {j: c for j, c in combo.items() if c}


def nullspace(rows: list[dict], ncols: int) -> list[dict]:
    """Basis of {x : M x = 0}, deterministic, echelon over the free columns."""
    cols: list[dict] = [{} for _ in range(ncols)]
    for i, row in enumerate(rows):
        for j, c in row.items():
            if c:
                cols[j][i] = c
    ech = Echelon(track=True)
    out = []
    for j in range(ncols):
        if not ech.add(cols[j], tag=j):
            combo = ech._last_combo
            null = {j: Rat(1)}
            for t, c in combo.items():
                if c:
                    null[t] = -c
            out.append(null)
    return out


def columns_of(rows: list[dict], ncols: int) -> list[dict]:
    cols: list[dict] = [{} for _ in range(ncols)]
    for i, row in enumerate(rows):
        for j, c in row.items():
            if c:
                cols[j][i] = c
    return cols


def dense_to_rows(mat: list[list]) -> list[dict]:
    return [{j: c for j, c in enumerate(row) if c} for row in mat]


def gram_nondegenerate(gram: list[list]) -> bool:
    rows = dense_to_rows(gram)
    return span_rank(rows) == len(gram)


def hnf(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form basis of the integer row lattice.

    Returns the nonzero basis rows ordered by pivot column: pivots positive,
    entries above each pivot reduced into [0, pivot).  Two integer lattices
    are equal iff their HNFs coincide.
    """
    pending = [list(r) for r in rows if any(r)]
    if not pending:
        return []
    ncols = len(pending[0])
    out: list[list[int]] = []
    col = 0
    while pending and col < ncols:
        live = [r for r in pending if r[col]]
        if not live:
            col += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            for r in live[1:]:
                q = r[col] // piv[col]
                for j in range(col, ncols):
                    r[j] -= q * piv[j]
            live = [r for r in live if r[col]]
        piv = live[0]
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        out.append(piv)
        pending = [r for r in pending if r is not piv and any(r)]
        col += 1
    for i, b in enumerate(out):
        p = next(j for j, x in enumerate(b) if x)
        for a in out[:i]:
            q = a[p] // b[p]
            if q:
                for j in range(ncols):
                    a[j] -= q * b[j]
    return out


def lattice_coords(basis: list[list[int]], vec: list[int]):
    """Integer coordinates of vec over an HNF basis, or None if outside."""
    v = list(vec)
    coords = []
    for b in basis:
        p = next(j for j, x in enumerate(b) if x)
        if v[p] % b[p]:
            return None
        q = v[p] // b[p]
        coords.append(q)
        if q:
            for j in range(len(v)):
                v[j] -= q * b[j]
    if any(v):
        return None
    return coords
