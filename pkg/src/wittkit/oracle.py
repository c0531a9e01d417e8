"""Brute-force Grothendieck group of endomorphisms of small GF(q)-vector spaces.

Generators are similarity classes of square matrices of size 1..d, relations
come from every block upper-triangular matrix [[alpha, gamma], [0, beta]] of
total size <= d, and the quotient is read off a Smith normal form.  The class
map M -> (dim, det(Id + M r)) is then checked against that quotient using
nothing but the relation matrix, so the two sides are computed independently.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations, product

from .errors import BudgetExceeded
from .matrix import PLUS, Matrix, block_matrix, char_det_form, det, direct_sum
from .rings import PolyRing, PrimeField, format_poly, p_divexact, p_divmod_field, p_trim
from .snf import AbelianGroup, cokernel, integer_rank, smith_normal_form

SUPPORTED = {(2, 1), (2, 2), (3, 1), (3, 2)}
LARGE = {(2, 3)}


@dataclass(frozen=True)
class Generator:
    dim: int
    label: tuple  # nontrivial invariant factors, ascending monic coefficient tuples
    rep: Matrix

    def label_text(self, field) -> str:
        return " | ".join(format_poly(field.fmt, f, "x") for f in self.label)


@dataclass(frozen=True)
class SimilarityClassEnum:
    q: int
    maxdim: int
    generators: tuple

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.q)

    def index(self) -> dict:
        return {(g.dim, g.label): i for i, g in enumerate(self.generators)}

    def count(self, dim: int) -> int:
        return sum(1 for g in self.generators if g.dim == dim)


@dataclass(frozen=True)
class PresentationGroup:
    ngens: int
    relations: tuple  # rows of ints, one column per generator
    quotient: AbelianGroup | None = None


@dataclass(frozen=True)
class InvariantReport:
    passed: bool
    kills_relations: bool
    injective: bool
    invariant_rank: int
    relation_rank: int
    witness: str = ""


# ---------------------------------------------------------------------------
# similarity classes
# ---------------------------------------------------------------------------

def _check_budget(q: int, d: int, allow_large: bool):
    if (q, d) in SUPPORTED:
        return
    if (q, d) in LARGE and allow_large:
        warnings.warn(f"enumerating GF({q}) up to dimension {d} is slow", RuntimeWarning, stacklevel=3)
        return
    hint = " (pass allow_large=True / --allow-large)" if (q, d) in LARGE else ""
    raise BudgetExceeded(f"(q={q}, d={d}) is outside the oracle budget q<=3, d<=2{hint}")


def _char_matrix(M: Matrix, Fx: PolyRing) -> Matrix:
    """x Id - M over GF(q)[x]."""
    F = M.ring
    n = M.nrows
    out = []
    for i in range(n):
        for j in range(n):
            c = F.neg(M[i, j])
            out.append(p_trim(F, (c, F.one) if i == j else (c,)))
    return Matrix(Fx, n, n, tuple(out))


def invariant_factors(M: Matrix) -> tuple:
    """Nontrivial invariant factors of M, via determinantal divisors of x Id - M."""
    F = M.ring
    Fx = PolyRing(F, "x")
    X = _char_matrix(M, Fx)
    n = M.nrows
    prev = Fx.one
    factors = []
    for k in range(1, n + 1):
        g = Fx.zero
        for I in combinations(range(n), k):
            for J in combinations(range(n), k):
                g = Fx.gcd(g, det(X.submatrix(I, J)))
        f = p_divexact(F, g, prev)
        if f != Fx.one:
            factors.append(f)
        prev = g
    return tuple(factors)


def companion_monic(f, F: PrimeField) -> Matrix:
    """Companion matrix of the monic polynomial f (ascending coefficients)."""
    d = len(f) - 1
    rows = [[F.zero] * d for _ in range(d)]
    for i in range(d - 1):
        rows[i + 1][i] = F.one
    for i in range(d):
        rows[i][d - 1] = F.neg(f[i])
    return Matrix.from_payload_rows(F, rows, d)


def rational_canonical_form(label: tuple, F: PrimeField) -> Matrix:
    return direct_sum(*(companion_monic(f, F) for f in label))


def all_matrices(F: PrimeField, n: int):
    for entries in product(range(F.m), repeat=n * n):
        yield Matrix(F, n, n, entries)


def enumerate_classes(q: int, d: int, allow_large: bool = False) -> SimilarityClassEnum:
    _check_budget(q, d, allow_large)
    F = PrimeField(q)
    gens = []
    for n in range(1, d + 1):
        labels = sorted({invariant_factors(M) for M in all_matrices(F, n)})
        gens.extend(Generator(n, lab, rational_canonical_form(lab, F)) for lab in labels)
    return SimilarityClassEnum(q, d, tuple(gens))


def general_linear(F: PrimeField, n: int) -> list:
    return [g for g in all_matrices(F, n) if det(g) != F.zero]


def certify_by_conjugation(enum: SimilarityClassEnum) -> bool:
    """Orbits of GL_n acting by conjugation match the invariant-factor labels exactly."""
    F = enum.field
    for n in range(1, enum.maxdim + 1):
        group = [(g, _inverse(g)) for g in general_linear(F, n)]
        seen = set()
        orbit_labels = []
        for M in all_matrices(F, n):
            if M.entries in seen:
                continue
            orbit = {(g @ M @ gi).entries for g, gi in group}
            seen |= orbit
            labels = {invariant_factors(Matrix(F, n, n, e)) for e in orbit}
            if len(labels) != 1:
                return False
            orbit_labels.append(labels.pop())
        reps = {g.label: g.rep.entries for g in enum.generators if g.dim == n}
        if sorted(orbit_labels) != sorted(reps):
            return False
        for lab in orbit_labels:
            if invariant_factors(Matrix(F, n, n, reps[lab])) != lab:
                return False
    return True


def _inverse(g: Matrix) -> Matrix:
    """Inverse over a prime field by Gauss-Jordan."""
    F = g.ring
    n = g.nrows
    A = [row + [F.one if i == j else F.zero for j in range(n)] for i, row in enumerate(g.rows())]
    for c in range(n):
        p = next(i for i in range(c, n) if A[i][c] != F.zero)
        A[c], A[p] = A[p], A[c]
        inv = F.inverse(A[c][c])
        A[c] = [F.mul(inv, x) for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != F.zero:
                f = A[i][c]
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[c])]
    return Matrix.from_payload_rows(F, [row[n:] for row in A], n)


# ---------------------------------------------------------------------------
# relations and quotient
# ---------------------------------------------------------------------------

def enumerate_relations(enum: SimilarityClassEnum) -> PresentationGroup:
    F = enum.field
    idx = enum.index()
    g = len(enum.generators)
    rows = set()
    for a_i, A in enumerate(enum.generators):
        for b_i, B in enumerate(enum.generators):
            if A.dim + B.dim > enum.maxdim:
                continue
            zero = Matrix.zeros(F, B.dim, A.dim)
            for gamma in product(range(F.m), repeat=A.dim * B.dim):
                G = Matrix(F, A.dim, B.dim, gamma)
                T = block_matrix([[A.rep, G], [zero, B.rep]])
                row = [0] * g
                row[idx[(T.nrows, invariant_factors(T))]] += 1
                row[a_i] -= 1
                row[b_i] -= 1
                rows.add(tuple(row))
    return PresentationGroup(g, tuple(sorted(rows, reverse=True)))


def quotient(p: PresentationGroup) -> PresentationGroup:
    return PresentationGroup(p.ngens, p.relations, cokernel(p.relations, p.ngens))


# ---------------------------------------------------------------------------
# the class map and its check
# ---------------------------------------------------------------------------

def _constant_one_polys(F: PrimeField, maxdeg: int) -> list:
    out = []
    for k in range(1, maxdeg + 1):
        for tail in product(range(F.m), repeat=k):
            if tail[-1] != F.zero:
                out.append((F.one,) + tail)
    return out


def factor_exponents(f, F: PrimeField, maxdeg: int) -> dict:
    """Exponents of the irreducible constant-term-1 factors of f, by trial division.

    Candidates are tried by increasing degree, so every divisor found is irreducible.
    """
    exps = {}
    for h in _constant_one_polys(F, maxdeg):
        while len(f) >= len(h):
            qt, rem = p_divmod_field(F, f, h)
            if rem:
                break
            exps[h] = exps.get(h, 0) + 1
            f = qt
    if f != (F.one,):
        raise ArithmeticError("trial division left a nontrivial cofactor")
    return exps


def invariant_table(enum: SimilarityClassEnum) -> tuple[list, list]:
    """Columns (factor basis) and one row (dim, exponents...) per generator."""
    F = enum.field
    dets = [char_det_form(g.rep, PLUS).coeffs for g in enum.generators]
    facs = [factor_exponents(f, F, enum.maxdim) for f in dets]
    basis = sorted({h for e in facs for h in e}, key=lambda h: (len(h), h))
    rows = [[g.dim] + [e.get(h, 0) for h in basis] for g, e in zip(enum.generators, facs)]
    return basis, rows


def invariant_check(p: PresentationGroup, enum: SimilarityClassEnum) -> InvariantReport:
    _, phi = invariant_table(enum)
    witness = ""
    kills = True
    for rel in p.relations:
        image = [sum(c * phi[i][j] for i, c in enumerate(rel)) for j in range(len(phi[0]))]
        if any(image):
            kills = False
            witness = f"relation {list(rel)} maps to {image}"
            break
    inv_rank = integer_rank(phi)
    rel_rank = integer_rank(p.relations)
    q = p.quotient or cokernel(p.relations, p.ngens)
    injective = kills and q.is_free and rel_rank == p.ngens - inv_rank
    if kills and not injective:
        witness = (f"quotient {q} has rank {p.ngens - rel_rank} but the invariants span rank {inv_rank}")
    return InvariantReport(kills and injective, kills, injective, inv_rank, rel_rank, witness)


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OracleResult:
    enum: SimilarityClassEnum
    presentation: PresentationGroup
    check: InvariantReport
    certified: bool | None

    @property
    def passed(self) -> bool:
        return self.check.passed and self.presentation.quotient.is_free and self.certified is not False


def run_oracle(q: int, d: int, allow_large: bool = False, certify: bool | None = None) -> OracleResult:
    enum = enumerate_classes(q, d, allow_large)
    pres = quotient(enumerate_relations(enum))
    if certify is None:
        certify = d <= 2
    cert = certify_by_conjugation(enum) if certify else None
    return OracleResult(enum, pres, invariant_check(pres, enum), cert)


def format_report(res: OracleResult) -> str:
    enum, pres, chk = res.enum, res.presentation, res.check
    F = enum.field
    basis, phi = invariant_table(enum)
    lines = [f"field GF({enum.q}), max dimension {enum.maxdim}"]
    counts = ", ".join(f"{enum.count(n)} of dim {n}" for n in range(1, enum.maxdim + 1))
    lines.append(f"generators: {len(enum.generators)} ({counts})")
    for i, (g, row) in enumerate(zip(enum.generators, phi)):
        witt = format_poly(F.fmt, char_det_form(g.rep, PLUS).coeffs, "r")
        label = g.label_text(F)
        lines.append(f"  g{i}  dim {g.dim}  invariant factors [{label}]  rep {g.rep}  class (dim {g.dim}, {witt})")
    lines.append("factor basis: " + ", ".join(format_poly(F.fmt, h, "r") for h in basis))
    lines.append(f"relations: {len(pres.relations)} distinct, rank {chk.relation_rank}")
    diag = _smith_diagonal(pres)
    lines.append("smith diagonal: " + (" ".join(map(str, diag)) if diag else "(empty)"))
    lines.append(f"quotient: {pres.quotient}")
    if res.certified is not None:
        lines.append(f"conjugation certificate: {'ok' if res.certified else 'FAILED'}")
    lines.append(f"class map kills relations: {'yes' if chk.kills_relations else 'no'}")
    lines.append(f"class map injective on quotient: {'yes' if chk.injective else 'no'}")
    if chk.witness:
        lines.append(f"witness: {chk.witness}")
    lines.append("PASS" if res.passed else "FAIL")
    return "\n".join(lines)


def _smith_diagonal(pres: PresentationGroup) -> tuple:
    rows = [r for r in pres.relations if any(r)]
    return smith_normal_form(rows).diagonal if rows else ()
