"""First-order deformations of an embedding tensor and their classification.

A direction is a linear map H -> L added to the tensor with a formal
parameter. First order in the parameter is exactly the degree-1 cocycle
condition; the module checks that directly on basis triples, cross-checks
against the differential matrix, decides equivalence of two directions by
exact membership in the image of the degree-zero differential, and
classifies directions modulo trivial ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .actions import EmbeddingTensorProblem, check_net
from .algebras import LinearMap
from .cohomology import CochainComplex
from .errors import InputError, PreconditionError
from .linalg import (
    Matrix,
    Vector,
    ZERO,
    _rref,
    kernel_basis,
    rank,
    solve_membership,
)
from .multilinear import format_matrix, format_vector
from .report import Report, one_based, tuple_label


@dataclass
class Deformation:
    """A tensor problem together with one deformation direction H -> L."""

    problem: EmbeddingTensorProblem
    direction: LinearMap

    def __post_init__(self):
        if self.direction.source.dim != self.problem.h_space.dim:
            raise InputError("direction source must match the carrier H")
        if self.direction.target.dim != self.problem.l_space.dim:
            raise InputError("direction target must match the algebra L")


@dataclass
class EquivalenceWitness:
    """A sum of wedges of L-vectors whose coboundary is the difference."""

    pieces: list = field(default_factory=list)

    def describe(self, space) -> str:
        if not self.pieces:
            return "0"
        return " + ".join(
            f"({format_vector(space, a)}) ^ ({format_vector(space, b)})"
            for a, b in self.pieces
        )


def _same_problem(p1: EmbeddingTensorProblem, p2: EmbeddingTensorProblem) -> bool:
    return (
        p1.l_space == p2.l_space
        and p1.h_space == p2.h_space
        and p1.l_bracket.coords == p2.l_bracket.coords
        and p1.h_bracket.coords == p2.h_bracket.coords
        and p1.rho == p2.rho
        and p1.tensor.matrix == p2.tensor.matrix
    )


def _first_order_residual(d: Deformation, i: int, j: int, k: int) -> Vector:
    """Degree-one part of the tensor condition for basis triple (i, j, k)."""
    p = d.problem
    lam, lam1 = p.tensor, d.direction
    lb, rho, hb = p.l_bracket, p.rho, p.h_bracket
    hspace = p.h_space
    ei, ej, ek = (hspace.basis_vector(t) for t in (i, j, k))
    Li, Lj, Lk = lam.apply(ei), lam.apply(ej), lam.apply(ek)
    Mi, Mj, Mk = lam1.apply(ei), lam1.apply(ej), lam1.apply(ek)
    res = lb.eval(Mi, Lj, Lk) + lb.eval(Li, Mj, Lk) + lb.eval(Li, Lj, Mk)
    res = res - lam1.apply(rho.apply(Li, Lj, ek))
    res = res - lam.apply(rho.apply(Mi, Lj, ek))
    res = res - lam.apply(rho.apply(Li, Mj, ek))
    hv = hb.value(i, j, k)
    if hv is not None:
        res = res - lam1.apply(hv)
    return res


def check_infinitesimal(d: Deformation) -> Report:
    """Is the direction a first-order deformation of the tensor?

    Expands the deformed tensor condition to first order on every ordered
    basis triple, then cross-checks against the degree-1 differential.
    """
    rep = Report("first-order deformation check")
    gate = check_net(d.problem, mode="all")
    if not gate.ok:
        rep.absorb(gate, "base tensor")
        return rep.refuse("the undeformed tensor condition fails")

    p = d.problem
    hspace = p.h_space
    hdim = hspace.dim
    line = rep.line("first-order tensor condition", "all ordered basis triples")
    for i in range(hdim):
        for j in range(hdim):
            for k in range(hdim):
                line.checked += 1
                res = _first_order_residual(d, i, j, k)
                if not res.is_zero():
                    line.add_failure(
                        one_based((i, j, k)),
                        tuple_label(hspace, (i, j, k)),
                        format_vector(p.l_space, res),
                        "0",
                    )

    complex_ = CochainComplex(p)
    phi = complex_.cochain_from_linear_map(d.direction)
    cocycle = rep.line("cocycle condition", "degree-1 differential")
    cocycle.checked += 1
    image = complex_.apply_delta(phi)
    if not image.is_zero():
        vec = complex_.vec(image)
        cocycle.add_failure(
            (1,),
            "differential of the direction",
            format_vector_raw(vec),
            "0",
        )
    agree = line.passed == cocycle.passed
    rep.note(
        "direct expansion and the differential "
        + ("agree" if agree else "DISAGREE")
    )
    return rep


def format_vector_raw(v: Vector) -> str:
    parts = [f"[{i + 1}]={c}" for i, c in v.iter_nonzero()]
    return ", ".join(parts) if parts else "0"


def check_higher_order(d: Deformation) -> Report:
    """Second- and third-order conditions for the deformed tensor.

    Together with the first-order condition these make the deformed map an
    embedding tensor for every value of the parameter.
    """
    rep = Report("higher-order deformation check")
    gate = check_net(d.problem, mode="all")
    if not gate.ok:
        rep.absorb(gate, "base tensor")
        return rep.refuse("the undeformed tensor condition fails")

    p = d.problem
    lam, lam1 = p.tensor, d.direction
    lb, rho, hspace = p.l_bracket, p.rho, p.h_space
    hdim = hspace.dim
    second = rep.line("second-order condition", "all ordered basis triples")
    third = rep.line("third-order condition", "all ordered basis triples")
    for i in range(hdim):
        for j in range(hdim):
            for k in range(hdim):
                ei, ej, ek = (hspace.basis_vector(t) for t in (i, j, k))
                Li, Lj, Lk = lam.apply(ei), lam.apply(ej), lam.apply(ek)
                Mi, Mj, Mk = lam1.apply(ei), lam1.apply(ej), lam1.apply(ek)

                second.checked += 1
                lhs = (
                    lb.eval(Mi, Mj, Lk)
                    + lb.eval(Mi, Lj, Mk)
                    + lb.eval(Li, Mj, Mk)
                )
                rhs = (
                    lam1.apply(rho.apply(Mi, Lj, ek))
                    + lam1.apply(rho.apply(Li, Mj, ek))
                    + lam.apply(rho.apply(Mi, Mj, ek))
                )
                if lhs != rhs:
                    second.add_failure(
                        one_based((i, j, k)),
                        tuple_label(hspace, (i, j, k)),
                        format_vector(p.l_space, lhs),
                        format_vector(p.l_space, rhs),
                    )

                third.checked += 1
                lhs = lb.eval(Mi, Mj, Mk)
                rhs = lam1.apply(rho.apply(Mi, Mj, ek))
                if lhs != rhs:
                    third.add_failure(
                        one_based((i, j, k)),
                        tuple_label(hspace, (i, j, k)),
                        format_vector(p.l_space, lhs),
                        format_vector(p.l_space, rhs),
                    )
    return rep


def _decompose_wedge(x_entries: list, dim: int) -> list:
    """Peel an antisymmetric coefficient matrix into decomposable wedges."""
    X = [row[:] for row in x_entries]
    pieces = []
    while True:
        pivot = None
        for i in range(dim):
            for j in range(i + 1, dim):
                if X[i][j]:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            return pieces
        i, j = pivot
        c = X[i][j]
        a1 = Vector([X[r][i] for r in range(dim)])
        a2 = Vector([X[r][j] / c for r in range(dim)])
        pieces.append((a1, a2))
        for r in range(dim):
            for s in range(dim):
                X[r][s] -= a1[r] * a2[s] - a2[r] * a1[s]


def _is_bracket_derivation(bracket, op: Matrix, rep_line) -> None:
    """Record failures of the derivation law for op against one bracket."""
    space = bracket.domain
    dim = space.dim
    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                rep_line.checked += 1
                ei, ej, ek = (space.basis_vector(t) for t in (i, j, k))
                lhs = op.mul_vec(bracket.eval(ei, ej, ek))
                rhs = (
                    bracket.eval(op.mul_vec(ei), ej, ek)
                    + bracket.eval(ei, op.mul_vec(ej), ek)
                    + bracket.eval(ei, ej, op.mul_vec(ek))
                )
                if lhs != rhs:
                    rep_line.add_failure(
                        one_based((i, j, k)),
                        tuple_label(space, (i, j, k)),
                        format_vector(space, lhs),
                        format_vector(space, rhs),
                    )


def are_equivalent(d1: Deformation, d2: Deformation):
    """Decide whether two first-order directions differ by a trivial one.

    Returns (equivalent, witness_or_None, report). Side conditions on the
    witness are reported as notes and never affect the verdict.
    """
    if not _same_problem(d1.problem, d2.problem):
        raise InputError("the two directions deform different problems")
    rep = Report("deformation equivalence check")
    gate1 = check_infinitesimal(d1)
    if not gate1.ok:
        rep.absorb(gate1, "first direction")
        return False, None, rep.refuse("first direction is not first-order")
    gate2 = check_infinitesimal(d2)
    if not gate2.ok:
        rep.absorb(gate2, "second direction")
        return False, None, rep.refuse("second direction is not first-order")

    p = d1.problem
    complex_ = CochainComplex(p)
    diff_map = LinearMap(
        p.h_space, p.l_space, d1.direction.matrix - d2.direction.matrix
    )
    target = complex_.vec(complex_.cochain_from_linear_map(diff_map))
    line = rep.line("difference is a coboundary", "membership in the image")
    line.checked += 1
    solution = solve_membership(complex_.delta_matrix(0), target)
    if solution is None:
        line.add_failure(
            (1,),
            "difference of the directions",
            format_matrix(diff_map.matrix),
            "no wedge of L-vectors maps onto it",
        )
        return False, None, rep

    ldim = p.l_space.dim
    X = [[ZERO] * ldim for _ in range(ldim)]
    for pos, (a, b) in enumerate(complex_.lwedge.pairs):
        c = solution[pos]
        X[a][b] = X[a][b] + c
        X[b][a] = X[b][a] - c
    pieces = _decompose_wedge(X, ldim)
    witness = EquivalenceWitness(pieces)

    # re-derive the coboundary from the pieces and compare exactly
    verify = rep.line("witness reproduces the difference", "exact recomputation")
    verify.checked += 1
    acc = None
    for a1, a2 in pieces:
        term = complex_.delta0_cochain(a1, a2)
        acc = term if acc is None else acc + term
    rebuilt = (
        complex_.vec(acc)
        if acc is not None
        else Vector.zero(complex_.cochain_dim(1))
    )
    if rebuilt != target:
        verify.add_failure(
            (1,),
            "recomputed coboundary",
            format_vector_raw(rebuilt),
            format_vector_raw(target),
        )
        return False, None, rep

    rep.note(f"witness: {witness.describe(p.l_space)}")
    _witness_side_conditions(rep, p, pieces)
    return True, witness, rep


def _witness_side_conditions(rep: Report, p: EmbeddingTensorProblem, pieces):
    """Structural properties of the witness, reported as notes only."""
    ldim, hdim = p.l_space.dim, p.h_space.dim
    d_l = Matrix.zeros(ldim, ldim)
    d_h = Matrix.zeros(hdim, hdim)
    for a1, a2 in pieces:
        cols = [
            p.l_bracket.eval(a1, a2, p.l_space.basis_vector(c))
            for c in range(ldim)
        ]
        d_l = d_l + Matrix.from_cols(cols, nrows=ldim)
        d_h = d_h + p.rho.eval(a1, a2)

    side = Report("witness side conditions")
    _is_bracket_derivation(
        p.l_bracket,
        d_l,
        side.line("derivation on the outer bracket", "increasing basis triples"),
    )
    _is_bracket_derivation(
        p.h_bracket,
        d_h,
        side.line("derivation on the carrier bracket", "increasing basis triples"),
    )
    compat = side.line("action compatibility", "increasing basis pairs")
    for a in range(ldim):
        for b in range(a + 1, ldim):
            compat.checked += 1
            ea, eb = p.l_space.basis_vector(a), p.l_space.basis_vector(b)
            lhs = d_h.mul(p.rho.eval(ea, eb))
            rhs = (
                p.rho.eval(d_l.mul_vec(ea), eb)
                + p.rho.eval(ea, d_l.mul_vec(eb))
                + p.rho.eval(ea, eb).mul(d_h)
            )
            if lhs != rhs:
                compat.add_failure(
                    one_based((a, b)),
                    tuple_label(p.l_space, (a, b)),
                    format_matrix(lhs),
                    format_matrix(rhs),
                )
    for ln in side.checks:
        status = "holds" if ln.passed else "fails"
        detail = ""
        if not ln.passed:
            first = ln.failures[0]
            detail = f" (first at {first.where})"
        rep.note(f"witness side condition: {ln.name} {status}{detail}")


@dataclass
class Classification:
    """Exact dimensions and representatives for first-order directions."""

    cocycle_dim: int
    coboundary_dim: int
    class_dim: int
    cocycle_basis: list
    coboundary_basis: list
    representatives: list


def classify(p: EmbeddingTensorProblem) -> Classification:
    """Split first-order directions into trivial ones and true classes.

    Cocycle basis spans all first-order directions, coboundary basis the
    trivial ones; representatives extend the trivial span to the full
    cocycle space, one per independent class.
    """
    complex_ = CochainComplex(p)
    d1 = complex_.delta_matrix(1)
    d0 = complex_.delta_matrix(0)

    kernel = kernel_basis(d1)
    _, pivots = _rref(d0)
    image = [d0.col(j) for j in pivots]

    chosen: list[Vector] = []
    base = list(image)
    current_rank = rank(Matrix.from_cols(base, nrows=d0.nrows)) if base else 0
    for v in kernel:
        trial = base + chosen + [v]
        r = rank(Matrix.from_cols(trial, nrows=d0.nrows))
        if r > current_rank + len(chosen):
            chosen.append(v)

    def to_map(vec: Vector) -> LinearMap:
        return complex_.linear_map_from_cochain(complex_.unvec(1, vec))

    return Classification(
        cocycle_dim=len(kernel),
        coboundary_dim=len(image),
        class_dim=len(kernel) - len(image),
        cocycle_basis=[to_map(v) for v in kernel],
        coboundary_basis=[to_map(v) for v in image],
        representatives=[to_map(v) for v in chosen],
    )
