"""Lifting Lie-level data to the ternary world along a trace functional.

A trace is a linear functional vanishing on brackets. It turns a Lie
bracket into an alternating ternary one, a Lie action into a pair action,
and a Lie embedding tensor into a ternary one, provided the traces on both
sides agree through the tensor. The binary product of a Leibniz-Lie
algebra lifts the same way to ternary braces.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .actions import (
    CoherentActionData,
    EmbeddingTensorProblem,
    RepresentationData,
)
from .algebras import (
    LeibnizLieAlgebra,
    LieAlgebra,
    LinearMap,
    ThreeLeibnizLieAlgebra,
    ThreeLieAlgebra,
    check_leibniz_lie,
    check_lie,
)
from .errors import InputError, PreconditionError
from .linalg import Matrix, Vector, ZERO
from .multilinear import (
    AlternatingTrilinearTable,
    PairAction,
    Space,
    TrilinearTable,
    format_matrix,
    format_vector,
)
from .report import Report, one_based, tuple_label


@dataclass(frozen=True)
class TraceMap:
    """A linear functional on a space, stored by its basis coefficients."""

    space: Space
    covector: Vector

    def __post_init__(self):
        if self.covector.dim != self.space.dim:
            raise InputError("trace coefficient count must match the space")

    def apply(self, v: Vector):
        return self.covector.dot(v)

    def at(self, i: int):
        return self.covector[i]


def check_trace(t: TraceMap, algebra) -> Report:
    """Does the functional vanish on all products of the algebra?

    Accepts a Lie algebra (brackets only) or a Leibniz-Lie algebra
    (brackets and the binary product).
    """
    if isinstance(algebra, LeibnizLieAlgebra):
        lie = algebra.lie
        products = algebra
    elif isinstance(algebra, LieAlgebra):
        lie = algebra
        products = None
    else:
        raise InputError("trace check expects a Lie or Leibniz-Lie algebra")
    if t.space != lie.space:
        raise InputError("trace and algebra live on different spaces")

    rep = Report("trace check")
    space = lie.space
    dim = space.dim
    line = rep.line("vanishes on brackets", "increasing basis pairs")
    for i in range(dim):
        for j in range(i + 1, dim):
            line.checked += 1
            v = lie.value(i, j)
            val = t.apply(v) if v is not None else ZERO
            if val != 0:
                line.add_failure(
                    one_based((i, j)),
                    tuple_label(space, (i, j)),
                    str(val),
                    "0",
                )
    if products is not None:
        pline = rep.line("vanishes on products", "all ordered basis pairs")
        for i in range(dim):
            for j in range(dim):
                pline.checked += 1
                v = products.product(i, j)
                val = t.apply(v) if v is not None else ZERO
                if val != 0:
                    pline.add_failure(
                        one_based((i, j)),
                        tuple_label(space, (i, j)),
                        str(val),
                        "0",
                    )
    return rep


def _ternary_from_binary(lie: LieAlgebra, t: TraceMap) -> AlternatingTrilinearTable:
    space = lie.space
    dim = space.dim
    coords = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                acc = space.zero()
                vjk = lie.value(j, k)
                if vjk is not None and t.at(i) != 0:
                    acc = acc + vjk.scale(t.at(i))
                vki = lie.value(k, i)
                if vki is not None and t.at(j) != 0:
                    acc = acc + vki.scale(t.at(j))
                vij = lie.value(i, j)
                if vij is not None and t.at(k) != 0:
                    acc = acc + vij.scale(t.at(k))
                if not acc.is_zero():
                    coords[(i, j, k)] = acc
    return AlternatingTrilinearTable(space, space, coords)


def threelie_from_lie(lie: LieAlgebra, t: TraceMap) -> ThreeLieAlgebra:
    """The alternating ternary bracket cycled out of a bracket and a trace.

    Requires the trace to vanish on brackets; the result then satisfies
    the fundamental identity automatically.
    """
    gate = check_lie(lie)
    if not gate.ok:
        raise PreconditionError("the input must be a Lie algebra", gate)
    tgate = check_trace(t, lie)
    if not tgate.ok:
        raise PreconditionError("the functional must vanish on brackets", tgate)
    return ThreeLieAlgebra(lie.space, _ternary_from_binary(lie, t))


@dataclass
class LieCoherentAction:
    """A Lie algebra acting on another Lie algebra by operators.

    rho maps each basis vector of the acting algebra to an operator on the
    carrier; absent indices act as zero.
    """

    lie: LieAlgebra
    carrier: LieAlgebra
    rho: dict = field(default_factory=dict)

    def __post_init__(self):
        dim = self.lie.space.dim
        vdim = self.carrier.space.dim
        clean = {}
        for i, mat in self.rho.items():
            if not 0 <= i < dim:
                raise InputError(f"action index {i + 1} out of range")
            if not isinstance(mat, Matrix):
                mat = Matrix(mat)
            if (mat.nrows, mat.ncols) != (vdim, vdim):
                raise InputError(
                    f"action operator at {i + 1} is {mat.nrows}x{mat.ncols}, "
                    f"expected {vdim}x{vdim}"
                )
            if not mat.is_zero():
                clean[i] = mat
        self.rho = clean

    def operator(self, i: int) -> Matrix:
        vdim = self.carrier.space.dim
        return self.rho.get(i, Matrix.zeros(vdim, vdim))

    def eval(self, x: Vector) -> Matrix:
        vdim = self.carrier.space.dim
        acc = Matrix.zeros(vdim, vdim)
        for i, c in x.iter_nonzero():
            mat = self.rho.get(i)
            if mat is not None:
                acc = acc + mat.scale(c)
        return acc


def check_lie_coherent(a: LieCoherentAction) -> Report:
    """Verify the three laws of a coherent Lie-algebra action.

    Refuses when the acting algebra is not Lie; a bad carrier bracket or a
    broken law is an ordinary failure.
    """
    rep = Report("coherent Lie action check")
    gate = check_lie(a.lie)
    if not gate.ok:
        rep.absorb(gate, "acting algebra")
        return rep.refuse("the acting algebra fails the Jacobi identity")
    rep.absorb(check_lie(a.carrier), "carrier bracket")

    lspace = a.lie.space
    hspace = a.carrier.space
    ldim, hdim = lspace.dim, hspace.dim

    hom = rep.line("commutator law", "increasing acting pairs")
    for i in range(ldim):
        for j in range(i + 1, ldim):
            hom.checked += 1
            v = a.lie.value(i, j)
            lhs = a.eval(v) if v is not None else Matrix.zeros(hdim, hdim)
            oi, oj = a.operator(i), a.operator(j)
            rhs = oi.mul(oj) - oj.mul(oi)
            if lhs != rhs:
                hom.add_failure(
                    one_based((i, j)),
                    tuple_label(lspace, (i, j)),
                    format_matrix(lhs),
                    format_matrix(rhs),
                )

    deriv = rep.line("derivation law", "basis operators x increasing carrier pairs")
    kill = rep.line("annihilation law", "basis operators x all ordered carrier pairs")
    for i in range(ldim):
        op = a.operator(i)
        for h1 in range(hdim):
            e1 = hspace.basis_vector(h1)
            for h2 in range(hdim):
                e2 = hspace.basis_vector(h2)
                if h1 < h2:
                    deriv.checked += 1
                    lhs = op.mul_vec(a.carrier.eval(e1, e2))
                    rhs = a.carrier.eval(op.mul_vec(e1), e2) + a.carrier.eval(
                        e1, op.mul_vec(e2)
                    )
                    if lhs != rhs:
                        deriv.add_failure(
                            one_based((i, (h1, h2))),
                            f"{lspace.label(i)} on "
                            f"{tuple_label(hspace, (h1, h2))}",
                            format_vector(hspace, lhs),
                            format_vector(hspace, rhs),
                        )
                kill.checked += 1
                out = a.carrier.eval(op.mul_vec(e1), e2)
                if not out.is_zero():
                    kill.add_failure(
                        one_based((i, (h1, h2))),
                        f"{lspace.label(i)} on {tuple_label(hspace, (h1, h2))}",
                        format_vector(hspace, out),
                        "0",
                    )
    return rep


def rho_sigma(a: LieCoherentAction, t: TraceMap) -> PairAction:
    """The pair action induced by a Lie action and a trace on the actor."""
    if t.space != a.lie.space:
        raise InputError("trace must live on the acting algebra")
    lspace = a.lie.space
    hdim = a.carrier.space.dim
    coords = {}
    for i in range(lspace.dim):
        for j in range(i + 1, lspace.dim):
            mat = Matrix.zeros(hdim, hdim)
            if t.at(i) != 0:
                mat = mat + a.operator(j).scale(t.at(i))
            if t.at(j) != 0:
                mat = mat - a.operator(i).scale(t.at(j))
            if not mat.is_zero():
                coords[(i, j)] = mat
    return PairAction(lspace, a.carrier.space, coords)


@dataclass
class LieNet:
    """A Lie-level embedding tensor: a coherent Lie action plus a map H -> L."""

    action: LieCoherentAction
    tensor: LinearMap

    def __post_init__(self):
        if self.tensor.source != self.action.carrier.space:
            raise InputError("tensor source must be the carrier space")
        if self.tensor.target != self.action.lie.space:
            raise InputError("tensor target must be the acting algebra")


def check_lie_net(n: LieNet) -> Report:
    """Verify the binary embedding-tensor condition on all ordered pairs."""
    rep = Report("Lie embedding tensor check")
    gate = check_lie_coherent(n.action)
    if gate.verdict != "pass":
        rep.absorb(gate, "action")
        return rep.refuse("the underlying action is not coherent")

    a = n.action
    hspace = a.carrier.space
    hdim = hspace.dim
    line = rep.line("embedding-tensor condition", "all ordered carrier pairs")
    for i in range(hdim):
        ei = hspace.basis_vector(i)
        li = n.tensor.apply(ei)
        for j in range(hdim):
            line.checked += 1
            ej = hspace.basis_vector(j)
            lj = n.tensor.apply(ej)
            lhs = a.lie.eval(li, lj)
            inner = a.eval(li).mul_vec(ej) + a.carrier.eval(ei, ej)
            rhs = n.tensor.apply(inner)
            if lhs != rhs:
                line.add_failure(
                    one_based((i, j)),
                    tuple_label(hspace, (i, j)),
                    format_vector(a.lie.space, lhs),
                    format_vector(a.lie.space, rhs),
                )
    return rep


def lift_net(
    n: LieNet, sigma_l: TraceMap, sigma_h: TraceMap
) -> EmbeddingTensorProblem:
    """Lift a Lie embedding tensor to a ternary one along compatible traces.

    Requires: the Lie tensor condition, both traces vanishing on their
    brackets, and trace compatibility through the tensor. The lifted
    problem then satisfies the ternary tensor condition.
    """
    gate = check_lie_net(n)
    if not gate.ok:
        raise PreconditionError("the Lie-level tensor condition fails", gate)
    lgate = check_trace(sigma_l, n.action.lie)
    if not lgate.ok:
        raise PreconditionError(
            "the trace on the acting algebra must vanish on brackets", lgate
        )
    hgate = check_trace(sigma_h, n.action.carrier)
    if not hgate.ok:
        raise PreconditionError(
            "the trace on the carrier must vanish on brackets", hgate
        )

    compat = Report("trace compatibility check")
    line = compat.line("traces agree through the tensor", "carrier basis vectors")
    hspace = n.action.carrier.space
    for u in range(hspace.dim):
        line.checked += 1
        eu = hspace.basis_vector(u)
        lhs = sigma_l.apply(n.tensor.apply(eu))
        rhs = sigma_h.at(u)
        if lhs != rhs:
            line.add_failure(
                one_based((u,)), hspace.label(u), str(lhs), str(rhs)
            )
    if not compat.ok:
        raise PreconditionError(
            "the traces disagree through the tensor", compat
        )

    l3 = ThreeLieAlgebra(
        n.action.lie.space, _ternary_from_binary(n.action.lie, sigma_l)
    )
    h3_table = _ternary_from_binary(n.action.carrier, sigma_h)
    pair_action = rho_sigma(n.action, sigma_l)
    rep_data = RepresentationData(l3, hspace, pair_action)
    action = CoherentActionData(rep_data, h3_table)
    return EmbeddingTensorProblem(action, n.tensor)


def three_ll_from_leibniz_lie(
    g: LeibnizLieAlgebra, t: TraceMap
) -> ThreeLeibnizLieAlgebra:
    """Lift a Leibniz-Lie algebra to a ternary one along a trace.

    The trace must vanish on brackets and on products; the ternary braces
    antisymmetrize the product against the trace in the first two slots.
    """
    gate = check_leibniz_lie(g)
    if not gate.ok:
        raise PreconditionError("the input must be a Leibniz-Lie algebra", gate)
    tgate = check_trace(t, g)
    if not tgate.ok:
        raise PreconditionError(
            "the functional must vanish on brackets and products", tgate
        )
    space = g.lie.space
    dim = space.dim
    bracket = _ternary_from_binary(g.lie, t)
    braces = {}
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                acc = space.zero()
                pjk = g.product(j, k)
                if pjk is not None and t.at(i) != 0:
                    acc = acc + pjk.scale(t.at(i))
                pik = g.product(i, k)
                if pik is not None and t.at(j) != 0:
                    acc = acc - pik.scale(t.at(j))
                if not acc.is_zero():
                    braces[(i, j, k)] = acc
    lie3 = ThreeLieAlgebra(space, bracket)
    return ThreeLeibnizLieAlgebra(
        lie3, TrilinearTable(space, space, braces)
    )
