"""Pair actions of 3-Lie algebras, coherence, and embedding tensors.

A representation assigns to each basis pair of L an operator on H, bilinearly
and alternately, subject to two composition laws. A coherent action is a
representation on another 3-Lie algebra H whose operators are derivations of
the H-bracket with annihilating image. An embedding tensor is a linear map
H -> L intertwining the two brackets through the action; its failure set and
its graph criterion are both computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebras import (
    LinearMap,
    ThreeLeibnizAlgebra,
    ThreeLeibnizLieAlgebra,
    ThreeLieAlgebra,
    _apply_first,
    _apply_second,
    _apply_third,
    check_3lie,
    check_3ll,
    check_3leibniz,
    check_hom,
)
from .errors import InputError, PreconditionError
from .linalg import Matrix, Vector
from .multilinear import (
    AlternatingTrilinearTable,
    PairAction,
    Space,
    TrilinearTable,
    format_matrix,
    format_vector,
)
from .report import Report, one_based, tuple_label


@dataclass
class RepresentationData:
    """A 3-Lie algebra L acting on a carrier space by pair operators."""

    algebra: ThreeLieAlgebra
    carrier: Space
    rho: PairAction
    _verified: Report | None = field(
        default=None, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if self.rho.source.dim != self.algebra.space.dim:
            raise InputError("action source must be the acting algebra's space")
        if self.rho.target.dim != self.carrier.dim:
            raise InputError("action target must be the carrier space")


@dataclass
class CoherentActionData:
    """A representation whose carrier itself carries a 3-Lie bracket."""

    rep: RepresentationData
    target_bracket: AlternatingTrilinearTable
    _verified: Report | None = field(
        default=None, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if self.target_bracket.domain.dim != self.rep.carrier.dim:
            raise InputError("target bracket must live on the carrier space")

    @property
    def algebra(self) -> ThreeLieAlgebra:
        return self.rep.algebra

    @property
    def carrier(self) -> Space:
        return self.rep.carrier

    @property
    def rho(self) -> PairAction:
        return self.rep.rho


@dataclass
class EmbeddingTensorProblem:
    """A coherent action together with a candidate tensor H -> L."""

    action: CoherentActionData
    tensor: LinearMap
    _net_reports: dict = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if self.tensor.source.dim != self.action.carrier.dim:
            raise InputError("tensor source must be the carrier space")
        if self.tensor.target.dim != self.action.algebra.space.dim:
            raise InputError("tensor target must be the acting algebra's space")

    @property
    def l_space(self) -> Space:
        return self.action.algebra.space

    @property
    def h_space(self) -> Space:
        return self.action.carrier

    @property
    def l_bracket(self) -> AlternatingTrilinearTable:
        return self.action.algebra.bracket

    @property
    def h_bracket(self) -> AlternatingTrilinearTable:
        return self.action.target_bracket

    @property
    def rho(self) -> PairAction:
        return self.action.rho

    def tensor_columns(self) -> list[Vector]:
        return [self.tensor.column(i) for i in range(self.h_space.dim)]


def check_representation(r: RepresentationData, title: str | None = None) -> Report:
    """Verify the two pair-operator composition laws on ordered 4-tuples.

    Refuses when the acting algebra itself fails the fundamental identity.
    The default-title report is memoized on the (immutable) data object, so
    repeated gating is free; callers must not mutate the returned report.
    """
    if title is not None:
        return _check_representation_impl(r, title)
    if r._verified is None:
        r._verified = _check_representation_impl(r, None)
    return r._verified


def _check_representation_impl(r: RepresentationData, title: str | None) -> Report:
    rep = Report(title or "pair-action representation check")
    gate = check_3lie(r.algebra)
    if not gate.ok:
        rep.absorb(gate, "acting algebra")
        return rep.refuse("acting algebra fails the fundamental identity")

    space = r.algebra.space
    dim = space.dim
    hdim = r.carrier.dim
    rho = r.rho
    zero = Matrix.zeros(hdim, hdim)

    def op(i: int, j: int) -> Matrix:
        mat = rho.at(i, j)
        return zero if mat is None else mat

    def op_vec_basis(v: Vector | None, j: int) -> Matrix:
        acc = zero
        if v is None:
            return acc
        for m, c in v.iter_nonzero():
            mat = rho.at(m, j)
            if mat is not None:
                acc = acc + mat.scale(c)
        return acc

    def op_basis_vec(i: int, v: Vector | None) -> Matrix:
        acc = zero
        if v is None:
            return acc
        for m, c in v.iter_nonzero():
            mat = rho.at(i, m)
            if mat is not None:
                acc = acc + mat.scale(c)
        return acc

    ops = [[op(i, j) for j in range(dim)] for i in range(dim)]

    fundamental = rep.line(
        "action fundamental law", "all ordered basis 4-tuples"
    )
    commutator = rep.line(
        "action commutator law", "all ordered basis 4-tuples"
    )
    rng = range(dim)
    for l1 in rng:
        for l2 in rng:
            for l3 in rng:
                for l4 in rng:
                    fundamental.checked += 1
                    lhs = op_vec_basis(r.algebra.value(l1, l2, l3), l4)
                    rhs = (
                        ops[l2][l3].mul(ops[l1][l4])
                        + ops[l3][l1].mul(ops[l2][l4])
                        + ops[l1][l2].mul(ops[l3][l4])
                    )
                    if lhs != rhs:
                        fundamental.add_failure(
                            one_based((l1, l2, l3, l4)),
                            tuple_label(space, (l1, l2, l3, l4)),
                            format_matrix(lhs),
                            format_matrix(rhs),
                        )
                    commutator.checked += 1
                    lhs2 = ops[l1][l2].mul(ops[l3][l4])
                    rhs2 = (
                        ops[l3][l4].mul(ops[l1][l2])
                        + op_vec_basis(r.algebra.value(l1, l2, l3), l4)
                        + op_basis_vec(l3, r.algebra.value(l1, l2, l4))
                    )
                    if lhs2 != rhs2:
                        commutator.add_failure(
                            one_based((l1, l2, l3, l4)),
                            tuple_label(space, (l1, l2, l3, l4)),
                            format_matrix(lhs2),
                            format_matrix(rhs2),
                        )
    return rep


def check_coherent_action(c: CoherentActionData, title: str | None = None) -> Report:
    """Verify coherence: H is 3-Lie, operators are derivations, images annihilate.

    Refuses when the underlying representation check refuses or fails.
    The default-title report is memoized on the (immutable) data object, so
    repeated gating is free; callers must not mutate the returned report.
    """
    if title is not None:
        return _check_coherent_action_impl(c, title)
    if c._verified is None:
        c._verified = _check_coherent_action_impl(c, None)
    return c._verified


def _check_coherent_action_impl(c: CoherentActionData, title: str | None) -> Report:
    rep = Report(title or "coherent action check")
    gate = check_representation(c.rep)
    if gate.verdict != "pass":
        rep.absorb(gate, "representation")
        return rep.refuse("representation laws do not hold")

    lspace = c.algebra.space
    hspace = c.carrier
    hdim = hspace.dim
    hb = c.target_bracket
    rho = c.rho

    target_gate = check_3lie(ThreeLieAlgebra(hspace, hb))
    rep.absorb(target_gate, "carrier bracket")

    derivation = rep.line(
        "derivation law", "increasing pairs x all ordered carrier triples"
    )
    annihilation = rep.line(
        "annihilation law", "increasing pairs x all ordered carrier triples"
    )
    rng = range(hdim)
    for i in range(lspace.dim):
        for j in range(i + 1, lspace.dim):
            mat = rho.at(i, j)
            for h1 in rng:
                for h2 in rng:
                    for h3 in rng:
                        derivation.checked += 1
                        val = hb.value(h1, h2, h3)
                        lhs = (
                            hspace.zero()
                            if mat is None or val is None
                            else mat.mul_vec(val)
                        )
                        if mat is None:
                            rhs = hspace.zero()
                        else:
                            rhs = (
                                _apply_first(
                                    hb, mat.col(h1), h2, h3, hdim
                                )
                                + _apply_second(
                                    hb, h1, mat.col(h2), h3, hdim
                                )
                                + _apply_third(
                                    hb, h1, h2, mat.col(h3), hdim
                                )
                            )
                        if lhs != rhs:
                            derivation.add_failure(
                                one_based(((i, j), (h1, h2, h3))),
                                f"pair {tuple_label(lspace, (i, j))}, "
                                f"triple {tuple_label(hspace, (h1, h2, h3))}",
                                format_vector(hspace, lhs),
                                format_vector(hspace, rhs),
                            )
                        annihilation.checked += 1
                        if mat is None:
                            continue
                        out = _apply_first(hb, mat.col(h1), h2, h3, hdim)
                        if not out.is_zero():
                            annihilation.add_failure(
                                one_based(((i, j), (h1, h2, h3))),
                                f"pair {tuple_label(lspace, (i, j))}, "
                                f"triple {tuple_label(hspace, (h1, h2, h3))}",
                                format_vector(hspace, out),
                                "0",
                            )
    return rep


def hemisemidirect_table(c: CoherentActionData) -> ThreeLeibnizAlgebra:
    """The combined bracket on L + H, built without checking coherence.

    [l1+h1, l2+h2, l3+h3] = [l1,l2,l3]_L + rho(l1,l2)h3 + [h1,h2,h3]_H.
    """
    lspace = c.algebra.space
    hspace = c.carrier
    ldim, hdim = lspace.dim, hspace.dim
    labels = tuple(f"l_{s}" for s in lspace.basis_labels) + tuple(
        f"h_{s}" for s in hspace.basis_labels
    )
    total = Space(f"{lspace.name}(+){hspace.name}", ldim + hdim, labels)

    def embed_l(v: Vector) -> Vector:
        return Vector(v.entries + (0,) * hdim)

    def embed_h(v: Vector) -> Vector:
        return Vector((0,) * ldim + v.entries)

    coords = {}
    for key, vec in c.algebra.bracket.expand_ordered().items():
        coords[key] = embed_l(vec)
    for (i, j), mat in c.rho.items():
        for k in range(hdim):
            col = mat.col(k)
            if col.is_zero():
                continue
            coords[(i, j, ldim + k)] = embed_h(col)
            coords[(j, i, ldim + k)] = embed_h(-col)
    for (i, j, k), vec in c.target_bracket.expand_ordered().items():
        coords[(ldim + i, ldim + j, ldim + k)] = embed_h(vec)
    return ThreeLeibnizAlgebra(total, TrilinearTable(total, total, coords))


def hemisemidirect(c: CoherentActionData) -> ThreeLeibnizAlgebra:
    """Guarded hemisemidirect product; refuses on a non-coherent action."""
    gate = check_coherent_action(c)
    if not gate.ok:
        raise PreconditionError(
            "hemisemidirect product requires a coherent action", gate
        )
    return hemisemidirect_table(c)


def check_net(
    p: EmbeddingTensorProblem, mode: str = "all", title: str | None = None
) -> Report:
    """Verify the embedding-tensor condition on basis triples of H.

    mode 'all' checks every ordered triple; mode 'increasing' checks only
    i < j < k. The condition is not alternating, so 'all' is the sound
    default; 'increasing' exists to expose exactly that gap.
    The default-title report is memoized per mode on the (immutable)
    problem, so repeated gating is free; callers must not mutate it.
    """
    if mode not in ("all", "increasing"):
        raise InputError(f"unknown triple mode {mode!r}")
    if title is not None:
        return _check_net_impl(p, mode, title)
    if mode not in p._net_reports:
        p._net_reports[mode] = _check_net_impl(p, mode, None)
    return p._net_reports[mode]


def _check_net_impl(
    p: EmbeddingTensorProblem, mode: str, title: str | None
) -> Report:
    rep = Report(title or "embedding tensor check")
    gate = check_coherent_action(p.action)
    if gate.verdict != "pass":
        rep.absorb(gate, "coherent action")
        return rep.refuse("the action is not coherent")

    lspace, hspace = p.l_space, p.h_space
    hdim = hspace.dim
    lam = p.tensor
    lam_cols = p.tensor_columns()
    lb, hb, rho = p.l_bracket, p.h_bracket, p.rho

    scope = (
        "all ordered carrier triples"
        if mode == "all"
        else "increasing carrier triples"
    )
    line = rep.line("embedding-tensor condition", scope)
    if mode == "all":
        triples = (
            (i, j, k)
            for i in range(hdim)
            for j in range(hdim)
            for k in range(hdim)
        )
    else:
        triples = (
            (i, j, k)
            for i in range(hdim)
            for j in range(i + 1, hdim)
            for k in range(j + 1, hdim)
        )
    for i, j, k in triples:
        line.checked += 1
        lhs = lb.eval(lam_cols[i], lam_cols[j], lam_cols[k])
        inner = rho.apply(lam_cols[i], lam_cols[j], hspace.basis_vector(k))
        hval = hb.value(i, j, k)
        if hval is not None:
            inner = inner + hval
        rhs = lam.apply(inner)
        if lhs != rhs:
            line.add_failure(
                one_based((i, j, k)),
                tuple_label(hspace, (i, j, k)),
                format_vector(lspace, lhs),
                format_vector(lspace, rhs),
            )
    return rep


def graph_check(p: EmbeddingTensorProblem, title: str | None = None) -> Report:
    """Closure of the tensor's graph inside the hemisemidirect product.

    The graph of the tensor is spanned by (tensor(h), h); a combined-bracket
    value (x, y) lies on it exactly when x = tensor(y). The verdict always
    coincides with the full ordered-triple tensor condition; the report
    records that cross-check.
    """
    rep = Report(title or "graph closure check")
    gate = check_coherent_action(p.action)
    if gate.verdict != "pass":
        rep.absorb(gate, "coherent action")
        return rep.refuse("the action is not coherent")

    combined = hemisemidirect_table(p.action)
    lspace, hspace = p.l_space, p.h_space
    ldim, hdim = lspace.dim, hspace.dim
    lam = p.tensor
    graph_basis = [
        Vector(lam.column(i).entries + hspace.basis_vector(i).entries)
        for i in range(hdim)
    ]

    line = rep.line("graph closure", "all ordered graph-basis triples")
    for i in range(hdim):
        for j in range(hdim):
            for k in range(hdim):
                line.checked += 1
                out = combined.eval(
                    graph_basis[i], graph_basis[j], graph_basis[k]
                )
                l_part = Vector(out.entries[:ldim])
                h_part = Vector(out.entries[ldim:])
                if l_part != lam.apply(h_part):
                    line.add_failure(
                        one_based((i, j, k)),
                        tuple_label(hspace, (i, j, k)),
                        f"({format_vector(lspace, l_part)} ; "
                        f"{format_vector(hspace, h_part)})",
                        f"graph element over {format_vector(hspace, h_part)}",
                    )
    agreement = check_net(p, mode="all")
    rep.note(
        "tensor-condition cross-check: "
        + ("agrees" if agreement.ok == rep.ok else "DISAGREES")
    )
    return rep


def _descendent_table(p: EmbeddingTensorProblem) -> TrilinearTable:
    hspace = p.h_space
    hdim = hspace.dim
    lam_cols = p.tensor_columns()
    coords = {}
    for i in range(hdim):
        for j in range(hdim):
            for k in range(hdim):
                vec = p.rho.apply(
                    lam_cols[i], lam_cols[j], hspace.basis_vector(k)
                )
                hval = p.h_bracket.value(i, j, k)
                if hval is not None:
                    vec = vec + hval
                if not vec.is_zero():
                    coords[(i, j, k)] = vec
    return TrilinearTable(hspace, hspace, coords)


def _require_net(p: EmbeddingTensorProblem, what: str) -> None:
    gate = check_net(p, mode="all")
    if not gate.ok:
        raise PreconditionError(
            f"{what} requires a valid embedding tensor", gate
        )


def descendent(p: EmbeddingTensorProblem) -> ThreeLeibnizAlgebra:
    """The bracket induced on H by a valid tensor; refuses otherwise.

    Also certifies that the tensor is a structure map from the new bracket
    to the L-bracket; that certification cannot fail for a valid tensor, and
    a violation raises instead of returning a wrong structure.
    """
    _require_net(p, "the descendent bracket")
    table = _descendent_table(p)
    alg = ThreeLeibnizAlgebra(p.h_space, table)
    lam_cols = p.tensor_columns()
    hdim = p.h_space.dim
    for i in range(hdim):
        for j in range(hdim):
            for k in range(hdim):
                left = p.tensor.apply(
                    table.eval(
                        p.h_space.basis_vector(i),
                        p.h_space.basis_vector(j),
                        p.h_space.basis_vector(k),
                    )
                )
                right = p.l_bracket.eval(lam_cols[i], lam_cols[j], lam_cols[k])
                if left != right:
                    raise PreconditionError(
                        "descendent bracket is not intertwined by the tensor; "
                        "the tensor condition must have been violated"
                    )
    return alg


def induced_3ll(p: EmbeddingTensorProblem) -> ThreeLeibnizLieAlgebra:
    """The brace structure induced on H by a valid tensor; refuses otherwise.

    Braces are rho(tensor h1, tensor h2) h3; together with the H-bracket they
    satisfy the brace laws, and bracket + braces equals the descendent bracket.
    """
    _require_net(p, "the induced brace structure")
    hspace = p.h_space
    hdim = hspace.dim
    lam_cols = p.tensor_columns()
    coords = {}
    for i in range(hdim):
        for j in range(hdim):
            for k in range(hdim):
                vec = p.rho.apply(
                    lam_cols[i], lam_cols[j], hspace.basis_vector(k)
                )
                if not vec.is_zero():
                    coords[(i, j, k)] = vec
    braces = TrilinearTable(hspace, hspace, coords)
    lie3 = ThreeLieAlgebra(hspace, p.h_bracket)
    return ThreeLeibnizLieAlgebra(lie3, braces)


@dataclass
class NetHomomorphism:
    """A pair of maps (f_L, f_H) between two embedding-tensor problems."""

    source: EmbeddingTensorProblem
    target: EmbeddingTensorProblem
    f_l: LinearMap
    f_h: LinearMap

    def __post_init__(self):
        if self.f_l.source.dim != self.source.l_space.dim:
            raise InputError("f_L source dimension mismatch")
        if self.f_l.target.dim != self.target.l_space.dim:
            raise InputError("f_L target dimension mismatch")
        if self.f_h.source.dim != self.source.h_space.dim:
            raise InputError("f_H source dimension mismatch")
        if self.f_h.target.dim != self.target.h_space.dim:
            raise InputError("f_H target dimension mismatch")


def check_net_hom(h: NetHomomorphism, title: str | None = None) -> Report:
    """Verify that (f_L, f_H) is a map of embedding tensors.

    Refuses unless both problems have valid tensors and both component maps
    preserve the respective brackets. On top of the two defining conditions
    (tensor intertwining and action intertwining) the report certifies the
    implied facts: f_H preserves descendent brackets and induced braces.
    """
    rep = Report(title or "embedding tensor map check")
    for label, problem in (("source", h.source), ("target", h.target)):
        gate = check_net(problem, mode="all")
        if not gate.ok:
            rep.absorb(gate, f"{label} tensor")
            return rep.refuse(f"{label} problem has no valid tensor")
    src, dst = h.source, h.target
    fl_gate = check_hom(
        "3lie",
        h.f_l,
        ThreeLieAlgebra(src.l_space, src.l_bracket),
        ThreeLieAlgebra(dst.l_space, dst.l_bracket),
    )
    fh_gate = check_hom(
        "3lie",
        h.f_h,
        ThreeLieAlgebra(src.h_space, src.h_bracket),
        ThreeLieAlgebra(dst.h_space, dst.h_bracket),
    )
    if not (fl_gate.ok and fh_gate.ok):
        rep.absorb(fl_gate, "f_L bracket preservation")
        rep.absorb(fh_gate, "f_H bracket preservation")
        return rep.refuse("component maps do not preserve the brackets")

    hspace_src = src.h_space
    lspace_src = src.l_space
    inter = rep.line("tensor intertwining", "carrier basis vectors")
    for i in range(hspace_src.dim):
        inter.checked += 1
        lhs = dst.tensor.apply(h.f_h.column(i))
        rhs = h.f_l.apply(src.tensor.column(i))
        if lhs != rhs:
            inter.add_failure(
                one_based((i,)),
                f"({hspace_src.label(i)})",
                format_vector(dst.l_space, lhs),
                format_vector(dst.l_space, rhs),
            )

    act = rep.line(
        "action intertwining", "increasing algebra pairs (operator identity)"
    )
    for i in range(lspace_src.dim):
        for j in range(i + 1, lspace_src.dim):
            act.checked += 1
            mat = src.rho.at(i, j)
            lhs = (
                h.f_h.matrix.mul(mat)
                if mat is not None
                else Matrix.zeros(dst.h_space.dim, hspace_src.dim)
            )
            rhs = dst.rho.eval(
                h.f_l.column(i), h.f_l.column(j)
            ).mul(h.f_h.matrix)
            if lhs != rhs:
                act.add_failure(
                    one_based(((i, j),)),
                    f"pair {tuple_label(lspace_src, (i, j))}",
                    format_matrix(lhs),
                    format_matrix(rhs),
                )

    if inter.passed and act.passed:
        desc_src = _descendent_table(src)
        desc_dst = _descendent_table(dst)
        desc_line = rep.line(
            "descendent bracket preserved", "all ordered carrier triples"
        )
        brace_line = rep.line(
            "induced braces preserved", "all ordered carrier triples"
        )
        fh_cols = [h.f_h.column(i) for i in range(hspace_src.dim)]
        lam_cols_src = src.tensor_columns()
        lam_cols_dst = dst.tensor_columns()
        rng = range(hspace_src.dim)
        zero_h = hspace_src.zero()
        for i in rng:
            for j in rng:
                for k in rng:
                    desc_line.checked += 1
                    val = desc_src.value(i, j, k)
                    lhs = h.f_h.apply(val if val is not None else zero_h)
                    rhs = desc_dst.eval(fh_cols[i], fh_cols[j], fh_cols[k])
                    if lhs != rhs:
                        desc_line.add_failure(
                            one_based((i, j, k)),
                            tuple_label(hspace_src, (i, j, k)),
                            format_vector(dst.h_space, lhs),
                            format_vector(dst.h_space, rhs),
                        )
                    brace_line.checked += 1
                    blhs = h.f_h.apply(
                        src.rho.apply(
                            lam_cols_src[i],
                            lam_cols_src[j],
                            hspace_src.basis_vector(k),
                        )
                    )
                    brhs = dst.rho.apply(
                        dst.tensor.apply(fh_cols[i]),
                        dst.tensor.apply(fh_cols[j]),
                        fh_cols[k],
                    )
                    if blhs != brhs:
                        brace_line.add_failure(
                            one_based((i, j, k)),
                            tuple_label(hspace_src, (i, j, k)),
                            format_vector(dst.h_space, blhs),
                            format_vector(dst.h_space, brhs),
                        )
    return rep
