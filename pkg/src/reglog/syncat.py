"""Internal relations over a finite model, and an executable law suite.

Objects pair a context with a predicate on it (a finite relation); morphisms
are relations between the underlying tuple sets whose marginals stay inside
the endpoint predicates.  Composition is the relational join on the shared
middle block.  Internal *functions* are the total deterministic morphisms,
equivalently the left adjoints; :func:`classify` computes both
characterizations and insists they agree.

:func:`check_regular_axioms` sweeps bounded families of objects and morphisms
and verifies, exhaustively within the stated bounds, the axioms this category
is supposed to satisfy: finite limits with unique mediators, image
factorizations orthogonal to monos, stability of regular epis under pullback,
the per-object copy/merge/discard/spawn laws, and the order-theoretic facts
about functions.  Every failed check carries a witness, so a deliberately
broken operation shows up with a concrete counterexample.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .context import Context, mk_context, oplus, terminal_ctx
from .errors import CompositionError, ValidationError
from .model import FinRelation, ModelInstance, mk_relation, true_rel

Rows = frozenset
Row = tuple


@dataclass(frozen=True)
class SynObject:
    """A context together with a predicate on it."""

    context: Context
    predicate: FinRelation

    def __post_init__(self):
        if self.predicate.context != self.context:
            raise ValidationError("predicate lives on a different context")

    def __str__(self):
        return f"({self.context}, {len(self.predicate)} rows)"


def mk_syn_object(context: Context, rows: Iterable[tuple[str, ...]]) -> SynObject:
    return SynObject(context, mk_relation(context, rows))


def terminal_syn() -> SynObject:
    c = terminal_ctx()
    return SynObject(c, mk_relation(c, [()]))


def oplus_obj(left: SynObject, right: SynObject) -> SynObject:
    rows = frozenset(
        a + b for a in left.predicate.tuples for b in right.predicate.tuples
    )
    return SynObject(oplus(left.context, right.context), FinRelation(
        oplus(left.context, right.context), rows
    ))


@dataclass(frozen=True)
class InternalRelation:
    """A relation ``dom -> cod`` whose marginals respect the endpoint predicates."""

    dom: SynObject
    cod: SynObject
    theta: FinRelation

    def __post_init__(self):
        expected = oplus(self.dom.context, self.cod.context)
        if self.theta.context != expected:
            raise ValidationError(
                f"relation context {self.theta.context} differs from {expected}"
            )
        n1 = self.dom.context.arity
        left = frozenset(row[:n1] for row in self.theta.tuples)
        right = frozenset(row[n1:] for row in self.theta.tuples)
        if not left <= self.dom.predicate.tuples:
            raise ValidationError("left marginal escapes the domain predicate")
        if not right <= self.cod.predicate.tuples:
            raise ValidationError("right marginal escapes the codomain predicate")

    @property
    def rows(self) -> frozenset[tuple[str, ...]]:
        return self.theta.tuples

    def split_rows(self) -> Iterator[tuple[tuple[str, ...], tuple[str, ...]]]:
        n1 = self.dom.context.arity
        for row in self.theta.tuples:
            yield row[:n1], row[n1:]

    def left_marginal(self) -> frozenset[tuple[str, ...]]:
        return frozenset(x for x, _ in self.split_rows())

    def right_marginal(self) -> frozenset[tuple[str, ...]]:
        return frozenset(y for _, y in self.split_rows())


def mk_internal_relation(
    dom: SynObject, cod: SynObject, rows: Iterable[tuple[str, ...]]
) -> InternalRelation:
    ctx = oplus(dom.context, cod.context)
    return InternalRelation(dom, cod, mk_relation(ctx, rows))


def identity_ir(o: SynObject) -> InternalRelation:
    return mk_internal_relation(o, o, (row + row for row in o.predicate.tuples))


def compose_ir(first: InternalRelation, second: InternalRelation) -> InternalRelation:
    """Relational join ``first ; second`` on the shared middle block."""
    if first.cod != second.dom:
        raise CompositionError("middle objects differ")
    by_middle: dict[tuple[str, ...], list[tuple[str, ...]]] = {}
    for y, z in second.split_rows():
        by_middle.setdefault(y, []).append(z)
    rows = set()
    for x, y in first.split_rows():
        for z in by_middle.get(y, ()):
            rows.add(x + z)
    return mk_internal_relation(first.dom, second.cod, rows)


def transpose_ir(rel: InternalRelation) -> InternalRelation:
    return mk_internal_relation(
        rel.cod, rel.dom, (y + x for x, y in rel.split_rows())
    )


def leq_ir(lower: InternalRelation, upper: InternalRelation) -> bool:
    if lower.dom != upper.dom or lower.cod != upper.cod:
        raise CompositionError("ordering compares parallel relations")
    return lower.rows <= upper.rows


def meet_ir(a: InternalRelation, b: InternalRelation) -> InternalRelation:
    if a.dom != b.dom or a.cod != b.cod:
        raise CompositionError("meet needs parallel relations")
    return mk_internal_relation(a.dom, a.cod, a.rows & b.rows)


def tensor_ir(a: InternalRelation, b: InternalRelation) -> InternalRelation:
    rows = (
        xa + xb + ya + yb
        for xa, ya in a.split_rows()
        for xb, yb in b.split_rows()
    )
    return mk_internal_relation(
        oplus_obj(a.dom, b.dom), oplus_obj(a.cod, b.cod), rows
    )


def braid_ir(left: SynObject, right: SynObject) -> InternalRelation:
    rows = (
        a + b + b + a
        for a in left.predicate.tuples
        for b in right.predicate.tuples
    )
    return mk_internal_relation(
        oplus_obj(left, right), oplus_obj(right, left), rows
    )


def delta_ir(o: SynObject) -> InternalRelation:
    return mk_internal_relation(
        o, oplus_obj(o, o), (row + row + row for row in o.predicate.tuples)
    )


def mu_ir(o: SynObject) -> InternalRelation:
    return transpose_ir(delta_ir(o))


def bang(o: SynObject) -> InternalRelation:
    """The discard map to the terminal object."""
    return mk_internal_relation(o, terminal_syn(), o.predicate.tuples)


def eta_ir(o: SynObject) -> InternalRelation:
    return transpose_ir(bang(o))


@dataclass(frozen=True)
class Classification:
    total: bool
    deterministic: bool

    @property
    def function(self) -> bool:
        return self.total and self.deterministic


def classify(rel: InternalRelation) -> Classification:
    """Totality and determinism, checked against the adjoint characterization.

    The direct route reads both properties off the rows.  The adjoint route
    asks whether the transpose is a right adjoint (unit and counit
    inequalities).  Both are computed and must agree.
    """
    total = rel.dom.predicate.tuples <= rel.left_marginal()
    images: dict[tuple[str, ...], set[tuple[str, ...]]] = {}
    for x, y in rel.split_rows():
        images.setdefault(x, set()).add(y)
    deterministic = all(len(ys) == 1 for ys in images.values())

    dag = transpose_ir(rel)
    unit = leq_ir(identity_ir(rel.dom), compose_ir(rel, dag))
    counit = leq_ir(compose_ir(dag, rel), identity_ir(rel.cod))
    via_adjoint = unit and counit
    via_rows = total and deterministic
    if via_rows != via_adjoint:
        raise AssertionError(
            "function characterizations disagree: "
            f"rows say {via_rows}, adjointness says {via_adjoint}"
        )
    return Classification(total, deterministic)


def is_function(rel: InternalRelation) -> bool:
    return classify(rel).function


def graph_ir(
    dom: SynObject, cod: SynObject, mapping: dict[tuple[str, ...], tuple[str, ...]]
) -> InternalRelation:
    return mk_internal_relation(
        dom, cod, (x + y for x, y in mapping.items())
    )


def enumerate_functions(dom: SynObject, cod: SynObject) -> list[InternalRelation]:
    """All internal functions ``dom -> cod``: graphs of row maps."""
    xs = sorted(dom.predicate.tuples)
    ys = sorted(cod.predicate.tuples)
    if xs and not ys:
        return []
    out = []
    for choice in itertools.product(ys, repeat=len(xs)):
        out.append(graph_ir(dom, cod, dict(zip(xs, choice))))
    return out


def enumerate_relations(dom: SynObject, cod: SynObject) -> list[InternalRelation]:
    """All internal relations ``dom -> cod`` (subsets with good marginals)."""
    space = sorted(
        x + y for x in dom.predicate.tuples for y in cod.predicate.tuples
    )
    out = []
    for k in range(len(space) + 1):
        for rows in itertools.combinations(space, k):
            out.append(mk_internal_relation(dom, cod, rows))
    return out


def pullback_ir(
    t1: InternalRelation, t2: InternalRelation
) -> tuple[SynObject, InternalRelation, InternalRelation]:
    """Pullback of two internal functions along their shared codomain."""
    if t1.cod != t2.cod:
        raise CompositionError("pullback needs a cospan")
    if not (is_function(t1) and is_function(t2)):
        raise ValidationError("pullback is taken over internal functions")
    rows = set()
    by_y: dict[tuple[str, ...], list[tuple[str, ...]]] = {}
    for x2, y in t2.split_rows():
        by_y.setdefault(y, []).append(x2)
    for x1, y in t1.split_rows():
        for x2 in by_y.get(y, ()):
            rows.add(x1 + x2)
    apex = mk_syn_object(oplus(t1.dom.context, t2.dom.context), rows)
    n1 = t1.dom.context.arity
    p1 = mk_internal_relation(apex, t1.dom, (row + row[:n1] for row in rows))
    p2 = mk_internal_relation(apex, t2.dom, (row + row[n1:] for row in rows))
    return apex, p1, p2


def pair_ir(
    u1: InternalRelation, u2: InternalRelation, target: SynObject
) -> InternalRelation:
    """The tupling ``<u1, u2>`` into an object on the product context."""
    if u1.dom != u2.dom:
        raise CompositionError("pairing needs a shared domain")
    rows = set()
    by_x: dict[tuple[str, ...], list[tuple[str, ...]]] = {}
    for x, y2 in u2.split_rows():
        by_x.setdefault(x, []).append(y2)
    for x, y1 in u1.split_rows():
        for y2 in by_x.get(x, ()):
            rows.add(x + y1 + y2)
    return mk_internal_relation(u1.dom, target, rows)


def equalizer_ir(
    t1: InternalRelation, t2: InternalRelation
) -> tuple[SynObject, InternalRelation]:
    """Equalizer of parallel internal functions: where the two images agree."""
    if t1.dom != t2.dom or t1.cod != t2.cod:
        raise CompositionError("equalizer needs parallel relations")
    if not (is_function(t1) and is_function(t2)):
        raise ValidationError("equalizer is taken over internal functions")
    n1 = t1.dom.context.arity
    agree = frozenset(row[:n1] for row in t1.rows & t2.rows)
    obj = mk_syn_object(t1.dom.context, agree)
    incl = mk_internal_relation(obj, t1.dom, (x + x for x in agree))
    return obj, incl


def image_ir(
    rel: InternalRelation,
) -> tuple[InternalRelation, InternalRelation]:
    """Factor through the right marginal: regular epi followed by mono."""
    im = rel.right_marginal()
    image = mk_syn_object(rel.cod.context, im)
    epi = InternalRelation(rel.dom, image, rel.theta)
    mono = mk_internal_relation(image, rel.cod, (y + y for y in im))
    return epi, mono


def is_mono_ir(rel: InternalRelation) -> bool:
    return compose_ir(rel, transpose_ir(rel)).rows == identity_ir(rel.dom).rows


def is_regular_epi_ir(rel: InternalRelation) -> bool:
    return rel.cod.predicate.tuples <= rel.right_marginal()


def subobjects(o: SynObject) -> list[SynObject]:
    """All subobjects, smallest first then lexicographic; 2^|rows| of them."""
    rows = sorted(o.predicate.tuples)
    out = []
    for k in range(len(rows) + 1):
        for subset in itertools.combinations(rows, k):
            out.append(mk_syn_object(o.context, subset))
    return out


# ---------------------------------------------------------------------------
# bounded law suite
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AxiomBounds:
    """Explicit search bounds for :func:`check_regular_axioms`.

    ``max_arity`` bounds the context arity for the per-object sweeps,
    ``hom_arity`` the combined arity of the pairs whose full relation space is
    enumerated, ``max_tuple_space`` the size of a tuple space that still gets
    the full power-set treatment, and ``limit_objects`` the size of the object
    family used for the limit and factorization checks.
    """

    max_arity: int = 2
    hom_arity: int = 2
    max_tuple_space: int = 4
    limit_objects: int = 6


@dataclass
class CheckResult:
    name: str
    ok: bool
    cases: int
    witness: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "cases": self.cases,
            "witness": self.witness,
        }


@dataclass
class AxiomReport:
    bounds: AxiomBounds
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "bounds": {
                "max_arity": self.bounds.max_arity,
                "hom_arity": self.bounds.hom_arity,
                "max_tuple_space": self.bounds.max_tuple_space,
                "limit_objects": self.bounds.limit_objects,
            },
            "checks": [c.as_dict() for c in self.checks],
        }

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            status = "ok" if c.ok else "FAIL"
            line = f"{status:4} {c.name} ({c.cases} cases)"
            if c.witness:
                line += f" witness: {c.witness}"
            lines.append(line)
        lines.append(f"result: {'ok' if self.ok else 'FAIL'}")
        return "\n".join(lines)


def contexts_up_to(types: Iterable[str], max_arity: int) -> list[Context]:
    """Every context of bounded arity over the given types, deterministically."""
    types = sorted(set(types))
    out = []
    for arity in range(max_arity + 1):
        for typing in itertools.product(types, repeat=arity):
            used = sorted(set(typing))
            free = [t for t in types if t not in used]
            for k in range(len(free) + 1):
                for extra in itertools.combinations(free, k):
                    out.append(mk_context(typing, extra))
    return out


def _predicates_for(
    context: Context, model: ModelInstance, cap: int
) -> list[FinRelation]:
    space = true_rel(context, model)
    rows = space.rows()
    if len(rows) <= cap:
        subsets: list[tuple] = []
        for k in range(len(rows) + 1):
            subsets.extend(itertools.combinations(rows, k))
        return [mk_relation(context, s) for s in subsets]
    sample = [
        (),
        tuple(rows),
        (rows[0],),
        tuple(rows[: len(rows) // 2]),
    ]
    return [mk_relation(context, s) for s in sample]


def _objects_for(
    model: ModelInstance, max_arity: int, cap: int
) -> list[SynObject]:
    objs = []
    for c in contexts_up_to(model.domains.keys(), max_arity):
        for pred in _predicates_for(c, model, cap):
            objs.append(SynObject(c, pred))
    for name in sorted(model.relations):
        rel = model.relations[name]
        obj = SynObject(rel.context, rel)
        if obj not in objs and rel.context.arity <= max_arity:
            objs.append(obj)
    return objs


def _limit_family(model: ModelInstance, bounds: AxiomBounds) -> list[SynObject]:
    """A small, diverse, deterministic family used for the limit checks.

    One-port contexts come first so the family is not dominated by empty
    shells; each context contributes its full predicate, a singleton, and
    (in a second pass) the empty predicate.
    """
    contexts = sorted(
        contexts_up_to(model.domains.keys(), 1),
        key=lambda c: (-c.arity, len(c.extra_support()), c.support, c.port_types),
    )
    family: list[SynObject] = [terminal_syn()]

    def push(obj: SynObject) -> bool:
        if obj not in family:
            family.append(obj)
        return len(family) >= bounds.limit_objects

    for c in contexts:
        full = true_rel(c, model)
        rows = full.rows()[:2]
        for k in range(len(rows), 0, -1):
            if push(SynObject(c, mk_relation(c, rows[:k]))):
                return family
    for c in contexts:
        if push(SynObject(c, mk_relation(c, ()))):
            return family
    return family


def _object_law_checks(objs: list[SynObject]) -> list[CheckResult]:
    frob = CheckResult("frobenius_special_per_object", True, 0)
    adjm = CheckResult("adjoint_monoid_inequalities", True, 0)
    for o in objs:
        ident = identity_ir(o)
        delta = delta_ir(o)
        mu = mu_ir(o)
        eps = bang(o)
        eta = eta_ir(o)
        two = oplus_obj(o, o)
        id2 = identity_ir(two)
        # comonoid: counit both sides, coassociativity, cocommutativity
        counit_l = compose_ir(delta, tensor_ir(eps, ident))
        counit_r = compose_ir(delta, tensor_ir(ident, eps))
        coassoc_l = compose_ir(delta, tensor_ir(delta, ident))
        coassoc_r = compose_ir(delta, tensor_ir(ident, delta))
        cocomm = compose_ir(delta, braid_ir(o, o))
        frobenius_l = compose_ir(mu, delta)
        frobenius_r = compose_ir(tensor_ir(ident, delta), tensor_ir(mu, ident))
        special = compose_ir(delta, mu)
        laws = [
            counit_l.rows == ident.rows,
            counit_r.rows == ident.rows,
            coassoc_l.rows == coassoc_r.rows,
            cocomm.rows == delta.rows,
            frobenius_l.rows == frobenius_r.rows,
            special.rows == ident.rows,
        ]
        frob.cases += len(laws)
        if frob.ok and not all(laws):
            frob.ok = False
            frob.witness = f"object {o}"
        ineqs = [
            leq_ir(ident, compose_ir(delta, mu)),
            leq_ir(compose_ir(mu, delta), id2),
            leq_ir(ident, compose_ir(eps, eta)),
            leq_ir(
                compose_ir(eta, eps),
                identity_ir(terminal_syn()),
            ),
        ]
        adjm.cases += len(ineqs)
        if adjm.ok and not all(ineqs):
            adjm.ok = False
            adjm.witness = f"object {o}"
    return [frob, adjm]


def _terminal_checks(objs: list[SynObject], cap: int) -> list[CheckResult]:
    res = CheckResult("terminal_map_unique", True, 0)
    sub = CheckResult("subobject_lattice_size", True, 0)
    point = terminal_syn()
    for o in objs:
        if len(o.predicate) <= cap:
            functions = [
                r for r in enumerate_relations(o, point) if classify(r).function
            ]
            res.cases += 1
            if res.ok and (len(functions) != 1 or functions[0].rows != bang(o).rows):
                res.ok = False
                res.witness = f"object {o}: {len(functions)} maps to the point"
            sub.cases += 1
            if sub.ok and len(subobjects(o)) != 2 ** len(o.predicate):
                sub.ok = False
                sub.witness = f"object {o}"
    return [res, sub]


def _hom_sweep_checks(
    objs: list[SynObject], bounds: AxiomBounds
) -> list[CheckResult]:
    validity = CheckResult("validity_equals_frame_condition", True, 0)
    threeway = CheckResult("function_characterizations_agree", True, 0)
    discrete = CheckResult("order_on_functions_discrete", True, 0)
    remark = CheckResult("entailments_sharpen_to_equalities", True, 0)
    invol = CheckResult("transpose_involutive", True, 0)
    unital = CheckResult("composition_unital", True, 0)
    small = [o for o in objs if o.context.arity <= bounds.hom_arity]
    plain = [
        o for o in small if not o.context.extra_support()
    ]
    for o1 in small:
        for o2 in small:
            if o1.context.arity + o2.context.arity > bounds.hom_arity:
                continue
            space = sorted(
                x + y
                for x in o1.predicate.tuples
                for y in o2.predicate.tuples
            )
            if len(space) > bounds.max_tuple_space:
                continue
            n1 = o1.context.arity
            full1 = o1.predicate.tuples
            full2 = o2.predicate.tuples
            rels = []
            for k in range(len(space) + 1):
                for rows in itertools.combinations(space, k):
                    rels.append(
                        mk_internal_relation(o1, o2, rows)
                    )
            functions = []
            for rel in rels:
                # frame condition: squeezing between the identities is a no-op
                squeezed = compose_ir(
                    compose_ir(identity_ir(o1), rel), identity_ir(o2)
                )
                validity.cases += 1
                if validity.ok and squeezed.rows != rel.rows:
                    validity.ok = False
                    validity.witness = f"{o1} -> {o2}, rows {sorted(rel.rows)}"
                cls = classify(rel)  # raises if the two routes disagree
                threeway.cases += 1
                if cls.function:
                    functions.append(rel)
                invol.cases += 1
                if invol.ok and transpose_ir(transpose_ir(rel)).rows != rel.rows:
                    invol.ok = False
                    invol.witness = f"{o1} -> {o2}"
                unital.cases += 1
                left_unit = compose_ir(identity_ir(o1), rel)
                right_unit = compose_ir(rel, identity_ir(o2))
                if unital.ok and not (
                    left_unit.rows == rel.rows == right_unit.rows
                ):
                    unital.ok = False
                    unital.witness = f"{o1} -> {o2}"
                remark.cases += 1
                if remark.ok:
                    good = True
                    if cls.total and rel.left_marginal() != full1:
                        good = False
                    if cls.deterministic:
                        wide = set()
                        thin = set()
                        for x, y in rel.split_rows():
                            thin.add(x + y + y)
                            for x2, y2 in rel.split_rows():
                                if x2 == x:
                                    wide.add(x + y + y2)
                        if wide != thin:
                            good = False
                    if not good:
                        remark.ok = False
                        remark.witness = f"{o1} -> {o2}, rows {sorted(rel.rows)}"
            for fa in functions:
                for fb in functions:
                    discrete.cases += 1
                    if (
                        discrete.ok
                        and fa.rows < fb.rows
                    ):
                        discrete.ok = False
                        discrete.witness = f"{o1} -> {o2}"
    # the adjoint-existence route, with the candidate adjoint enumerated
    adjoint = CheckResult("left_adjoints_are_the_functions", True, 0)
    for o1 in plain:
        for o2 in plain:
            if o1.context.arity + o2.context.arity > bounds.hom_arity:
                continue
            if len(o1.predicate) * len(o2.predicate) > bounds.max_tuple_space:
                continue
            backwards = enumerate_relations(o2, o1)
            for rel in enumerate_relations(o1, o2):
                has_adjoint = any(
                    leq_ir(identity_ir(o1), compose_ir(rel, xi))
                    and leq_ir(compose_ir(xi, rel), identity_ir(o2))
                    for xi in backwards
                )
                adjoint.cases += 1
                if adjoint.ok and has_adjoint != classify(rel).function:
                    adjoint.ok = False
                    adjoint.witness = f"{o1} -> {o2}, rows {sorted(rel.rows)}"
    return [validity, threeway, discrete, remark, invol, unital, adjoint]


def _assoc_check(model: ModelInstance, bounds: AxiomBounds) -> CheckResult:
    check = CheckResult("composition_associative", True, 0)
    chain_objs = []
    for c in contexts_up_to(model.domains.keys(), 1):
        if c.arity == 1 and not c.extra_support():
            full = true_rel(c, model)
            rows = full.rows()
            while len(rows) * len(rows) > bounds.max_tuple_space:
                rows = rows[:-1]
            chain_objs.append(SynObject(c, mk_relation(c, rows)))
    chain_objs = chain_objs[:2] or [terminal_syn()]
    for o1, o2, o3, o4 in itertools.product(chain_objs, repeat=4):
        as_ = enumerate_relations(o1, o2)
        bs = enumerate_relations(o2, o3)
        cs = enumerate_relations(o3, o4)
        for a in as_:
            for b in bs:
                ab = compose_ir(a, b)
                for c in cs:
                    check.cases += 1
                    lhs = compose_ir(ab, c)
                    rhs = compose_ir(a, compose_ir(b, c))
                    if check.ok and lhs.rows != rhs.rows:
                        check.ok = False
                        check.witness = f"{o1} -> {o2} -> {o3} -> {o4}"
                        return check
    return check


def _limit_checks(model: ModelInstance, bounds: AxiomBounds) -> list[CheckResult]:
    family = _limit_family(model, bounds)
    funcs: dict[tuple[int, int], list[InternalRelation]] = {}
    for i, a in enumerate(family):
        for j, b in enumerate(family):
            funcs[i, j] = enumerate_functions(a, b)

    pb_exists = CheckResult("pullback_square_commutes", True, 0)
    pb_unique = CheckResult("pullback_mediator_unique", True, 0)
    stability = CheckResult("regular_epi_pullback_stable", True, 0)
    for k, o in enumerate(family):
        for i, o1 in enumerate(family):
            for j, o2 in enumerate(family):
                for t1 in funcs[i, k]:
                    for t2 in funcs[j, k]:
                        apex, p1, p2 = pullback_ir(t1, t2)
                        pb_exists.cases += 1
                        left = compose_ir(p1, t1)
                        right = compose_ir(p2, t2)
                        if pb_exists.ok and (
                            left.rows != right.rows
                            or not is_function(p1)
                            or not is_function(p2)
                        ):
                            pb_exists.ok = False
                            pb_exists.witness = f"cospan {o1} -> {o} <- {o2}"
                        if is_regular_epi_ir(t2):
                            stability.cases += 1
                            if stability.ok and not is_regular_epi_ir(p1):
                                stability.ok = False
                                stability.witness = (
                                    f"cospan {o1} -> {o} <- {o2}"
                                )
                        for x_idx, x in enumerate(family):
                            for u1 in funcs[x_idx, i]:
                                lead = compose_ir(u1, t1)
                                for u2 in funcs[x_idx, j]:
                                    if lead.rows != compose_ir(u2, t2).rows:
                                        continue
                                    pb_unique.cases += 1
                                    mediators = [
                                        m
                                        for m in enumerate_functions(x, apex)
                                        if compose_ir(m, p1).rows == u1.rows
                                        and compose_ir(m, p2).rows == u2.rows
                                    ]
                                    expected = pair_ir(u1, u2, apex)
                                    if pb_unique.ok and (
                                        len(mediators) != 1
                                        or mediators[0].rows != expected.rows
                                    ):
                                        pb_unique.ok = False
                                        pb_unique.witness = (
                                            f"cone {x} over {o1} -> {o} <- {o2}"
                                        )

    eq_check = CheckResult("equalizer_universal", True, 0)
    for i, o1 in enumerate(family):
        for j, o2 in enumerate(family):
            for t1 in funcs[i, j]:
                for t2 in funcs[i, j]:
                    obj, incl = equalizer_ir(t1, t2)
                    good = (
                        is_mono_ir(incl)
                        and compose_ir(incl, t1).rows == compose_ir(incl, t2).rows
                    )
                    eq_check.cases += 1
                    if eq_check.ok and not good:
                        eq_check.ok = False
                        eq_check.witness = f"parallel pair {o1} -> {o2}"
                        continue
                    for x_idx, x in enumerate(family):
                        for u in funcs[x_idx, i]:
                            if compose_ir(u, t1).rows != compose_ir(u, t2).rows:
                                continue
                            eq_check.cases += 1
                            mediators = [
                                m
                                for m in enumerate_functions(x, obj)
                                if compose_ir(m, incl).rows == u.rows
                            ]
                            if eq_check.ok and len(mediators) != 1:
                                eq_check.ok = False
                                eq_check.witness = (
                                    f"cone {x} into equalizer of {o1} -> {o2}"
                                )

    img = CheckResult("image_factorization", True, 0)
    ortho = CheckResult("regular_epi_mono_orthogonal", True, 0)
    epis: list[InternalRelation] = []
    monos: list[InternalRelation] = []
    for (i, j), fs in funcs.items():
        for t in fs:
            epi, mono = image_ir(t)
            img.cases += 1
            recomposed = compose_ir(epi, mono)
            if img.ok and not (
                is_regular_epi_ir(epi)
                and is_mono_ir(mono)
                and is_function(epi)
                and is_function(mono)
                and recomposed.rows == t.rows
            ):
                img.ok = False
                img.witness = f"function {family[i]} -> {family[j]}"
            if is_regular_epi_ir(t):
                epis.append(t)
            if is_mono_ir(t):
                monos.append(t)
    epis = epis[:12]
    monos = monos[:12]
    for e in epis:
        for m in monos:
            fs = enumerate_functions(e.dom, m.dom)
            gs = enumerate_functions(e.cod, m.cod)
            for f in fs:
                fm = compose_ir(f, m)
                for g in gs:
                    if compose_ir(e, g).rows != fm.rows:
                        continue
                    ortho.cases += 1
                    diagonals = [
                        h
                        for h in enumerate_functions(e.cod, m.dom)
                        if compose_ir(e, h).rows == f.rows
                        and compose_ir(h, m).rows == g.rows
                    ]
                    if ortho.ok and len(diagonals) != 1:
                        ortho.ok = False
                        ortho.witness = (
                            f"square over epi {e.dom} ->> {e.cod}, "
                            f"mono {m.dom} >-> {m.cod}"
                        )
    return [pb_exists, pb_unique, stability, eq_check, img, ortho]


def check_regular_axioms(
    model: ModelInstance, bounds: AxiomBounds | None = None
) -> AxiomReport:
    """Run every bounded law check against one model and collect a report."""
    bounds = bounds or AxiomBounds()
    report = AxiomReport(bounds)
    objs = _objects_for(model, bounds.max_arity, bounds.max_tuple_space)
    report.checks.extend(_object_law_checks(objs))
    report.checks.extend(_terminal_checks(objs, bounds.max_tuple_space))
    report.checks.extend(_hom_sweep_checks(objs, bounds))
    report.checks.append(_assoc_check(model, bounds))
    report.checks.extend(_limit_checks(model, bounds))
    return report


@dataclass
class FundamentalReport:
    """Census of the morphisms between two one-port objects with full predicates."""

    left_type: str
    right_type: str
    num_relations: int
    expected_relations: int
    num_functions: int
    expected_functions: int
    functions_are_graphs: bool

    @property
    def ok(self) -> bool:
        return (
            self.num_relations == self.expected_relations
            and self.num_functions == self.expected_functions
            and self.functions_are_graphs
        )

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "left_type": self.left_type,
            "right_type": self.right_type,
            "relations": self.num_relations,
            "expected_relations": self.expected_relations,
            "functions": self.num_functions,
            "expected_functions": self.expected_functions,
            "functions_are_graphs": self.functions_are_graphs,
        }

    def summary(self) -> str:
        return (
            f"relations {self.num_relations}/{self.expected_relations}, "
            f"functions {self.num_functions}/{self.expected_functions}, "
            f"graphs: {'yes' if self.functions_are_graphs else 'NO'}, "
            f"result: {'ok' if self.ok else 'FAIL'}"
        )


def fundamental_check(
    model: ModelInstance, left_type: str, right_type: str
) -> FundamentalReport:
    """Relations between full one-port objects are subsets of the product of
    domains; functions are exactly the graphs of maps between the domains."""
    o1 = SynObject(
        mk_context((left_type,)), true_rel(mk_context((left_type,)), model)
    )
    o2 = SynObject(
        mk_context((right_type,)), true_rel(mk_context((right_type,)), model)
    )
    d1, d2 = len(model.domain(left_type)), len(model.domain(right_type))
    rels = enumerate_relations(o1, o2)
    functions = [r for r in rels if classify(r).function]
    graphs = all(
        len(r.rows) == len(r.left_marginal()) == d1 for r in functions
    )
    return FundamentalReport(
        left_type,
        right_type,
        len(rels),
        2 ** (d1 * d2),
        len(functions),
        d2**d1,
        graphs,
    )
