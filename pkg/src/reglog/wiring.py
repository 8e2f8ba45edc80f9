"""Wiring diagrams: relations between contexts presented by shared dots.

A wiring diagram has k inner shells (contexts), one outer shell, a list of
typed dots, and a boundary map sending every port of every shell to a dot of
the same type.  The diagram also carries a support set that contains the dot
types and every shell's support; symbols in the support that no dot carries
form the *white dot* label.

Diagrams are kept in a normal form: dots are numbered by the first port that
touches them, scanning inner shells in order and the outer shell last, and the
support is sorted.  Equality of normal forms decides equality of the diagrams
as relations, and the ordering ``leq_wd`` compares diagrams over the same
boundary.  Substitution of a diagram into an inner shell merges dots with a
union-find and is the engine behind all composition in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .context import (
    Context,
    ContextMorphism,
    _canon_support,
    oplus,
    oplus_all,
    terminal_ctx,
)
from .errors import CompositionError, ValidationError
from .unionfind import UnionFind


@dataclass(frozen=True)
class WiringDiagram:
    """A diagram with shells ``(*inner, outer)``; ``wires[s][p]`` is the dot of
    port ``p`` of shell ``s``, with the outer shell stored last."""

    inner: tuple[Context, ...]
    outer: Context
    dot_types: tuple[str, ...]
    support: tuple[str, ...]
    wires: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        shells = (*self.inner, self.outer)
        if len(self.wires) != len(shells):
            raise ValidationError(
                f"expected {len(shells)} wire rows, got {len(self.wires)}"
            )
        seen: set[int] = set()
        for shell, row in zip(shells, self.wires):
            if len(row) != shell.arity:
                raise ValidationError(
                    f"shell {shell} has arity {shell.arity} but {len(row)} wires"
                )
            for p, d in enumerate(row):
                if not 0 <= d < len(self.dot_types):
                    raise ValidationError(f"wire to unknown dot {d}")
                if self.dot_types[d] != shell.port_types[p]:
                    raise ValidationError(
                        f"port {p + 1} of shell {shell} has type "
                        f"{shell.port_types[p]} but dot {d + 1} has type "
                        f"{self.dot_types[d]}"
                    )
                seen.add(d)
        if len(seen) != len(self.dot_types):
            raise ValidationError("every dot must be hit by at least one port")
        if self.support != _canon_support(self.support):
            raise ValidationError("support must be sorted and deduplicated")
        required = set(self.dot_types)
        for shell in shells:
            required |= shell.support_set
        if not required <= set(self.support):
            raise ValidationError(
                "support must contain all dot types and shell supports"
            )

    @property
    def num_slots(self) -> int:
        return len(self.inner)

    @property
    def num_dots(self) -> int:
        return len(self.dot_types)

    def white_labels(self) -> tuple[str, ...]:
        """Support symbols carried by no dot: the white-dot label."""
        used = set(self.dot_types)
        return tuple(s for s in self.support if s not in used)

    def structural_hash(self) -> int:
        """A 64-bit hash of the normal form, for fast comparison tables."""
        return hash(self) & 0xFFFFFFFFFFFFFFFF


def normalize(w: WiringDiagram) -> WiringDiagram:
    """Renumber dots by first occurrence in the port scan; idempotent."""
    order: dict[int, int] = {}
    for row in w.wires:
        for d in row:
            if d not in order:
                order[d] = len(order)
    dot_types = tuple(
        w.dot_types[old] for old, _ in sorted(order.items(), key=lambda kv: kv[1])
    )
    wires = tuple(tuple(order[d] for d in row) for row in w.wires)
    return WiringDiagram(w.inner, w.outer, dot_types, w.support, wires)


def mk_wiring(
    inner: Iterable[Context],
    outer: Context,
    dot_types: Iterable[str],
    wires: Iterable[Iterable[int]],
    extra_support: Iterable[str] = (),
) -> WiringDiagram:
    """Validating constructor.  Dots hit by no port are absorbed into the
    support, the support is completed to cover dots and shells, and the result
    is normalized."""
    inner = tuple(inner)
    dot_types = tuple(dot_types)
    wires = tuple(tuple(row) for row in wires)
    shells = (*inner, outer)
    if len(wires) != len(shells):
        raise ValidationError(
            f"expected {len(shells)} wire rows (inner shells then outer), "
            f"got {len(wires)}"
        )
    for shell, row in zip(shells, wires):
        if len(row) != shell.arity:
            raise ValidationError(
                f"shell {shell} has arity {shell.arity} but {len(row)} wires"
            )
        for p, d in enumerate(row):
            if not 0 <= d < len(dot_types):
                raise ValidationError(f"wire to unknown dot index {d}")
            if dot_types[d] != shell.port_types[p]:
                raise ValidationError(
                    f"port {p + 1} of shell {shell} has type "
                    f"{shell.port_types[p]} but dot {d + 1} has type {dot_types[d]}"
                )
    hit = {d for row in wires for d in row}
    keep = [d for d in range(len(dot_types)) if d in hit]
    absorbed = [dot_types[d] for d in range(len(dot_types)) if d not in hit]
    remap = {d: k for k, d in enumerate(keep)}
    support = _canon_support(
        tuple(dot_types)
        + tuple(absorbed)
        + tuple(extra_support)
        + tuple(s for shell in shells for s in shell.support)
    )
    w = WiringDiagram(
        inner,
        outer,
        tuple(dot_types[d] for d in keep),
        support,
        tuple(tuple(remap[d] for d in row) for row in wires),
    )
    return normalize(w)


def identity_wd(c: Context) -> WiringDiagram:
    ports = tuple(range(c.arity))
    return mk_wiring((c,), c, c.port_types, (ports, ports))


def empty_wd() -> WiringDiagram:
    """The tensor unit: no shells but the empty outer one, no dots."""
    return mk_wiring((), terminal_ctx(), (), ((),))


def substitute(w: WiringDiagram, slot: int, inside: WiringDiagram) -> WiringDiagram:
    """Plug ``inside`` into inner shell ``slot`` of ``w`` (0-based).

    The outer shell of ``inside`` must equal the shell it replaces.  Dots
    joined through the vanished boundary are merged; merged classes that end
    up with no port are absorbed into the support.
    """
    if not 0 <= slot < w.num_slots:
        raise CompositionError(f"no inner shell {slot}")
    if inside.outer != w.inner[slot]:
        raise CompositionError(
            f"outer shell {inside.outer} of the plugged diagram does not match "
            f"inner shell {w.inner[slot]}"
        )
    n_w = w.num_dots
    uf = UnionFind(n_w + inside.num_dots)
    for p in range(w.inner[slot].arity):
        uf.union(w.wires[slot][p], n_w + inside.wires[-1][p])
    classes = uf.classes()
    index_of = {members[0]: k for k, members in enumerate(classes)}

    def cls(global_dot: int) -> int:
        return index_of[uf.find(global_dot)]

    all_types = w.dot_types + inside.dot_types
    dot_types = tuple(all_types[members[0]] for members in classes)

    new_inner = w.inner[:slot] + inside.inner + w.inner[slot + 1 :]
    rows: list[tuple[int, ...]] = []
    for s in range(w.num_slots):
        if s == slot:
            for i in range(inside.num_slots):
                rows.append(tuple(cls(n_w + d) for d in inside.wires[i]))
        else:
            rows.append(tuple(cls(d) for d in w.wires[s]))
    rows.append(tuple(cls(d) for d in w.wires[-1]))

    return mk_wiring(
        new_inner,
        w.outer,
        dot_types,
        rows,
        extra_support=w.support + inside.support,
    )


def tensor(left: WiringDiagram, right: WiringDiagram) -> WiringDiagram:
    """Juxtapose two diagrams: shells concatenate, dots stay disjoint."""
    shift = left.num_dots
    rows = [row for row in left.wires[:-1]]
    rows += [tuple(d + shift for d in row) for row in right.wires[:-1]]
    rows.append(
        left.wires[-1] + tuple(d + shift for d in right.wires[-1])
    )
    return mk_wiring(
        left.inner + right.inner,
        oplus(left.outer, right.outer),
        left.dot_types + right.dot_types,
        rows,
        extra_support=left.support + right.support,
    )


def as_morphism(w: WiringDiagram) -> WiringDiagram:
    """Fuse all inner shells into their product, giving a one-shell diagram."""
    fused = oplus_all(w.inner)
    rows = (
        tuple(d for row in w.wires[:-1] for d in row),
        w.wires[-1],
    )
    return mk_wiring((fused,), w.outer, w.dot_types, rows, extra_support=w.support)


def compose_wd(first: WiringDiagram, second: WiringDiagram) -> WiringDiagram:
    """Composite ``first ; second`` of one-shell (morphism-shaped) diagrams."""
    if first.num_slots != 1 or second.num_slots != 1:
        raise CompositionError(
            "compose_wd expects diagrams with exactly one inner shell"
        )
    return substitute(second, 0, first)


def leq_wd(lower: WiringDiagram, upper: WiringDiagram) -> bool:
    """Is ``lower <= upper``?  Both diagrams must share all shells.

    True when every pair of ports joined in ``upper`` is joined in ``lower``
    (the upper connectivity refines the lower one) and the upper support is
    contained in the lower support.
    """
    if lower.inner != upper.inner or lower.outer != upper.outer:
        raise CompositionError("leq_wd compares diagrams over identical shells")
    forced: dict[int, int] = {}
    for row_low, row_up in zip(lower.wires, upper.wires):
        for d_low, d_up in zip(row_low, row_up):
            if forced.setdefault(d_up, d_low) != d_low:
                return False
    return set(upper.support) <= set(lower.support)


def delta_wd(c: Context) -> WiringDiagram:
    """Copy: ``c -> c (+) c``."""
    ports = tuple(range(c.arity))
    return mk_wiring((c,), oplus(c, c), c.port_types, (ports, ports + ports))


def mu_wd(c: Context) -> WiringDiagram:
    """Merge: ``c (+) c -> c``."""
    ports = tuple(range(c.arity))
    return mk_wiring((oplus(c, c),), c, c.port_types, (ports + ports, ports))


def epsilon_wd(c: Context) -> WiringDiagram:
    """Discard: ``c -> ()``; the discarded types stay in the support."""
    ports = tuple(range(c.arity))
    return mk_wiring((c,), terminal_ctx(), c.port_types, (ports, ()))


def eta_wd(c: Context) -> WiringDiagram:
    """Spawn: ``() -> c``; every outer port gets its own fresh dot."""
    ports = tuple(range(c.arity))
    return mk_wiring((terminal_ctx(),), c, c.port_types, ((), ports))


def graph_wd(f: ContextMorphism) -> WiringDiagram:
    """The graph of a context morphism, as a diagram ``dom -> cod``."""
    ports = tuple(range(f.dom.arity))
    return mk_wiring(
        (f.dom,), f.cod, f.dom.port_types, (ports, f.port_map)
    )


def cograph_wd(f: ContextMorphism) -> WiringDiagram:
    """The cograph of a context morphism, as a diagram ``cod -> dom``."""
    ports = tuple(range(f.dom.arity))
    return mk_wiring(
        (f.cod,), f.dom, f.dom.port_types, (f.port_map, ports)
    )


def braid_wd(left: Context, right: Context) -> WiringDiagram:
    from .context import braid_cm

    return graph_wd(braid_cm(left, right))


def generators_wd(c: Context, other: Context) -> dict[str, WiringDiagram]:
    """The generating diagrams at ``c`` (and the braid with ``other``)."""
    return {
        "identity": identity_wd(c),
        "delta": delta_wd(c),
        "mu": mu_wd(c),
        "epsilon": epsilon_wd(c),
        "eta": eta_wd(c),
        "sigma": braid_wd(c, other),
    }


def permute_outer_blocks(
    w: WiringDiagram, left: Context, right: Context
) -> WiringDiagram:
    """Swap the two declared blocks of the outer shell."""
    if oplus(left, right) != w.outer:
        raise CompositionError(
            f"outer shell {w.outer} is not {left} followed by {right}"
        )
    n1 = left.arity
    out = w.wires[-1][n1:] + w.wires[-1][:n1]
    return mk_wiring(
        w.inner,
        oplus(right, left),
        w.dot_types,
        (*w.wires[:-1], out),
        extra_support=w.support,
    )


def transpose_wd(
    w: WiringDiagram, split: tuple[Context, Context] | None = None
) -> WiringDiagram:
    """Swap the two boundary roles of a relation-shaped diagram.

    For a one-shell diagram the inner and outer shells trade places.  For a
    diagram with no inner shells the outer shell must be split as two blocks,
    which are swapped.
    """
    if w.num_slots == 1 and split is None:
        return mk_wiring(
            (w.outer,),
            w.inner[0],
            w.dot_types,
            (w.wires[1], w.wires[0]),
            extra_support=w.support,
        )
    if w.num_slots == 0:
        if split is None:
            raise CompositionError(
                "transposing a diagram with no inner shells needs the outer split"
            )
        return permute_outer_blocks(w, *split)
    raise CompositionError(
        "transpose_wd expects one inner shell, or none plus an outer split"
    )
