"""Typed contexts and their morphisms.

A context is a finite list of typed ports together with a *support*: a set of
type symbols asserted to be inhabited.  The support always contains the types
of the ports; it may contain extra symbols that no port mentions.

Morphisms act contravariantly on ports: a morphism from ``dom`` to ``cod``
carries a function sending each port of ``cod`` to a port of ``dom`` of the
same type, and may only shrink the support (``cod`` support inside ``dom``
support).  With product given by list concatenation this category has all
finite limits, and both pullbacks and image factorizations are computed here
by direct combinatorics on the port maps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import CompositionError, ValidationError
from .unionfind import UnionFind


def _canon_support(symbols: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(symbols)))


@dataclass(frozen=True)
class Context:
    """A finite list of typed ports plus a sorted support set covering them."""

    port_types: tuple[str, ...]
    support: tuple[str, ...]

    def __post_init__(self):
        if any(not t for t in self.port_types):
            raise ValidationError("type symbols must be nonempty strings")
        if self.support != _canon_support(self.support):
            raise ValidationError(
                f"support must be sorted and deduplicated, got {self.support!r}"
            )
        missing = set(self.port_types) - set(self.support)
        if missing:
            raise ValidationError(
                f"port types {sorted(missing)} are missing from the support"
            )

    @property
    def arity(self) -> int:
        return len(self.port_types)

    @property
    def support_set(self) -> frozenset[str]:
        return frozenset(self.support)

    def extra_support(self) -> tuple[str, ...]:
        """Support symbols carried by no port."""
        used = set(self.port_types)
        return tuple(s for s in self.support if s not in used)

    def __str__(self):
        parts = ", ".join(self.port_types)
        extra = self.extra_support()
        if extra:
            supp = f"| supp {', '.join(extra)}"
            return f"({parts} {supp})" if parts else f"({supp})"
        return f"({parts})"


def mk_context(
    port_types: Iterable[str],
    extra_support: Iterable[str] = (),
    types: Iterable[str] | None = None,
) -> Context:
    """Build a context from a port typing and optional extra support symbols.

    When ``types`` is given, every symbol must be drawn from it.
    """
    port_types = tuple(port_types)
    extra_support = tuple(extra_support)
    if types is not None:
        known = set(types)
        unknown = [s for s in (*port_types, *extra_support) if s not in known]
        if unknown:
            raise ValidationError(f"unknown type symbols: {sorted(set(unknown))}")
    return Context(port_types, _canon_support((*port_types, *extra_support)))


def terminal_ctx() -> Context:
    """The empty context: no ports, no support."""
    return Context((), ())


def support_ctx(symbol: str) -> Context:
    """The context with no ports whose support is the single given symbol."""
    return mk_context((), (symbol,))


def oplus(left: Context, right: Context) -> Context:
    """Concatenate port lists and union supports.

    Concatenation makes the product strictly associative and strictly unital
    with :func:`terminal_ctx`, so nested products never need re-bracketing.
    """
    return Context(
        left.port_types + right.port_types,
        _canon_support(left.support + right.support),
    )


def oplus_all(contexts: Iterable[Context]) -> Context:
    result = terminal_ctx()
    for c in contexts:
        result = oplus(result, c)
    return result


@dataclass(frozen=True)
class ContextMorphism:
    """A morphism ``dom -> cod`` given by its contravariant port map.

    ``port_map[j]`` names the port of ``dom`` that port ``j`` of ``cod`` is
    sent to.  Ports are indexed from 0.
    """

    dom: Context
    cod: Context
    port_map: tuple[int, ...]

    def __post_init__(self):
        if len(self.port_map) != self.cod.arity:
            raise ValidationError(
                f"port map has {len(self.port_map)} entries for a codomain of "
                f"arity {self.cod.arity}"
            )
        for j, i in enumerate(self.port_map):
            if not 0 <= i < self.dom.arity:
                raise ValidationError(f"port map entry {i} out of range at {j}")
            if self.dom.port_types[i] != self.cod.port_types[j]:
                raise ValidationError(
                    f"type mismatch at codomain port {j}: "
                    f"{self.cod.port_types[j]} vs {self.dom.port_types[i]}"
                )
        if not self.cod.support_set <= self.dom.support_set:
            raise ValidationError(
                "codomain support must be contained in domain support"
            )


def mk_morphism(dom: Context, cod: Context, port_map: Iterable[int]) -> ContextMorphism:
    return ContextMorphism(dom, cod, tuple(port_map))


def identity_cm(c: Context) -> ContextMorphism:
    return ContextMorphism(c, c, tuple(range(c.arity)))


def compose_cm(f: ContextMorphism, g: ContextMorphism) -> ContextMorphism:
    """Diagrammatic composite ``f ; g`` (first f, then g)."""
    if f.cod != g.dom:
        raise CompositionError("middle contexts differ")
    return ContextMorphism(
        f.dom, g.cod, tuple(f.port_map[i] for i in g.port_map)
    )


def is_mono(f: ContextMorphism) -> bool:
    """Monomorphisms are exactly the morphisms with surjective port map."""
    return set(f.port_map) == set(range(f.dom.arity))


def is_regular_epi(f: ContextMorphism) -> bool:
    """Regular epis have an injective port map and preserve the support."""
    return (
        len(set(f.port_map)) == len(f.port_map)
        and f.dom.support == f.cod.support
    )


def image_factor_cm(f: ContextMorphism) -> tuple[ContextMorphism, ContextMorphism]:
    """Factor ``f`` as a regular epi followed by a mono.

    The image context keeps the ports of ``dom`` that the port map hits, in
    their original order, and keeps the whole domain support.
    """
    hit = sorted(set(f.port_map))
    image = Context(
        tuple(f.dom.port_types[i] for i in hit),
        f.dom.support,
    )
    epi = ContextMorphism(f.dom, image, tuple(hit))
    rank = {i: k for k, i in enumerate(hit)}
    mono = ContextMorphism(image, f.cod, tuple(rank[i] for i in f.port_map))
    return epi, mono


def pullback_cm(
    f: ContextMorphism, g: ContextMorphism
) -> tuple[Context, ContextMorphism, ContextMorphism]:
    """Pullback of the cospan ``f: A -> C <- B :g``.

    Returns ``(apex, p1, p2)`` with ``p1: apex -> A`` and ``p2: apex -> B``.
    On port maps this is a pushout of finite sets: ports of A and B are merged
    whenever a common port of C points at both.  Classes are numbered by their
    smallest member, with all A ports before all B ports.
    """
    if f.cod != g.cod:
        raise CompositionError("cospan feet must share their codomain")
    n1, n2 = f.dom.arity, g.dom.arity
    uf = UnionFind(n1 + n2)
    for j in range(f.cod.arity):
        uf.union(f.port_map[j], n1 + g.port_map[j])
    classes = uf.classes()
    index_of = {members[0]: k for k, members in enumerate(classes)}

    def member_type(i: int) -> str:
        return f.dom.port_types[i] if i < n1 else g.dom.port_types[i - n1]

    apex = Context(
        tuple(member_type(members[0]) for members in classes),
        _canon_support(f.dom.support + g.dom.support),
    )
    p1 = ContextMorphism(
        apex, f.dom, tuple(index_of[uf.find(i)] for i in range(n1))
    )
    p2 = ContextMorphism(
        apex, g.dom, tuple(index_of[uf.find(n1 + i)] for i in range(n2))
    )
    return apex, p1, p2


def diagonal_cm(c: Context) -> ContextMorphism:
    """The diagonal ``c -> c (+) c``: both copies read back the same port."""
    return ContextMorphism(c, oplus(c, c), tuple(range(c.arity)) * 2)


def proj1_cm(left: Context, right: Context) -> ContextMorphism:
    return ContextMorphism(oplus(left, right), left, tuple(range(left.arity)))


def proj2_cm(left: Context, right: Context) -> ContextMorphism:
    return ContextMorphism(
        oplus(left, right),
        right,
        tuple(range(left.arity, left.arity + right.arity)),
    )


def terminal_cm(c: Context) -> ContextMorphism:
    return ContextMorphism(c, terminal_ctx(), ())


def braid_cm(left: Context, right: Context) -> ContextMorphism:
    """The symmetry ``left (+) right -> right (+) left``."""
    n1, n2 = left.arity, right.arity
    port_map = tuple(range(n1, n1 + n2)) + tuple(range(n1))
    return ContextMorphism(oplus(left, right), oplus(right, left), port_map)


def canonical_maps(c: Context, other: Context) -> dict[str, ContextMorphism]:
    """The structure maps used throughout: diagonal, projections, discard, braid."""
    return {
        "delta": diagonal_cm(c),
        "pi1": proj1_cm(c, other),
        "pi2": proj2_cm(c, other),
        "epsilon": terminal_cm(c),
        "sigma": braid_cm(c, other),
    }


def enumerate_morphisms(dom: Context, cod: Context) -> Iterator[ContextMorphism]:
    """All morphisms ``dom -> cod``, in lexicographic port-map order."""
    if not cod.support_set <= dom.support_set:
        return
    slots = []
    for t in cod.port_types:
        positions = [i for i, s in enumerate(dom.port_types) if s == t]
        if not positions:
            return
        slots.append(positions)
    for port_map in itertools.product(*slots):
        yield ContextMorphism(dom, cod, port_map)
