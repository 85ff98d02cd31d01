"""Connected and renormalized chronological products.

Both products are finite alternating/exponential sums over iterates of the
reduced partition coproduct:

* connected:     ``T_c(u) = sum_{n>=1} (-1)^(n+1)/n  T(u_1)...T(u_n)``
* renormalized:  ``T_R(u) = sum_{n>=1} 1/n!  T(O(u_1)...O(u_n))``

where ``u_1 (x) ... (x) u_n`` runs over the (n-1)-st reduced-partition
iterate and ``O`` is a pluggable generalized vertex (a linear map from the
algebra into the span of single generators).  Every series terminates: the
n-th iterate vanishes once n reaches the occurrence count of the largest
monomial.  Products between the ``T(...)`` factors are normal products.

Conventions: ``t(1) = 1`` and ``t_c(1) = 0``; both are forced by requiring
the two expansion identities ``T(u) = sum t(u')u''`` and
``T_c(u) = sum t_c(u')u''`` to hold simultaneously on two-vertex
monomials.  The second expansion is exact only for monomials with exactly
two generator occurrences: it fails on bare single generators
(``T_c(phi) = phi`` against an expansion value of 0) and on three or more
occurrences, where the expansion contains connected-subdiagram terms
multiplied by spectator fields that a connected product cannot contain
(e.g. ``T_c(phi(x)phi(x)phi(y)) = 0`` while the expansion gives
``2 D(x,y) phi(x) + D(x,x) phi(y)``).  The scalar shadow
``counit(T_c(u)) = connected-graph sum`` is exact for every monomial, and
:func:`comodule_expansion_check` offers a report-only mode for the cases
where the element-level expansion breaks.
"""

from __future__ import annotations

import json
import warnings
from fractions import Fraction
from math import factorial
from typing import Mapping

from .coqts import chronological
from .errors import IdentityViolation
from .hopf import (
    Element,
    Generator,
    Monomial,
    kernel_project,
    monomial_coproduct,
    monomial_reduced_prime,
    Tensor,
)
from .scalar import PropPoly, parse_frac


class Vertex:
    """A generalized vertex: a linear map into the span of generators.

    Defined by a finite rule table on basis monomials (unlisted monomials
    map to zero) or, for :func:`identity_vertex`, by the intensional rule
    "keep single-generator monomials".  Images must be linear combinations
    of single-generator monomials; anything else is rejected at
    construction.
    """

    __slots__ = ("rules", "_identity")

    def __init__(self, rules: Mapping[Monomial, Element] | None = None, *, identity: bool = False):
        table: dict[Monomial, Element] = {}
        for mono, image in (rules or {}).items():
            for m in image.terms:
                if m.size != 1:
                    raise ValueError(
                        f"vertex image must lie in the span of single generators, got {m}"
                    )
            if image:
                table[mono] = image
        self.rules = table
        self._identity = identity

    def image(self, mono: Monomial) -> Element:
        if self._identity and mono.size == 1:
            return Element.from_monomial(mono)
        return self.rules.get(mono, Element.zero())

    def apply(self, u: Element) -> Element:
        out = Element.zero()
        for mono, coeff in u.terms.items():
            img = self.image(mono)
            if img:
                out = out + coeff * img
        return out

    @classmethod
    def from_json(cls, text: str) -> "Vertex":
        """Parse the rule-table format: a JSON array of
        ``{"from": monomial, "to": [{"point", "power", "coeff": "p/q"}]}``."""
        rules: dict[Monomial, Element] = {}
        for entry in json.loads(text):
            source = Monomial(
                (Generator(f["point"], f["power"]), f["mult"])
                for f in entry["from"]
            )
            image = Element.zero()
            for target in entry["to"]:
                coeff = PropPoly.constant(parse_frac(str(target["coeff"])))
                image = image + coeff * Element.from_generator(
                    Generator(target["point"], target["power"])
                )
            if source in rules:
                raise ValueError(f"duplicate vertex rule for {source}")
            rules[source] = image
        return cls(rules)


def identity_vertex() -> Vertex:
    """Maps each single-generator monomial to itself, everything else to 0."""
    return Vertex(identity=True)


def zero_vertex() -> Vertex:
    """Maps everything to 0."""
    return Vertex()


def _reduced_partition_terms(u: Element):
    """Yield ``(n, tensor_terms)`` for n = 1, 2, ... until the iterate dies."""
    current = Tensor.from_element(u)
    n = 1
    while current:
        yield n, current
        current = current.apply_to_slot(0, monomial_reduced_prime)
        n += 1


def connected_T(u: Element, strict: bool = True) -> Element:
    """The connected chronological product on the counit kernel."""
    u = kernel_project(u, strict)
    result = Element.zero()
    for n, tensor in _reduced_partition_terms(u):
        coeff = Fraction((-1) ** (n + 1), n)
        for slots, c in tensor.terms.items():
            prod = chronological(slots[0])
            for s in slots[1:]:
                prod = prod * chronological(s)
            result = result + (c * coeff) * prod
    return result


_tc_cache: dict[Monomial, PropPoly] = {}


def _t_c_monomial(mono: Monomial) -> PropPoly:
    """Connected scalar functional on a basis monomial; t_c(1) = 0."""
    if mono.is_unit:
        return PropPoly.zero()
    cached = _tc_cache.get(mono)
    if cached is None:
        cached = connected_T(Element.from_monomial(mono)).counit()
        _tc_cache[mono] = cached
    return cached


def t_c_functional(u: Element | Monomial, strict: bool = True) -> PropPoly:
    """Vacuum expectation of the connected product, extended linearly."""
    if isinstance(u, Monomial):
        return _t_c_monomial(u)
    u = kernel_project(u, strict)
    out = PropPoly.zero()
    for mono, coeff in u.terms.items():
        out = out + coeff * _t_c_monomial(mono)
    return out


def comodule_expansion_check(u: Element, strict: bool = True) -> Element:
    """Check ``T_c(u) = sum t_c(u') u''`` over the contraction coproduct.

    Returns the common value when the identity holds.  On a mismatch,
    strict mode raises :class:`IdentityViolation` with both sides; lenient
    mode warns and returns the ``connected_T`` value, which is the ground
    truth.  The identity holds exactly for monomials with two generator
    occurrences; single generators and monomials with three or more
    occurrences are the known exceptions (see the module docstring), which
    is why the report-only mode exists.
    """
    u = kernel_project(u, strict)
    lhs = connected_T(u)
    acc: dict[Monomial, PropPoly] = {}
    for mono, coeff in u.terms.items():
        for (left, right), c in monomial_coproduct(mono):
            val = _t_c_monomial(left)
            if not val:
                continue
            term = (coeff * val) * c
            new = acc.get(right, PropPoly.zero()) + term
            if new:
                acc[right] = new
            else:
                acc.pop(right, None)
    rhs = Element(acc)
    if lhs == rhs:
        return lhs
    if strict:
        raise IdentityViolation(lhs, rhs, "T_c(u) != sum t_c(u')u''")
    warnings.warn(
        f"connected expansion mismatch: T_c = {lhs} but expansion = {rhs}",
        stacklevel=2,
    )
    return lhs


def renormalized_T(u: Element, vertex: Vertex, strict: bool = True) -> Element:
    """The renormalized chronological product with generalized vertex ``O``."""
    u = kernel_project(u, strict)
    result = Element.zero()
    for n, tensor in _reduced_partition_terms(u):
        coeff = Fraction(1, factorial(n))
        for slots, c in tensor.terms.items():
            prod = vertex.image(slots[0])
            if not prod:
                continue
            for s in slots[1:]:
                img = vertex.image(s)
                if not img:
                    prod = Element.zero()
                    break
                prod = prod * img
            if not prod:
                continue
            result = result + (c * coeff) * chronological(prod)
    return result
