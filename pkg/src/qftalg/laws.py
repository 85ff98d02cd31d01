"""Executable checkers for the structural identities of the algebra.

Each checker walks a finite element family (exhaustive small monomials over
a three-point alphabet plus seeded random linear combinations) and records
every violation it finds into a :class:`LawReport`; an empty failure list
is a pass.  Reports are deterministic for a fixed seed.

The ``coproduct_fn`` hooks exist for mutation testing only: passing a
deliberately corrupted coproduct must make the checkers fail, guarding
against vacuously green laws.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .hopf import (
    Element,
    Generator,
    Monomial,
    Tensor,
    antipode,
    coproduct,
    coproduct_prime,
    monomial_coproduct,
    monomial_coproduct_prime,
)
from .scalar import PropPoly

DEFAULT_POINTS = ("x1", "x2", "x3")
DEFAULT_RANDOM_COUNT = 100


@dataclass
class LawFailure:
    """One violated instance: the inputs and both evaluated sides."""

    law: str
    inputs: tuple
    lhs: object
    rhs: object

    def to_json(self):
        return {
            "law": self.law,
            "inputs": [u.to_json() for u in self.inputs],
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
        }


@dataclass
class LawReport:
    law: str
    checked: int = 0
    failures: list[LawFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self):
        return {
            "law": self.law,
            "checked": self.checked,
            "failures": [f.to_json() for f in self.failures],
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.law}: checked {self.checked}, failures {len(self.failures)}: {status}"


@dataclass(frozen=True)
class ElementFamily:
    name: str
    members: tuple[Element, ...]


def exhaustive_monomials(
    max_generators: int = 3,
    max_power: int = 3,
    points: Sequence[str] = DEFAULT_POINTS,
    include_unit: bool = True,
) -> list[Element]:
    """Every monomial with at most ``max_generators`` occurrences of powers
    up to ``max_power`` over the given points, as elements."""
    gens = [Generator(p, n) for p in points for n in range(1, max_power + 1)]
    out = [Element.one()] if include_unit else []
    for size in range(1, max_generators + 1):
        for combo in itertools.combinations_with_replacement(gens, size):
            out.append(Element.from_monomial(Monomial.from_occurrences(combo)))
    return out


def random_elements(
    seed: int,
    count: int = DEFAULT_RANDOM_COUNT,
    max_generators: int = 3,
    max_power: int = 3,
    points: Sequence[str] = DEFAULT_POINTS,
    max_terms: int = 3,
) -> list[Element]:
    """Seeded random linear combinations with small rational coefficients
    and propagator-free weights."""
    rng = random.Random(seed)
    gens = [Generator(p, n) for p in points for n in range(1, max_power + 1)]
    out = []
    while len(out) < count:
        elem = Element.zero()
        for _ in range(rng.randint(1, max_terms)):
            size = rng.randint(0, max_generators)
            mono = Monomial.from_occurrences(rng.choices(gens, k=size))
            num = rng.choice([-3, -2, -1, 1, 2, 3])
            den = rng.randint(1, 3)
            elem = elem + PropPoly.constant(Fraction(num, den)) * Element.from_monomial(mono)
        if elem:  # coefficients can cancel; keep drawing until nonzero
            out.append(elem)
    return out


def default_family(seed: int = 0, random_count: int = DEFAULT_RANDOM_COUNT) -> ElementFamily:
    members = exhaustive_monomials() + random_elements(seed, random_count)
    return ElementFamily("monomials(p<=3,n<=3) + random", tuple(members))


def bialgebra_family(seed: int = 0, random_count: int = DEFAULT_RANDOM_COUNT) -> ElementFamily:
    members = exhaustive_monomials(max_generators=2) + random_elements(
        seed, random_count, max_generators=2, max_terms=2
    )
    return ElementFamily("monomials(p<=2,n<=3) + random", tuple(members))


def comodule_family(seed: int = 0, random_count: int = DEFAULT_RANDOM_COUNT) -> ElementFamily:
    members = exhaustive_monomials(max_power=2) + random_elements(
        seed, random_count, max_power=2, max_terms=2
    )
    return ElementFamily("monomials(p<=3,n<=2) + random", tuple(members))


_COPRODUCTS: dict[str, Callable[[Element], Tensor]] = {
    "delta": coproduct,
    "delta-prime": coproduct_prime,
}

_MONOMIAL_EXPANSIONS = {
    "delta": monomial_coproduct,
    "delta-prime": monomial_coproduct_prime,
}


def check_coalgebra(
    which: str,
    family: ElementFamily,
    coproduct_fn: Callable[[Element], Tensor] | None = None,
) -> LawReport:
    """Coassociativity, both counit laws, and cocommutativity of one
    coproduct over the family.  ``coproduct_fn`` is a mutation-testing hook."""
    if which not in _COPRODUCTS:
        raise ValueError(f"unknown coproduct {which!r}; use 'delta' or 'delta-prime'")
    split = coproduct_fn if coproduct_fn is not None else _COPRODUCTS[which]

    def expand(mono: Monomial):
        return split(Element.from_monomial(mono)).terms.items()

    report = LawReport(f"coalgebra({which})")
    for u in family.members:
        report.checked += 1
        two = split(u)
        left = two.apply_to_slot(0, expand)
        right = two.apply_to_slot(1, expand)
        if left != right:
            report.failures.append(LawFailure("coassociativity", (u,), left, right))
        if two.counit_slot(0).element() != u:
            report.failures.append(
                LawFailure("left counit law", (u,), two.counit_slot(0).element(), u)
            )
        if two.counit_slot(1).element() != u:
            report.failures.append(
                LawFailure("right counit law", (u,), two.counit_slot(1).element(), u)
            )
        if two.swap(0, 1) != two:
            report.failures.append(
                LawFailure("cocommutativity", (u,), two.swap(0, 1), two)
            )
    return report


def check_bialgebra(
    family: ElementFamily,
    coproduct_fn: Callable[[Element], Tensor] | None = None,
) -> LawReport:
    """Both algebra-morphism laws on every ordered pair from the family."""
    split = coproduct_fn if coproduct_fn is not None else coproduct
    report = LawReport("bialgebra")
    for u in family.members:
        for v in family.members:
            report.checked += 1
            product = u * v
            lhs = split(product)
            rhs = split(u).pairwise_product(split(v))
            if lhs != rhs:
                report.failures.append(LawFailure("coproduct morphism", (u, v), lhs, rhs))
            eps_lhs = product.counit()
            eps_rhs = u.counit() * v.counit()
            if eps_lhs != eps_rhs:
                report.failures.append(LawFailure("counit morphism", (u, v), eps_lhs, eps_rhs))
    return report


def check_comodule_coalgebra(
    family: ElementFamily,
    coproduct_fn: Callable[[Element], Tensor] | None = None,
) -> LawReport:
    """The comodule-coalgebra compatibility of the partition coproduct with
    the contraction coproduct as coaction, both sides evaluated literally:

        (Delta' (x) Id) psi  =  (Id (x) Id (x) mul)(Id (x) swap (x) Id)(psi (x) psi) Delta'

    with ``psi`` the contraction coproduct.  Note: this textbook axiom does
    not hold for this pair of coproducts (the right side counts the
    all-trivial splitting once per subset of the input word, the left side
    once), so on any family containing non-unit elements this checker
    reports failures.  The exact discrepancy per instance is recorded.  The
    operational content (the connected-product expansion) is checked by
    :func:`qftalg.renorm.comodule_expansion_check` instead.
    """
    psi = coproduct_fn if coproduct_fn is not None else coproduct

    def expand_psi(mono: Monomial):
        return psi(Element.from_monomial(mono)).terms.items()

    report = LawReport("comodule-coalgebra")
    for u in family.members:
        report.checked += 1
        lhs = psi(u).apply_to_slot(0, monomial_coproduct_prime)
        rhs = (
            coproduct_prime(u)
            .apply_to_slot(0, expand_psi)
            .apply_to_slot(2, expand_psi)
            .swap(1, 2)
            .merge_slots(2, 3)
        )
        if lhs != rhs:
            report.failures.append(LawFailure("comodule compatibility", (u,), lhs, rhs))
    return report


def check_antipode(
    family: ElementFamily,
    coproduct_fn: Callable[[Element], Tensor] | None = None,
) -> LawReport:
    """The Hopf axiom ``mul(S (x) Id)Delta u = counit(u) 1 = mul(Id (x) S)Delta u``."""
    split = coproduct_fn if coproduct_fn is not None else coproduct
    report = LawReport("antipode")
    for u in family.members:
        report.checked += 1
        expected = Element.scalar(u.counit())
        two = split(u)
        left = Element.zero()
        right = Element.zero()
        for (a, b), coeff in two.terms.items():
            left = left + coeff * (antipode(Element.from_monomial(a)) * Element.from_monomial(b))
            right = right + coeff * (Element.from_monomial(a) * antipode(Element.from_monomial(b)))
        if left != expected:
            report.failures.append(LawFailure("antipode (S x Id)", (u,), left, expected))
        if right != expected:
            report.failures.append(LawFailure("antipode (Id x S)", (u,), right, expected))
    return report


def mutated_coproduct(u: Element) -> Tensor:
    """Deliberately corrupted coproduct for detector-sensitivity tests:
    drops the ``1 (x) u`` part of every non-unit monomial's splitting."""
    out = coproduct(u)
    acc = dict(out.terms)
    for mono, coeff in u.terms.items():
        if mono.is_unit:
            continue
        key = (Monomial.unit(), mono)
        existing = acc.get(key)
        if existing is not None:
            new = existing - coeff
            if new:
                acc[key] = new
            else:
                del acc[key]
    return Tensor(2, acc)


def run_all_checks(seed: int = 0, random_count: int = DEFAULT_RANDOM_COUNT) -> list[LawReport]:
    """The full default suite, in a fixed order."""
    fam = default_family(seed, random_count)
    return [
        check_coalgebra("delta", fam),
        check_coalgebra("delta-prime", fam),
        check_bialgebra(bialgebra_family(seed, random_count)),
        check_comodule_coalgebra(comodule_family(seed, random_count)),
        check_antipode(fam),
    ]
