"""The connected Hopf algebra of normal (Wick) products of a scalar field.

Basis monomials are commutative words in the generators ``phi^n(x)``; the
generators are *atoms*: ``phi^2(x)`` and the square ``phi(x)*phi(x)`` are
distinct monomials, because the algebra is free commutative on the
generators.  Elements are finite linear combinations of monomials with
:class:`~qftalg.scalar.PropPoly` coefficients.

Two coproducts live here:

* :func:`coproduct`, the contraction coproduct: generators split
  binomially, ``phi^n(x) -> sum_k C(n,k) phi^k(x) (x) phi^(n-k)(x)``,
  extended multiplicatively.  This is the splitting that drives Wick's
  theorem.
* :func:`coproduct_prime`, the partition coproduct: generators are
  primitive, ``g -> g (x) 1 + 1 (x) g``, extended multiplicatively, so a
  monomial splits over all subsets of its generator occurrences.  This is
  the splitting that drives connected and renormalized products.

All values are immutable and all operations pure; internal memo tables only
cache idempotent results, so concurrent use is safe.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Mapping, NamedTuple

from .errors import NotInKernel, PowerError
from .scalar import PropPoly

PointId = str


class Generator(NamedTuple):
    """A Wick power ``phi^power(point)``; ``power >= 1`` always."""

    point: PointId
    power: int

    def __str__(self):
        if self.power == 1:
            return f"phi({self.point})"
        return f"phi^{self.power}({self.point})"


class Monomial:
    """A commutative word in generators: a finite multiset of Generator.

    Stored as a tuple of ``(generator, multiplicity)`` pairs sorted by
    ``(point, power)``; the empty word is the unit of the algebra.
    """

    __slots__ = ("factors", "total_power", "size", "_hash")

    def __init__(self, factors: Iterable[tuple[Generator, int]] = ()):
        acc: dict[Generator, int] = {}
        for gen, mult in factors:
            if mult < 0:
                raise ValueError("multiplicities must be nonnegative")
            if mult:
                acc[gen] = acc.get(gen, 0) + mult
        self.factors = tuple(sorted(acc.items()))
        self.total_power = sum(g.power * m for g, m in self.factors)
        self.size = sum(m for _, m in self.factors)
        self._hash = hash(self.factors)

    @classmethod
    def unit(cls) -> "Monomial":
        return _UNIT

    @classmethod
    def from_occurrences(cls, gens: Iterable[Generator]) -> "Monomial":
        acc: dict[Generator, int] = {}
        for g in gens:
            acc[g] = acc.get(g, 0) + 1
        return cls(acc.items())

    @classmethod
    def of(cls, gen: Generator) -> "Monomial":
        return cls(((gen, 1),))

    @property
    def is_unit(self) -> bool:
        return not self.factors

    def occurrences(self) -> tuple[Generator, ...]:
        """The generators expanded by multiplicity, in canonical order."""
        out = []
        for gen, mult in self.factors:
            out.extend([gen] * mult)
        return tuple(out)

    def append(self, gen: Generator) -> "Monomial":
        return Monomial(self.factors + ((gen, 1),))

    def __mul__(self, other: "Monomial") -> "Monomial":
        if self.is_unit:
            return other
        if other.is_unit:
            return self
        key = (self, other)
        cached = _MUL_CACHE.get(key)
        if cached is None:
            cached = Monomial(self.factors + other.factors)
            _MUL_CACHE[key] = cached
        return cached

    def split_first(self) -> tuple[Generator, "Monomial"]:
        """Peel one occurrence of the first generator off the word."""
        gen, mult = self.factors[0]
        rest = ((gen, mult - 1),) + self.factors[1:]
        return gen, Monomial(rest)

    def split_last(self) -> tuple["Monomial", Generator]:
        gen, mult = self.factors[-1]
        rest = self.factors[:-1] + ((gen, mult - 1),)
        return Monomial(rest), gen

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.factors == other.factors

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.factors < other.factors

    def __str__(self):
        if not self.factors:
            return "1"
        parts = []
        for gen, mult in self.factors:
            parts.extend([str(gen)] * mult)
        return "*".join(parts)

    def __repr__(self):
        return f"Monomial({self})"

    def to_json(self):
        return [
            {"point": gen.point, "power": gen.power, "mult": mult}
            for gen, mult in self.factors
        ]


_UNIT = Monomial()
_MUL_CACHE: dict[tuple["Monomial", "Monomial"], "Monomial"] = {}


class Element:
    """A finite PropPoly-linear combination of monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, PropPoly] | None = None):
        clean: dict[Monomial, PropPoly] = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    clean[mono] = coeff
        self.terms = clean

    @classmethod
    def zero(cls) -> "Element":
        return cls()

    @classmethod
    def one(cls) -> "Element":
        return cls({_UNIT: PropPoly.one()})

    @classmethod
    def from_monomial(cls, mono: Monomial, coeff=None) -> "Element":
        return cls({mono: PropPoly.one() if coeff is None else coeff})

    @classmethod
    def from_generator(cls, gen: Generator) -> "Element":
        return cls.from_monomial(Monomial.of(gen))

    @classmethod
    def scalar(cls, value) -> "Element":
        value = value if isinstance(value, PropPoly) else PropPoly.constant(value)
        return cls({_UNIT: value})

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        acc = dict(self.terms)
        for mono, coeff in other.terms.items():
            new = acc.get(mono, PropPoly.zero()) + coeff
            if new:
                acc[mono] = new
            else:
                acc.pop(mono, None)
        out = Element.__new__(Element)
        out.terms = acc
        return out

    def __neg__(self):
        out = Element.__new__(Element)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Element):
            acc: dict[Monomial, PropPoly] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    key = m1 * m2
                    new = acc.get(key, PropPoly.zero()) + c1 * c2
                    if new:
                        acc[key] = new
                    else:
                        acc.pop(key, None)
            out = Element.__new__(Element)
            out.terms = acc
            return out
        if isinstance(other, (PropPoly, Fraction, int)):
            return self._scaled(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (PropPoly, Fraction, int)):
            return self._scaled(other)
        return NotImplemented

    def _scaled(self, scalar) -> "Element":
        if isinstance(scalar, (Fraction, int)):
            scalar = PropPoly.constant(scalar)
        if not scalar:
            return Element.zero()
        out = Element.__new__(Element)
        out.terms = {}
        for mono, coeff in self.terms.items():
            new = coeff * scalar
            if new:
                out.terms[mono] = new
        return out

    def counit(self) -> PropPoly:
        """Coefficient of the empty monomial (vacuum expectation value)."""
        return self.terms.get(_UNIT, PropPoly.zero())

    def __eq__(self, other):
        return isinstance(other, Element) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self) -> list[tuple[Monomial, PropPoly]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].factors)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.sorted_terms():
            if mono.is_unit:
                piece = str(coeff)
            elif coeff.is_one():
                piece = str(mono)
            elif coeff == PropPoly.constant(-1):
                piece = "-" + str(mono)
            elif len(coeff.terms) == 1:
                piece = f"{coeff}*{mono}"
            else:
                piece = f"({coeff})*{mono}"
            parts.append(piece)
        out = parts[0]
        for piece in parts[1:]:
            if piece.startswith("-"):
                out += " - " + piece[1:]
            else:
                out += " + " + piece
        return out

    def __repr__(self):
        return f"Element({self})"

    def to_json(self):
        return [
            {"monomial": mono.to_json(), "coeff": coeff.to_json()}
            for mono, coeff in self.sorted_terms()
        ]


class Tensor:
    """A finite PropPoly-linear combination of k-tuples of monomials."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Mapping[tuple, PropPoly] | None = None):
        if arity < 1:
            raise ValueError("tensor arity must be >= 1")
        self.arity = arity
        clean: dict[tuple, PropPoly] = {}
        if terms:
            for slots, coeff in terms.items():
                if len(slots) != arity:
                    raise ValueError("slot tuple does not match tensor arity")
                if coeff:
                    clean[slots] = coeff
        self.terms = clean

    @classmethod
    def from_element(cls, u: Element) -> "Tensor":
        return cls(1, {(m,): c for m, c in u.terms.items()})

    def element(self) -> Element:
        if self.arity != 1:
            raise ValueError("only arity-1 tensors convert to elements")
        return Element({slots[0]: c for slots, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, Tensor) or other.arity != self.arity:
            return NotImplemented
        acc = dict(self.terms)
        for slots, coeff in other.terms.items():
            new = acc.get(slots, PropPoly.zero()) + coeff
            if new:
                acc[slots] = new
            else:
                acc.pop(slots, None)
        return Tensor(self.arity, acc)

    def __neg__(self):
        return Tensor(self.arity, {s: -c for s, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Tensor) or other.arity != self.arity:
            return NotImplemented
        return self + (-other)

    def scale(self, scalar) -> "Tensor":
        if isinstance(scalar, (Fraction, int)):
            scalar = PropPoly.constant(scalar)
        return Tensor(self.arity, {s: c * scalar for s, c in self.terms.items()})

    __rmul__ = scale

    def __eq__(self, other):
        return (
            isinstance(other, Tensor)
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def __bool__(self):
        return bool(self.terms)

    def apply_to_slot(self, index: int, fn: Callable[[Monomial], Iterable]) -> "Tensor":
        """Substitute slot ``index`` by the expansion ``fn(slot)``.

        ``fn`` maps a monomial to an iterable of ``(slot_tuple, coeff)``
        pairs; the result arity grows accordingly.
        """
        acc: dict[tuple, PropPoly] = {}
        width = None
        for slots, coeff in self.terms.items():
            for new_slots, c in fn(slots[index]):
                if width is None:
                    width = len(new_slots)
                key = slots[:index] + tuple(new_slots) + slots[index + 1:]
                new = acc.get(key, PropPoly.zero()) + coeff * c
                if new:
                    acc[key] = new
                else:
                    acc.pop(key, None)
        if width is None:
            width = 1
        return Tensor(self.arity - 1 + width, acc)

    def counit_slot(self, index: int) -> "Tensor":
        """Apply the counit to one slot (keeps terms whose slot is 1)."""
        acc: dict[tuple, PropPoly] = {}
        for slots, coeff in self.terms.items():
            if slots[index].is_unit:
                key = slots[:index] + slots[index + 1:]
                new = acc.get(key, PropPoly.zero()) + coeff
                if new:
                    acc[key] = new
                else:
                    acc.pop(key, None)
        return Tensor(self.arity - 1, acc)

    def swap(self, i: int, j: int) -> "Tensor":
        acc: dict[tuple, PropPoly] = {}
        for slots, coeff in self.terms.items():
            lst = list(slots)
            lst[i], lst[j] = lst[j], lst[i]
            key = tuple(lst)
            new = acc.get(key, PropPoly.zero()) + coeff
            if new:
                acc[key] = new
            else:
                acc.pop(key, None)
        return Tensor(self.arity, acc)

    def merge_slots(self, i: int, j: int) -> "Tensor":
        """Multiply slots ``i`` and ``j`` (normal product), dropping slot j."""
        acc: dict[tuple, PropPoly] = {}
        for slots, coeff in self.terms.items():
            merged = slots[i] * slots[j]
            lst = [s for k, s in enumerate(slots) if k != j]
            lst[i if i < j else i - 1] = merged
            key = tuple(lst)
            new = acc.get(key, PropPoly.zero()) + coeff
            if new:
                acc[key] = new
            else:
                acc.pop(key, None)
        return Tensor(self.arity - 1, acc)

    def pairwise_product(self, other: "Tensor") -> "Tensor":
        """Slotwise normal product of two equal-arity tensors."""
        if self.arity != other.arity:
            raise ValueError("tensor arities differ")
        acc: dict[tuple, PropPoly] = {}
        for s1, c1 in self.terms.items():
            for s2, c2 in other.terms.items():
                key = tuple(a * b for a, b in zip(s1, s2))
                new = acc.get(key, PropPoly.zero()) + c1 * c2
                if new:
                    acc[key] = new
                else:
                    acc.pop(key, None)
        return Tensor(self.arity, acc)

    def sorted_terms(self):
        return sorted(
            self.terms.items(), key=lambda kv: tuple(m.factors for m in kv[0])
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for slots, coeff in self.sorted_terms():
            body = " ⊗ ".join(str(m) for m in slots)
            if coeff.is_one():
                piece = body
            elif coeff == PropPoly.constant(-1):
                piece = "-" + body
            elif len(coeff.terms) == 1:
                piece = f"{coeff} * {body}"
            else:
                piece = f"({coeff}) * {body}"
            parts.append(piece)
        out = parts[0]
        for piece in parts[1:]:
            if piece.startswith("-"):
                out += " - " + piece[1:]
            else:
                out += " + " + piece
        return out

    def __repr__(self):
        return f"Tensor{self.arity}({self})"

    def to_json(self):
        return [
            {"slots": [m.to_json() for m in slots], "coeff": coeff.to_json()}
            for slots, coeff in self.sorted_terms()
        ]


# ---------------------------------------------------------------------------
# operations


def normalize(raw_factors: Iterable[tuple[PointId, int]]) -> Monomial:
    """Build a canonical monomial from raw ``(point, power)`` pairs.

    Power-0 factors are the unit and are dropped; repeated generators merge
    into multiplicities.
    """
    gens = []
    for point, power in raw_factors:
        if power < 0:
            raise PowerError(power)
        if power == 0:
            continue
        gens.append(Generator(point, power))
    return Monomial.from_occurrences(gens)


def normal_product(u: Element, v: Element) -> Element:
    """The commutative Wick product: bilinear multiset union of monomials."""
    return u * v


def counit(u: Element) -> PropPoly:
    """Vacuum expectation value: the coefficient of the empty monomial."""
    return u.counit()


_DELTA_CACHE: dict[Monomial, tuple] = {}
_DELTA_PRIME_CACHE: dict[Monomial, tuple] = {}


def monomial_coproduct(mono: Monomial) -> tuple:
    """Contraction coproduct of a basis monomial.

    Returns a tuple of ``((left, right), integer_coefficient)`` pairs; the
    coefficients are products of binomials, one per generator occurrence.
    """
    cached = _DELTA_CACHE.get(mono)
    if cached is not None:
        return cached
    acc: dict[tuple[Monomial, Monomial], int] = {(_UNIT, _UNIT): 1}
    for gen in mono.occurrences():
        point, n = gen
        nxt: dict[tuple[Monomial, Monomial], int] = {}
        for (left, right), c in acc.items():
            for k in range(n + 1):
                nl = left.append(Generator(point, k)) if k else left
                nr = right.append(Generator(point, n - k)) if k < n else right
                key = (nl, nr)
                nxt[key] = nxt.get(key, 0) + c * comb(n, k)
        acc = nxt
    result = tuple(acc.items())
    _DELTA_CACHE[mono] = result
    return result


def monomial_coproduct_prime(mono: Monomial) -> tuple:
    """Partition coproduct of a basis monomial: occurrences go left or right
    wholesale; repeated occurrences produce binomial multiplicities."""
    cached = _DELTA_PRIME_CACHE.get(mono)
    if cached is not None:
        return cached
    acc: dict[tuple[Monomial, Monomial], int] = {(_UNIT, _UNIT): 1}
    for gen in mono.occurrences():
        nxt: dict[tuple[Monomial, Monomial], int] = {}
        for (left, right), c in acc.items():
            for key in ((left.append(gen), right), (left, right.append(gen))):
                nxt[key] = nxt.get(key, 0) + c
        acc = nxt
    result = tuple(acc.items())
    _DELTA_PRIME_CACHE[mono] = result
    return result


def _tensor_from_monomial_expansion(u: Element, expansion) -> Tensor:
    acc: dict[tuple, PropPoly] = {}
    for mono, coeff in u.terms.items():
        for pair, c in expansion(mono):
            new = acc.get(pair, PropPoly.zero()) + coeff * c
            if new:
                acc[pair] = new
            else:
                acc.pop(pair, None)
    return Tensor(2, acc)


def coproduct(u: Element | Monomial) -> Tensor:
    """The contraction coproduct, extended linearly and multiplicatively."""
    if isinstance(u, Monomial):
        u = Element.from_monomial(u)
    return _tensor_from_monomial_expansion(u, monomial_coproduct)


def coproduct_prime(u: Element | Monomial) -> Tensor:
    """The partition coproduct, extended linearly and multiplicatively."""
    if isinstance(u, Monomial):
        u = Element.from_monomial(u)
    return _tensor_from_monomial_expansion(u, monomial_coproduct_prime)


def kernel_project(u: Element, strict: bool) -> Element:
    """Check membership in the counit kernel, or project into it.

    Strict mode raises :class:`NotInKernel` on elements with nonzero
    counit; lenient mode subtracts the scalar part.
    """
    eps = u.counit()
    if not eps:
        return u
    if strict:
        raise NotInKernel(eps)
    return u - Element.scalar(eps)


def monomial_reduced_prime(mono: Monomial) -> tuple:
    """Partition coproduct with the two trivial splits removed (mono != 1)."""
    return tuple(
        (pair, c)
        for pair, c in monomial_coproduct_prime(mono)
        if not pair[0].is_unit and not pair[1].is_unit
    )


def monomial_reduced(mono: Monomial) -> tuple:
    """Contraction coproduct with the two trivial splits removed (mono != 1)."""
    return tuple(
        (pair, c)
        for pair, c in monomial_coproduct(mono)
        if not pair[0].is_unit and not pair[1].is_unit
    )


def reduced_prime(u: Element, strict: bool = True) -> Tensor:
    """The reduced partition coproduct on the counit kernel."""
    u = kernel_project(u, strict)
    return _tensor_from_monomial_expansion(u, monomial_reduced_prime)


def reduced_prime_iter(u: Element, n: int, strict: bool = True) -> Tensor:
    """The n-th iterate of the reduced partition coproduct (arity n+1).

    The recursion applies the reduced coproduct to the first slot each
    round; every slot stays a nonempty monomial, so the iterate vanishes
    once n reaches the occurrence count of the largest monomial.
    """
    if n < 0:
        raise ValueError("iteration count must be >= 0")
    u = kernel_project(u, strict)
    out = Tensor.from_element(u)
    for _ in range(n):
        out = out.apply_to_slot(0, monomial_reduced_prime)
    return out


_ANTIPODE_CACHE: dict[Monomial, Element] = {}


def _antipode_monomial(mono: Monomial) -> Element:
    if mono.is_unit:
        return Element.one()
    cached = _ANTIPODE_CACHE.get(mono)
    if cached is not None:
        return cached
    # Standard recursion on the reduced contraction coproduct; terminates
    # because both slots of each reduced split carry strictly lower total
    # field power than mono.
    acc = -Element.from_monomial(mono)
    for (left, right), c in monomial_reduced(mono):
        acc = acc - c * (_antipode_monomial(left) * Element.from_monomial(right))
    _ANTIPODE_CACHE[mono] = acc
    return acc


def antipode(u: Element) -> Element:
    """The antipode of the connected Hopf algebra, extended linearly."""
    out = Element.zero()
    for mono, coeff in u.terms.items():
        out = out + coeff * _antipode_monomial(mono)
    return out
