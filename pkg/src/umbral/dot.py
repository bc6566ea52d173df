"""The dot operation: integer dot ``n.p``, umbral dot ``p.q``, and chains.

``n.alpha`` stands for the sum of ``n`` independent copies of ``alpha``;
its k-th moment is a polynomial in ``n``, obtained as ``k!`` times the
coefficient of ``z^k`` in ``exp(n * log(g(z)))`` where ``g`` is the EGF of
``alpha``'s moments.  Substituting an umbra (via its moments) for the
integer argument defines the umbral dot ``p.q``, the formal analogue of
summing a random number of i.i.d. terms.

Results are registered as fresh auxiliary umbrae: calling a constructor
twice with the same operands yields distinct, independent umbrae.  The raw
constructors reject auxiliary operands; the chain constructor is the one
sanctioned way to nest dots, folding from the right.

A brute-force multinomial expansion over explicit clones is provided as an
independent oracle for the series route.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Iterator, Sequence, Union

from .core import Alphabet, OperandLike, UmbraError, UmbraId, UmbralPoly, MomentSeq
from .poly import ONE, ZERO, Poly, as_poly
from .series import Series, egf_from_moments

#: Formal variable reserved for the integer argument of dot-coefficient polynomials.
DOT_VAR = "n"

MomentFn = Callable[[int], Poly]


def _operand_moments(alphabet: Alphabet, operand: OperandLike) -> MomentFn:
    """Moment provider ``k -> E[operand^k]`` with local memoization."""
    if isinstance(operand, UmbraId):
        return lambda k: alphabet.moment(operand, k)
    p = UmbralPoly.coerce(operand)
    memo: dict[int, Poly] = {}

    def fn(k: int) -> Poly:
        got = memo.get(k)
        if got is None:
            got = alphabet.evaluate(p**k)
            memo[k] = got
        return got

    return fn


def egf_of(alphabet: Alphabet, operand: OperandLike, order: int, var: str = "z") -> Series:
    """EGF ``sum E[p^k] z^k / k!`` of an umbra or umbral polynomial."""
    mom = _operand_moments(alphabet, operand)
    return egf_from_moments([mom(k) for k in range(order + 1)], var)


def _q_poly(mom: MomentFn, k: int, var: str = DOT_VAR) -> Poly:
    """``k! [z^k] exp(var * log(g))`` for the EGF ``g`` of the given moments."""
    if k == 0:
        return ONE
    g = egf_from_moments([mom(i) for i in range(k + 1)])
    scaled = g.log() * Poly.var(var)
    return scaled.exp().coeff(k) * factorial(k)


def _require_base(alphabet: Alphabet, operand: OperandLike, what: str) -> None:
    for uid in UmbralPoly.coerce(operand).support():
        if alphabet.is_auxiliary(uid):
            raise UmbraError(
                f"{what} operand contains the auxiliary umbra {uid}; "
                "auxiliary umbrae may only enter through the chain constructor"
            )


def _operand_label(operand: OperandLike) -> str:
    if isinstance(operand, UmbraId):
        return str(operand)
    p = UmbralPoly.coerce(operand)
    if p.is_scalar():
        return str(p.scalar_part())
    sup = p.support()
    if len(sup) == 1 and len(p._terms) == 1:
        return str(next(iter(sup)))
    return "expr"


# ---------------------------------------------------------------------------
# Public constructors
# ---------------------------------------------------------------------------


def dot_coeff_poly(alphabet: Alphabet, gamma: UmbraId, k: int, var: str = DOT_VAR) -> Poly:
    """The k-th dot-coefficient polynomial of ``gamma`` in the formal variable.

    Its value at a positive integer ``n`` is the k-th moment of a sum of
    ``n`` independent copies of ``gamma``; degree in the variable is at
    most ``k``, and the coefficient ``q_0 = 1`` at ``k = 0``.
    """
    _require_base(alphabet, gamma, "dot")
    return _q_poly(_operand_moments(alphabet, gamma), k, var)


def dot_scalar(alphabet: Alphabet, scalar: Union[Poly, Fraction, int], gamma: UmbraId, k: int) -> Poly:
    """``E[(s.gamma)^k]`` for a ground-ring element ``s`` (e.g. the variable x).

    No umbra is registered; the dot-coefficient polynomial is evaluated at
    ``s`` directly.
    """
    q = dot_coeff_poly(alphabet, gamma, k)
    return q.substitute({DOT_VAR: as_poly(scalar)})


def _dot_momentseq(alphabet: Alphabet, left: OperandLike, right: OperandLike) -> MomentSeq:
    """Moment sequence of ``left.right``: substitute left moments for powers
    of the formal variable in the right operand's dot-coefficient polynomials."""
    mom_left = _operand_moments(alphabet, left)
    mom_right = _operand_moments(alphabet, right)

    def fn(k: int) -> Poly:
        q = _q_poly(mom_right, k)
        total = ZERO
        for j, c in q.coefficients_in(DOT_VAR).items():
            total = total + c * mom_left(j)
        return total

    return MomentSeq.from_function(fn, "dot")


def _dot_any(alphabet: Alphabet, left: OperandLike, right: OperandLike) -> UmbraId:
    name = f"{_operand_label(left)}.{_operand_label(right)}"
    return alphabet.register_derived(
        name, _dot_momentseq(alphabet, left, right), auxiliary=True
    )


def dot(alphabet: Alphabet, left: OperandLike, right: OperandLike) -> UmbraId:
    """The auxiliary umbra ``left.right`` for base-only operands."""
    _require_base(alphabet, left, "dot")
    _require_base(alphabet, right, "dot")
    return _dot_any(alphabet, left, right)


def dot_int(alphabet: Alphabet, n: int, operand: OperandLike) -> UmbraId:
    """The auxiliary umbra ``n.p`` for an integer ``n`` of either sign.

    For ``n >= 0`` this matches the sum of ``n`` independent copies of
    ``p``; negative integers are defined by the same coefficient
    polynomials, so ``(-n).p + n.p'`` is exchangeable with the zero umbra.
    """
    if not isinstance(n, int):
        raise UmbraError("dot_int takes a Python integer multiplier")
    _require_base(alphabet, operand, "dot")
    mom = _operand_moments(alphabet, operand)

    def fn(k: int) -> Poly:
        return _q_poly(mom, k).substitute({DOT_VAR: Fraction(n)})

    name = f"{n}.{_operand_label(operand)}"
    return alphabet.register_derived(name, MomentSeq.from_function(fn, name), auxiliary=True)


def dot_chain(alphabet: Alphabet, operands: Sequence[OperandLike]) -> UmbraId:
    """Right-associated dot chain ``p_1.p_2.....p_m`` (m >= 2).

    Each operand must be base-only; the intermediate auxiliary umbrae are
    threaded internally, which the associativity of the operation makes
    well defined.
    """
    if len(operands) < 2:
        raise UmbraError("a dot chain needs at least two operands")
    for op in operands:
        _require_base(alphabet, op, "dot chain")
    rho: OperandLike = operands[-1]
    for op in reversed(operands[:-1]):
        rho = _dot_any(alphabet, op, rho)
    return rho  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def dot_int_oracle(alphabet: Alphabet, n: int, gamma: UmbraId, k: int) -> Poly:
    """``E[(gamma_1 + ... + gamma_n)^k]`` by explicit multinomial expansion.

    No series machinery: this is the independent ground truth for the
    coefficient-polynomial route, at small ``n`` and ``k``.
    """
    if n < 1:
        raise UmbraError("the oracle needs a positive number of copies")
    mom = _operand_moments(alphabet, gamma)
    total = ZERO
    for ks in _compositions(k, n):
        weight = factorial(k)
        for ki in ks:
            weight //= factorial(ki)
        term = as_poly(weight)
        for ki in ks:
            if ki:
                term = term * mom(ki)
        total = total + term
    return total
