"""Exact polynomial computation over the rationals.

Multivariate polynomials with Fraction coefficients, lex/degrevlex monomial
orders, multivariate division, Buchberger's algorithm with the coprime
criterion, all r x r minors of a polynomial matrix, and ideal-containment
checking by normal forms.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

ORDERS = ("degrevlex", "lex")

#: Buchberger aborts after processing this many S-pairs
PAIR_BUDGET = 10_000


class SymbolicError(ValueError):
    """Raised for malformed polynomials, rings, or matrices."""


class PairBudgetError(SymbolicError):
    """Raised when Buchberger exceeds its S-pair budget."""


def _key_fn(order: str, nvars: int):
    if order == "lex":
        return lambda e: e
    if order == "degrevlex":
        # graded, ties broken by *smallest* power of the *last* variable
        return lambda e: (sum(e), tuple(-e[k] for k in range(nvars - 1, -1, -1)))
    raise SymbolicError(f"unknown monomial order {order!r}")


class RationalPoly:
    """Polynomial in Q[variables] stored as exponent-tuple -> Fraction."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        variables = tuple(str(v) for v in variables)
        if len(set(variables)) != len(variables):
            raise SymbolicError("duplicate variable names")
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff == 0:
                    continue
                exps = tuple(int(e) for e in exps)
                if len(exps) != len(variables) or any(e < 0 for e in exps):
                    raise SymbolicError(f"bad exponent vector {exps}")
                clean[exps] = coeff
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("RationalPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variables) -> "RationalPoly":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables, value) -> "RationalPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): Fraction(value)})

    @classmethod
    def parse(cls, text: str, variables) -> "RationalPoly":
        return _parse(text, tuple(str(v) for v in variables))

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def leading(self, order: str = "degrevlex"):
        """(exponent tuple, coefficient) of the leading term."""
        if not self.terms:
            raise SymbolicError("zero polynomial has no leading term")
        key = _key_fn(order, len(self.variables))
        exps = max(self.terms, key=key)
        return exps, self.terms[exps]

    def monic(self, order: str = "degrevlex") -> "RationalPoly":
        _, lc = self.leading(order)
        return self if lc == 1 else self / lc

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalPoly):
            if other.variables != self.variables:
                raise SymbolicError("polynomials live in different rings")
            return other
        return RationalPoly.constant(self.variables, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            merged = terms.get(exps, 0) + coeff
            if merged == 0:
                terms.pop(exps, None)
            else:
                terms[exps] = merged
        return RationalPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(self.variables,
                            {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RationalPoly):
            scalar = Fraction(other)
            return RationalPoly(self.variables,
                                {e: c * scalar for e, c in self.terms.items()})
        other = self._coerce(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                merged = terms.get(exps, 0) + c1 * c2
                if merged == 0:
                    terms.pop(exps, None)
                else:
                    terms[exps] = merged
        return RationalPoly(self.variables, terms)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (Fraction(1) / Fraction(scalar))

    def __pow__(self, n: int):
        if n < 0:
            raise SymbolicError("negative power")
        out = RationalPoly.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == RationalPoly.constant(self.variables, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def diff(self, variable) -> "RationalPoly":
        """Partial derivative with respect to a variable (name or index)."""
        index = (self.variables.index(variable)
                 if isinstance(variable, str) else int(variable))
        terms = {}
        for exps, coeff in self.terms.items():
            e = exps[index]
            if e == 0:
                continue
            lowered = list(exps)
            lowered[index] = e - 1
            terms[tuple(lowered)] = coeff * e
        return RationalPoly(self.variables, terms)

    def substitute(self, assignment: dict) -> "RationalPoly":
        """Plug exact values into some variables; stays in the same ring."""
        pos = {self.variables.index(name): Fraction(value)
               for name, value in assignment.items()}
        terms = {}
        for exps, coeff in self.terms.items():
            value = coeff
            shrunk = list(exps)
            for idx, val in pos.items():
                if exps[idx]:
                    value *= val ** exps[idx]
                    shrunk[idx] = 0
            if value == 0:
                continue
            shrunk = tuple(shrunk)
            merged = terms.get(shrunk, 0) + value
            if merged == 0:
                terms.pop(shrunk, None)
            else:
                terms[shrunk] = merged
        return RationalPoly(self.variables, terms)

    def project(self, variables) -> "RationalPoly":
        """Rewrite in a subring; fails if an eliminated variable survives."""
        variables = tuple(str(v) for v in variables)
        where = {}
        for i, name in enumerate(self.variables):
            if name in variables:
                where[i] = variables.index(name)
        terms = {}
        for exps, coeff in self.terms.items():
            shrunk = [0] * len(variables)
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                if i not in where:
                    raise SymbolicError(
                        f"variable {self.variables[i]!r} survives the projection")
                shrunk[where[i]] = e
            terms[tuple(shrunk)] = coeff
        return RationalPoly(variables, terms)

    def evaluate(self, point):
        """Exact evaluation at a sequence of Fractions (or ints)."""
        point = [Fraction(v) for v in point]
        if len(point) != len(self.variables):
            raise SymbolicError("point has wrong length")
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            val = coeff
            for base, e in zip(point, exps):
                if e:
                    val *= base ** e
            total += val
        return total

    # -- printing -----------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        key = _key_fn("degrevlex", len(self.variables))
        pieces = []
        for exps in sorted(self.terms, key=key, reverse=True):
            coeff = self.terms[exps]
            mono = "*".join(
                f"{name}^{e}" if e > 1 else name
                for name, e in zip(self.variables, exps) if e > 0)
            if not mono:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = mono
            else:
                body = f"{abs(coeff)}*{mono}"
            pieces.append(("-" if coeff < 0 else "+", body))
        sign, body = pieces[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"RationalPoly({str(self)!r})"


def ring_variables(names) -> tuple:
    """Generator polynomials x_i for the ring Q[names]."""
    names = tuple(str(n) for n in names)
    out = []
    for i in range(len(names)):
        exps = [0] * len(names)
        exps[i] = 1
        out.append(RationalPoly(names, {tuple(exps): Fraction(1)}))
    return tuple(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\s*/\s*\d+)?)"
                    r"|(?P<name>[A-Za-z_]\w*)"
                    r"|(?P<op>[\^*+\-]))")


def _tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise SymbolicError(f"cannot parse {text[pos:]!r}")
            break
        pos = m.end()
        if m.lastgroup == "num":
            out.append(("num", Fraction(m.group("num").replace(" ", ""))))
        elif m.lastgroup == "name":
            out.append(("name", m.group("name")))
        else:
            out.append(("op", m.group("op")))
    return out


def _parse(text: str, variables) -> RationalPoly:
    """Sums of products: coefficients, names, ^ powers, * products."""
    index = {name: i for i, name in enumerate(variables)}
    tokens = _tokenize(text)
    if not tokens:
        raise SymbolicError("empty polynomial text")
    result = RationalPoly.zero(variables)
    i = 0
    while i < len(tokens):
        sign = Fraction(1)
        while i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] in "+-":
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        coeff = sign
        exps = [0] * len(variables)
        expect_factor = True
        while i < len(tokens):
            kind, value = tokens[i]
            if kind == "op" and value in "+-":
                break
            if kind == "op" and value == "*":
                i += 1
                expect_factor = True
                continue
            if not expect_factor:
                raise SymbolicError(f"missing operator before {value!r}")
            if kind == "num":
                coeff *= value
                i += 1
            elif kind == "name":
                if value not in index:
                    raise SymbolicError(f"unknown variable {value!r}")
                power = 1
                i += 1
                if i + 1 < len(tokens) and tokens[i] == ("op", "^"):
                    nkind, nvalue = tokens[i + 1]
                    if nkind != "num" or nvalue.denominator != 1:
                        raise SymbolicError("exponent must be an integer")
                    power = int(nvalue)
                    i += 2
                exps[index[value]] += power
            else:
                raise SymbolicError(f"unexpected {value!r}")
            expect_factor = False
        if expect_factor:
            raise SymbolicError("dangling operator")
        result = result + RationalPoly(variables, {tuple(exps): coeff})
    return result


# ---------------------------------------------------------------------------
# division and Groebner bases


def _divides(ea, eb) -> bool:
    return all(a <= b for a, b in zip(ea, eb))


def normal_form_reduce(f: RationalPoly, G, order: str = "degrevlex") -> RationalPoly:
    """Remainder of f under multivariate division by the list G."""
    G = [g for g in G if not g.is_zero()]
    for g in G:
        if g.variables != f.variables:
            raise SymbolicError("polynomials live in different rings")
    leads = [g.leading(order) for g in G]
    remainder = RationalPoly.zero(f.variables)
    p = f
    while not p.is_zero():
        ep, cp = p.leading(order)
        for g, (eg, cg) in zip(G, leads):
            if _divides(eg, ep):
                shift = tuple(a - b for a, b in zip(ep, eg))
                factor = RationalPoly(f.variables, {shift: cp / cg})
                p = p - factor * g
                break
        else:
            lead = RationalPoly(f.variables, {ep: cp})
            remainder = remainder + lead
            p = p - lead
    return remainder


def s_polynomial(f: RationalPoly, g: RationalPoly, order: str = "degrevlex"):
    ef, cf = f.leading(order)
    eg, cg = g.leading(order)
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    mf = RationalPoly(f.variables, {tuple(l - a for l, a in zip(lcm, ef)): 1 / cf})
    mg = RationalPoly(g.variables, {tuple(l - a for l, a in zip(lcm, eg)): 1 / cg})
    return mf * f - mg * g


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple
    order: str

    def reduce(self, f: RationalPoly) -> RationalPoly:
        return normal_form_reduce(f, self.generators, self.order)

    def contains(self, f: RationalPoly) -> bool:
        return self.reduce(f).is_zero()


def buchberger(gens, order: str = "degrevlex",
               pair_budget: int = PAIR_BUDGET) -> GroebnerBasis:
    """Reduced Groebner basis by Buchberger's algorithm.

    S-pairs with coprime leading monomials are skipped; processing more
    than `pair_budget` pairs aborts with PairBudgetError.
    """
    basis = [g.monic(order) for g in gens if not g.is_zero()]
    if not basis:
        return GroebnerBasis((), order)
    variables = basis[0].variables
    if any(g.variables != variables for g in basis):
        raise SymbolicError("generators live in different rings")

    pairs = deque(itertools.combinations(range(len(basis)), 2))
    processed = 0
    while pairs:
        i, j = pairs.popleft()
        processed += 1
        if processed > pair_budget:
            raise PairBudgetError(
                f"Buchberger exceeded the budget of {pair_budget} S-pairs")
        ei, _ = basis[i].leading(order)
        ej, _ = basis[j].leading(order)
        if all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            continue  # coprime leading monomials reduce to zero
        rem = normal_form_reduce(s_polynomial(basis[i], basis[j], order),
                                 basis, order)
        if not rem.is_zero():
            basis.append(rem.monic(order))
            new = len(basis) - 1
            pairs.extend((k, new) for k in range(new))

    return GroebnerBasis(_reduce_basis(basis, order), order)


def _reduce_basis(basis, order) -> tuple:
    """Canonical reduced form: minimal leading monomials, tails reduced."""
    key = _key_fn(order, len(basis[0].variables))
    leads = [g.leading(order)[0] for g in basis]
    keep = []
    for i, e in enumerate(leads):
        if any(j != i and _divides(leads[j], e)
               and (leads[j] != e or j < i) for j in range(len(basis))):
            continue
        keep.append(i)
    minimal = [basis[i] for i in keep]
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = normal_form_reduce(g, others, order)
        if not r.is_zero():
            reduced.append(r.monic(order))
    reduced.sort(key=lambda g: key(g.leading(order)[0]))
    return tuple(reduced)


# ---------------------------------------------------------------------------
# minors


def symbolic_minors(matrix, r: int) -> list:
    """All r x r minors, row and column subsets in ascending index order.

    Zero minors are included (callers can flag them with is_zero).  The
    expansion is memoized across column subsets, which share most of their
    subdeterminants; each row subset is independent work.
    """
    nrows = len(matrix)
    if nrows == 0 or any(len(row) != len(matrix[0]) for row in matrix):
        raise SymbolicError("matrix must be rectangular and nonempty")
    ncols = len(matrix[0])
    if not (0 < r <= min(nrows, ncols)):
        raise SymbolicError(f"invalid minor size {r}")
    variables = matrix[0][0].variables
    if any(entry.variables != variables for row in matrix for entry in row):
        raise SymbolicError("matrix entries live in different rings")

    out = []
    for rows in itertools.combinations(range(nrows), r):
        memo = {}
        for cols in itertools.combinations(range(ncols), r):
            out.append(_expand(matrix, rows, cols, memo, variables))
    return out


def _expand(matrix, rows, cols, memo, variables) -> RationalPoly:
    if len(rows) == 1:
        return matrix[rows[0]][cols[0]]
    key = (rows, cols)
    cached = memo.get(key)
    if cached is not None:
        return cached
    det = RationalPoly.zero(variables)
    sub_rows = rows[1:]
    for k, c in enumerate(cols):
        entry = matrix[rows[0]][c]
        if entry.is_zero():
            continue
        sub = _expand(matrix, sub_rows, cols[:k] + cols[k + 1:], memo, variables)
        term = entry * sub
        det = det + (term if k % 2 == 0 else -term)
    memo[key] = det
    return det


# ---------------------------------------------------------------------------
# containment


@dataclass(frozen=True)
class ContainmentReport:
    contained: bool
    remainders: tuple

    @property
    def worst_remainder(self) -> RationalPoly | None:
        nonzero = [r for r in self.remainders if not r.is_zero()]
        if not nonzero:
            return None
        return max(nonzero, key=lambda r: (len(r.terms), r.total_degree()))


def verify_containment(I_gens, P_gens, order: str = "degrevlex") -> ContainmentReport:
    """Does the ideal generated by I_gens lie inside <P_gens>?

    True iff every generator of I has zero normal form modulo a Groebner
    basis of P; per-generator remainders are kept for diagnosis.
    """
    gb = buchberger(list(P_gens), order)
    remainders = tuple(gb.reduce(f) for f in I_gens)
    return ContainmentReport(
        contained=all(r.is_zero() for r in remainders),
        remainders=remainders,
    )
