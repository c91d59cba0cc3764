"""Exact arithmetic in GF(p^a) and for dense polynomials over it.

Field elements are coordinate vectors in the power basis of a stored monic
irreducible modulus m(y), so GF(p^a) = GF(p)[y]/(m(y)).  Every element of a
field is interned: arithmetic returns the one canonical object per value,
which keeps equality, hashing and the enumeration loops cheap.

Three encodings are used throughout:

* coordinate tuple ``(c_0, ..., c_{a-1})`` with each ``c_i`` in ``[0, p)``;
* integer index ``c_0 + c_1*p + ... + c_{a-1}*p^(a-1)``, used for table
  lookups and JSON (for a = 1 the index is just the residue mod p);
* element *order*, used wherever a deterministic enumeration is needed,
  is lexicographic on the coordinate tuple.  For a > 1 this differs from
  index order; both are fixed conventions, not tunables.

Polynomials are immutable dense coefficient tuples with no stored trailing
zeros.  The zero polynomial has degree ``None`` -- a distinguished marker,
never -1, so degree arithmetic cannot silently go negative.

The default modulus for GF(p^a) is the lexicographically smallest monic
irreducible of degree a over GF(p) (ordered by coefficient tuple
``(c_0, ..., c_{a-1})``), which makes enumeration orders and class labels
reproducible across runs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_Q = 256  # lookup tables are dense q x q; full-enumeration work stays far below this


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# GF(p)[x] helpers on little-endian int tuples (used only to set up the field)
# ---------------------------------------------------------------------------

def _fp_trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _fp_mod(f: Sequence[int], g: Sequence[int], p: int) -> tuple[int, ...]:
    f = list(f)
    dg = len(g) - 1
    inv_lead = pow(g[-1], p - 2, p)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i] * inv_lead % p
        if c:
            for j in range(dg + 1):
                f[i - dg + j] = (f[i - dg + j] - c * g[j]) % p
    return _fp_trim(f)


def _fp_is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    deg = len(f) - 1
    if deg < 1 or f[-1] != 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            g = (*low, 1)
            if not _fp_mod(f, g, p):
                return False
    return True


def _smallest_irreducible(p: int, a: int) -> tuple[int, ...]:
    for low in itertools.product(range(p), repeat=a):
        cand = (*low, 1)
        if _fp_is_irreducible(cand, p):
            return cand
    raise RuntimeError(f"no irreducible of degree {a} over GF({p})")  # unreachable


# ---------------------------------------------------------------------------
# Elements and the field
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class FqElement:
    """A field element: coordinates in the power basis, plus its table index.

    Comparison (and the enumeration order) is lexicographic on `coeffs`;
    `index` is excluded from comparisons but always consistent with them.
    """

    coeffs: tuple[int, ...]
    index: int = field(compare=False)

    @property
    def is_zero(self) -> bool:
        return self.index == 0

    def __repr__(self) -> str:
        return f"Fq({self.index})"


class FieldSpec:
    """GF(p^a) with interned elements and dense lookup-table arithmetic."""

    def __init__(self, p: int, a: int = 1, modulus: Sequence[int] | None = None):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if a < 1:
            raise ValueError("extension degree must be >= 1")
        if p ** a > MAX_Q:
            raise ValueError(f"q = {p ** a} exceeds supported table size {MAX_Q}")
        if modulus is None:
            modulus = _smallest_irreducible(p, a)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != a + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree a")
            if not _fp_is_irreducible(modulus, p):
                raise ValueError("modulus is reducible over GF(p)")
        self.p = p
        self.a = a
        self.q = p ** a
        self.modulus: tuple[int, ...] = tuple(modulus)
        self._build_elements()
        self._build_tables()

    # -- construction ------------------------------------------------------

    def _build_elements(self) -> None:
        by_index: list[FqElement | None] = [None] * self.q
        for coords in itertools.product(range(self.p), repeat=self.a):
            idx = 0
            for c in reversed(coords):
                idx = idx * self.p + c
            by_index[idx] = FqElement(coords, idx)
        self._by_index: tuple[FqElement, ...] = tuple(by_index)  # type: ignore[arg-type]
        self.elements: tuple[FqElement, ...] = tuple(sorted(self._by_index))
        self.zero = self._by_index[0]
        self.one = self._by_index[1]

    def _reduce_coords(self, conv: list[int]) -> tuple[int, ...]:
        # fold powers y^a .. y^(2a-2) back using y^a = -(m_0 + ... + m_{a-1} y^{a-1})
        p, a, m = self.p, self.a, self.modulus
        for i in range(len(conv) - 1, a - 1, -1):
            c = conv[i]
            if c:
                conv[i] = 0
                for j in range(a):
                    conv[i - a + j] = (conv[i - a + j] - c * m[j]) % p
        out = conv[:a]
        out += [0] * (a - len(out))
        return tuple(out)

    def _mul_coords(self, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
        p, a = self.p, self.a
        conv = [0] * (2 * a - 1)
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    conv[i + j] = (conv[i + j] + ui * vj) % p
        return self._reduce_coords(conv)

    def _build_tables(self) -> None:
        p, a, q = self.p, self.a, self.q
        els = self._by_index
        add_i = [[0] * q for _ in range(q)]
        sub_i = [[0] * q for _ in range(q)]
        mul_i = [[0] * q for _ in range(q)]
        neg_i = [0] * q
        for x in els:
            xc = x.coeffs
            nc = tuple((-c) % p for c in xc)
            neg_i[x.index] = self._index_of_coords(nc)
            for y in els:
                s = tuple((cx + cy) % p for cx, cy in zip(xc, y.coeffs))
                add_i[x.index][y.index] = self._index_of_coords(s)
                d = tuple((cx - cy) % p for cx, cy in zip(xc, y.coeffs))
                sub_i[x.index][y.index] = self._index_of_coords(d)
                mul_i[x.index][y.index] = self._index_of_coords(self._mul_coords(xc, y.coeffs))
        inv_i: list[int | None] = [None] * q
        for i in range(1, q):
            row = mul_i[i]
            inv_i[i] = row.index(1)
        self._add_i = tuple(map(tuple, add_i))
        self._sub_i = tuple(map(tuple, sub_i))
        self._mul_i = tuple(map(tuple, mul_i))
        self._neg_i = tuple(neg_i)
        self._inv_i = tuple(inv_i)
        self.add_table = np.array(add_i, dtype=np.uint8)
        self.mul_table = np.array(mul_i, dtype=np.uint8)
        self._irreducibles: dict[int, tuple["Polynomial", ...]] = {}

    def _index_of_coords(self, coords: Sequence[int]) -> int:
        idx = 0
        for c in reversed(coords):
            idx = idx * self.p + c
        return idx

    # -- element access ------------------------------------------------------

    def element(self, value) -> FqElement:
        """Coerce an index, coordinate sequence, or element into this field."""
        if isinstance(value, FqElement):
            return self._by_index[value.index]
        if isinstance(value, int):
            if not 0 <= value < self.q:
                raise ValueError(f"element index {value} out of range for GF({self.q})")
            return self._by_index[value]
        coords = tuple(int(c) % self.p for c in value)
        if len(coords) != self.a:
            raise ValueError("coordinate vector has wrong length")
        return self._by_index[self._index_of_coords(coords)]

    # -- arithmetic ----------------------------------------------------------

    def add(self, x: FqElement, y: FqElement) -> FqElement:
        return self._by_index[self._add_i[x.index][y.index]]

    def sub(self, x: FqElement, y: FqElement) -> FqElement:
        return self._by_index[self._sub_i[x.index][y.index]]

    def mul(self, x: FqElement, y: FqElement) -> FqElement:
        return self._by_index[self._mul_i[x.index][y.index]]

    def neg(self, x: FqElement) -> FqElement:
        return self._by_index[self._neg_i[x.index]]

    def inv(self, x: FqElement) -> FqElement:
        i = self._inv_i[x.index]
        if i is None:
            raise ZeroDivisionError(f"inversion of zero in GF({self.q})")
        return self._by_index[i]

    def monic_irreducibles(self, d: int) -> tuple["Polynomial", ...]:
        """All monic irreducible polynomials of degree d, cached, in order."""
        if d not in self._irreducibles:
            smaller = [g for dd in range(1, d // 2 + 1) for g in self.monic_irreducibles(dd)]
            found = []
            for f in enumerate_monic(self, d):
                if d >= 1 and all(not (f % g).is_zero for g in smaller):
                    found.append(f)
            self._irreducibles[d] = tuple(found)
        return self._irreducibles[d]

    # -- identity ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.a == other.a
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.a, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.q})"


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

class Polynomial:
    """Dense polynomial over a FieldSpec; coeffs[i] multiplies x^i."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: Iterable = ()):
        cs = [c if isinstance(c, FqElement) else spec.element(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        self.spec = spec
        self.coeffs: tuple[FqElement, ...] = tuple(cs)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, spec: FieldSpec) -> "Polynomial":
        return cls(spec)

    @classmethod
    def one(cls, spec: FieldSpec) -> "Polynomial":
        return cls(spec, (spec.one,))

    @classmethod
    def x(cls, spec: FieldSpec) -> "Polynomial":
        return cls(spec, (spec.zero, spec.one))

    @classmethod
    def monomial(cls, spec: FieldSpec, d: int, coeff: FqElement | None = None) -> "Polynomial":
        c = spec.one if coeff is None else coeff
        return cls(spec, (spec.zero,) * d + (c,))

    @classmethod
    def from_text(cls, spec: FieldSpec, text: str) -> "Polynomial":
        """Parse "x^3 + 2*x + 1"; coefficients are element indices."""
        s = text.replace(" ", "").replace("-", "+-")
        if not s:
            raise ValueError("empty polynomial text")
        coeffs: dict[int, FqElement] = {}
        for term in s.split("+"):
            if not term:
                continue
            negate = term.startswith("-")
            if negate:
                term = term[1:]
            if "x" in term:
                head, _, tail = term.partition("x")
                coeff = spec.one if head in ("", "*") else spec.element(int(head.rstrip("*")))
                power = 1 if not tail else int(tail.lstrip("^"))
            else:
                coeff = spec.element(int(term))
                power = 0
            if negate:
                coeff = spec.neg(coeff)
            coeffs[power] = spec.add(coeffs.get(power, spec.zero), coeff)
        out = [spec.zero] * (max(coeffs) + 1)
        for pw, c in coeffs.items():
            out[pw] = c
        return cls(spec, out)

    @classmethod
    def from_json(cls, data: dict) -> "Polynomial":
        spec = FieldSpec(int(data["p"]), int(data.get("a", 1)))
        return cls(spec, [int(c) for c in data["coeffs"]])

    # -- structure -----------------------------------------------------------

    @property
    def degree(self) -> int | None:
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.spec.one

    @property
    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.spec.one

    def coefficient(self, j: int) -> FqElement:
        """Coefficient of x^j (zero beyond the degree)."""
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return self.spec.zero

    def index_coeffs(self) -> tuple[int, ...]:
        return tuple(c.index for c in self.coeffs)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.spec != other.spec:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        sp = self.spec
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(sp, [sp.add(self.coefficient(i), other.coefficient(i)) for i in range(n)])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        sp = self.spec
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(sp, [sp.sub(self.coefficient(i), other.coefficient(i)) for i in range(n)])

    def __neg__(self) -> "Polynomial":
        sp = self.spec
        return Polynomial(sp, [sp.neg(c) for c in self.coeffs])

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        sp = self.spec
        if self.is_zero or other.is_zero:
            return Polynomial(sp)
        out = [sp.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if ci.is_zero:
                continue
            for j, cj in enumerate(other.coeffs):
                out[i + j] = sp.add(out[i + j], sp.mul(ci, cj))
        return Polynomial(sp, out)

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        sp = self.spec
        dg = len(other.coeffs) - 1
        inv_lead = sp.inv(other.coeffs[-1])
        rem = list(self.coeffs)
        quot = [sp.zero] * max(len(rem) - dg, 0)
        for i in range(len(rem) - 1, dg - 1, -1):
            c = sp.mul(rem[i], inv_lead)
            if c.is_zero:
                continue
            quot[i - dg] = c
            for j in range(dg + 1):
                rem[i - dg + j] = sp.sub(rem[i - dg + j], sp.mul(c, other.coeffs[j]))
        return Polynomial(sp, quot), Polynomial(sp, rem[:dg])

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero:
            raise ValueError("the zero polynomial has no monic associate")
        sp = self.spec
        inv_lead = sp.inv(self.coeffs[-1])
        return Polynomial(sp, [sp.mul(c, inv_lead) for c in self.coeffs])

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic greatest common divisor."""
        self._check(other)
        f, g = self, other
        if f.is_zero and g.is_zero:
            raise ValueError("gcd(0, 0) is undefined")
        while not g.is_zero:
            f, g = g, f % g
        return f.monic()

    def __call__(self, alpha: FqElement) -> FqElement:
        sp = self.spec
        acc = sp.zero
        for c in reversed(self.coeffs):
            acc = sp.add(sp.mul(acc, alpha), c)
        return acc

    def reciprocal(self) -> "Polynomial":
        """x^deg(f) * f(1/x): the coefficient-reversed polynomial."""
        if self.is_zero:
            raise ValueError("the zero polynomial has no reciprocal")
        return Polynomial(self.spec, tuple(reversed(self.coeffs)))

    # -- identity and formatting ----------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.spec, self.coeffs))

    def to_text(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            v = self.coeffs[d].index
            if v == 0:
                continue
            if d == 0:
                terms.append(str(v))
            else:
                xpart = "x" if d == 1 else f"x^{d}"
                terms.append(xpart if v == 1 else f"{v}*{xpart}")
        return " + ".join(terms)

    def to_json(self) -> dict:
        return {"p": self.spec.p, "a": self.spec.a, "coeffs": list(self.index_coeffs())}

    def __repr__(self) -> str:
        return f"Poly({self.to_text()!r})"


# ---------------------------------------------------------------------------
# Enumeration and root counting
# ---------------------------------------------------------------------------

def enumerate_monic(spec: FieldSpec, d: int) -> Iterator[Polynomial]:
    """All q^d monic polynomials of degree d, lexicographic in
    (coeff of x^0, ..., coeff of x^(d-1)) under the element order."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    for low in itertools.product(spec.elements, repeat=d):
        yield Polynomial(spec, (*low, spec.one))


def enumerate_below_degree(spec: FieldSpec, k: int) -> Iterator[Polynomial]:
    """All q^k polynomials of degree < k (the zero polynomial included)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    for cs in itertools.product(spec.elements, repeat=k):
        yield Polynomial(spec, cs)


def distinct_roots_in(f: Polynomial, points: Iterable[FqElement]) -> int:
    """Number of alpha in `points` with f(alpha) = 0; multiplicity ignored."""
    if f.is_zero:
        raise ValueError("root counting requires a nonzero polynomial")
    zero = f.spec.zero
    return sum(1 for alpha in points if f(alpha) == zero)


def zeros_of(f: Polynomial) -> tuple[FqElement, ...]:
    """The roots of f in the base field, in element order."""
    if f.is_zero:
        return f.spec.elements
    zero = f.spec.zero
    return tuple(alpha for alpha in f.spec.elements if f(alpha) == zero)
