"""Exact scalars and sparse multivariate polynomials.

All arithmetic is over exact rationals (`fractions.Fraction`) or Gaussian
rationals (re + im*i with rational parts), so equality is decidable and
every identity in the test suites is checked with zero tolerance.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import StructuralError


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise StructuralError(f"not an exact rational: {x!r}")


class Scalar:
    """Exact number with a real/complex mode and a pseudoscalar parity bit.

    Real mode holds a single rational (im is None); complex mode holds a
    Gaussian rational (re, im).  Modes never mix silently: combining a
    real-mode and a complex-mode value raises StructuralError, so real
    values cannot acquire imaginary parts by accident.

    The ``pseudo`` bit marks values that change sign under orientation
    reversal (impedances, axion coefficients).  Products and quotients XOR
    the bit; sums require it to agree.  Scaling a differential form by a
    pseudo-tagged scalar flips the form's twist parity (see forms.py).
    """

    __slots__ = ("re", "im", "pseudo")

    def __init__(self, re=0, im=None, pseudo=False):
        self.re = _as_fraction(re)
        self.im = None if im is None else _as_fraction(im)
        self.pseudo = bool(pseudo)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, complex_mode=False):
        return cls(0, Fraction(0) if complex_mode else None)

    @classmethod
    def one(cls, complex_mode=False):
        return cls(1, Fraction(0) if complex_mode else None)

    @classmethod
    def i(cls):
        """The imaginary unit (complex mode)."""
        return cls(0, 1)

    # -- predicates --------------------------------------------------------

    @property
    def complex_mode(self):
        return self.im is not None

    def is_zero(self):
        return self.re == 0 and (self.im is None or self.im == 0)

    # -- mode handling -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(other, Fraction(0) if self.complex_mode else None)
        raise StructuralError(f"cannot combine Scalar with {other!r}")

    def _check_mode(self, other):
        if self.complex_mode != other.complex_mode:
            raise StructuralError("real/complex scalar mode mismatch")

    def to_complex(self):
        return Scalar(self.re, self.im if self.im is not None else Fraction(0),
                      self.pseudo)

    def as_plain(self):
        """Same value with the pseudoscalar bit cleared."""
        if not self.pseudo:
            return self
        return Scalar(self.re, self.im, False)

    def as_pseudo(self):
        if self.pseudo:
            return self
        return Scalar(self.re, self.im, True)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        self._check_mode(other)
        if self.pseudo != other.pseudo:
            raise StructuralError("cannot add scalar and pseudoscalar")
        im = None if self.im is None else self.im + other.im
        return Scalar(self.re + other.re, im, self.pseudo)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, None if self.im is None else -self.im,
                      self.pseudo)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        self._check_mode(other)
        pseudo = self.pseudo != other.pseudo
        if self.im is None:
            return Scalar(self.re * other.re, None, pseudo)
        re = self.re * other.re - self.im * other.im
        im = self.re * other.im + self.im * other.re
        return Scalar(re, im, pseudo)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse; parity is preserved (x * 1/x is even)."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        if self.im is None:
            return Scalar(1 / self.re, None, self.pseudo)
        norm = self.re * self.re + self.im * self.im
        return Scalar(self.re / norm, -self.im / norm, self.pseudo)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = self._coerce(other)
            else:
                return NotImplemented
        return (self.re == other.re and self.im == other.im
                and self.pseudo == other.pseudo)

    def __hash__(self):
        return hash((self.re, self.im, self.pseudo))

    def __repr__(self):
        tag = ", pseudo" if self.pseudo else ""
        if self.im is None:
            return f"Scalar({self.re}{tag})"
        return f"Scalar({self.re}, {self.im}{tag})"


class Polynomial:
    """Sparse exact polynomial in n variables x0 .. x(n-1).

    ``terms`` maps exponent tuples (length n, nonnegative ints) to nonzero
    Scalar coefficients, e.g. {(2, 0, 1): 3/4} is (3/4)*x0^2*x2.  Zero
    coefficients are never stored, so equality of term maps is equality of
    polynomials.  Coefficients never carry the pseudoscalar bit; parity
    bookkeeping happens one level up, on forms.
    """

    __slots__ = ("n", "complex_mode", "terms")

    def __init__(self, n, terms=None, complex_mode=False):
        if n < 1:
            raise StructuralError(f"polynomial dimension must be >= 1, got {n}")
        self.n = n
        self.complex_mode = bool(complex_mode)
        clean = {}
        for exps, coeff in (terms or {}).items():
            if not isinstance(coeff, Scalar):
                coeff = Scalar(coeff, Fraction(0) if complex_mode else None)
            if len(exps) != n or any(e < 0 for e in exps):
                raise StructuralError(f"bad exponent tuple {exps} for n={n}")
            if coeff.complex_mode != self.complex_mode:
                raise StructuralError("coefficient mode does not match polynomial mode")
            if coeff.pseudo:
                raise StructuralError("polynomial coefficients must not be pseudo-tagged")
            if not coeff.is_zero():
                clean[tuple(exps)] = coeff
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n, complex_mode=False):
        return cls(n, {}, complex_mode)

    @classmethod
    def constant(cls, n, value, complex_mode=False):
        if not isinstance(value, Scalar):
            value = Scalar(value, Fraction(0) if complex_mode else None)
        return cls(n, {(0,) * n: value}, complex_mode)

    @classmethod
    def variable(cls, n, i, complex_mode=False):
        if not 0 <= i < n:
            raise StructuralError(f"variable index {i} out of range for n={n}")
        exps = tuple(1 if j == i else 0 for j in range(n))
        return cls(n, {exps: Scalar.one(complex_mode)}, complex_mode)

    # -- predicates --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def _check_compatible(self, other):
        if not isinstance(other, Polynomial):
            raise StructuralError(f"expected Polynomial, got {other!r}")
        if self.n != other.n:
            raise StructuralError(f"dimension mismatch: {self.n} vs {other.n}")
        if self.complex_mode != other.complex_mode:
            raise StructuralError("real/complex polynomial mode mismatch")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        self._check_compatible(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            cur = terms.get(exps)
            if cur is None:
                terms[exps] = coeff
            else:
                s = cur + coeff
                if s.is_zero():
                    del terms[exps]
                else:
                    terms[exps] = s
        return self._raw(terms)

    def __neg__(self):
        return self._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_compatible(other)
        terms = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exps = tuple(x + y for x, y in zip(ea, eb))
                c = ca * cb
                cur = terms.get(exps)
                if cur is not None:
                    c = cur + c
                if c.is_zero():
                    terms.pop(exps, None)
                else:
                    terms[exps] = c
        return self._raw(terms)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise StructuralError("polynomial powers must be nonnegative integers")
        out = Polynomial.constant(self.n, 1, self.complex_mode)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, s):
        """Multiply by a Scalar value.  The pseudo bit must be cleared first."""
        if not isinstance(s, Scalar):
            s = Scalar(s, Fraction(0) if self.complex_mode else None)
        if s.pseudo:
            raise StructuralError("scale polynomials by plain values; route parity via the form")
        if s.complex_mode != self.complex_mode:
            raise StructuralError("real/complex scalar mode mismatch")
        if s.is_zero():
            return Polynomial.zero(self.n, self.complex_mode)
        return self._raw({e: c * s for e, c in self.terms.items()})

    def partial(self, i):
        """Exact partial derivative with respect to x_i."""
        if not 0 <= i < self.n:
            raise StructuralError(f"coordinate index {i} out of range for n={self.n}")
        terms = {}
        for exps, coeff in self.terms.items():
            k = exps[i]
            if k == 0:
                continue
            new = list(exps)
            new[i] = k - 1
            terms[tuple(new)] = coeff * k
        return self._raw(terms)

    def substitute_linear(self, matrix):
        """Substitute x_i -> sum_j matrix[i][j] * x_j (linear change of variables)."""
        images = []
        for i in range(self.n):
            row = {}
            for j in range(self.n):
                v = _as_fraction(matrix[i][j])
                if v != 0:
                    exps = tuple(1 if m == j else 0 for m in range(self.n))
                    row[exps] = Scalar(v, Fraction(0) if self.complex_mode else None)
            images.append(self._raw(row))
        out = Polynomial.zero(self.n, self.complex_mode)
        for exps, coeff in self.terms.items():
            term = Polynomial.constant(self.n, coeff, self.complex_mode)
            for i, e in enumerate(exps):
                for _ in range(e):
                    term = term * images[i]
            out = out + term
        return out

    def to_complex(self):
        if self.complex_mode:
            return self
        return Polynomial(self.n, {e: c.to_complex() for e, c in self.terms.items()},
                          complex_mode=True)

    def _raw(self, terms):
        # internal fast path: terms are already canonical (nonzero, right mode)
        p = object.__new__(Polynomial)
        p.n = self.n
        p.complex_mode = self.complex_mode
        p.terms = terms
        return p

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.complex_mode, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"Polynomial({self.n}, 0)"
        bits = []
        for exps in sorted(self.terms):
            mono = "*".join(f"x{i}^{e}" for i, e in enumerate(exps) if e)
            c = self.terms[exps]
            bits.append(f"{c!r}*{mono}" if mono else repr(c))
        return f"Polynomial({self.n}, {' + '.join(bits)})"
