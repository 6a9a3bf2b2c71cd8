"""Arithmetic in extension fields F_{q^M} over a prime base field F_q.

Elements are represented as plain integers ("codes") in [0, q^M): the
base-q digits of the code are the coordinates of the element in the
polynomial basis {1, a, ..., a^(M-1)}, where a is the class of x modulo
the primitive polynomial.  Codes 0 and 1 are the additive and
multiplicative identities, and code q is the primitive element a itself.

For q = 2 the digit encoding coincides with the usual bit-vector
representation, so addition is XOR.  Multiplication and inversion go
through log/antilog tables whenever q^M is small enough to precompute
them (the exhaustive verification loops in the rest of the package
depend on this).
"""

from __future__ import annotations

from functools import lru_cache

# Largest field order for which log/antilog tables are built eagerly.
TABLE_LIMIT = 1 << 20

# Primitive polynomials, ascending coefficient order (index i = coeff of
# x^i), lexicographically smallest for each supported (q, M).  Every
# entry is re-validated by the test suite via validate_primitive().
PRIMITIVE_POLYS = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (2, 10): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (2, 11): (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 12): (1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1),
    (2, 13): (1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 14): (1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 15): (1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 16): (1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 17): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 18): (1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 19): (1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 20): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 1, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (3, 6): (2, 1, 0, 0, 0, 0, 1),
    (3, 7): (1, 2, 1, 0, 0, 0, 0, 1),
    (3, 8): (2, 0, 0, 1, 0, 0, 0, 0, 1),
}


class FieldError(ValueError):
    pass


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def _mul_by_x(digits: list[int], poly, q: int, M: int) -> list[int]:
    """Multiply a length-M digit vector by x modulo poly (ascending coeffs)."""
    top = digits[M - 1]
    out = [0] + digits[: M - 1]
    if top:
        for i in range(M):
            out[i] = (out[i] - top * poly[i]) % q
    return out


def validate_primitive(q: int, M: int, poly) -> bool:
    """True iff poly (ascending, monic, degree M) is primitive over F_q.

    The class of x must have multiplicative order exactly q^M - 1; this
    forces irreducibility, since a reducible quotient ring has fewer
    than q^M - 1 units.
    """
    poly = list(poly)
    if not _is_prime(q) or M < 1:
        return False
    if len(poly) != M + 1 or poly[M] % q != 1:
        return False
    if any(c % q != c for c in poly):
        return False
    if poly[0] == 0:
        return False
    order = q ** M - 1
    if M == 1:
        x0 = (-poly[0]) % q
        if x0 == 0:
            return False
        v = x0
        for i in range(1, order + 1):
            if v == 1:
                return i == order
            v = (v * x0) % q
        return False
    one = [1] + [0] * (M - 1)
    v = [0] * M
    v[1] = 1
    for i in range(1, order + 1):
        if v == one:
            return i == order
        v = _mul_by_x(v, poly, q, M)
    return False


class Field:
    """The field F_{q^M} with a fixed primitive polynomial.

    Immutable after construction; safe to share between workers.  All
    element-level operations take and return integer codes.
    """

    def __init__(self, q: int, M: int, poly=None, validate: bool = True):
        if not _is_prime(q):
            raise FieldError(f"base order q={q} is not prime")
        if M < 1:
            raise FieldError(f"extension degree M={M} must be >= 1")
        if poly is None:
            try:
                poly = PRIMITIVE_POLYS[(q, M)]
            except KeyError:
                raise FieldError(
                    f"no built-in primitive polynomial for q={q}, M={M}; "
                    "pass one explicitly"
                ) from None
        poly = tuple(int(c) for c in poly)
        if validate and not validate_primitive(q, M, poly):
            raise FieldError(f"polynomial {poly} is not primitive over F_{q}")
        self.q = q
        self.M = M
        self.poly = poly
        self.order = q ** M
        self._qpows = tuple(q ** i for i in range(M + 1))
        self.exp = None
        self.log = None
        if self.order <= TABLE_LIMIT:
            self._build_tables()

    # -- construction helpers -------------------------------------------

    def _build_tables(self):
        n = self.order - 1
        exp = [0] * n
        log = [0] * self.order
        if self.q == 2:
            # digits are bits, so mul-by-x is shift + conditional XOR
            polycode = sum(c << i for i, c in enumerate(self.poly))
            hi = 1 << self.M
            v = 1
            for i in range(n):
                exp[i] = v
                log[v] = i
                v <<= 1
                if v & hi:
                    v ^= polycode
        else:
            digits = [1] + [0] * (self.M - 1)
            for i in range(n):
                code = self._digits_to_code(digits)
                exp[i] = code
                log[code] = i
                digits = _mul_by_x(digits, self.poly, self.q, self.M)
        self.exp = exp
        self.log = log

    def _digits_to_code(self, digits) -> int:
        code = 0
        for i in range(self.M - 1, -1, -1):
            code = code * self.q + digits[i]
        return code

    def digits(self, a: int) -> list[int]:
        """Base-q digits of a, ascending (coordinates in the polynomial basis)."""
        q = self.q
        out = []
        for _ in range(self.M):
            a, d = divmod(a, q)
            out.append(d)
        return out

    def from_digits(self, digits) -> int:
        return self._digits_to_code(list(digits))

    # -- arithmetic ------------------------------------------------------

    @property
    def alpha(self) -> int:
        """The primitive element (class of x); equals 1 when M == 1 and q == 2."""
        if self.M == 1:
            return (-self.poly[0]) % self.q
        return self.q

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def add(self, a: int, b: int) -> int:
        if self.q == 2:
            return a ^ b
        q = self.q
        out = 0
        for p in self._qpows[: self.M]:
            da = (a // p) % q
            db = (b // p) % q
            out += ((da + db) % q) * p
        return out

    def neg(self, a: int) -> int:
        if self.q == 2:
            return a
        q = self.q
        out = 0
        for p in self._qpows[: self.M]:
            d = (a // p) % q
            out += ((-d) % q) * p
        return out

    def sub(self, a: int, b: int) -> int:
        if self.q == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.exp is not None:
            return self.exp[(self.log[a] + self.log[b]) % (self.order - 1)]
        return self._mul_slow(a, b)

    def _mul_slow(self, a: int, b: int) -> int:
        # schoolbook polynomial product: accumulate digit(a, i) * (b * x^i)
        da = self.digits(a)
        acc = [0] * self.M
        xb = self.digits(b)
        for i in range(self.M):
            d = da[i]
            if d:
                for j in range(self.M):
                    acc[j] = (acc[j] + d * xb[j]) % self.q
            xb = _mul_by_x(xb, self.poly, self.q, self.M)
        return self._digits_to_code(acc)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero field element")
        if self.exp is not None:
            return self.exp[(-self.log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 0 if e else 1
        if self.exp is not None:
            return self.exp[(self.log[a] * e) % (self.order - 1)]
        out = 1
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def frobenius(self, a: int, j: int = 1) -> int:
        """a raised to q^j; a field automorphism power fixing F_q."""
        if j < 0:
            raise ValueError("frobenius power must be non-negative")
        if a == 0:
            return 0
        return self.pow(a, self.q ** (j % self.M))

    def alpha_pow(self, e: int) -> int:
        """alpha^e, e taken modulo q^M - 1."""
        if self.exp is not None:
            return self.exp[e % (self.order - 1)]
        return self.pow(self.alpha, e % (self.order - 1))

    def is_in_base_field(self, a: int) -> bool:
        return self.pow(a, self.q) == a

    # -- structure -------------------------------------------------------

    def base(self) -> "Field":
        """The prime field F_q, as its own Field instance."""
        return base_field(self.q)

    def elements(self):
        return range(self.order)

    def nonzero(self):
        return range(1, self.order)

    # -- identity / serialization ----------------------------------------

    def descriptor(self) -> str:
        digits = "".join(str(c) for c in reversed(self.poly))
        return f"{self.q}^{self.M}/{digits}"

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.q == other.q
            and self.M == other.M
            and self.poly == other.poly
        )

    def __hash__(self):
        return hash((self.q, self.M, self.poly))

    def __repr__(self):
        return f"Field({self.descriptor()!r})"


@lru_cache(maxsize=None)
def _cached_field(q: int, M: int, poly) -> Field:
    return Field(q, M, poly)


def field(q: int, M: int, poly=None) -> Field:
    """Shared, cached Field instance (tables built once per parameter set)."""
    if poly is None:
        if (q, M) not in PRIMITIVE_POLYS:
            raise FieldError(f"no built-in primitive polynomial for q={q}, M={M}")
        poly = PRIMITIVE_POLYS[(q, M)]
    return _cached_field(q, M, tuple(poly))


def base_field(q: int) -> Field:
    """The prime field F_q (extension degree 1)."""
    if (q, 1) in PRIMITIVE_POLYS:
        return field(q, 1)
    # search for x + c with -c a primitive root mod q
    for c in range(1, q):
        if validate_primitive(q, 1, (c, 1)):
            return field(q, 1, (c, 1))
    raise FieldError(f"no degree-1 primitive polynomial found for q={q}")


def parse_descriptor(desc: str) -> Field:
    """Parse a field descriptor like "2^3/1011" (poly digits high-to-low)."""
    try:
        head, digits = desc.split("/")
        q_s, M_s = head.split("^")
        q, M = int(q_s), int(M_s)
        poly = tuple(int(c) for c in reversed(digits))
    except (ValueError, AttributeError) as e:
        raise FieldError(f"malformed field descriptor {desc!r}") from e
    if len(poly) != M + 1:
        raise FieldError(
            f"descriptor {desc!r}: polynomial has {len(poly) - 1} != {M} degree"
        )
    return field(q, M, poly)
