"""Exact arithmetic in the finite field F_q for prime and small prime-power q.

Elements are plain ints in [0, q).  Index 0 is the additive identity and
index 1 the multiplicative identity.  For q = p**e with e > 1 the index is
the base-p encoding of the element's polynomial coordinates,
index = sum(coeff[i] * p**i), where coeff[i] multiplies x**i in the
polynomial basis F_p[x] / (modulus).
"""

from typing import Optional, Sequence

MAX_ORDER = 1 << 16

# Irreducible (in fact primitive) moduli shipped for the prime-power orders
# supported without a caller-supplied polynomial.  Coefficients are stored
# lowest degree first, so (1, 1, 1) is x**2 + x + 1.
BUILTIN_MODULI = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (2, 2, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 4, 1),
    27: (1, 2, 0, 1),
    32: (1, 0, 1, 0, 0, 1),
    49: (3, 6, 1),
    64: (1, 1, 0, 0, 0, 0, 1),
}

# Full addition tables get precomputed below this order; beyond it addition
# falls back to digit-wise arithmetic (q**2 table entries get too large).
_ADD_TABLE_MAX_ORDER = 1 << 10


def is_prime(n: int) -> bool:
    """Trial-division primality test, adequate for n <= 2**16."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_mod(num: Sequence[int], den: Sequence[int], p: int) -> list:
    """Remainder of num modulo monic den, coefficients in F_p, lowest first."""
    rem = list(num)
    dd = len(den) - 1
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if c:
            for j in range(dd + 1):
                rem[i - dd + j] = (rem[i - dd + j] - c * den[j]) % p
    return _poly_trim(rem[:dd])


def _poly_mul_mod(a: Sequence[int], b: Sequence[int], modulus: Sequence[int], p: int) -> list:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = (prod[i + j] + x * y) % p
    return _poly_mod(prod, modulus, p)


def _validate_modulus(p: int, e: int, modulus: Sequence[int]) -> tuple:
    coeffs = tuple(int(c) for c in modulus)
    if len(coeffs) != e + 1:
        raise ValueError(f"modulus must have {e + 1} coefficients, got {len(coeffs)}")
    if any(not 0 <= c < p for c in coeffs):
        raise ValueError("modulus coefficients must lie in [0, p)")
    if coeffs[-1] != 1:
        raise ValueError("modulus must be monic")
    # Trial division by every monic polynomial of degree 1 .. e//2 over F_p.
    # Degree-1 trial division is exactly a root search.
    for deg in range(1, e // 2 + 1):
        for idx in range(p**deg):
            cand, v = [], idx
            for _ in range(deg):
                v, r = divmod(v, p)
                cand.append(r)
            cand.append(1)
            if not _poly_mod(coeffs, cand, p):
                raise ValueError(
                    f"modulus is reducible over F_{p}: divisible by {tuple(cand)}"
                )
    return coeffs


class Field:
    """The finite field with q = p**e elements.

    Immutable after construction and safe to share across tasks; every
    operation is pure.  Multiplication and inverses go through tables built
    at construction time (exp/log of a multiplicative generator for e > 1),
    so per-operation cost stays flat inside enumeration loops.
    """

    __slots__ = (
        "p", "e", "q", "modulus",
        "_digits", "_add_table", "_neg", "_inv", "_exp", "_log",
    )

    def __init__(self, p: int, e: int = 1, modulus: Optional[Sequence[int]] = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError("exponent must be >= 1")
        q = p**e
        if q > MAX_ORDER:
            raise ValueError(f"field order {q} exceeds the supported bound {MAX_ORDER}")
        self.p = p
        self.e = e
        self.q = q
        if e == 1:
            if modulus is not None:
                raise ValueError("prime fields take no modulus")
            self.modulus = None
            self._digits = None
            self._add_table = None
            self._neg = None
            self._exp = None
            self._log = None
            self._inv = [0] + [pow(a, p - 2, p) for a in range(1, p)]
            return
        if modulus is None:
            if q not in BUILTIN_MODULI:
                raise ValueError(
                    f"no built-in irreducible modulus for q={q}; supply one "
                    f"(built-ins exist for {sorted(BUILTIN_MODULI)})"
                )
            modulus = BUILTIN_MODULI[q]
        self.modulus = _validate_modulus(p, e, modulus)
        self._digits = [self._index_digits(i) for i in range(q)]
        self._neg = [self._from_digits([(-c) % p for c in self._digits[i]]) for i in range(q)]
        if q <= _ADD_TABLE_MAX_ORDER:
            self._add_table = [
                [self._add_digits(a, b) for b in range(q)] for a in range(q)
            ]
        else:
            self._add_table = None
        self._exp, self._log = self._build_exp_log()
        self._inv = [0] * q
        for a in range(1, q):
            self._inv[a] = self._exp[(q - 1 - self._log[a]) % (q - 1)]

    # -- construction helpers ------------------------------------------------

    def _index_digits(self, index: int) -> tuple:
        digits = []
        for _ in range(self.e):
            index, r = divmod(index, self.p)
            digits.append(r)
        return tuple(digits)

    def _from_digits(self, digits: Sequence[int]) -> int:
        v = 0
        for c in reversed(digits):
            v = v * self.p + c
        return v

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        da, db = self._digits[a], self._digits[b]
        return self._from_digits([(x + y) % p for x, y in zip(da, db)])

    def _build_exp_log(self) -> tuple:
        # Walk powers of each candidate until one generates the whole
        # multiplicative group.  Irreducibility of the modulus guarantees a
        # generator exists.
        q, p, modulus = self.q, self.p, self.modulus
        for g in range(2, q):
            gd = list(self._digits[g])
            exp = [1]
            xd = gd
            while len(exp) < q:
                x = self._from_digits(xd)
                if x == 1:
                    break
                exp.append(x)
                xd = _poly_mul_mod(xd, gd, modulus, p)
            if len(exp) == q - 1:
                log = [0] * q
                for i, v in enumerate(exp):
                    log[v] = i
                return exp, log
        raise AssertionError("no multiplicative generator found; modulus not irreducible?")

    # -- arithmetic ----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("cannot invert 0")
        return self._inv[a]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def element(self, value: int) -> int:
        """Validate an element index, returning it unchanged."""
        if not 0 <= value < self.q:
            raise ValueError(f"{value} is not an element index of F_{self.q}")
        return value

    def elements(self) -> range:
        return range(self.q)

    # -- plumbing ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Field):
            return NotImplemented
        return (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def __repr__(self) -> str:
        if self.e == 1:
            return f"Field({self.p})"
        return f"Field({self.p}, {self.e}, modulus={self.modulus})"

    def __reduce__(self):
        return (Field, (self.p, self.e, self.modulus))


def make_field(p: int, e: int = 1, modulus: Optional[Sequence[int]] = None) -> Field:
    """Construct F_{p**e}, using the built-in modulus table when none is given."""
    return Field(p, e, modulus)


def field_for_order(q: int) -> Field:
    """Construct F_q from the order alone; q must be a prime power."""
    if q < 2:
        raise ValueError("field order must be >= 2")
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    e = 0
    v = q
    while v % p == 0:
        v //= p
        e += 1
    if v != 1:
        raise ValueError(f"{q} is not a prime power")
    return Field(p, e)
