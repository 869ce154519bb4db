"""Exact field arithmetic: GF(q) for prime powers q <= 256, and the rationals.

GF(q) elements are integers 0..q-1.  For q = p^k the integer encodes the
coefficient vector of a polynomial over GF(p) in base p (digit i is the
coefficient of x^i), reduced modulo a fixed irreducible polynomial: the
lexicographically smallest monic irreducible of degree k, chosen
deterministically so that encodings are stable across runs.  Addition and
multiplication are table lookups.

Rational arithmetic wraps fractions.Fraction.
"""

from fractions import Fraction

from .errors import BmlabError


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_mod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j in range(dm):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return a[:dm]


def _encode(coeffs, p):
    v = 0
    for c in reversed(coeffs):
        v = v * p + c
    return v


def _decode(v, p, k):
    out = []
    for _ in range(k):
        out.append(v % p)
        v //= p
    return out


def _min_irreducible(p, k):
    """Smallest (in the base-p integer encoding) monic irreducible of degree k."""
    if k == 1:
        return [0, 1]
    monic = {d: [] for d in range(1, k)}
    for d in range(1, k):
        for v in range(p ** d):
            monic[d].append(_decode(v, p, d) + [1])
    reducible = set()
    for d1 in range(1, k // 2 + 1):
        d2 = k - d1
        for f in monic[d1]:
            for g in monic[d2]:
                prod = _poly_mul(f, g, p)
                reducible.add(_encode(prod[:k], p))  # drop the leading 1 of x^k
    for v in range(p ** k):
        if v not in reducible:
            return _decode(v, p, k) + [1]
    raise BmlabError("no irreducible polynomial found (p=%d, k=%d)" % (p, k))


def _factor_prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise BmlabError("%d is not a prime power" % q)
            return p, k
    raise BmlabError("%d is not a prime power" % q)


class GF:
    """The finite field with q elements; element arithmetic by table lookup."""

    def __init__(self, q):
        if not 2 <= q <= 256:
            raise BmlabError("GF(q) supported for 2 <= q <= 256, got %d" % q)
        self.q = q
        self.p, self.k = _factor_prime_power(q)
        self.zero = 0
        self.one = 1
        self.char = self.p
        if self.k == 1:
            self._add = [[(a + b) % q for b in range(q)] for a in range(q)]
            self._mul = [[(a * b) % q for b in range(q)] for a in range(q)]
        else:
            p, k = self.p, self.k
            self.modulus = _min_irreducible(p, k)
            polys = [_decode(v, p, k) for v in range(q)]
            self._add = [
                [_encode([(x + y) % p for x, y in zip(polys[a], polys[b])], p)
                 for b in range(q)]
                for a in range(q)
            ]
            self._mul = []
            for a in range(q):
                row = []
                for b in range(q):
                    prod = _poly_mod(_poly_mul(polys[a], polys[b], p), self.modulus, p)
                    row.append(_encode(prod, p))
                self._mul.append(row)
        self._neg = [0] * q
        self._inv = [None] * q
        for a in range(q):
            for b in range(q):
                if self._add[a][b] == 0:
                    self._neg[a] = b
                if self._mul[a][b] == 1:
                    self._inv[a] = b

    # -- arithmetic ------------------------------------------------------
    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.q)
        return self._inv[a]

    def div(self, a, b):
        return self._mul[a][self.inv(b)]

    def pow(self, a, n):
        r = 1
        for _ in range(n):
            r = self._mul[r][a]
        return r

    # -- structure -------------------------------------------------------
    @property
    def elements(self):
        return range(self.q)

    @property
    def nonzero(self):
        return range(1, self.q)

    def parse(self, token):
        v = int(token)
        if not 0 <= v < self.q:
            raise BmlabError("element %d out of range for GF(%d)" % (v, self.q))
        return v

    def show(self, a):
        return str(a)

    @property
    def is_finite(self):
        return True

    def __eq__(self, other):
        return isinstance(other, GF) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))

    def __repr__(self):
        return "GF(%d)" % self.q


class Rationals:
    """The field of rationals, elements are fractions.Fraction."""

    q = None
    zero = Fraction(0)
    one = Fraction(1)
    char = 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def pow(self, a, n):
        return Fraction(a) ** n

    @property
    def elements(self):
        raise BmlabError("rationals are not enumerable")

    def parse(self, token):
        return Fraction(token)

    def show(self, a):
        return str(a)

    @property
    def is_finite(self):
        return False

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = Rationals()

_CACHE = {}


def gf(q):
    """Shared GF(q) instance (tables are built once per q)."""
    if q not in _CACHE:
        _CACHE[q] = GF(q)
    return _CACHE[q]
