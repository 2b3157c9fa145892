"""Galois rings GR(p^2, r), their residue fields, and tower maps.

GR(p^2, r) is built as Z_{p^2}[x]/(h(x)) for a basic primitive modulus h:
a monic lift of a primitive polynomial over F_p such that xi = x mod h has
multiplicative order exactly q - 1 (q = p^r).  The Teichmuller set
T = {0} union <xi> then gives the unique decomposition a = a1 + p*a2 with
a1, a2 in T, which is what every structural operation here leans on.

Everything is exact: field elements are small integer codes (little-endian
base-p digit vectors), ring elements carry coefficient tuples mod p^2, and
the generator tables are built once at construction.  Rings and fields are
logically immutable afterwards (the only internal state is value-transparent
memo tables) and safe to share across threads.
"""
from __future__ import annotations

import itertools

from .errors import (
    IncompatibleTowerError,
    InvalidTowerError,
    NonPrimitiveInputError,
    NotAUnitError,
    ScaleGuardError,
)

# Constructions enumerate whole rings exhaustively; refuse anything whose
# element count would exceed this unless the caller overrides.
DESK_SCALE_LIMIT = 2**24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# dense little-endian polynomials with coefficients mod m
# ---------------------------------------------------------------------------

def _ptrim(a: list[int]) -> list[int]:
    end = len(a)
    while end > 0 and a[end - 1] == 0:
        end -= 1
    return a[:end]


def _pmul(a, b, mod):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % mod
    return _ptrim(out)


def _psub(a, b, mod):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % mod
    return _ptrim(out)


def _pdivmod(num, den, mod):
    """Polynomial division; the divisor's leading coefficient must be a unit."""
    den = _ptrim(list(den))
    num = list(num)
    lead_inv = pow(den[-1], -1, mod)
    quo = [0] * max(len(num) - len(den) + 1, 0)
    for shift in range(len(num) - len(den), -1, -1):
        c = (num[shift + len(den) - 1] * lead_inv) % mod
        if c:
            quo[shift] = c
            for i, d in enumerate(den):
                num[shift + i] = (num[shift + i] - c * d) % mod
    return _ptrim(quo), _ptrim(num)


def _pmod(num, den, mod):
    return _pdivmod(num, den, mod)[1]


def _ppow_x(exponent, modpoly, mod):
    """x^exponent modulo (modpoly, mod), by square and multiply."""
    result = [1]
    base = _pmod([0, 1], modpoly, mod)
    e = exponent
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, mod), modpoly, mod)
        base = _pmod(_pmul(base, base, mod), modpoly, mod)
        e >>= 1
    return result


def _pgcdext(a, b, p):
    """Extended Euclid over F_p: returns (g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = _ptrim(list(a)), _ptrim(list(b))
    u0, u1 = [1], []
    v0, v1 = [], [1]
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        u0, u1 = u1, _psub(u0, _pmul(q, u1, p), p)
        v0, v1 = v1, _psub(v0, _pmul(q, v1, p), p)
    if not r0:
        return [], u0, v0
    inv = pow(r0[-1], -1, p)
    scale = lambda poly: [(c * inv) % p for c in poly]
    return scale(r0), scale(u0), scale(v0)


def _order_of_x(modpoly, mod, n_max: int) -> int:
    """Multiplicative order of x modulo (modpoly, mod); 0 if x^n_max != 1."""
    if _pmod([0, 1], modpoly, mod) == [] or _ppow_x(n_max, modpoly, mod) != [1]:
        return 0
    order = n_max
    for ell in prime_factors(n_max):
        while order % ell == 0 and _ppow_x(order // ell, modpoly, mod) == [1]:
            order //= ell
    return order


# ---------------------------------------------------------------------------
# primitive polynomials and the Hensel lift
# ---------------------------------------------------------------------------

def find_primitive_poly(p: int, n: int) -> tuple[int, ...]:
    """Smallest monic primitive polynomial of degree n over F_p.

    "Smallest" is lexicographic on the little-endian coefficient tuple, so
    the choice is reproducible across runs and platforms.
    """
    if not is_prime(p):
        raise NonPrimitiveInputError(f"p={p} is not prime")
    if n < 1:
        raise NonPrimitiveInputError("degree must be >= 1")
    target = p**n - 1
    for tail in itertools.product(range(p), repeat=n):
        if tail[0] == 0:
            continue  # x divides the candidate
        g = tail + (1,)
        if _order_of_x(list(g), p, target) == target:
            return g
    raise NonPrimitiveInputError(f"no primitive polynomial found for p={p}, n={n}")


def is_primitive_poly(g, p: int) -> bool:
    g = list(g)
    n = len(_ptrim(g)) - 1
    if n < 1 or g[-1] % p != 1:
        return False
    target = p**n - 1
    return _order_of_x(g, p, target) == target


def hensel_lift_basic_primitive(g, p: int) -> tuple[int, ...]:
    """Lift a primitive g over F_p to the basic primitive h over Z_{p^2}.

    One Newton step on the coprime factorization x^(p^n - 1) - 1 = g*k over
    F_p produces the unique monic h = g (mod p) dividing x^(p^n - 1) - 1
    over Z_{p^2}; equivalently ord(x mod h) = p^n - 1.
    """
    g = [c % p for c in _ptrim(list(g))]
    if not is_primitive_poly(g, p):
        raise NonPrimitiveInputError(f"{g} is not primitive over F_{p}")
    n = len(g) - 1
    target = p**n - 1
    p2 = p * p

    f = [0] * (target + 1)
    f[0], f[target] = -1 % p2, 1
    k, rem = _pdivmod([c % p for c in f], g, p)
    assert not rem
    # f - g*k is divisible by p; t is the cofactor of the defect
    defect = _psub(f, _pmul(g, k, p2), p2)
    t = [(c // p) % p for c in defect]
    one, a, b = _pgcdext(g, k, p)
    assert one == [1], "g and k must be coprime mod p"
    u = _pmod(_pmul(b, t, p), g, p)

    h = [c % p2 for c in g]
    for i, c in enumerate(u):
        h[i] = (h[i] + p * c) % p2
    order = _order_of_x(h, p2, target)
    assert order == target, f"lift failed: ord(x) = {order}, expected {target}"
    return tuple(h)


# ---------------------------------------------------------------------------
# finite fields F_q, q = p^r, with discrete-log tables
# ---------------------------------------------------------------------------

class FiniteField:
    """F_{p^r} as integer codes 0..q-1 (little-endian base-p digit vectors).

    The modulus is a primitive polynomial, so the class of x generates the
    multiplicative group and exp/log tables cover all of F_q^*.
    """

    def __init__(self, p: int, r: int, modulus=None, allow_large: bool = False):
        if not is_prime(p):
            raise NonPrimitiveInputError(f"p={p} is not prime")
        if r < 1:
            raise NonPrimitiveInputError("degree must be >= 1")
        q = p**r
        if q * q > DESK_SCALE_LIMIT and not allow_large:
            raise ScaleGuardError(
                f"F_{q} exceeds the desk-scale guard; pass allow_large=True to override"
            )
        if modulus is None:
            modulus = find_primitive_poly(p, r)
        modulus = tuple(c % p for c in modulus)
        if len(_ptrim(list(modulus))) - 1 != r or modulus[-1] != 1:
            raise NonPrimitiveInputError(f"modulus must be monic of degree {r}")
        if not is_primitive_poly(list(modulus), p):
            raise NonPrimitiveInputError(f"modulus {list(modulus)} is not primitive over F_{p}")
        self.p = p
        self.r = r
        self.q = q
        self.modulus = modulus

        # exp[i] = code of xi^i for 0 <= i < q-1; log inverts it on F_q^*
        self.exp: list[int] = []
        self.log: dict[int, int] = {}
        cur = [1]
        xpoly = _pmod([0, 1], list(modulus), p)
        for i in range(q - 1):
            code = self._encode(cur)
            self.exp.append(code)
            self.log[code] = i
            cur = _pmod(_pmul(cur, xpoly, p), list(modulus), p)
        assert self._encode(cur) == 1, "modulus is not primitive"
        assert len(self.log) == q - 1
        self.generator = self.exp[1 % (q - 1)] if q > 2 else 1
        self._trace_table: list[int] | None = None

    # -- codes ----------------------------------------------------------

    def _encode(self, coeffs) -> int:
        code = 0
        for c in reversed(list(coeffs)):
            code = code * self.p + (c % self.p)
        return code

    def coeffs(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.r):
            out.append(code % self.p)
            code //= self.p
        return tuple(out)

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.r:
            raise ValueError(f"too many coefficients for degree {self.r}")
        coeffs += [0] * (self.r - len(coeffs))
        return self._encode(coeffs)

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    # -- arithmetic -------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        da, db = self.coeffs(a), self.coeffs(b)
        return self._encode([(x + y) % self.p for x, y in zip(da, db)])

    def sub(self, a: int, b: int) -> int:
        da, db = self.coeffs(a), self.coeffs(b)
        return self._encode([(x - y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        return self._encode([(-x) % self.p for x in self.coeffs(a)])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise NotAUnitError("0 has no inverse")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise NotAUnitError("0 has no inverse")
            return 0 if k else 1
        return self.exp[(self.log[a] * k) % (self.q - 1)]

    def trace_to_prime(self, a: int) -> int:
        """Absolute trace to F_p, returned as an integer 0 <= t < p."""
        if self._trace_table is None:
            table = []
            for x in range(self.q):
                acc, y = 0, x
                for _ in range(self.r):
                    acc = self.add(acc, y)
                    y = self.pow(y, self.p)
                assert acc < self.p, "trace left the prime field"
                table.append(acc)
            self._trace_table = table
        return self._trace_table[a]

    def __repr__(self):
        return f"FiniteField(p={self.p}, r={self.r})"


# ---------------------------------------------------------------------------
# Galois ring elements
# ---------------------------------------------------------------------------

class GaloisRingElement:
    """An element of GR(p^2, r): a coefficient tuple mod p^2 against the modulus."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: "GaloisRing", coeffs):
        self.ring = ring
        self.coeffs = tuple(c % ring.p2 for c in coeffs)
        assert len(self.coeffs) == ring.r

    @property
    def code(self) -> int:
        """Canonical integer code: little-endian base-p^2 value of the coefficients."""
        code = 0
        for c in reversed(self.coeffs):
            code = code * self.ring.p2 + c
        return code

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_unit(self) -> bool:
        return self.ring.reduce_mod_p(self) != 0

    def _check(self, other) -> "GaloisRingElement":
        if isinstance(other, int):
            c = [0] * self.ring.r
            c[0] = other
            return GaloisRingElement(self.ring, c)
        if isinstance(other, GaloisRingElement):
            if other.ring is not self.ring:
                raise ValueError("elements belong to different rings")
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return GaloisRingElement(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return GaloisRingElement(self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return GaloisRingElement(self.ring, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return GaloisRingElement(self.ring, [other * a for a in self.coeffs])
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        ring = self.ring
        prod = _pmul(list(self.coeffs), list(other.coeffs), ring.p2)
        prod = _pmod(prod, list(ring.modulus), ring.p2)
        prod += [0] * (ring.r - len(prod))
        return GaloisRingElement(ring, prod)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.ring.inverse(self) ** (-k)
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._check(other)
        if not isinstance(other, GaloisRingElement):
            return NotImplemented
        return self.ring is other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.ring), self.coeffs))

    def __repr__(self):
        body = ",".join(str(c) for c in self.coeffs)
        return f"<{body} in {self.ring!r}>"


class GaloisRing:
    """GR(p^2, r) = Z_{p^2}[x]/(h(x)) for a basic primitive modulus h."""

    def __init__(self, p: int, r: int, modulus=None, allow_large: bool = False):
        if not is_prime(p):
            raise NonPrimitiveInputError(f"p={p} is not prime")
        if r < 1:
            raise NonPrimitiveInputError("degree must be >= 1")
        q = p**r
        if q * q > DESK_SCALE_LIMIT and not allow_large:
            raise ScaleGuardError(
                f"GR({p}^2,{r}) has {q * q} elements, above the desk-scale guard; "
                "pass allow_large=True to override"
            )
        self.p = p
        self.r = r
        self.q = q
        self.p2 = p * p
        if modulus is None:
            modulus = hensel_lift_basic_primitive(find_primitive_poly(p, r), p)
        modulus = tuple(c % self.p2 for c in modulus)
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise NonPrimitiveInputError(f"modulus must be monic of degree {r}")
        self.modulus = modulus
        # any monic lift of a primitive polynomial gives a valid residue field;
        # basic primitivity is the stronger condition ord(x mod h) = q - 1
        self.residue_field = FiniteField(p, r, tuple(c % p for c in modulus), allow_large)
        order = _order_of_x(list(modulus), self.p2, q - 1)
        if order != q - 1:
            observed = _order_of_x(list(modulus), self.p2, p * (q - 1))
            raise NonPrimitiveInputError(
                f"modulus is not basic primitive: x has multiplicative order "
                f"{observed or 'undefined'}, expected {q - 1}"
            )

        xi_coeffs = _pmod([0, 1], list(modulus), self.p2)
        xi_coeffs += [0] * (r - len(xi_coeffs))
        self.xi = GaloisRingElement(self, xi_coeffs)
        self.zero = GaloisRingElement(self, [0] * r)
        self.one = GaloisRingElement(self, [1] + [0] * (r - 1))

        # Teichmuller tables: xi powers, discrete logs, and the bijection pT <-> T
        self.xi_powers: list[GaloisRingElement] = []
        self.teichmuller_log: dict[tuple[int, ...], int] = {}
        cur = self.one
        for i in range(q - 1):
            self.xi_powers.append(cur)
            self.teichmuller_log[cur.coeffs] = i
            cur = cur * self.xi
        if cur != self.one or len(self.teichmuller_log) != q - 1:
            raise NonPrimitiveInputError("modulus is not basic primitive: xi order check failed")
        self._p_teich: dict[tuple[int, ...], GaloisRingElement] = {}
        for t in self.teichmuller_set():
            self._p_teich[(t * p).coeffs] = t
        self._teich_cache: dict[tuple[int, ...], tuple[GaloisRingElement, GaloisRingElement]] = {}

    # -- element constructors ---------------------------------------------

    def element(self, coeffs) -> GaloisRingElement:
        coeffs = list(coeffs)
        if len(coeffs) > self.r:
            raise ValueError(f"too many coefficients for degree {self.r}")
        coeffs += [0] * (self.r - len(coeffs))
        return GaloisRingElement(self, coeffs)

    def from_code(self, code: int) -> GaloisRingElement:
        coeffs = []
        for _ in range(self.r):
            coeffs.append(code % self.p2)
            code //= self.p2
        return GaloisRingElement(self, coeffs)

    def elements(self):
        for code in range(self.q * self.q):
            yield self.from_code(code)

    def units(self):
        for a in self.elements():
            if a.is_unit:
                yield a

    def teichmuller_set(self) -> list[GaloisRingElement]:
        return [self.zero] + self.xi_powers

    # -- structure maps -----------------------------------------------------

    def reduce_mod_p(self, a: GaloisRingElement) -> int:
        """The residue map GR(p^2, r) -> F_q, as a field code."""
        return self.residue_field.from_coeffs([c % self.p for c in a.coeffs])

    def lift_teichmuller(self, field_code: int) -> GaloisRingElement:
        """The unique Teichmuller element reducing to the given field element."""
        if field_code == 0:
            return self.zero
        return self.xi_powers[self.residue_field.log[field_code]]

    def teichmuller_decompose(
        self, a: GaloisRingElement
    ) -> tuple[GaloisRingElement, GaloisRingElement]:
        """The unique (a1, a2) in T x T with a = a1 + p*a2.

        For units a1 = a^q, which lands in T because (1 + p*m)^q = 1 in
        characteristic-p^2 Galois rings; for non-units a1 = 0.
        """
        cached = self._teich_cache.get(a.coeffs)
        if cached is not None:
            return cached
        if a.is_unit:
            a1 = a**self.q
        else:
            a1 = self.zero
        a2 = self._p_teich[(a - a1).coeffs]
        self._teich_cache[a.coeffs] = (a1, a2)
        return a1, a2

    def unit_decompose(
        self, a: GaloisRingElement
    ) -> tuple[GaloisRingElement, GaloisRingElement]:
        """The unique (t, v) in T* x T with a = t*(1 + p*v)."""
        if not a.is_unit:
            raise NotAUnitError(f"{a!r} lies in the maximal ideal")
        t, _ = self.teichmuller_decompose(a)
        w = a * self.inverse_teichmuller(t)
        v = self._p_teich[(w - self.one).coeffs]
        return t, v

    def inverse_teichmuller(self, t: GaloisRingElement) -> GaloisRingElement:
        k = self.teichmuller_log[t.coeffs]
        return self.xi_powers[(-k) % (self.q - 1)] if self.q > 1 else self.one

    def inverse(self, a: GaloisRingElement) -> GaloisRingElement:
        """Multiplicative inverse of a unit: t^(-1) * (1 - p*v) for a = t(1+pv)."""
        t, v = self.unit_decompose(a)
        return self.inverse_teichmuller(t) * (self.one - v * self.p)

    def frobenius(self, a: GaloisRingElement, q0: int) -> GaloisRingElement:
        """sigma_{q0}(a) = a1^{q0} + p * a2^{q0} on Teichmuller coordinates."""
        k, power = 0, 1
        while power < q0:
            power *= self.p
            k += 1
        if power != q0 or q0 > self.q:
            raise InvalidTowerError(f"{q0} is not a power of {self.p} within GR({self.p}^2,{self.r})")
        a1, a2 = self.teichmuller_decompose(a)
        return self._teich_power(a1, q0) + self._teich_power(a2, q0) * self.p

    def _teich_power(self, t: GaloisRingElement, k: int) -> GaloisRingElement:
        if t.is_zero():
            return self.zero
        return self.xi_powers[(self.teichmuller_log[t.coeffs] * k) % (self.q - 1)]

    def trace_to_prime(self, a: GaloisRingElement) -> int:
        """Trace down to Z_{p^2}, as an integer 0 <= t < p^2."""
        acc = self.zero
        cur = a
        for _ in range(self.r):
            acc = acc + cur
            cur = self.frobenius(cur, self.p)
        assert not any(acc.coeffs[1:]), "trace left the prime ring"
        return acc.coeffs[0]

    def __repr__(self):
        return f"GR({self.p}^2,{self.r})"


# ---------------------------------------------------------------------------
# the tower GR(p^2, r) inside GR(p^2, r*s)
# ---------------------------------------------------------------------------

def _solve_unit_system(matrix: list[list[int]], mod: int, p: int) -> list[list[int]]:
    """Inverse of a square matrix over Z_mod whose determinant is a unit mod p."""
    n = len(matrix)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next(i for i in range(col, n) if aug[i][col] % p != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = pow(aug[col][col], -1, mod)
        aug[col] = [(x * inv) % mod for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                factor = aug[i][col]
                aug[i] = [(x - factor * y) % mod for x, y in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


class RingTower:
    """The pair R = GR(p^2, r) inside R_big = GR(p^2, r*s), with its maps.

    The subring is generated by u = xi_big^((Q-1)/(q-1)); its modulus is the
    minimal polynomial of u over Z_{p^2}, so the embedding is exactly
    xi_small -> u and commutes with reduction mod p by construction.
    """

    def __init__(self, big: GaloisRing, small_degree: int):
        if big.r % small_degree != 0:
            raise IncompatibleTowerError(
                f"degree {small_degree} does not divide {big.r}"
            )
        self.big = big
        self.s = big.r // small_degree
        p = big.p
        q = p**small_degree
        Q = big.q
        ratio = (Q - 1) // (q - 1)
        u = big.xi_powers[ratio % (Q - 1)] if Q > 2 else big.one

        # minimal polynomial of u: product of (x - u^(p^i)) over the orbit
        poly = [big.one]
        root = u
        for _ in range(small_degree):
            shifted = [big.zero] + poly
            scaled = [(-root) * c for c in poly] + [big.zero]
            poly = [a + b for a, b in zip(shifted, scaled)]
            root = big._teich_power(root, p)
        modulus = []
        for coeff in poly:
            assert not any(coeff.coeffs[1:]), "minimal polynomial left Z_{p^2}"
            modulus.append(coeff.coeffs[0])
        self.small = GaloisRing(p, small_degree, modulus)
        self.u = u

        # embedding matrix: column j holds the big-ring coefficients of u^j
        self.embed_cols = []
        cur = big.one
        for _ in range(small_degree):
            self.embed_cols.append(cur.coeffs)
            cur = cur * u
        # choose rows making the embedding invertible on its image (unit minor mod p)
        rows = self._independent_rows(p)
        self._proj_rows = rows
        submatrix = [[self.embed_cols[j][i] for j in range(small_degree)] for i in rows]
        self._proj_inv = _solve_unit_system(submatrix, big.p2, p)

        self.field_ratio = ratio
        self._check_compatibility()

    def _independent_rows(self, p: int) -> list[int]:
        r_small = len(self.embed_cols)
        chosen: list[int] = []
        basis: list[list[int]] = []
        for i in range(self.big.r):
            row = [self.embed_cols[j][i] % p for j in range(r_small)]
            trial = basis + [row]
            if self._rank_mod_p(trial, p) == len(trial):
                chosen.append(i)
                basis = trial
                if len(chosen) == r_small:
                    return chosen
        raise IncompatibleTowerError("embedding matrix is rank deficient")

    @staticmethod
    def _rank_mod_p(rows: list[list[int]], p: int) -> int:
        mat = [list(r) for r in rows]
        rank = 0
        ncols = len(mat[0]) if mat else 0
        for col in range(ncols):
            pivot = next((i for i in range(rank, len(mat)) if mat[i][col] % p), None)
            if pivot is None:
                continue
            mat[rank], mat[pivot] = mat[pivot], mat[rank]
            inv = pow(mat[rank][col], -1, p)
            mat[rank] = [(x * inv) % p for x in mat[rank]]
            for i in range(len(mat)):
                if i != rank and mat[i][col] % p:
                    f = mat[i][col]
                    mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[rank])]
            rank += 1
        return rank

    def _check_compatibility(self):
        # the embedding must commute with reduction mod p on all of the subring
        for code in range(self.small.q * self.small.q):
            a = self.small.from_code(code)
            lhs = self.big.reduce_mod_p(self.embed(a))
            rhs = self.embed_field(self.small.reduce_mod_p(a))
            assert lhs == rhs, "embedding does not commute with reduction mod p"

    # -- ring maps ---------------------------------------------------------

    def embed(self, a: GaloisRingElement) -> GaloisRingElement:
        if a.ring is not self.small:
            raise IncompatibleTowerError("element does not belong to the subring")
        out = [0] * self.big.r
        for j, c in enumerate(a.coeffs):
            if c:
                col = self.embed_cols[j]
                for i in range(self.big.r):
                    out[i] += c * col[i]
        return GaloisRingElement(self.big, out)

    def project(self, a: GaloisRingElement) -> GaloisRingElement:
        """Inverse of embed on its image; raises if a is not in the subring."""
        y = [a.coeffs[i] for i in self._proj_rows]
        coeffs = [
            sum(self._proj_inv[i][j] * y[j] for j in range(len(y))) % self.big.p2
            for i in range(len(y))
        ]
        candidate = self.small.element(coeffs)
        if self.embed(candidate) != a:
            raise InvalidTowerError(f"{a!r} does not lie in the embedded subring")
        return candidate

    def trace(self, a: GaloisRingElement) -> GaloisRingElement:
        """Relative trace R_big -> R_small: the sum of the sigma_q orbit."""
        if a.ring is not self.big:
            raise InvalidTowerError("element does not belong to the extension ring")
        acc = self.big.zero
        cur = a
        for _ in range(self.s):
            acc = acc + cur
            cur = self.big.frobenius(cur, self.small.q)
        return self.project(acc)

    def fixed_by_frobenius(self, a: GaloisRingElement) -> bool:
        return self.big.frobenius(a, self.small.q) == a

    # -- residue-field maps --------------------------------------------------

    def embed_field(self, x: int) -> int:
        if x == 0:
            return 0
        Fq, FQ = self.small.residue_field, self.big.residue_field
        return FQ.exp[(Fq.log[x] * self.field_ratio) % (FQ.q - 1)]

    def project_field(self, y: int) -> int:
        if y == 0:
            return 0
        Fq, FQ = self.small.residue_field, self.big.residue_field
        log = FQ.log[y]
        if log % self.field_ratio != 0:
            raise InvalidTowerError("field element does not lie in the subfield")
        return Fq.exp[(log // self.field_ratio) % (Fq.q - 1)]

    def field_trace(self, y: int) -> int:
        """Relative field trace F_Q -> F_q, returned as a small-field code."""
        FQ = self.big.residue_field
        acc, cur = 0, y
        for _ in range(self.s):
            acc = FQ.add(acc, cur)
            cur = FQ.pow(cur, self.small.q)
        return self.project_field(acc)

    def __repr__(self):
        return f"RingTower({self.small!r} in {self.big!r})"


# ---------------------------------------------------------------------------
# element literals ("3,2" = 3 + 2*xi, little-endian)
# ---------------------------------------------------------------------------

def parse_element(ring: GaloisRing, literal: str) -> GaloisRingElement:
    try:
        coeffs = [int(part) for part in literal.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad element literal {literal!r}: {exc}") from None
    return ring.element(coeffs)


def format_element(a: GaloisRingElement) -> str:
    return ",".join(str(c) for c in a.coeffs)


def parse_field_element(field: FiniteField, literal: str) -> int:
    try:
        coeffs = [int(part) % field.p for part in literal.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad field element literal {literal!r}: {exc}") from None
    return field.from_coeffs(coeffs)


def format_field_element(field: FiniteField, code: int) -> str:
    return ",".join(str(c) for c in field.coeffs(code))
