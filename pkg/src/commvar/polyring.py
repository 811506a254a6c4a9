"""Univariate polynomial algebra over a field instance.

Polynomials are dense coefficient tuples (packed element indices, constant
term first, no trailing zeros).  Provides exact arithmetic, gcd,
irreducibility testing (distinct-degree sieve), full factorization
(squarefree split + distinct-degree + seeded equal-degree splitting), and
enumeration of monic irreducibles of a given degree.

Text form: comma-separated element tokens, constant term first,
e.g. "1,0,1" for 1 + t^2 over a prime field.
"""

from __future__ import annotations

import random

from .errors import LimitExceeded
from .gf import Fe, FieldSpec

DEFAULT_ENUM_LIMIT = 1 << 22


# -- tuple-level helpers (shared with the matrix module's hot paths) --------

def pnormalize(coeffs) -> tuple[int, ...]:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def padd(spec: FieldSpec, f, g):
    if len(f) < len(g):
        f, g = g, f
    add = spec.add
    out = list(f)
    for i, c in enumerate(g):
        out[i] = add(out[i], c)
    return pnormalize(out)


def psub(spec: FieldSpec, f, g):
    sub = spec.sub
    n = max(len(f), len(g))
    out = [0] * n
    for i in range(n):
        a = f[i] if i < len(f) else 0
        b = g[i] if i < len(g) else 0
        out[i] = sub(a, b)
    return pnormalize(out)


def pscale(spec: FieldSpec, f, c: int):
    if c == 0:
        return ()
    mul = spec.mul
    return pnormalize([mul(x, c) for x in f])


def pmul(spec: FieldSpec, f, g):
    if not f or not g:
        return ()
    mul, add = spec.mul, spec.add
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for j, y in enumerate(g):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return pnormalize(out)


def pdivmod(spec: FieldSpec, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if len(f) < len(g):
        return (), tuple(f)
    mul, sub = spec.mul, spec.sub
    inv_lead = spec.inv(g[-1])
    rem = list(f)
    dg = len(g) - 1
    quo = [0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = rem[i]
        if c:
            c = mul(c, inv_lead)
            quo[i - dg] = c
            for j in range(dg + 1):
                rem[i - dg + j] = sub(rem[i - dg + j], mul(c, g[j]))
    return pnormalize(quo), pnormalize(rem)


def pmonic(spec: FieldSpec, f):
    if not f or f[-1] == spec.one_idx:
        return tuple(f)
    return pscale(spec, f, spec.inv(f[-1]))


def pgcd(spec: FieldSpec, f, g):
    while g:
        f, g = g, pdivmod(spec, f, g)[1]
    return pmonic(spec, f)


def ppowmod(spec: FieldSpec, f, e: int, m):
    result = (spec.one_idx,)
    base = pdivmod(spec, f, m)[1]
    while e:
        if e & 1:
            result = pdivmod(spec, pmul(spec, result, base), m)[1]
        base = pdivmod(spec, pmul(spec, base, base), m)[1]
        e >>= 1
    return result


def peval(spec: FieldSpec, f, x: int) -> int:
    acc = 0
    mul, add = spec.mul, spec.add
    for c in reversed(f):
        acc = add(mul(acc, x), c)
    return acc


def pderiv(spec: FieldSpec, f):
    out = []
    for i in range(1, len(f)):
        out.append(spec.mul(f[i], spec.el(i).idx))
    return pnormalize(out)


class Poly:
    """A univariate polynomial over a fixed field instance."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs):
        self.spec = spec
        self.coeffs = pnormalize(tuple(coeffs))

    @classmethod
    def from_coeffs(cls, spec: FieldSpec, coeffs) -> "Poly":
        return cls(spec, [spec.el(c).idx for c in coeffs])

    @classmethod
    def zero(cls, spec: FieldSpec) -> "Poly":
        return cls(spec, ())

    @classmethod
    def one(cls, spec: FieldSpec) -> "Poly":
        return cls(spec, (spec.one_idx,))

    @classmethod
    def x(cls, spec: FieldSpec) -> "Poly":
        return cls(spec, (0, spec.one_idx))

    @classmethod
    def from_text(cls, spec: FieldSpec, text: str) -> "Poly":
        return cls(spec, [spec.parse(tok).idx for tok in split_tokens(text)])

    @property
    def degree(self) -> int:
        """Degree; -1 marks the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.spec.one_idx

    def leading(self) -> Fe:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return Fe(self.spec, self.coeffs[-1])

    def monic(self) -> "Poly":
        return Poly(self.spec, pmonic(self.spec, self.coeffs))

    def _check(self, other: "Poly"):
        if other.spec != self.spec:
            raise ValueError("mismatched fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        return Poly(self.spec, padd(self.spec, self.coeffs, other.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        return Poly(self.spec, psub(self.spec, self.coeffs, other.coeffs))

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return Poly(self.spec, pmul(self.spec, self.coeffs, other.coeffs))
        c = self.spec.el(other).idx
        return Poly(self.spec, pscale(self.spec, self.coeffs, c))

    __rmul__ = __mul__

    def __neg__(self) -> "Poly":
        neg = self.spec.neg
        return Poly(self.spec, [neg(c) for c in self.coeffs])

    def __divmod__(self, other: "Poly"):
        self._check(other)
        q, r = pdivmod(self.spec, self.coeffs, other.coeffs)
        return Poly(self.spec, q), Poly(self.spec, r)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> "Poly":
        result = Poly.one(self.spec)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x: Fe) -> Fe:
        if x.spec != self.spec:
            raise ValueError("mismatched fields")
        return Fe(self.spec, peval(self.spec, self.coeffs, x.idx))

    def derivative(self) -> "Poly":
        return Poly(self.spec, pderiv(self.spec, self.coeffs))

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.spec.p, self.spec.k, self.coeffs))

    def __lt__(self, other: "Poly"):
        return (self.degree, self.coeffs) < (other.degree, other.coeffs)

    def to_text(self) -> str:
        if self.is_zero:
            return str(self.spec.zero)
        return ",".join(str(Fe(self.spec, c)) for c in self.coeffs)

    def pretty(self, var: str = "t") -> str:
        """Human-readable form, descending powers, e.g. "t^4" or "t^2+2*t+2"."""
        if self.is_zero:
            return "0"
        spec = self.spec
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            ctext = str(Fe(spec, c))
            if i == 0:
                terms.append(ctext)
            else:
                power = var if i == 1 else "%s^%d" % (var, i)
                if c == spec.one_idx:
                    terms.append(power)
                else:
                    terms.append("%s*%s" % (ctext, power))
        return "+".join(terms)

    def __str__(self):
        return self.pretty()

    def __repr__(self):
        return "Poly(%r, %s)" % (self.spec, self.pretty())


def split_tokens(text: str) -> list[str]:
    """Split a comma-separated token list, respecting [...] groups."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur).strip())
    return out


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor; gcd(0, 0) = 0."""
    if f.spec != g.spec:
        raise ValueError("mismatched fields")
    return Poly(f.spec, pgcd(f.spec, f.coeffs, g.coeffs))


def _prime_divisors(n: int):
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


def _pow_q_mod(spec: FieldSpec, f, m, times: int):
    """f^(q^times) mod m."""
    for _ in range(times):
        f = ppowmod(spec, f, spec.q, m)
    return f


def is_irreducible(f: Poly) -> bool:
    """True iff f is irreducible over its field (degree >= 1 required)."""
    d = f.degree
    if d < 1:
        raise ValueError("irreducibility is undefined for constants")
    spec = f.spec
    m = pmonic(spec, f.coeffs)
    if d == 1:
        return True
    t = (0, spec.one_idx)
    h = _pow_q_mod(spec, t, m, d)
    if h != t:
        return False
    for ell in _prime_divisors(d):
        h = _pow_q_mod(spec, t, m, d // ell)
        g = pgcd(spec, psub(spec, h, t), m)
        if len(g) != 1:
            return False
    return True


def _mix_seed(seed: int, coeffs) -> int:
    h = 0xCBF29CE484222325 ^ (seed & 0xFFFFFFFFFFFFFFFF)
    for c in coeffs:
        h = ((h ^ (c + 1)) * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def _pth_root(spec: FieldSpec, f):
    """The p-th root of f(t) = g(t)^p (valid when f' = 0)."""
    p, k = spec.p, spec.k
    out = []
    for i in range(0, len(f), p):
        c = f[i]
        # inverse Frobenius: c^(p^(k-1))
        for _ in range(k - 1):
            c = spec.frob(c)
        out.append(c)
    return pnormalize(out)


def _ddf(spec: FieldSpec, f):
    """Distinct-degree split of a squarefree monic f: list of (product, d)."""
    out = []
    t = (0, spec.one_idx)
    h = t
    d = 0
    while len(f) - 1 > 0:
        d += 1
        if 2 * d > len(f) - 1:
            out.append((f, len(f) - 1))
            break
        h = ppowmod(spec, h, spec.q, f)
        g = pgcd(spec, psub(spec, h, t), f)
        if len(g) > 1:
            out.append((g, d))
            f = pdivmod(spec, f, g)[0]
            h = pdivmod(spec, h, f)[1]
    return out


def _edf(spec: FieldSpec, f, d: int, seed: int):
    """Split a product of degree-d irreducibles into its factors."""
    if len(f) - 1 == d:
        return [f]
    q = spec.q
    rng = random.Random(_mix_seed(seed, f))
    out = []
    while True:
        r = pnormalize([rng.randrange(q) for _ in range(len(f) - 1)])
        if len(r) <= 1:
            continue
        if spec.p == 2:
            # trace map sum r^(2^i), i < k*d
            acc = pdivmod(spec, r, f)[1]
            cur = acc
            for _ in range(spec.k * d - 1):
                cur = ppowmod(spec, cur, 2, f)
                acc = padd(spec, acc, cur)
            split = pgcd(spec, acc, f)
        else:
            s = ppowmod(spec, r, (q**d - 1) // 2, f)
            split = pgcd(spec, psub(spec, s, (spec.one_idx,)), f)
        if 1 <= len(split) - 1 < len(f) - 1:
            out.extend(_edf(spec, split, d, seed))
            out.extend(_edf(spec, pdivmod(spec, f, split)[0], d, seed))
            return out


def factor(f: Poly, seed: int = 0):
    """Full factorization into monic irreducibles.

    Returns a sorted tuple of (factor, multiplicity); the product of
    factor^multiplicity times the leading coefficient reassembles f.
    Deterministic for a given (f, seed).
    """
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    spec = f.spec
    work = pmonic(spec, f.coeffs)
    found: dict[tuple, int] = {}
    scale = 1
    while len(work) - 1 > 0:
        deriv = pderiv(spec, work)
        if not deriv:
            work = _pth_root(spec, work)
            scale *= spec.p
            continue
        rad = pdivmod(spec, work, pgcd(spec, work, deriv))[0]
        for part, d in _ddf(spec, rad):
            for g in _edf(spec, part, d, seed):
                mult = 0
                while True:
                    quo, rem = pdivmod(spec, work, g)
                    if rem:
                        break
                    work = quo
                    mult += 1
                found[g] = found.get(g, 0) + mult * scale
    out = [(Poly(spec, g), m) for g, m in found.items()]
    out.sort(key=lambda gm: (gm[0].degree, gm[0].coeffs))
    return tuple(out)


def roots(f: Poly, seed: int = 0) -> list[Fe]:
    """Roots of f in its own field, sorted in canonical order."""
    out = []
    for g, _ in factor(f, seed):
        if g.degree == 1:
            out.append(Fe(f.spec, f.spec.neg(g.coeffs[0])))
    out.sort(key=lambda a: a.idx)
    return out


def _moebius(n: int) -> int:
    mu = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            mu = -mu
        d += 1
    if n > 1:
        mu = -mu
    return mu


def num_irreducibles(q: int, d: int) -> int:
    """The necklace count (1/d) sum_{e|d} mu(e) q^(d/e)."""
    total = 0
    for e in range(1, d + 1):
        if d % e == 0:
            total += _moebius(e) * q ** (d // e)
    return total // d


def irreducibles_of_degree(
    spec: FieldSpec, d: int, limit: int = DEFAULT_ENUM_LIMIT
):
    """All monic irreducibles of degree d, in canonical order."""
    if d < 1:
        raise ValueError("degree must be positive")
    if spec.q**d > limit:
        raise LimitExceeded(
            "enumeration too large: %d candidates exceed limit %d" % (spec.q**d, limit)
        )
    spec.ensure_tables()
    out = []
    one = spec.one_idx
    if d == 1:
        return [Poly(spec, (a, one)) for a in range(spec.q)]
    for lowidx in range(spec.q**d):
        low = []
        a = lowidx
        for _ in range(d):
            a, r = divmod(a, spec.q)
            low.append(r)
        # lowidx digits give (c_{d-1}, ..., c0); reverse for constant-first
        coeffs = tuple(reversed(low)) + (one,)
        if d <= 3:
            # degree 2 or 3: irreducible iff no roots
            if all(peval(spec, coeffs, x) != 0 for x in range(spec.q)):
                out.append(Poly(spec, coeffs))
        else:
            cand = Poly(spec, coeffs)
            if is_irreducible(cand):
                out.append(cand)
    return out
