"""Exact arithmetic in prime fields F_p, extensions F_q = F_p[t]/(irr), and
two-level towers F_{q^e} = F_q[y]/(irr).

Elements are rank-encoded: the rank of an element is the positional encoding
of its ascending coefficient sequence (base p for a base level, base q for a
tower top).  Because the encoding nests, a subfield element keeps the same
rank when embedded upward, and integer n maps to the field constant n mod p
at every level.  Ranks 0 and 1 are always the additive and multiplicative
identities.

Each field precomputes generator exp/log tables and a Zech logarithm table at
construction, which makes every arithmetic operation O(1) table lookups and
feeds the bulk kernels in permpoly._kernels.  Construction is capped at
10**6 elements; irreducibility of every modulus is established by exhaustive
root and divisor checks.

Fields are interned: constructing the same level twice returns the same
object, so element fields can be compared by identity.  All objects here are
immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DivisionByZero, LevelMismatch, NoSuchRoot, RangeError

MAX_FIELD_SIZE = 10**6


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _distinct_primes(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _poly_eval(sub: "Field", coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = sub.add(sub.mul(acc, x), c)
    return acc


def _poly_rem_monic(sub: "Field", a: Sequence[int], b: Sequence[int]) -> list[int]:
    # remainder of a by monic b, coefficients ascending
    r = list(a)
    db = len(b) - 1
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c == 0:
            continue
        r[i] = 0
        for j in range(db):
            r[i - db + j] = sub.sub(r[i - db + j], sub.mul(c, b[j]))
    while r and r[-1] == 0:
        r.pop()
    return r


class Field:
    """One arithmetic level: F_p, or a verified-irreducible extension of a
    smaller Field.  Use prime_field / extension_field / FieldSpec to build."""

    __slots__ = (
        "p", "size", "degree", "subfield", "modulus", "is_top",
        "exp", "log", "zech", "neg_one", "generator_rank",
        "_xpow", "_frob", "_zero", "_one",
    )

    def __init__(self, subfield: "Field | None", modulus: tuple[int, ...] | None,
                 p: int | None = None, is_top: bool = False):
        if subfield is None:
            assert p is not None and modulus is None
            self.p = p
            self.size = p
            self.degree = 1
            self.subfield = None
            self.modulus = None
            self.is_top = False
            self._xpow = None
        else:
            assert modulus is not None
            degree = len(modulus) - 1
            if degree < 2:
                raise RangeError("extension degree must be at least 2")
            if modulus[-1] != 1:
                raise RangeError("modulus must be monic")
            if any(not (0 <= c < subfield.size) for c in modulus):
                raise RangeError("modulus coefficients must be subfield ranks")
            if not is_top and subfield.subfield is not None:
                raise RangeError("base levels must extend a prime field directly")
            self.p = subfield.p
            self.size = subfield.size ** degree
            self.degree = degree
            self.subfield = subfield
            self.modulus = tuple(modulus)
            self.is_top = is_top
            if self.size > MAX_FIELD_SIZE:
                raise RangeError(f"field size {self.size} exceeds cap {MAX_FIELD_SIZE}")
            if not self._is_irreducible():
                raise RangeError(f"modulus {list(modulus)} is reducible over GF({subfield.size})")
            self._build_xpow()
        self._frob = None
        self.neg_one = self.p - 1
        self._build_tables()
        self._zero = FieldElement(self, 0)
        self._one = FieldElement(self, 1)

    # -- construction internals ------------------------------------------

    def _is_irreducible(self) -> bool:
        sub, mod = self.subfield, self.modulus
        deg = self.degree
        for x in range(sub.size):
            if _poly_eval(sub, mod, x) == 0:
                return False
        # no factor of degree <= deg // 2; candidates are monic with ascending
        # coefficient tails enumerated positionally
        for d in range(2, deg // 2 + 1):
            for tail in range(sub.size ** d):
                cand, t = [], tail
                for _ in range(d):
                    cand.append(t % sub.size)
                    t //= sub.size
                cand.append(1)
                if not _poly_rem_monic(sub, mod, cand):
                    return False
        return True

    def _build_xpow(self):
        # digit vectors of x^e reduced, for e in [degree, 2*degree - 2]
        sub, deg = self.subfield, self.degree
        top = [sub.neg(c) for c in self.modulus[:deg]]
        xpow = {deg: top}
        for e in range(deg, 2 * deg - 2):
            prev = xpow[e]
            nxt = [0] + prev[: deg - 1]
            lead = prev[deg - 1]
            if lead:
                for j in range(deg):
                    nxt[j] = sub.add(nxt[j], sub.mul(lead, top[j]))
            xpow[e + 1] = nxt
        self._xpow = xpow

    def _sadd(self, a: int, b: int) -> int:
        # digit-wise base-p addition; valid at every level because ranks nest
        p = self.p
        out, mult = 0, 1
        while a or b:
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def _smul(self, a: int, b: int) -> int:
        if self.subfield is None:
            return (a * b) % self.p
        sub, deg = self.subfield, self.degree
        da, db = self._digits(a), self._digits(b)
        tmp = [0] * (2 * deg - 1)
        for i, ca in enumerate(da):
            if ca == 0:
                continue
            for j, cb in enumerate(db):
                if cb:
                    tmp[i + j] = sub.add(tmp[i + j], sub.mul(ca, cb))
        for e in range(2 * deg - 2, deg - 1, -1):
            c = tmp[e]
            if c:
                tmp[e] = 0
                for j, xp in enumerate(self._xpow[e]):
                    if xp:
                        tmp[j] = sub.add(tmp[j], sub.mul(c, xp))
        return self._undigits(tmp[:deg])

    def _spow(self, a: int, e: int) -> int:
        acc = 1
        while e:
            if e & 1:
                acc = self._smul(acc, a)
            a = self._smul(a, a)
            e >>= 1
        return acc

    def _build_tables(self):
        size = self.size
        qm1 = size - 1
        if qm1 == 1:
            gen = 1
        else:
            primes = _distinct_primes(qm1)
            gen = 0
            for cand in range(2, size):
                if all(self._spow(cand, qm1 // f) != 1 for f in primes):
                    gen = cand
                    break
            assert gen, "no generator found; field construction is broken"
        self.generator_rank = gen
        exp = [0] * qm1
        log = [-1] * size
        cur = 1
        for i in range(qm1):
            exp[i] = cur
            log[cur] = i
            cur = self._smul(cur, gen)
        self.exp = exp
        self.log = log
        self.zech = [log[self._sadd(1, exp[z])] for z in range(qm1)]

    # -- rank arithmetic ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        la = self.log[a]
        z = self.zech[(self.log[b] - la) % (self.size - 1)]
        if z < 0:
            return 0
        return self.exp[(la + z) % (self.size - 1)]

    def neg(self, a: int) -> int:
        return self.mul(self.neg_one, a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.size - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of zero in {self!r}")
        return self.exp[-self.log[a] % (self.size - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 0
        return self.exp[(self.log[a] * e) % (self.size - 1)]

    def from_int(self, n: int) -> int:
        """Rank of the image of the integer n (the prime subfield constant)."""
        return n % self.p

    # -- structure ----------------------------------------------------------

    def _digits(self, rank: int) -> list[int]:
        s = self.subfield.size if self.subfield else self.p
        out = []
        for _ in range(self.degree):
            out.append(rank % s)
            rank //= s
        return out

    def _undigits(self, digits: Sequence[int]) -> int:
        s = self.subfield.size if self.subfield else self.p
        out = 0
        for d in reversed(digits):
            out = out * s + d
        return out

    def element(self, rank: int) -> "FieldElement":
        return FieldElement(self, rank)

    @property
    def zero(self) -> "FieldElement":
        return self._zero

    @property
    def one(self) -> "FieldElement":
        return self._one

    def unrank(self, n: int) -> "FieldElement":
        if not (0 <= n < self.size):
            raise RangeError(f"rank {n} out of range for {self!r}")
        return FieldElement(self, n)

    def elements(self) -> Iterator["FieldElement"]:
        for n in range(self.size):
            yield FieldElement(self, n)

    def frobenius_rank(self, a: int) -> int:
        if not self.is_top:
            raise LevelMismatch(
                "frobenius is a tower-top operation; on a base level raise to the p-th power")
        return self.pow(a, self.subfield.size)

    def frobenius_table(self) -> list[int]:
        if self._frob is None:
            if not self.is_top:
                raise LevelMismatch("frobenius is a tower-top operation")
            q = self.subfield.size
            self._frob = [self.pow(n, q) for n in range(self.size)]
        return list(self._frob)

    def rel_trace_rank(self, a: int) -> int:
        if not self.is_top:
            raise LevelMismatch("relative trace requires a tower top")
        acc = cur = a
        for _ in range(self.degree - 1):
            cur = self.frobenius_rank(cur)
            acc = self.add(acc, cur)
        assert acc < self.subfield.size, "trace escaped the subfield"
        return acc

    def primitive_root_of_unity(self, d: int) -> "FieldElement":
        """Smallest-rank element of multiplicative order exactly d."""
        if d < 1:
            raise RangeError("order must be positive")
        qm1 = self.size - 1
        if qm1 % d != 0:
            raise NoSuchRoot(f"{d} does not divide {qm1}")
        step = qm1 // d
        best = min(self.exp[(step * j) % qm1] for j in range(d) if math.gcd(j, d) == 1) \
            if d > 1 else 1
        return FieldElement(self, best)

    @property
    def spec_text(self) -> str:
        if self.subfield is None:
            return str(self.p)
        mods = ",".join(str(c) for c in self.modulus)
        if not self.is_top:
            return f"{self.p}^{self.degree}:{mods}"
        base = self.subfield
        base_text = base.spec_text if base.subfield is not None else f"{base.p}^1:0,1"
        return f"{base_text}|{self.degree}:{mods}"

    def __repr__(self) -> str:
        if self.subfield is None:
            return f"GF({self.size})"
        if self.is_top:
            return f"GF({self.size})/GF({self.subfield.size})"
        return f"GF({self.size})"


@dataclass(frozen=True, slots=True)
class FieldElement:
    """An element of one field level; value identified by its rank."""

    field: Field
    rank: int

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise LevelMismatch("operands live on different field levels")
            return other
        if isinstance(other, int):
            return FieldElement(self.field, self.field.from_int(other))
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.rank, o.rank))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.rank, o.rank))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(o.rank, self.rank))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.rank, o.rank))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(self.rank, o.rank))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(o.rank, self.rank))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.rank, e))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.rank))

    def __bool__(self):
        return self.rank != 0

    @property
    def coeffs(self) -> tuple["FieldElement", ...]:
        """Ascending coefficients over the subfield (constants over F_p itself)."""
        f = self.field
        if f.subfield is None:
            return (self,)
        return tuple(FieldElement(f.subfield, d) for d in f._digits(self.rank))

    def frobenius(self) -> "FieldElement":
        return FieldElement(self.field, self.field.frobenius_rank(self.rank))

    def __repr__(self):
        return f"{self.rank}@{self.field!r}"


def frobenius(a: FieldElement) -> FieldElement:
    """a**q on a tower top F_{q^e}; LevelMismatch elsewhere."""
    return a.frobenius()


def rel_trace(a: FieldElement) -> FieldElement:
    """Relative trace down to the subfield: the sum of all Frobenius conjugates.

    The result is returned as an element of the subfield.
    """
    f = a.field
    return FieldElement(f.subfield, f.rel_trace_rank(a.rank))


def rank(a: FieldElement) -> int:
    return a.rank


@functools.lru_cache(maxsize=None)
def prime_field(p: int) -> Field:
    if not _is_prime(p):
        raise RangeError(f"{p} is not prime")
    if p > MAX_FIELD_SIZE:
        raise RangeError(f"field size {p} exceeds cap {MAX_FIELD_SIZE}")
    return Field(None, None, p=p)


@functools.lru_cache(maxsize=None)
def extension_field(subfield: Field, modulus: tuple[int, ...], is_top: bool = False) -> Field:
    return Field(subfield, tuple(modulus), is_top=is_top)


def tower(base: Field, degree: int, modulus: tuple[int, ...] | None = None) -> Field:
    """F_{q^degree} as a tower top over base = F_q."""
    if modulus is None:
        modulus = find_irreducible(base, degree)
    return extension_field(base, tuple(modulus), is_top=True)


def find_irreducible(field: Field, degree: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of the given degree
    (coefficient tuples compared ascending-degree-first)."""
    if degree < 1:
        raise RangeError("degree must be positive")
    if degree == 1:
        return (0, 1)
    s = field.size
    if s ** degree > MAX_FIELD_SIZE:
        raise RangeError("requested extension exceeds the size cap")
    for idx in range(s ** degree):
        tail, rest = [], idx
        for pos in range(degree - 1, -1, -1):
            tail.append(rest // (s ** pos))
            rest %= s ** pos
        cand = tuple(tail) + (1,)
        if _irreducible_over(field, cand):
            return cand
    raise NoSuchRoot("no irreducible found")  # unreachable: they always exist


def _irreducible_over(sub: Field, mod: tuple[int, ...]) -> bool:
    deg = len(mod) - 1
    for x in range(sub.size):
        if _poly_eval(sub, mod, x) == 0:
            return False
    for d in range(2, deg // 2 + 1):
        for tail in range(sub.size ** d):
            cand, t = [], tail
            for _ in range(d):
                cand.append(t % sub.size)
                t //= sub.size
            cand.append(1)
            if not _poly_rem_monic(sub, mod, cand):
                return False
    return True


class FieldSpec:
    """Parsed description of a field tower plus the constructed levels.

    Grammar: ``p`` | ``p^k:c0,...,ck`` | ``p^k:c0,...,ck|e:b0,...,be`` where
    the c are integers in [0, p) and the b are ranks of base-field elements,
    both ascending by degree with a monic leading 1.
    """

    __slots__ = ("p", "k", "base_irreducible", "e", "top_irreducible", "base", "top")

    def __init__(self, p: int, k: int = 1,
                 base_irreducible: Sequence[int] | None = None,
                 e: int | None = None,
                 top_irreducible: Sequence[int] | None = None):
        if not _is_prime(p):
            raise RangeError(f"characteristic {p} is not prime")
        if k < 1:
            raise RangeError("base degree must be >= 1")
        if e is not None and e < 2:
            raise RangeError("top degree must be >= 2")
        q = p ** k
        big = q ** e if e else q
        if big > MAX_FIELD_SIZE:
            raise RangeError(f"field size {big} exceeds cap {MAX_FIELD_SIZE}")
        self.p, self.k, self.e = p, k, e
        if base_irreducible is None:
            base_irreducible = (0, 1) if k == 1 else find_irreducible(prime_field(p), k)
        base_irreducible = tuple(int(c) for c in base_irreducible)
        if len(base_irreducible) != k + 1 or base_irreducible[-1] != 1:
            raise RangeError("base irreducible must be monic of degree k")
        if any(not (0 <= c < p) for c in base_irreducible):
            raise RangeError("base irreducible coefficients must lie in [0, p)")
        self.base_irreducible = base_irreducible
        self.base = prime_field(p) if k == 1 else extension_field(prime_field(p), base_irreducible)
        if e is None:
            self.top_irreducible = None
            self.top = None
        else:
            if top_irreducible is None:
                top_irreducible = find_irreducible(self.base, e)
            top_irreducible = tuple(int(c) for c in top_irreducible)
            if len(top_irreducible) != e + 1 or top_irreducible[-1] != 1:
                raise RangeError("top irreducible must be monic of degree e")
            if any(not (0 <= c < q) for c in top_irreducible):
                raise RangeError("top irreducible coefficients must be base-field ranks")
            self.top_irreducible = top_irreducible
            self.top = extension_field(self.base, top_irreducible, is_top=True)

    @property
    def q(self) -> int:
        return self.p ** self.k

    @property
    def Q(self) -> int:
        return self.q ** self.e if self.e else self.q

    @property
    def field(self) -> Field:
        """The working level: the tower top when present, else the base."""
        return self.top if self.top is not None else self.base

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        text = text.strip()
        top_part = None
        if "|" in text:
            text, top_part = text.split("|", 1)
        if "^" in text:
            p_str, rest = text.split("^", 1)
            if ":" not in rest:
                raise ValueError(f"malformed field spec: missing ':' in {text!r}")
            k_str, coeff_str = rest.split(":", 1)
            p, k = int(p_str), int(k_str)
            base_irr = tuple(int(c) for c in coeff_str.split(","))
        else:
            p, k, base_irr = int(text), 1, None
        e = top_irr = None
        if top_part is not None:
            if ":" not in top_part:
                raise ValueError(f"malformed field spec: missing ':' in {top_part!r}")
            e_str, coeff_str = top_part.split(":", 1)
            e = int(e_str)
            top_irr = tuple(int(c) for c in coeff_str.split(","))
        return cls(p, k, base_irr, e, top_irr)

    def __str__(self) -> str:
        if self.k == 1 and self.e is None and self.base_irreducible == (0, 1):
            return str(self.p)
        out = f"{self.p}^{self.k}:" + ",".join(str(c) for c in self.base_irreducible)
        if self.e is not None:
            out += f"|{self.e}:" + ",".join(str(c) for c in self.top_irreducible)
        return out

    def __repr__(self) -> str:
        return f"FieldSpec({self})"


@functools.lru_cache(maxsize=None)
def field_spec(text: str) -> FieldSpec:
    """Parse-and-cache helper; repeated specs share their Field objects."""
    return FieldSpec.parse(text)
