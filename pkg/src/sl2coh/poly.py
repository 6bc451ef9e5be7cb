"""Sparse multivariate Laurent polynomials over an exact scalar ring.

Terms are a dict mapping exponent tuples to nonzero integer coefficients
(reduced into [0, m) over Z/m).  A variable may be flagged Laurent, in
which case negative exponents are allowed in its slot.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import (
    ExactDivisionError,
    LaurentExponentError,
    MissingVariableError,
    RingMismatchError,
)
from .rings import Ring, Scalar, ZZ, Zmod


class PolyRing:
    """A fixed ordered variable list with Laurent flags and a scalar ring."""

    __slots__ = ("names", "laurent", "ring", "_index")

    def __init__(self, names: Iterable[str], laurent: Iterable[bool] | None = None,
                 ring: Ring = ZZ):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        if laurent is None:
            self.laurent = (False,) * len(self.names)
        else:
            self.laurent = tuple(bool(b) for b in laurent)
        if len(self.laurent) != len(self.names):
            raise ValueError("laurent flags must match variable count")
        self.ring = ring
        self._index = {n: i for i, n in enumerate(self.names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise MissingVariableError(f"{name!r} is not a variable of {self}") from None

    def zero(self) -> "Polynomial":
        return Polynomial._make(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        c = self.ring.normalize(c)
        if c == 0:
            return self.zero()
        return Polynomial._make(self, {(0,) * self.nvars: c})

    def gen(self, name: str) -> "Polynomial":
        exps = [0] * self.nvars
        exps[self.index(name)] = 1
        return Polynomial._make(self, {tuple(exps): 1})

    def monomial(self, exps: Mapping[str, int] | tuple, coeff: int = 1) -> "Polynomial":
        if isinstance(exps, Mapping):
            vec = [0] * self.nvars
            for name, e in exps.items():
                vec[self.index(name)] = e
            exps = tuple(vec)
        return Polynomial(self, {tuple(exps): coeff})

    def from_terms(self, terms: Mapping[tuple, int]) -> "Polynomial":
        return Polynomial(self, terms)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.names == other.names
                and self.laurent == other.laurent and self.ring == other.ring)

    def __hash__(self):
        return hash((self.names, self.laurent, self.ring))

    def __repr__(self):
        flags = "".join("L" if b else "." for b in self.laurent)
        return f"PolyRing({','.join(self.names)} [{flags}] over {self.ring})"


class Polynomial:
    """Immutable sparse polynomial; do not mutate ``terms`` after creation."""

    __slots__ = ("pring", "terms")

    def __init__(self, pring: PolyRing, terms: Mapping[tuple, int]):
        normalize = pring.ring.normalize
        clean = {}
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != pring.nvars:
                raise ValueError(f"exponent vector {exps} has wrong length for {pring}")
            for e, flag, name in zip(exps, pring.laurent, pring.names):
                if e < 0 and not flag:
                    raise LaurentExponentError(
                        f"negative exponent {e} on non-Laurent variable {name}")
            c = normalize(c)
            if c:
                clean[exps] = c
        self.pring = pring
        self.terms = clean

    @classmethod
    def _make(cls, pring: PolyRing, terms: dict) -> "Polynomial":
        # internal fast path: terms already normalized and validated
        self = object.__new__(cls)
        self.pring = pring
        self.terms = terms
        return self

    # -- basic queries ----------------------------------------------------

    @property
    def ring(self) -> Ring:
        return self.pring.ring

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, name: str) -> int:
        i = self.pring.index(name)
        return max((e[i] for e in self.terms), default=0)

    def coefficient(self, exps: Mapping[str, int] | tuple) -> Scalar:
        if isinstance(exps, Mapping):
            vec = [0] * self.pring.nvars
            for name, e in exps.items():
                vec[self.pring.index(name)] = e
            exps = tuple(vec)
        return Scalar(self.ring, self.terms.get(tuple(exps), 0))

    def constant_term(self) -> Scalar:
        return Scalar(self.ring, self.terms.get((0,) * self.pring.nvars, 0))

    def variables_used(self) -> set[str]:
        used = set()
        for exps in self.terms:
            for name, e in zip(self.pring.names, exps):
                if e:
                    used.add(name)
        return used

    # -- arithmetic --------------------------------------------------------

    def _check_ring(self, other: "Polynomial") -> None:
        if self.pring != other.pring:
            raise RingMismatchError(
                f"cannot combine polynomials over {self.pring} and {other.pring}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_ring(other)
        normalize = self.ring.normalize
        out = dict(self.terms)
        for exps, c in other.terms.items():
            v = normalize(out.get(exps, 0) + c)
            if v:
                out[exps] = v
            elif exps in out:
                del out[exps]
        return Polynomial._make(self.pring, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check_ring(other)
        normalize = self.ring.normalize
        out = dict(self.terms)
        for exps, c in other.terms.items():
            v = normalize(out.get(exps, 0) - c)
            if v:
                out[exps] = v
            elif exps in out:
                del out[exps]
        return Polynomial._make(self.pring, out)

    def __neg__(self) -> "Polynomial":
        normalize = self.ring.normalize
        return Polynomial._make(self.pring,
                                {e: normalize(-c) for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check_ring(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        modulus = self.ring.modulus
        out: dict = {}
        get = out.get
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                key = tuple(map(int.__add__, e1, e2))
                out[key] = get(key, 0) + c1 * c2
        if modulus is None:
            out = {e: c for e, c in out.items() if c}
        else:
            out = {e: v for e, c in out.items() if (v := c % modulus)}
        return Polynomial._make(self.pring, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: int) -> "Polynomial":
        c = self.ring.normalize(c)
        if c == 0:
            return self.pring.zero()
        normalize = self.ring.normalize
        out = {}
        for exps, v in self.terms.items():
            w = normalize(v * c)
            if w:
                out[exps] = w
        return Polynomial._make(self.pring, out)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            return self._invert_monomial(-n)
        result = self.pring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n > 1
            n >>= 1
            if base_needed and n:
                base = base * base
        return result

    def _invert_monomial(self, n: int) -> "Polynomial":
        if len(self.terms) != 1:
            raise ExactDivisionError(f"cannot invert non-monomial {self}")
        (exps, c), = self.terms.items()
        cinv = self.ring.invert(c)
        inv_exps = tuple(-e for e in exps)
        return Polynomial(self.pring, {inv_exps: cinv}) ** n

    # -- ring changes --------------------------------------------------------

    def reduce_mod(self, m: int) -> "Polynomial":
        """Reduce an integer polynomial into the same variables over Z/m."""
        if not self.ring.is_integers:
            raise RingMismatchError(f"reduce_mod requires ZZ coefficients, got {self.ring}")
        if m < 2:
            raise ValueError(f"modulus must be >= 2, got {m}")
        return self.change_ring(Zmod(m))

    def change_ring(self, ring: Ring) -> "Polynomial":
        """Push coefficients through ZZ -> Z/m or Z/m -> Z/m' with m' | m."""
        if ring == self.ring:
            return self
        if not self.ring.is_integers:
            if ring.is_integers or self.ring.modulus % ring.modulus != 0:
                raise RingMismatchError(f"no reduction {self.ring} -> {ring}")
        target = PolyRing(self.pring.names, self.pring.laurent, ring)
        out = {}
        for exps, c in self.terms.items():
            v = ring.normalize(c)
            if v:
                out[exps] = v
        return Polynomial._make(target, out)

    def exact_div(self, n: int) -> "Polynomial":
        """Divide every coefficient by n exactly; reports the bad monomial."""
        if n == 0:
            raise ExactDivisionError("division by zero")
        if not self.ring.is_integers:
            raise RingMismatchError("exact_div is defined over ZZ only")
        out = {}
        for exps, c in self.terms.items():
            if c % n != 0:
                mono = _render_monomial(self.pring, exps)
                raise ExactDivisionError(
                    f"coefficient {c} of {mono} is not divisible by {n}",
                    monomial=mono)
            out[exps] = c // n
        return Polynomial._make(self.pring, out)

    # -- substitution --------------------------------------------------------

    def substitute(self, images: Mapping[str, "Polynomial"],
                   target: PolyRing | None = None) -> "Polynomial":
        """Simultaneous substitution; every used variable needs an image.

        A variable occurring with a negative exponent must be sent to an
        invertible monomial.
        """
        if target is None:
            for img in images.values():
                target = img.pring
                break
            else:
                raise MissingVariableError("empty substitution with no target ring")
        img_list: list[Polynomial | None] = [None] * self.pring.nvars
        for name, img in images.items():
            if img.pring != target:
                raise RingMismatchError(
                    f"image of {name} lives in {img.pring}, expected {target}")
            if name in self.pring._index:
                img_list[self.pring.index(name)] = img

        nt = target.nvars
        zero_exps = (0,) * nt
        normalize = target.ring.normalize
        acc: dict = {}
        pow_cache: dict[tuple[int, int], Polynomial] = {}

        def power(i: int, e: int) -> Polynomial:
            key = (i, e)
            got = pow_cache.get(key)
            if got is None:
                got = img_list[i] ** e
                pow_cache[key] = got
            return got

        for exps, c in self.terms.items():
            mono = list(zero_exps)
            coeff = c
            factors = []
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                img = img_list[i]
                if img is None:
                    raise MissingVariableError(
                        f"no image provided for variable {self.pring.names[i]!r}")
                if img.is_monomial():
                    (iexps, ic), = img.terms.items()
                    if e < 0:
                        ic = target.ring.invert(ic)
                        coeff *= ic ** (-e) if target.ring.is_integers else \
                            normalize(pow(ic, -e, target.ring.modulus))
                        for k, ie in enumerate(iexps):
                            mono[k] += e * ie
                    else:
                        coeff *= ic ** e
                        for k, ie in enumerate(iexps):
                            mono[k] += e * ie
                elif e < 0:
                    raise LaurentExponentError(
                        f"negative power of {self.pring.names[i]!r} needs a monomial image")
                else:
                    factors.append(power(i, e))
            coeff = normalize(coeff)
            if not coeff:
                continue
            base = Polynomial(target, {tuple(mono): coeff})
            for f in factors:
                base = base * f
            for e2, c2 in base.terms.items():
                v = normalize(acc.get(e2, 0) + c2)
                if v:
                    acc[e2] = v
                elif e2 in acc:
                    del acc[e2]
        return Polynomial._make(target, acc)

    def rename_variables(self, mapping: Mapping[str, str],
                         target: PolyRing) -> "Polynomial":
        """Cheap injective renaming into a (possibly larger) ring."""
        perm = []
        for name in self.pring.names:
            perm.append(target.index(mapping.get(name, name)))
        nt = target.nvars
        out = {}
        for exps, c in self.terms.items():
            vec = [0] * nt
            for i, e in enumerate(exps):
                if e:
                    vec[perm[i]] = e
            out[tuple(vec)] = c
        return Polynomial(target, out)

    # -- comparison and rendering ---------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.pring == other.pring
                and self.terms == other.terms)

    __hash__ = None

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        """Graded order, highest total degree first, then lex-descending."""
        return sorted(self.terms.items(),
                      key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = _render_monomial(self.pring, exps)
            if mono == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"<{self} over {self.ring}>"


def _render_monomial(pring: PolyRing, exps: tuple) -> str:
    pieces = []
    for name, e in zip(pring.names, exps):
        if e == 0:
            continue
        pieces.append(name if e == 1 else f"{name}^{e}")
    return "*".join(pieces) if pieces else "1"


def poly_substitute(f: Polynomial, images: Mapping[str, Polynomial],
                    target: PolyRing | None = None) -> Polynomial:
    return f.substitute(images, target)


def exact_div_scalar(f: Polynomial, n: int) -> Polynomial:
    return f.exact_div(n)


def reduce_mod(f: Polynomial, m: int) -> Polynomial:
    return f.reduce_mod(m)
