"""Hopf-algebra presentations of the additive group, the diagonal torus,
the lower-triangular Borel, and SL2, with group laws and homomorphisms.

Conventions.  A group scheme G is stored through its coordinate Hopf
algebra: comultiplication and antipode are given on generators, in one and
two disjoint copies of the generator set.  Copy k of generator ``g`` is the
variable ``g{k}`` (1-based); coordinate-ring elements with no copy index
use the bare generator names.

The Borel group comes in two coordinate systems: matrix coordinates
(a invertible, c) with the matrix [[a, 0], [c, 1/a]], and root-torus
coordinates (x, u invertible) for the factorization [[1,0],[x,1]] *
diag(u, 1/u).  Both are full Hopf presentations; conversion homomorphisms
are provided.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .errors import Sl2CohError, VerificationError
from .poly import Polynomial, PolyRing
from .rings import Ring, ZZ

GROUP_NAMES = ("Ga", "T", "B", "Bxu", "SL2")


@dataclass(frozen=True)
class GroupScheme:
    name: str
    ring: Ring
    gens: tuple
    laurent: tuple
    comul: dict = field(compare=False)      # gen -> Polynomial in 2 copies
    counit: dict = field(compare=False)     # gen -> int
    antipode: dict = field(compare=False)   # gen -> Polynomial in 1 copy (bare names)
    matrix_form: tuple = field(compare=False, default=None)  # 2x2 bare-name entries
    nf_kind: str = "none"

    # -- variable bookkeeping ---------------------------------------------

    def copy_name(self, gen: str, k: int) -> str:
        return f"{gen}{k}"

    def bare_ring(self) -> PolyRing:
        return _bare_ring(self)

    def copy_ring(self, n: int) -> PolyRing:
        return _copy_ring(self, n)

    def gen_in_copy(self, gen: str, k: int, n: int) -> Polynomial:
        return self.copy_ring(n).gen(self.copy_name(gen, k))

    def into_copy(self, f: Polynomial, k: int, n: int) -> Polynomial:
        """Embed a bare-name coordinate polynomial into copy k of n."""
        mapping = {g: self.copy_name(g, k) for g in self.gens}
        return f.rename_variables(mapping, self.copy_ring(n))

    # -- normal form --------------------------------------------------------

    def normal_form(self, f: Polynomial) -> Polynomial:
        if self.nf_kind != "sl2":
            return f
        return _sl2_normal_form(self, f)

    # -- base change ----------------------------------------------------------

    def base_change(self, ring: Ring) -> "GroupScheme":
        if ring == self.ring:
            return self
        return make_group(self.name, ring)

    def __repr__(self):
        return f"<group {self.name} over {self.ring}>"


def _bare_ring(g: GroupScheme) -> PolyRing:
    key = (g.name, g.ring, 0)
    cached = _RING_CACHE.get(key)
    if cached is None:
        cached = PolyRing(g.gens, g.laurent, g.ring)
        _RING_CACHE[key] = cached
    return cached


def _copy_ring(g: GroupScheme, n: int) -> PolyRing:
    key = (g.name, g.ring, n)
    cached = _RING_CACHE.get(key)
    if cached is None:
        names = [f"{gen}{k}" for k in range(1, n + 1) for gen in g.gens]
        flags = list(g.laurent) * n
        cached = PolyRing(names, flags, g.ring)
        _RING_CACHE[key] = cached
    return cached


_RING_CACHE: dict = {}
_LAW_CACHE: dict = {}


def _sl2_normal_form(g: GroupScheme, f: Polynomial) -> Polynomial:
    """Rewrite a*d -> 1 + b*c in every variable copy until none remains."""
    pring = f.pring
    # locate (a, b, c, d) index quadruples per copy present in this ring
    quads = []
    idx = pring._index
    k = 1
    while f"a{k}" in idx:
        quads.append((idx[f"a{k}"], idx[f"b{k}"], idx[f"c{k}"], idx[f"d{k}"]))
        k += 1
    if not quads and all(n in idx for n in "abcd"):
        quads.append((idx["a"], idx["b"], idx["c"], idx["d"]))
    out = pring.zero()
    normalize = pring.ring.normalize
    acc: dict = {}
    for exps, coeff in f.terms.items():
        exps = list(exps)
        factors = []  # (b_index, c_index, multiplicity)
        for ia, ib, ic, id_ in quads:
            t = min(exps[ia], exps[id_])
            if t > 0:
                exps[ia] -= t
                exps[id_] -= t
                factors.append((ib, ic, t))
        if not factors:
            key = tuple(exps)
            v = normalize(acc.get(key, 0) + coeff)
            if v:
                acc[key] = v
            elif key in acc:
                del acc[key]
            continue
        # expand coeff * prod (1 + b c)^t on top of the reduced monomial
        expansion = {tuple(exps): coeff}
        for ib, ic, t in factors:
            new = {}
            for key, c0 in expansion.items():
                for i in range(t + 1):
                    k2 = list(key)
                    k2[ib] += i
                    k2[ic] += i
                    k2 = tuple(k2)
                    new[k2] = new.get(k2, 0) + c0 * comb(t, i)
            expansion = new
        for key, c0 in expansion.items():
            v = normalize(acc.get(key, 0) + c0)
            if v:
                acc[key] = v
            elif key in acc:
                del acc[key]
    return Polynomial._make(pring, acc)


# -- construction of the four groups ---------------------------------------


def make_group(name: str, ring: Ring = ZZ) -> GroupScheme:
    """Build a group scheme presentation and verify its Hopf axioms."""
    if name == "Ga":
        g = _build_ga(ring)
    elif name == "T":
        g = _build_torus(ring)
    elif name == "B":
        g = _build_borel_ac(ring)
    elif name == "Bxu":
        g = _build_borel_xu(ring)
    elif name == "SL2":
        g = _build_sl2(ring)
    else:
        raise Sl2CohError(f"unknown group {name!r}; expected one of {GROUP_NAMES}")
    verify_hopf_axioms(g)
    return g


def _build_ga(ring: Ring) -> GroupScheme:
    gens = ("X",)
    r2 = PolyRing(("X1", "X2"), ring=ring)
    r1 = PolyRing(gens, ring=ring)
    comul = {"X": r2.gen("X1") + r2.gen("X2")}
    antipode = {"X": -r1.gen("X")}
    return GroupScheme("Ga", ring, gens, (False,), comul, {"X": 0}, antipode)


def _build_torus(ring: Ring) -> GroupScheme:
    gens = ("u",)
    r2 = PolyRing(("u1", "u2"), (True, True), ring)
    r1 = PolyRing(gens, (True,), ring)
    comul = {"u": r2.gen("u1") * r2.gen("u2")}
    antipode = {"u": r1.monomial({"u": -1})}
    matrix = ((r1.gen("u"), r1.zero()), (r1.zero(), r1.monomial({"u": -1})))
    return GroupScheme("T", ring, gens, (True,), comul, {"u": 1}, antipode,
                       matrix_form=matrix)


def _build_borel_ac(ring: Ring) -> GroupScheme:
    gens = ("a", "c")
    flags = (True, False)
    r2 = PolyRing(("a1", "c1", "a2", "c2"), (True, False, True, False), ring)
    r1 = PolyRing(gens, flags, ring)
    a1, c1 = r2.gen("a1"), r2.gen("c1")
    a2, c2 = r2.gen("a2"), r2.gen("c2")
    comul = {"a": a1 * a2,
             "c": c1 * a2 + r2.monomial({"a1": -1}) * c2}
    antipode = {"a": r1.monomial({"a": -1}), "c": -r1.gen("c")}
    matrix = ((r1.gen("a"), r1.zero()),
              (r1.gen("c"), r1.monomial({"a": -1})))
    return GroupScheme("B", ring, gens, flags, comul, {"a": 1, "c": 0}, antipode,
                       matrix_form=matrix)


def _build_borel_xu(ring: Ring) -> GroupScheme:
    gens = ("x", "u")
    flags = (False, True)
    r2 = PolyRing(("x1", "u1", "x2", "u2"), (False, True, False, True), ring)
    r1 = PolyRing(gens, flags, ring)
    comul = {"x": r2.gen("x1") + r2.monomial({"u1": -2}) * r2.gen("x2"),
             "u": r2.gen("u1") * r2.gen("u2")}
    antipode = {"x": -(r1.monomial({"u": 2}) * r1.gen("x")),
                "u": r1.monomial({"u": -1})}
    matrix = ((r1.gen("u"), r1.zero()),
              (r1.gen("x") * r1.gen("u"), r1.monomial({"u": -1})))
    return GroupScheme("Bxu", ring, gens, flags, comul, {"x": 0, "u": 1},
                       antipode, matrix_form=matrix)


def _build_sl2(ring: Ring) -> GroupScheme:
    gens = ("a", "b", "c", "d")
    flags = (False,) * 4
    names2 = tuple(f"{g}{k}" for k in (1, 2) for g in gens)
    r2 = PolyRing(names2, ring=ring)
    r1 = PolyRing(gens, ring=ring)

    def m2(i, j):  # matrix-product comultiplication entry
        g1 = [r2.gen(f"{g}1") for g in gens]
        g2 = [r2.gen(f"{g}2") for g in gens]
        m1 = ((g1[0], g1[1]), (g1[2], g1[3]))
        mm = ((g2[0], g2[1]), (g2[2], g2[3]))
        return m1[i][0] * mm[0][j] + m1[i][1] * mm[1][j]

    comul = {"a": m2(0, 0), "b": m2(0, 1), "c": m2(1, 0), "d": m2(1, 1)}
    antipode = {"a": r1.gen("d"), "b": -r1.gen("b"),
                "c": -r1.gen("c"), "d": r1.gen("a")}
    matrix = ((r1.gen("a"), r1.gen("b")), (r1.gen("c"), r1.gen("d")))
    return GroupScheme("SL2", ring, gens, flags, comul,
                       {"a": 1, "b": 0, "c": 0, "d": 1}, antipode,
                       matrix_form=matrix, nf_kind="sl2")


# -- Hopf axiom verification -------------------------------------------------


def verify_hopf_axioms(g: GroupScheme) -> None:
    """Coassociativity, counit and antipode identities on all generators."""
    r1, r2, r3 = g.bare_ring(), g.copy_ring(2), g.copy_ring(3)
    nf = g.normal_form
    for gen in g.gens:
        delta = g.comul[gen]
        # (Delta x id) Delta vs (id x Delta) Delta in three copies
        left = delta.substitute(
            {g.copy_name(h, 1): g.comul[h].rename_variables(
                {g.copy_name(k, 1): g.copy_name(k, 1) for k in g.gens}
                | {g.copy_name(k, 2): g.copy_name(k, 2) for k in g.gens}, r3)
             for h in g.gens}
            | {g.copy_name(h, 2): g.gen_in_copy(h, 3, 3) for h in g.gens}, r3)
        right = delta.substitute(
            {g.copy_name(h, 1): g.gen_in_copy(h, 1, 3) for h in g.gens}
            | {g.copy_name(h, 2): g.comul[h].rename_variables(
                {g.copy_name(k, 1): g.copy_name(k, 2) for k in g.gens}
                | {g.copy_name(k, 2): g.copy_name(k, 3) for k in g.gens}, r3)
               for h in g.gens}, r3)
        if nf(left - right):
            raise VerificationError(f"{g.name}: comultiplication of {gen} "
                                    f"is not coassociative", witness=left - right)
        # counit on either tensor leg
        eps_left = delta.substitute(
            {g.copy_name(h, 1): r1.constant(g.counit[h]) for h in g.gens}
            | {g.copy_name(h, 2): r1.gen(h) for h in g.gens}, r1)
        eps_right = delta.substitute(
            {g.copy_name(h, 1): r1.gen(h) for h in g.gens}
            | {g.copy_name(h, 2): r1.constant(g.counit[h]) for h in g.gens}, r1)
        gen_poly = r1.gen(gen)
        if nf(eps_left - gen_poly) or nf(eps_right - gen_poly):
            raise VerificationError(f"{g.name}: counit axiom fails for {gen}")
        # m (S x id) Delta = counit = m (id x S) Delta
        s_left = delta.substitute(
            {g.copy_name(h, 1): g.antipode[h] for h in g.gens}
            | {g.copy_name(h, 2): r1.gen(h) for h in g.gens}, r1)
        s_right = delta.substitute(
            {g.copy_name(h, 1): r1.gen(h) for h in g.gens}
            | {g.copy_name(h, 2): g.antipode[h] for h in g.gens}, r1)
        target = r1.constant(g.counit[gen])
        if nf(s_left - target) or nf(s_right - target):
            raise VerificationError(f"{g.name}: antipode axiom fails for {gen}")


# -- group laws ---------------------------------------------------------------


def group_law(g: GroupScheme, n: int) -> dict:
    """Coordinates of a product of n generic points, as normal-form
    polynomials in n disjoint generator copies (left-bracketed composition)."""
    if n < 1:
        raise ValueError("group_law needs n >= 1")
    key = (g.name, g.ring, n)
    cached = _LAW_CACHE.get(key)
    if cached is not None:
        return cached
    rn = g.copy_ring(n)
    if n == 1:
        law = {gen: g.gen_in_copy(gen, 1, 1) for gen in g.gens}
    else:
        prev = group_law(g, n - 1)
        law = {}
        for gen in g.gens:
            # substitute the (n-1)-fold product into the first comul slot
            images = {g.copy_name(h, 1): prev[h].rename_variables({}, rn)
                      for h in g.gens}
            images |= {g.copy_name(h, 2): g.gen_in_copy(h, n, n) for h in g.gens}
            law[gen] = g.normal_form(g.comul[gen].substitute(images, rn))
    _LAW_CACHE[key] = law
    return law


# -- homomorphisms -------------------------------------------------------------


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism source -> target stored by its coordinate pullback."""

    source: GroupScheme
    target: GroupScheme
    pullback: dict = field(compare=False)  # target gen -> bare source Polynomial

    def pull(self, f: Polynomial) -> Polynomial:
        """Apply the pullback to a bare-name coordinate polynomial."""
        ring = self.source.bare_ring()
        return self.source.normal_form(
            f.substitute({g: self.pullback[g] for g in self.target.gens}, ring))

    def pull_into_copy(self, f: Polynomial, k: int, n: int) -> Polynomial:
        return self.source.into_copy(self.pull(f), k, n)

    def verify(self) -> None:
        """Comultiplication and counit compatibility on target generators."""
        s, t = self.source, self.target
        r2 = s.copy_ring(2)
        for gen in t.gens:
            lhs = s.normal_form(self.pull(t.bare_ring().gen(gen)).substitute(
                {h: s.comul[h] for h in s.gens}, r2))
            rhs = s.normal_form(t.comul[gen].substitute(
                {t.copy_name(h, 1): self.pull_into_copy(
                    t.bare_ring().gen(h), 1, 2) for h in t.gens}
                | {t.copy_name(h, 2): self.pull_into_copy(
                    t.bare_ring().gen(h), 2, 2) for h in t.gens}, r2))
            if s.normal_form(lhs - rhs):
                raise VerificationError(
                    f"pullback of {gen} is not compatible with comultiplication",
                    witness=lhs - rhs)
            eps = self.pull(t.bare_ring().gen(gen)).substitute(
                {h: s.bare_ring().constant(s.counit[h]) for h in s.gens},
                s.bare_ring())
            if eps != s.bare_ring().constant(t.counit[gen]):
                raise VerificationError(f"pullback of {gen} breaks the counit")

    def __repr__(self):
        return f"<hom {self.source.name} -> {self.target.name}>"


def root_hom(ga: GroupScheme, sl2: GroupScheme) -> GroupHom:
    """The root homomorphism onto the lower-triangular unipotent subgroup."""
    r = ga.bare_ring()
    hom = GroupHom(ga, sl2, {"a": r.one(), "b": r.zero(),
                             "c": r.gen("X"), "d": r.one()})
    hom.verify()
    return hom


def torus_inclusion(t: GroupScheme, sl2: GroupScheme) -> GroupHom:
    r = t.bare_ring()
    hom = GroupHom(t, sl2, {"a": r.gen("u"), "b": r.zero(), "c": r.zero(),
                            "d": r.monomial({"u": -1})})
    hom.verify()
    return hom


def borel_inclusion(b: GroupScheme, sl2: GroupScheme) -> GroupHom:
    r = b.bare_ring()
    hom = GroupHom(b, sl2, {"a": r.gen("a"), "b": r.zero(), "c": r.gen("c"),
                            "d": r.monomial({"a": -1})})
    hom.verify()
    return hom


def borel_xu_inclusion(bxu: GroupScheme, sl2: GroupScheme) -> GroupHom:
    """x_alpha(x) * diag(u, 1/u) as a point of SL2."""
    r = bxu.bare_ring()
    hom = GroupHom(bxu, sl2, {"a": r.gen("u"), "b": r.zero(),
                              "c": r.gen("x") * r.gen("u"),
                              "d": r.monomial({"u": -1})})
    hom.verify()
    return hom


def borel_coordinate_change(bxu: GroupScheme, b: GroupScheme) -> GroupHom:
    """Bxu -> B, i.e. a = u and c = x*u on coordinates."""
    r = bxu.bare_ring()
    hom = GroupHom(bxu, b, {"a": r.gen("u"), "c": r.gen("x") * r.gen("u")})
    hom.verify()
    return hom


def borel_coordinate_change_inverse(b: GroupScheme, bxu: GroupScheme) -> GroupHom:
    """B -> Bxu, i.e. u = a and x = c/a on coordinates."""
    r = b.bare_ring()
    hom = GroupHom(b, bxu, {"u": r.gen("a"),
                            "x": r.gen("c") * r.monomial({"a": -1})})
    hom.verify()
    return hom


def torus_to_borel_xu(t: GroupScheme, bxu: GroupScheme) -> GroupHom:
    r = t.bare_ring()
    hom = GroupHom(t, bxu, {"x": r.zero(), "u": r.gen("u")})
    hom.verify()
    return hom


def ga_to_borel_xu(ga: GroupScheme, bxu: GroupScheme) -> GroupHom:
    r = ga.bare_ring()
    hom = GroupHom(ga, bxu, {"x": r.gen("X"), "u": r.one()})
    hom.verify()
    return hom


# -- torus conjugation weights -----------------------------------------------


def matrix_conjugation(g: GroupScheme, m: tuple) -> list:
    """g * M * g^{-1} for a constant 2x2 integer matrix M, entries in k[G]."""
    if g.matrix_form is None:
        raise Sl2CohError(f"{g.name} has no matrix form")
    r = g.bare_ring()
    gm = g.matrix_form
    # inverse matrix = antipode applied entrywise to the matrix form
    ginv = tuple(tuple(entry.substitute({h: g.antipode[h] for h in g.gens}, r)
                       if entry else entry for entry in row) for row in gm)
    mid = [[r.constant(m[i][j]) for j in range(2)] for i in range(2)]
    left = [[sum((gm[i][k] * mid[k][j] for k in range(2)), r.zero())
             for j in range(2)] for i in range(2)]
    out = [[g.normal_form(sum((left[i][k] * ginv[k][j] for k in range(2)),
                              r.zero()))
            for j in range(2)] for i in range(2)]
    return out


def torus_weight_of_matrix(m: tuple, ring: Ring = ZZ) -> int:
    """The character exponent w with  t M t^{-1} = u^w M  for t = diag(u, 1/u).

    Raises if M is not a weight vector under this conjugation.
    """
    t = make_group("T", ring)
    conj = matrix_conjugation(t, m)
    weight = None
    r = t.bare_ring()
    for i in range(2):
        for j in range(2):
            if m[i][j] == 0:
                if conj[i][j]:
                    raise Sl2CohError("matrix is not a torus weight vector")
                continue
            expected_exp = None
            if not conj[i][j].is_monomial():
                raise Sl2CohError("matrix is not a torus weight vector")
            (exps, coeff), = conj[i][j].terms.items()
            if coeff != ring.normalize(m[i][j]):
                raise Sl2CohError("matrix is not a torus weight vector")
            expected_exp = exps[r.index("u")]
            if weight is None:
                weight = expected_exp
            elif weight != expected_exp:
                raise Sl2CohError("matrix entries have inconsistent weights")
    return 0 if weight is None else weight


def torus_weight_of_root(ring: Ring = ZZ) -> int:
    """Conjugation weight of the lower-triangular root line (equals -2)."""
    return torus_weight_of_matrix(((0, 0), (1, 0)), ring)
