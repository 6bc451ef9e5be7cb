"""Finite free comodules over a group scheme's coordinate ring.

A comodule of rank r stores its coaction as sparse columns: column j is a
dict {i: rho_ij} with rho(e_j) = sum_i e_i (x) rho_ij, entries in the
bare-name coordinate ring of the group.  Columns are computed lazily and
cached, so large functor images only ever materialize the columns a
computation touches.

Divided powers use the multiset basis e^[lam] dual to the monomial basis
of the symmetric algebra on the dual: all structure constants are
integers (products of binomial coefficients), so every functor here is
defined over the integers.  Multisets are stored sparsely as sorted
tuples of (index, multiplicity) pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb

from .errors import RingMismatchError, Sl2CohError, VerificationError
from .groups import GroupHom, GroupScheme
from .intmat import IntegerLattice, saturation
from .poly import Polynomial, PolyRing
from .rings import Ring, ZZ, Zmod


# -- multiset utilities -------------------------------------------------------


def multiset_from_indices(indices) -> tuple:
    """Sorted (index, multiplicity) pairs from an iterable of indices."""
    counts: dict[int, int] = {}
    for i in indices:
        counts[i] = counts.get(i, 0) + 1
    return tuple(sorted(counts.items()))


def multiset_degree(label: tuple) -> int:
    return sum(m for _, m in label)


def multiset_add(a: tuple, b: tuple) -> tuple:
    counts = dict(a)
    for i, m in b:
        counts[i] = counts.get(i, 0) + m
    return tuple(sorted(counts.items()))


def multiset_merge_weight(a: tuple, b: tuple) -> int:
    """Product of binomials from multiplying divided monomials e^[a]*e^[b]."""
    cb = dict(b)
    w = 1
    for i, m in a:
        n = cb.get(i, 0)
        if n:
            w *= comb(m + n, m)
    return w


def divided_monomials(rank: int, degree: int) -> list[tuple]:
    """All degree-``degree`` multisets over ``range(rank)``, fixed order."""
    return [multiset_from_indices(ix)
            for ix in combinations_with_replacement(range(rank), degree)]


def _scaled(entry, k: int):
    """entry * k for int or Polynomial entries."""
    if isinstance(entry, Polynomial):
        return entry.scale(k)
    return entry * k


def _power_table(entry, top: int) -> list:
    """[entry^0 .. entry^top]; entry is an int or a Polynomial."""
    table = [1 if not isinstance(entry, Polynomial) else entry.pring.one()]
    for _ in range(top):
        table.append(table[-1] * entry)
    return table


def divided_power_of_vector(vec: dict, k: int) -> dict:
    """(sum_i v_i e_i)^[k] expanded in divided monomials.

    ``vec`` maps basis index -> coefficient (int or Polynomial); the result
    maps multiset labels -> coefficients, with no denominators.
    """
    support = sorted((i for i, c in vec.items() if c))
    if k == 0:
        one = 1
        for c in vec.values():
            if isinstance(c, Polynomial):
                one = c.pring.one()
                break
        return {(): one}
    powers = {i: _power_table(vec[i], k) for i in support}
    out: dict = {}

    def rec(pos: int, remaining: int, label: list, coeff):
        if pos == len(support) - 1:
            i = support[pos]
            c = coeff * powers[i][remaining] if remaining else coeff
            lab = tuple(label + ([(i, remaining)] if remaining else []))
            prev = out.get(lab)
            out[lab] = c if prev is None else prev + c
            return
        i = support[pos]
        for take in range(remaining + 1):
            c = coeff * powers[i][take] if take else coeff
            if isinstance(c, Polynomial) and not c:
                continue
            rec(pos + 1, remaining - take,
                label + ([(i, take)] if take else []), c)

    if not support:
        return {}
    start_one = powers[support[0]][0]
    rec(0, k, [], start_one)
    return {lab: c for lab, c in out.items() if c}


def symmetric_power_of_vector(vec: dict, k: int) -> dict:
    """(sum_i v_i x_i)^k in the symmetric algebra (multinomial weights)."""
    raw = divided_power_of_vector(vec, k)
    out = {}
    for lab, c in raw.items():
        w = _multinomial(k, [m for _, m in lab])
        v = _scaled(c, w) if w != 1 else c
        if v:
            out[lab] = v
    return out


def _multinomial(total: int, parts: list) -> int:
    w = 1
    rest = total
    for p in parts:
        w *= comb(rest, p)
        rest -= p
    return w


def dp_product(d1: dict, d2: dict) -> dict:
    """Product of divided-monomial expansions, with binomial weights."""
    out: dict = {}
    for l1, c1 in d1.items():
        for l2, c2 in d2.items():
            w = multiset_merge_weight(l1, l2)
            c = c1 * c2
            if w != 1:
                c = _scaled(c, w)
            if not c:
                continue
            lab = multiset_add(l1, l2)
            prev = out.get(lab)
            c = c if prev is None else prev + c
            if c:
                out[lab] = c
            elif lab in out:
                del out[lab]
    return out


def sym_product(d1: dict, d2: dict) -> dict:
    """Product of symmetric-monomial expansions (no extra weights)."""
    out: dict = {}
    for l1, c1 in d1.items():
        for l2, c2 in d2.items():
            c = c1 * c2
            if not c:
                continue
            lab = multiset_add(l1, l2)
            prev = out.get(lab)
            c = c if prev is None else prev + c
            if c:
                out[lab] = c
            elif lab in out:
                del out[lab]
    return out


# -- comodules ----------------------------------------------------------------


class Comodule:
    """A finite free module with a coaction over a group scheme."""

    def __init__(self, group: GroupScheme, labels, column_fn, name: str = "",
                 restricted_from=None, label_text=None):
        self.group = group
        self.ring = group.ring
        self.labels = tuple(labels)
        self.rank = len(self.labels)
        self.label_index = {lab: i for i, lab in enumerate(self.labels)}
        self._column_fn = column_fn
        self._columns: dict[int, dict[int, Polynomial]] = {}
        self.name = name or "M"
        self.restricted_from = restricted_from
        self._label_text = label_text

    @classmethod
    def from_columns(cls, group, labels, columns, name="", **kw):
        mod = cls(group, labels, None, name=name, **kw)
        mod._columns = dict(enumerate(columns))
        return mod

    def column(self, j: int) -> dict[int, Polynomial]:
        col = self._columns.get(j)
        if col is None:
            col = self._column_fn(j)
            self._columns[j] = col
        return col

    def entry(self, i: int, j: int) -> Polynomial:
        return self.column(j).get(i, self.group.bare_ring().zero())

    def label_text(self, i: int) -> str:
        if self._label_text is not None:
            return self._label_text(self.labels[i])
        return str(self.labels[i])

    def __repr__(self):
        return f"<comodule {self.name} rank {self.rank} over {self.group.name}/{self.ring}>"

    # -- verification ----------------------------------------------------------

    def verify_counit(self, columns=None) -> None:
        g = self.group
        bare = g.bare_ring()
        eps = {h: bare.constant(g.counit[h]) for h in g.gens}
        for j in columns if columns is not None else range(self.rank):
            col = self.column(j)
            for i in range(self.rank):
                val = col.get(i)
                val = val.substitute(eps, bare) if val is not None else bare.zero()
                want = bare.one() if i == j else bare.zero()
                if val != want:
                    raise VerificationError(
                        f"{self.name}: counit of coaction fails at ({i},{j})")

    def verify_coassociative(self, columns=None) -> None:
        g = self.group
        r2 = g.copy_ring(2)
        nf = g.normal_form
        comul_images = {h: g.comul[h] for h in g.gens}
        for j in columns if columns is not None else range(self.rank):
            col = self.column(j)
            lhs = {i: nf(p.substitute(comul_images, r2)) for i, p in col.items()}
            rhs: dict[int, Polynomial] = {}
            for k, p_kj in col.items():
                pk2 = g.into_copy(p_kj, 2, 2)
                for i, p_ik in self.column(k).items():
                    term = g.into_copy(p_ik, 1, 2) * pk2
                    if i in rhs:
                        rhs[i] = rhs[i] + term
                    else:
                        rhs[i] = term
            for i in set(lhs) | set(rhs):
                a = lhs.get(i, r2.zero())
                b = nf(rhs[i]) if i in rhs else r2.zero()
                if a != b:
                    raise VerificationError(
                        f"{self.name}: coaction not coassociative at ({i},{j})",
                        witness=a - b)

    def verify(self, columns=None) -> None:
        self.verify_counit(columns)
        self.verify_coassociative(columns)


def trivial_comodule(group: GroupScheme, rank: int = 1) -> Comodule:
    one = group.bare_ring().one()
    return Comodule(group, list(range(rank)),
                    lambda j: {j: one}, name=f"triv{rank}")


# -- the conjugation representation on 2x2 matrices ---------------------------

MATRIX_UNIT_SLOTS = ((0, 0), (1, 0), (0, 1), (1, 1))
GL2_LABELS = ("e11", "e21", "e12", "e22")
GL2_ALPHA = 1       # index of the lower-left matrix unit (the root line)
GL2_COALPHA = 2     # index of the upper-right matrix unit


def gl2_conjugation(sl2: GroupScheme) -> Comodule:
    """Rank-4 comodule of 2x2 matrices under conjugation g M g^{-1}."""
    if sl2.matrix_form is None:
        raise Sl2CohError("conjugation needs a matrix-form group")
    r = sl2.bare_ring()
    gm = sl2.matrix_form
    ginv = tuple(tuple(e.substitute({h: sl2.antipode[h] for h in sl2.gens}, r)
                       for e in row) for row in gm)

    def column(idx: int) -> dict[int, Polynomial]:
        k, l = MATRIX_UNIT_SLOTS[idx]
        col = {}
        for t, (i, j) in enumerate(MATRIX_UNIT_SLOTS):
            p = sl2.normal_form(gm[i][k] * ginv[l][j])
            if p:
                col[t] = p
        return col

    return Comodule(sl2, GL2_LABELS, column, name="gl2")


# -- functors ------------------------------------------------------------------


def _divided_label_text(parent: Comodule):
    def text(label):
        if not label:
            return "1"
        return "*".join(f"{parent.label_text(i)}^[{m}]" for i, m in label)
    return text


def _sym_label_text(parent: Comodule):
    def text(label):
        if not label:
            return "1"
        return "*".join(f"{parent.label_text(i)}^{m}" if m != 1
                        else parent.label_text(i) for i, m in label)
    return text


def div_power(parent: Comodule, m: int) -> Comodule:
    """m-th divided power: basis e^[lam], coaction with integral constants."""
    if m < 0:
        raise ValueError("divided power degree must be >= 0")
    labels = divided_monomials(parent.rank, m)
    one = parent.group.bare_ring().one()

    def column(j: int) -> dict[int, Polynomial]:
        lam = labels[j]
        result = {(): one}
        for i, mult in lam:
            factor = divided_power_of_vector(parent.column(i), mult)
            result = dp_product(result, factor)
        nf = parent.group.normal_form
        out = {}
        for lab, p in result.items():
            p = nf(p)
            if p:
                out[index[lab]] = p
        return out

    mod = Comodule(parent.group, labels, column,
                   name=f"G^{m}({parent.name})",
                   label_text=_divided_label_text(parent))
    index = mod.label_index
    return mod


def sym_power(parent: Comodule, m: int) -> Comodule:
    """m-th symmetric power on the monomial basis x^lam."""
    if m < 0:
        raise ValueError("symmetric power degree must be >= 0")
    labels = divided_monomials(parent.rank, m)
    one = parent.group.bare_ring().one()

    def column(j: int) -> dict[int, Polynomial]:
        lam = labels[j]
        result = {(): one}
        for i, mult in lam:
            factor = symmetric_power_of_vector(parent.column(i), mult)
            result = sym_product(result, factor)
        nf = parent.group.normal_form
        out = {}
        for lab, p in result.items():
            p = nf(p)
            if p:
                out[index[lab]] = p
        return out

    mod = Comodule(parent.group, labels, column,
                   name=f"S^{m}({parent.name})",
                   label_text=_sym_label_text(parent))
    index = mod.label_index
    return mod


def dual(parent: Comodule) -> Comodule:
    """Dual comodule: coaction is the antipode of the transpose."""
    g = parent.group
    r = g.bare_ring()
    anti = {h: g.antipode[h] for h in g.gens}

    def column(j: int) -> dict[int, Polynomial]:
        out = {}
        for i in range(parent.rank):
            p = parent.column(i).get(j)
            if p:
                q = g.normal_form(p.substitute(anti, r))
                if q:
                    out[i] = q
        return out

    return Comodule(g, [f"{lab}*" for lab in parent.labels], column,
                    name=f"{parent.name}#")


def tensor(left: Comodule, right: Comodule) -> Comodule:
    if left.group != right.group or left.ring != right.ring:
        raise RingMismatchError("tensor factors live over different groups")
    labels = [(a, b) for a in left.labels for b in right.labels]
    nr = right.rank

    def column(j: int) -> dict[int, Polynomial]:
        jl, jr = divmod(j, nr)
        out = {}
        nf = left.group.normal_form
        for il, pl in left.column(jl).items():
            for ir, pr in right.column(jr).items():
                p = nf(pl * pr)
                if p:
                    out[il * nr + ir] = p
        return out

    return Comodule(left.group, labels, column,
                    name=f"{left.name}(x){right.name}")


def direct_sum(left: Comodule, right: Comodule) -> Comodule:
    if left.group != right.group:
        raise RingMismatchError("summands live over different groups")
    labels = [("L", lab) for lab in left.labels] + \
             [("R", lab) for lab in right.labels]
    nl = left.rank

    def column(j: int) -> dict[int, Polynomial]:
        if j < nl:
            return dict(left.column(j))
        return {nl + i: p for i, p in right.column(j - nl).items()}

    return Comodule(left.group, labels, column,
                    name=f"{left.name}(+){right.name}")


def restrict(parent: Comodule, hom: GroupHom) -> Comodule:
    """Pull the coaction back along a group homomorphism into ``hom.source``."""
    if hom.target != parent.group:
        raise RingMismatchError(
            f"cannot restrict a {parent.group.name}-comodule along a hom into "
            f"{hom.target.name}")

    def column(j: int) -> dict[int, Polynomial]:
        out = {}
        for i, p in parent.column(j).items():
            q = hom.pull(p)
            if q:
                out[i] = q
        return out

    return Comodule(hom.source, parent.labels, column,
                    name=f"{parent.name}|{hom.source.name}",
                    restricted_from=(parent, hom),
                    label_text=parent._label_text)


def base_change(parent: Comodule, ring: Ring) -> Comodule:
    """Reduce all coaction entries into a smaller coefficient ring."""
    g = parent.group.base_change(ring)
    bare = g.bare_ring()

    def column(j: int) -> dict[int, Polynomial]:
        out = {}
        for i, p in parent.column(j).items():
            q = Polynomial(bare, p.change_ring(ring).terms)
            if q:
                out[i] = q
        return out

    restricted = None
    if parent.restricted_from is not None:
        rparent, rhom = parent.restricted_from
        bparent = base_change(rparent, ring)
        bhom = GroupHom(g, bparent.group,
                        {h: Polynomial(bare, rhom.pullback[h].change_ring(ring).terms)
                         for h in rhom.pullback})
        restricted = (bparent, bhom)
    return Comodule(g, parent.labels, column,
                    name=f"{parent.name} mod {ring.modulus}",
                    restricted_from=restricted,
                    label_text=parent._label_text)


def mod_p(parent: Comodule, p: int) -> Comodule:
    return base_change(parent, Zmod(p))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def frobenius_twist(parent: Comodule, s: int) -> Comodule:
    """Precompose with the p^s-power map: generator exponents scale by p^s."""
    p = parent.ring.modulus
    if p is None or not _is_prime(p):
        raise RingMismatchError(
            f"Frobenius twist needs a prime-field base, got {parent.ring}")
    if s < 0:
        raise ValueError("twist exponent must be >= 0")
    g = parent.group
    bare = g.bare_ring()
    q = p ** s
    images = {h: bare.monomial({h: q}) for h in g.gens}

    def column(j: int) -> dict[int, Polynomial]:
        out = {}
        for i, poly in parent.column(j).items():
            out[i] = poly.substitute(images, bare)
        return out

    return Comodule(g, parent.labels, column,
                    name=f"{parent.name}^({s})",
                    label_text=parent._label_text)


# -- comodule maps --------------------------------------------------------------


@dataclass
class ComoduleMap:
    """An equivariant map stored by sparse integer columns."""

    source: Comodule
    target: Comodule
    cols: dict = field(default_factory=dict)  # j -> {i: int}

    def apply_vector(self, vec: dict) -> dict:
        out: dict[int, int] = {}
        for j, c in vec.items():
            for i, a in self.cols.get(j, {}).items():
                v = out.get(i, 0) + a * c
                if v:
                    out[i] = v
                elif i in out:
                    del out[i]
        ring = self.target.ring
        return {i: ring.normalize(v) for i, v in out.items() if ring.normalize(v)}

    def matrix(self):
        rows = [[0] * self.source.rank for _ in range(self.target.rank)]
        for j, col in self.cols.items():
            for i, a in col.items():
                rows[i][j] = a
        return rows

    def compose(self, inner: "ComoduleMap") -> "ComoduleMap":
        """self o inner."""
        if inner.target.rank != self.source.rank:
            raise RingMismatchError("composition rank mismatch")
        cols = {}
        for j, col in inner.cols.items():
            out = self.apply_vector(col)
            if out:
                cols[j] = out
        return ComoduleMap(inner.source, self.target, cols)

    def verify_equivariance(self, columns=None) -> None:
        g = self.target.group
        if g != self.source.group:
            raise RingMismatchError("source and target over different groups")
        nf = g.normal_form
        zero = g.bare_ring().zero()
        for j in columns if columns is not None else range(self.source.rank):
            lhs: dict[int, Polynomial] = {}
            for k, a_kj in self.cols.get(j, {}).items():
                for i, rho in self.target.column(k).items():
                    t = rho.scale(a_kj)
                    lhs[i] = lhs[i] + t if i in lhs else t
            rhs: dict[int, Polynomial] = {}
            for l, rho in self.source.column(j).items():
                for i, a_il in self.cols.get(l, {}).items():
                    t = rho.scale(a_il)
                    rhs[i] = rhs[i] + t if i in rhs else t
            for i in set(lhs) | set(rhs):
                if nf(lhs.get(i, zero) - rhs.get(i, zero)):
                    raise VerificationError(
                        f"map is not equivariant at entry ({i},{j})")


def identity_map(m: Comodule) -> ComoduleMap:
    return ComoduleMap(m, m, {j: {j: 1} for j in range(m.rank)})


def gamma_composition_map(v: Comodule, m: int, n: int) -> ComoduleMap:
    """The natural map from the (m*n)-th divided power into the m-th divided
    power of the n-th, dual to multiplication of symmetric algebras.

    On a pure power e^[m*n] it gives (e^[n])^[m]; in general the matrix
    entry at (multiset M, lam) is 1 exactly when the multiset M of inner
    degree-n labels sums to lam.
    """
    if m < 1 or n < 1:
        raise ValueError("gamma_composition_map needs m, n >= 1")
    source = div_power(v, m * n)
    inner = div_power(v, n)
    target = div_power(inner, m)
    inner_dense = [_dense(lab, v.rank) for lab in inner.labels]

    def decompose(lam_dense, m_left, start):
        if m_left == 0:
            if not any(lam_dense):
                yield ()
            return
        for t in range(start, len(inner_dense)):
            nu = inner_dense[t]
            if all(l >= x for l, x in zip(lam_dense, nu)):
                rest = [l - x for l, x in zip(lam_dense, nu)]
                for tail in decompose(rest, m_left - 1, t):
                    yield (t,) + tail

    cols = {}
    for j, lam in enumerate(source.labels):
        col = {}
        for picks in decompose(_dense(lam, v.rank), m, 0):
            col[target.label_index[multiset_from_indices(picks)]] = 1
        cols[j] = col
    return ComoduleMap(source, target, cols)


def _dense(label: tuple, rank: int) -> list:
    vec = [0] * rank
    for i, m in label:
        vec[i] = m
    return vec


def twist_projection(vbar: Comodule, s: int) -> ComoduleMap:
    """Project the p^s-th divided power onto the s-th Frobenius twist.

    Pure divided powers e_i^[p^s] map to e_i; every mixed divided monomial
    maps to zero (its multinomial coefficient vanishes mod p).
    """
    p = vbar.ring.modulus
    if p is None or not _is_prime(p):
        raise RingMismatchError(
            f"twist projection needs a prime-field base, got {vbar.ring}")
    q = p ** s
    source = div_power(vbar, q)
    target = frobenius_twist(vbar, s)
    cols = {}
    for j, lam in enumerate(source.labels):
        if len(lam) == 1 and lam[0][1] == q:
            cols[j] = {lam[0][0]: 1}
        else:
            cols[j] = {}
    return ComoduleMap(source, target, cols)


def gamma_on_map(f: ComoduleMap, m: int) -> ComoduleMap:
    """The m-th divided power applied to an integer comodule map."""
    source = div_power(f.source, m)
    target = div_power(f.target, m)
    ring = f.target.ring
    cols = {}
    for j, lam in enumerate(source.labels):
        result = {(): 1}
        for i, mult in lam:
            img = f.cols.get(i, {})
            factor = divided_power_of_vector(img, mult)
            result = dp_product(result, factor)
            if not result:
                break
        col = {}
        for lab, c in result.items():
            c = ring.normalize(c)
            if c:
                col[target.label_index[lab]] = c
        cols[j] = col
    return ComoduleMap(source, target, cols)


def sym_on_map(f: ComoduleMap, m: int) -> ComoduleMap:
    """The m-th symmetric power applied to an integer comodule map."""
    source = sym_power(f.source, m)
    target = sym_power(f.target, m)
    ring = f.target.ring
    cols = {}
    for j, lam in enumerate(source.labels):
        result = {(): 1}
        for i, mult in lam:
            img = f.cols.get(i, {})
            factor = symmetric_power_of_vector(img, mult)
            result = sym_product(result, factor)
            if not result:
                break
        col = {}
        for lab, c in result.items():
            c = ring.normalize(c)
            if c:
                col[target.label_index[lab]] = c
        cols[j] = col
    return ComoduleMap(source, target, cols)


# -- subcomodules ----------------------------------------------------------------


def coaction_of_vector(m: Comodule, vec: dict) -> dict[int, Polynomial]:
    """rho(v) as {i: polynomial} for an integer coefficient vector."""
    out: dict[int, Polynomial] = {}
    for j, c in vec.items():
        if not c:
            continue
        for i, p in m.column(j).items():
            t = p.scale(c)
            if not t:
                continue
            out[i] = out[i] + t if i in out else t
    return {i: p for i, p in out.items() if p}


def monomial_coefficient_vectors(m: Comodule, rho: dict) -> dict:
    """Reorganize rho(v) by coordinate-ring monomial: monomial -> vector."""
    vectors: dict[tuple, list] = {}
    for i, p in rho.items():
        for exps, c in p.terms.items():
            vec = vectors.get(exps)
            if vec is None:
                vec = [0] * m.rank
                vectors[exps] = vec
            vec[i] = c
    return vectors


def sublattice_comodule(m: Comodule, rows) -> Comodule:
    """The comodule induced on the saturated row span; fails loudly if the
    span is not coaction-stable."""
    lattice = IntegerLattice.from_rows(m.rank, rows)
    basis = lattice.basis_rows()

    def column(t: int) -> dict[int, Polynomial]:
        vec = {j: c for j, c in enumerate(basis[t]) if c}
        rho = coaction_of_vector(m, vec)
        bare = m.group.bare_ring()
        entries: dict[int, Polynomial] = {}
        for exps, coeff_vec in monomial_coefficient_vectors(m, rho).items():
            coords = lattice.coordinates_of(coeff_vec)
            if coords is None:
                raise VerificationError(
                    f"{m.name}: span is not coaction-stable "
                    f"(monomial coefficient vector escapes the lattice)")
            mono = Polynomial(bare, {exps: 1})
            for s, c in enumerate(coords):
                if c:
                    t2 = mono.scale(c)
                    entries[s] = entries[s] + t2 if s in entries else t2
        return {s: p for s, p in entries.items() if p}

    return Comodule(m.group, [f"w{t}" for t in range(len(basis))], column,
                    name=f"sub({m.name})")


def generated_subcomodule(m: Comodule, vec: dict) -> tuple[IntegerLattice, Comodule]:
    """Saturated span of the coefficient vectors of rho(v), with its induced
    comodule structure; v itself always lies in the result."""
    if not m.ring.is_integers:
        raise RingMismatchError("generated subcomodules are computed over ZZ")
    rho = coaction_of_vector(m, vec)
    vectors = list(monomial_coefficient_vectors(m, rho).values())
    lattice = saturation(vectors, m.rank)
    dense_v = [0] * m.rank
    for j, c in vec.items():
        dense_v[j] = c
    if not lattice.contains_vector(dense_v):
        raise VerificationError("generating vector escapes its own span")
    sub = sublattice_comodule(m, lattice.basis_rows())
    for t in range(sub.rank):
        sub.column(t)  # force the stability check
    return lattice, sub


# -- pairings -------------------------------------------------------------------


@dataclass
class Pairing:
    """A bilinear comodule map left (x) right -> out, by coefficient tensor."""

    left: Comodule
    right: Comodule
    out: Comodule
    coeff: dict  # (u_idx, v_idx) -> {z_idx: int}

    def value(self, u: int, v: int) -> dict:
        return self.coeff.get((u, v), {})

    def with_spectator(self, w: Comodule) -> "Pairing":
        """Extend to left (x) (right (x) W) -> out (x) W, W untouched."""
        new_right = tensor(self.right, w)
        new_out = tensor(self.out, w)
        nw = w.rank
        coeff = {}
        for (u, v), vals in self.coeff.items():
            for k in range(nw):
                coeff[(u, v * nw + k)] = {z * nw + k: c for z, c in vals.items()}
        return Pairing(self.left, new_right, new_out, coeff)

    def verify_equivariance(self, pairs=None) -> None:
        g = self.left.group
        nf = g.normal_form
        zero = g.bare_ring().zero()
        if pairs is None:
            pairs = [(u, v) for u in range(self.left.rank)
                     for v in range(self.right.rank)]
        for (u, v) in pairs:
            lhs: dict[int, Polynomial] = {}
            for z, c in self.value(u, v).items():
                for w_idx, rho in self.out.column(z).items():
                    t = rho.scale(c)
                    lhs[w_idx] = lhs[w_idx] + t if w_idx in lhs else t
            rhs: dict[int, Polynomial] = {}
            for u2, rho_u in self.left.column(u).items():
                for v2, rho_v in self.right.column(v).items():
                    vals = self.value(u2, v2)
                    if not vals:
                        continue
                    prod = rho_u * rho_v
                    for w_idx, c in vals.items():
                        t = prod.scale(c)
                        rhs[w_idx] = rhs[w_idx] + t if w_idx in rhs else t
            for w_idx in set(lhs) | set(rhs):
                if nf(lhs.get(w_idx, zero) - rhs.get(w_idx, zero)):
                    raise VerificationError(
                        f"pairing is not equivariant at ({u},{v})")


def trivial_pairing(group: GroupScheme) -> Pairing:
    t = trivial_comodule(group)
    return Pairing(t, t, t, {(0, 0): {0: 1}})


def evaluation_pairing(v: Comodule, m: int,
                       gamma=None, sym_dual=None) -> Pairing:
    """Dual-bases pairing of the m-th divided power against the m-th
    symmetric power of the dual: <e^[lam], x^mu> = delta_{lam,mu}."""
    left = gamma if gamma is not None else div_power(v, m)
    right = sym_dual if sym_dual is not None else sym_power(dual(v), m)
    out = trivial_comodule(v.group)
    coeff = {(j, j): {0: 1} for j in range(left.rank)}
    return Pairing(left, right, out, coeff)
