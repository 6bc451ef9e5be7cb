"""Exact integer matrix normal forms and lattices in Z^n.

Matrices are lists of row lists of Python ints.  Lattices are stored by a
basis matrix in row Hermite normal form: row-echelon, positive pivots,
entries above each pivot reduced into [0, pivot).
"""

from __future__ import annotations

from dataclasses import dataclass, field


Matrix = list


def identity_matrix(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zero_matrix(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def copy_matrix(a: Matrix) -> Matrix:
    return [row[:] for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return []
    cols = len(b[0])
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: Matrix, v: list) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return g, x, y


def hnf(a: Matrix) -> Matrix:
    return hnf_with_transform(a)[0]


def hnf_with_transform(a: Matrix) -> tuple[Matrix, Matrix]:
    """Row Hermite normal form H with unimodular U such that U*A = H."""
    h = copy_matrix(a)
    m = len(h)
    n = len(h[0]) if h else 0
    u = identity_matrix(m)
    row = 0
    for col in range(n):
        # clear everything below position (row, col) with gcd row operations
        pivot = None
        for r in range(row, m):
            if h[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        if pivot != row:
            h[row], h[pivot] = h[pivot], h[row]
            u[row], u[pivot] = u[pivot], u[row]
        for r in range(row + 1, m):
            while h[r][col] != 0:
                q = h[row][col] // h[r][col]
                h[row] = [x - q * y for x, y in zip(h[row], h[r])]
                u[row] = [x - q * y for x, y in zip(u[row], u[r])]
                h[row], h[r] = h[r], h[row]
                u[row], u[r] = u[r], u[row]
        if h[row][col] < 0:
            h[row] = [-x for x in h[row]]
            u[row] = [-x for x in u[row]]
        p = h[row][col]
        for r in range(row):
            q = h[r][col] // p
            if q:
                h[r] = [x - q * y for x, y in zip(h[r], h[row])]
                u[r] = [x - q * y for x, y in zip(u[r], u[row])]
        row += 1
        if row == m:
            break
    return h, u


def nonzero_rows(a: Matrix) -> Matrix:
    return [row for row in a if any(row)]


def snf(a: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form: U*A*V = D with U, V unimodular, diagonal D."""
    d = copy_matrix(a)
    m = len(d)
    n = len(d[0]) if d else 0
    u = identity_matrix(m)
    v = identity_matrix(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        # locate a nonzero entry in the remaining block
        pr = pc = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] and (best is None or abs(d[i][j]) < best):
                    best = abs(d[i][j])
                    pr, pc = i, j
        if best is None:
            break
        swap_rows(t, pr)
        swap_cols(t, pc)
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    add_row(t, i, -q)
                    if d[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    add_col(t, j, -q)
                    if d[t][j]:
                        swap_cols(t, j)
                        dirty = True
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        # enforce divisibility d[t][t] | d[i][j] for the rest of the block
        fixed = False
        p = d[t][t]
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if d[i][j] % p:
                    add_row(i, t, 1)
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        t += 1
    return d, u, v


def rank_mod_p(a: Matrix, p: int) -> int:
    return len(_row_reduce_mod_p(copy_matrix(a), p)[0])


def _row_reduce_mod_p(a: Matrix, p: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form mod p; returns (nonzero rows, pivot cols)."""
    rows = [[x % p for x in row] for row in a]
    n = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for col in range(n):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][col] % p:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(x - c * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace_mod_p(a: Matrix, p: int) -> Matrix:
    """Basis of the kernel of A mod p, entries lifted into [0, p)."""
    if not a:
        return []
    n = len(a[0])
    reduced, pivots = _row_reduce_mod_p(a, p)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec = [0] * n
        vec[free] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = (-reduced[r][free]) % p
        basis.append(vec)
    return basis


def solve_mod_p(a: Matrix, b: list, p: int) -> list | None:
    """One solution x of A x = b mod p, or None."""
    if not a:
        return None
    n = len(a[0])
    aug = [row[:] + [bv] for row, bv in zip(a, b)]
    reduced, pivots = _row_reduce_mod_p(aug, p)
    x = [0] * n
    for r, pc in enumerate(pivots):
        if pc == n:
            return None
        x[pc] = reduced[r][n] % p
    return x


@dataclass(frozen=True)
class IntegerLattice:
    """A sublattice of Z^ambient given by HNF basis rows (zero rows dropped)."""

    ambient: int
    basis: tuple = field(default=())

    @classmethod
    def from_rows(cls, ambient: int, rows: Matrix) -> "IntegerLattice":
        if not rows:
            return cls(ambient, ())
        h = nonzero_rows(hnf(rows))
        return cls(ambient, tuple(tuple(r) for r in h))

    @classmethod
    def full(cls, n: int) -> "IntegerLattice":
        return cls.from_rows(n, identity_matrix(n))

    @classmethod
    def scaled(cls, n: int, k: int) -> "IntegerLattice":
        return cls.from_rows(n, [[k if i == j else 0 for j in range(n)]
                                 for i in range(n)])

    @property
    def rank(self) -> int:
        return len(self.basis)

    def basis_rows(self) -> Matrix:
        return [list(r) for r in self.basis]

    def contains_vector(self, v: list) -> bool:
        vec = list(v)
        if len(vec) != self.ambient:
            raise ValueError("vector has wrong length")
        rows = self.basis
        for row in rows:
            col = next(i for i, x in enumerate(row) if x)
            if vec[col] == 0:
                continue
            if vec[col] % row[col]:
                return False
            q = vec[col] // row[col]
            vec = [x - q * y for x, y in zip(vec, row)]
        return not any(vec)

    def coordinates_of(self, v: list) -> list | None:
        """Coefficients of v in the HNF basis, or None if v is outside."""
        vec = list(v)
        coords = []
        for row in self.basis:
            col = next(i for i, x in enumerate(row) if x)
            if vec[col] % row[col]:
                return None
            q = vec[col] // row[col]
            coords.append(q)
            vec = [x - q * y for x, y in zip(vec, row)]
        return coords if not any(vec) else None

    def contains_lattice(self, other: "IntegerLattice") -> bool:
        return all(self.contains_vector(list(r)) for r in other.basis)

    def index_in_ambient(self) -> int:
        """[Z^n : L] for a full-rank lattice (product of HNF pivots)."""
        if self.rank != self.ambient:
            raise ValueError("index is infinite: lattice is not full rank")
        idx = 1
        for i, row in enumerate(self.basis):
            col = next(j for j, x in enumerate(row) if x)
            idx *= row[col]
        return idx


def lattice_preimage_mod(a: Matrix, p: int, n: int | None = None) -> IntegerLattice:
    """The full-rank lattice {v in Z^n : A v = 0 mod p} for a k x n matrix."""
    if n is None:
        if not a:
            raise ValueError("cannot infer ambient dimension from an empty matrix")
        n = len(a[0])
    if not a or not any(any(row) for row in a):
        return IntegerLattice.full(n)
    rows = nullspace_mod_p(a, p)
    rows.extend([p if i == j else 0 for j in range(n)] for i in range(n))
    return IntegerLattice.from_rows(n, rows)


def saturation(rows: Matrix, n: int) -> IntegerLattice:
    """Smallest lattice containing span(rows) with torsion-free quotient."""
    rows = nonzero_rows(rows)
    if not rows:
        return IntegerLattice(n, ())
    d, u, v = snf(rows)
    r = sum(1 for i in range(min(len(d), n)) if d[i][i])
    # rows of D*V^{-1} span the lattice; dividing the diagonal gives the
    # saturation, i.e. the first r rows of V^{-1}
    v_inv = invert_unimodular(v)
    return IntegerLattice.from_rows(n, v_inv[:r])


def invert_unimodular(v: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix via HNF transform."""
    h, u = hnf_with_transform(v)
    n = len(v)
    # H must be the identity up to the sign fixups already applied
    if h != identity_matrix(n):
        raise ValueError("matrix is not unimodular")
    return u
