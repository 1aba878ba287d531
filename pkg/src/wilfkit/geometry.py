"""Exact rational linear algebra and polyhedral primitives.

Everything in this module works over arbitrary-precision integers and
`fractions.Fraction`; no floating point is used anywhere.  Vectors are plain
tuples, constraint systems are immutable dataclasses.  Nothing here knows
about Kunz cones or numerical semigroups.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd


class NotPointed(ValueError):
    """Cone has a nonzero lineality space."""


class EmptyInput(ValueError):
    """No constraints supplied where at least one is required."""


class UnboundedRegion(ValueError):
    """Integer enumeration requested on a region that is not bounded."""


# ---------------------------------------------------------------------------
# vectors

def vector_gcd(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive_ray(v) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers, preserving direction."""
    denom = 1
    for x in v:
        if isinstance(x, Fraction):
            denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in v]
    g = vector_gcd(ints)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def primitive_vector(v) -> tuple[int, ...]:
    """Like primitive_ray, but also fix the sign: first nonzero entry > 0."""
    ints = primitive_ray(v)
    for x in ints:
        if x > 0:
            return ints
        if x < 0:
            return tuple(-y for y in ints)
    return ints


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def integer_rank(rows, dim: int) -> int:
    """Rank of a set of integer vectors, by fraction-free elimination."""
    mat = [list(r) for r in rows if any(r)]
    rank = 0
    for col in range(dim):
        pivot = None
        for i in range(rank, len(mat)):
            if mat[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        prow = mat[rank]
        pv = prow[col]
        for i in range(rank + 1, len(mat)):
            ri = mat[i]
            f = ri[col]
            if f:
                for j in range(col, dim):
                    ri[j] = ri[j] * pv - prow[j] * f
                g = vector_gcd(ri)
                if g > 1:
                    for j in range(dim):
                        ri[j] //= g
        rank += 1
        if rank == dim:
            break
    return rank


def codimension(tight_normals, dim: int) -> int:
    """Rank of the subspace spanned by the given normals."""
    return integer_rank(tight_normals, dim)


def solve_square(rows, rhs) -> list[Fraction] | None:
    """Solve a square rational system exactly; None if singular."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(b)]
           for row, b in zip(rows, rhs)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col]), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [aug[i][n] for i in range(n)]


def nullspace_vector(rows, dim: int) -> tuple[int, ...] | None:
    """A primitive kernel vector when the nullity is exactly one, else None."""
    mat = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    rank = 0
    for col in range(dim):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][col]
        mat[rank] = [x / pv for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
    if rank != dim - 1:
        return None
    free = next(c for c in range(dim) if c not in pivots)
    v = [Fraction(0)] * dim
    v[free] = Fraction(1)
    for r, col in enumerate(pivots):
        v[col] = -mat[r][free]
    return primitive_ray(v)


# ---------------------------------------------------------------------------
# constraints

class Relation(Enum):
    GE = ">="
    EQ = "=="


@dataclass(frozen=True)
class LinearConstraint:
    """coeffs . x  (>= | ==)  constant, with integer data."""

    coeffs: tuple[int, ...]
    constant: int
    relation: Relation

    def evaluate(self, point):
        return dot(self.coeffs, point) - self.constant

    def satisfied_by(self, point) -> bool:
        r = self.evaluate(point)
        return r == 0 if self.relation is Relation.EQ else r >= 0

    @property
    def is_trivial(self) -> bool:
        return not any(self.coeffs)


def constraint(coeffs, constant: int, relation: Relation) -> LinearConstraint:
    """Build a gcd-normalized constraint from integer or rational data."""
    denom = 1
    vals = list(coeffs) + [constant]
    for x in vals:
        if isinstance(x, Fraction):
            denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in vals]
    g = vector_gcd(ints)
    if g > 1:
        ints = [x // g for x in ints]
    return LinearConstraint(tuple(ints[:-1]), ints[-1], relation)


def ge(coeffs, constant: int = 0) -> LinearConstraint:
    return constraint(coeffs, constant, Relation.GE)


def eq(coeffs, constant: int = 0) -> LinearConstraint:
    return constraint(coeffs, constant, Relation.EQ)


@dataclass(frozen=True)
class LinearSystem:
    dim: int
    constraints: tuple[LinearConstraint, ...]

    def __post_init__(self):
        for c in self.constraints:
            if len(c.coeffs) != self.dim:
                raise ValueError("constraint length does not match dimension")

    def satisfied_by(self, point) -> bool:
        if len(point) != self.dim:
            return False
        return all(c.satisfied_by(point) for c in self.constraints)

    def with_extra(self, extra) -> "LinearSystem":
        return LinearSystem(self.dim, self.constraints + tuple(extra))

    @property
    def is_homogeneous(self) -> bool:
        return all(c.constant == 0 for c in self.constraints)


def system(dim: int, constraints) -> LinearSystem:
    return LinearSystem(dim, tuple(constraints))


# ---------------------------------------------------------------------------
# extreme rays (double description)

def _adjacent(mask_a: int, mask_b: int, normals, dim: int) -> bool:
    common = mask_a & mask_b
    if common.bit_count() < dim - 2:
        return False
    rows = [normals[i] for i in _bits(common)]
    return integer_rank(rows, dim) == dim - 2


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def extreme_rays(sys: LinearSystem) -> list[tuple[int, ...]]:
    """Extreme rays of a pointed cone given by homogeneous GE constraints.

    Double description: start from a simplicial subcone spanned by a maximal
    independent subset of the normals, then insert the remaining half-spaces
    one at a time, combining adjacent positive/negative ray pairs.  Returns
    primitive integer rays in lexicographic order.
    """
    dim = sys.dim
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    if not sys.constraints:
        raise EmptyInput("cone needs at least one constraint")
    for c in sys.constraints:
        if c.relation is not Relation.GE or c.constant != 0:
            raise ValueError("extreme_rays expects homogeneous GE constraints")
    normals = [c.coeffs for c in sys.constraints]
    if integer_rank(normals, dim) != dim:
        raise NotPointed("constraint normals do not span the ambient space")

    # insertion order: denser normals first, index as tiebreak
    order = sorted(range(len(normals)),
                   key=lambda i: (sum(1 for x in normals[i] if x == 0), i))
    basis: list[int] = []
    rest: list[int] = []
    chosen: list[tuple[int, ...]] = []
    for i in order:
        if len(basis) < dim and integer_rank(chosen + [normals[i]], dim) > len(basis):
            basis.append(i)
            chosen.append(normals[i])
        else:
            rest.append(i)

    rays: list[tuple[int, ...]] = []
    for j in range(dim):
        rhs = [1 if k == j else 0 for k in range(dim)]
        col = solve_square(chosen, rhs)
        rays.append(primitive_ray(col))

    ordered_normals = list(chosen)

    def tight_mask(ray) -> int:
        m = 0
        for k, nrm in enumerate(ordered_normals):
            if dot(nrm, ray) == 0:
                m |= 1 << k
        return m

    masks = [tight_mask(r) for r in rays]

    for idx in rest:
        a = normals[idx]
        vals = [dot(a, r) for r in rays]
        if any(v < 0 for v in vals):
            pos = [k for k, v in enumerate(vals) if v > 0]
            zero = [k for k, v in enumerate(vals) if v == 0]
            neg = [k for k, v in enumerate(vals) if v < 0]
            new_rays = []
            seen_new = set()
            for p in pos:
                for n in neg:
                    if _adjacent(masks[p], masks[n], ordered_normals, dim):
                        comb = tuple(vals[p] * rays[n][t] - vals[n] * rays[p][t]
                                     for t in range(dim))
                        r = primitive_ray(comb)
                        if r not in seen_new:
                            seen_new.add(r)
                            new_rays.append(r)
            keep = pos + zero
            rays = [rays[k] for k in keep]
            masks = [masks[k] for k in keep]
            vals = [vals[k] for k in keep]
            old_count = len(rays)
            rays += new_rays
        else:
            old_count = len(rays)
        ordered_normals.append(a)
        bit = 1 << (len(ordered_normals) - 1)
        for k in range(old_count):
            if vals[k] == 0:
                masks[k] |= bit
        for k in range(old_count, len(rays)):
            masks.append(tight_mask(rays[k]))

    return sorted(set(rays))


# ---------------------------------------------------------------------------
# exact simplex

_DANTZIG_LIMIT_FACTOR = 8


class _Simplex:
    """Two-phase simplex for GE systems on free variables, in exact integers.

    Free variables are split into positive and negative parts; every row gets
    a surplus variable and, when needed, an artificial one.  The tableau is
    kept integral with a shared divisor using the two-term pivot update
    t'[i][j] = (t[i][j] * p - t[i][c] * t[r][j]) / d, where d is the previous
    pivot; every such division is exact.  Dantzig pricing with a switch to
    Bland's rule guarantees termination.
    """

    def __init__(self, rows, dim: int):
        # rows: list of (coeffs tuple[int], bound int) meaning coeffs.x >= bound
        self.dim = dim
        self.nrows = len(rows)
        ncols = 2 * dim + self.nrows  # p, n, surplus
        tableau = []
        b = []
        art_of_row = {}
        basis = []
        for i, (coeffs, bound) in enumerate(rows):
            row = [0] * ncols
            for j, c in enumerate(coeffs):
                if c:
                    row[j] = c
                    row[dim + j] = -c
            row[2 * dim + i] = -1
            bi = bound
            if bi <= 0:  # surplus column can start basic
                row = [-x for x in row]
                bi = -bi
            tableau.append(row)
            b.append(bi)
        for i in range(self.nrows):
            if tableau[i][2 * dim + i] == 1:
                basis.append(2 * dim + i)
            else:
                art_of_row[i] = ncols + len(art_of_row)
                basis.append(art_of_row[i])
        for i in range(self.nrows):
            ext = [0] * len(art_of_row)
            if i in art_of_row:
                ext[art_of_row[i] - ncols] = 1
            tableau[i].extend(ext)
        self.tableau = tableau
        self.b = b
        self.basis = basis
        self.art_start = ncols
        self.ncols = ncols + len(art_of_row)
        self.div = 1  # shared positive divisor: true value = entry / div

    def _pivot(self, row: int, col: int, zrow: list[int] | None) -> None:
        t = self.tableau
        d = self.div
        pr = t[row]
        p = pr[col]
        if p < 0:  # only reachable from drive-out, where b[row] == 0
            t[row] = pr = [-x for x in pr]
            self.b[row] = -self.b[row]
            p = -p
        for i in range(self.nrows):
            if i == row:
                continue
            ri = t[i]
            f = ri[col]
            if f:
                t[i] = [(x * p - f * y) // d for x, y in zip(ri, pr)]
                self.b[i] = (self.b[i] * p - f * self.b[row]) // d
            elif p != d:
                t[i] = [x * p // d for x in ri]
                self.b[i] = self.b[i] * p // d
        if zrow is not None:
            f = zrow[col]
            if f or p != d:
                zrow[:] = [(x * p - f * y) // d for x, y in zip(zrow, pr)]
        self.div = p
        self.basis[row] = col

    def _optimize(self, cost, price_limit: int | None = None) -> Fraction:
        """Minimize cost.z over the current feasible basis; returns the value.

        cost is integral.  Columns at or beyond price_limit never enter the
        basis.  Raises UnboundedRegion if the objective is unbounded below.
        """
        t = self.tableau
        nrows = self.nrows
        ncols = self.ncols
        limit_col = ncols if price_limit is None else price_limit
        zrow = [c * self.div for c in cost]
        for i in range(nrows):
            f = cost[self.basis[i]]
            if f:
                ri = t[i]
                for j in range(ncols):
                    if ri[j]:
                        zrow[j] -= f * ri[j]
        iters = 0
        bland_after = _DANTZIG_LIMIT_FACTOR * (nrows + ncols)
        while True:
            enter = -1
            if iters > bland_after:  # Bland's rule: guaranteed termination
                for j in range(limit_col):
                    if zrow[j] < 0:
                        enter = j
                        break
            else:
                best_rc = 0
                for j in range(limit_col):
                    rc = zrow[j]
                    if rc < best_rc:
                        best_rc = rc
                        enter = j
            if enter < 0:
                num = sum(cost[self.basis[i]] * self.b[i] for i in range(nrows))
                return Fraction(num, self.div)
            leave = -1
            bn = bd = None  # best ratio bn/bd, bd > 0
            bvec = self.b
            for i in range(nrows):
                a = t[i][enter]
                if a > 0:
                    if leave < 0 or bvec[i] * bd < bn * a or \
                            (bvec[i] * bd == bn * a and self.basis[i] < self.basis[leave]):
                        bn, bd = bvec[i], a
                        leave = i
            if leave < 0:
                raise UnboundedRegion("objective unbounded")
            self._pivot(leave, enter, zrow)
            iters += 1

    def find_feasible(self) -> list[Fraction] | None:
        """Phase 1; returns values of the free variables, or None."""
        if self.nrows == 0:
            return [Fraction(0)] * self.dim
        cost = [0] * self.ncols
        for j in range(self.art_start, self.ncols):
            cost[j] = 1
        value = self._optimize(cost)
        if value != 0:
            return None
        self._drive_out_artificials()
        return self._solution()

    def minimize(self, objective) -> tuple[str, list[Fraction] | None, Fraction | None]:
        """Minimize objective.x; returns (status, point, value)."""
        if self.find_feasible() is None:
            return ("infeasible", None, None)
        cost = [0] * self.ncols
        for j, c in enumerate(objective):
            cost[j] = c
            cost[self.dim + j] = -c
        try:
            value = self._optimize(cost, price_limit=self.art_start)
        except UnboundedRegion:
            return ("unbounded", None, None)
        return ("optimal", self._solution(), value)

    def _drive_out_artificials(self) -> None:
        # every artificial still basic sits at value 0; pivot it out if its
        # row has any real entry, else the row is redundant and stays inert
        for i in range(self.nrows):
            if self.basis[i] >= self.art_start:
                enter = next((j for j in range(self.art_start)
                              if self.tableau[i][j] != 0), None)
                if enter is not None:
                    self._pivot(i, enter, None)

    def _solution(self) -> list[Fraction]:
        vals = [Fraction(0)] * self.ncols
        for i, col in enumerate(self.basis):
            vals[col] = Fraction(self.b[i], self.div)
        return [vals[j] - vals[self.dim + j] for j in range(self.dim)]


# ---------------------------------------------------------------------------
# equality presolve

def _eliminate_equalities(sys: LinearSystem):
    """Reduce to a GE-only system on the free coordinates.

    Returns (status, ge_rows, free_cols, recover) where recover maps a free
    assignment back to the full space.  status is 'ok' or 'infeasible'.
    """
    dim = sys.dim
    eq_rows = []
    ge_rows = []
    for c in sys.constraints:
        if c.is_trivial:
            val = -c.constant
            bad = val != 0 if c.relation is Relation.EQ else val < 0
            if bad:
                return ("infeasible", None, None, None)
            continue
        if c.relation is Relation.EQ:
            eq_rows.append([Fraction(x) for x in c.coeffs] + [Fraction(c.constant)])
        else:
            ge_rows.append((c.coeffs, c.constant))

    pivots: list[int] = []
    rank = 0
    for col in range(dim):
        pivot = next((i for i in range(rank, len(eq_rows)) if eq_rows[i][col]), None)
        if pivot is None:
            continue
        eq_rows[rank], eq_rows[pivot] = eq_rows[pivot], eq_rows[rank]
        pv = eq_rows[rank][col]
        eq_rows[rank] = [x / pv for x in eq_rows[rank]]
        for i in range(len(eq_rows)):
            if i != rank and eq_rows[i][col]:
                f = eq_rows[i][col]
                eq_rows[i] = [x - f * y for x, y in zip(eq_rows[i], eq_rows[rank])]
        pivots.append(col)
        rank += 1
    for i in range(rank, len(eq_rows)):
        if eq_rows[i][dim] != 0:
            return ("infeasible", None, None, None)
    eq_rows = eq_rows[:rank]

    free = [c for c in range(dim) if c not in pivots]
    # x_pivot = rhs - sum(T * x_free)
    reduced = []
    for coeffs, bound in ge_rows:
        acc = [Fraction(x) for x in coeffs]
        const = Fraction(bound)
        for r, pc in enumerate(pivots):
            f = acc[pc]
            if f:
                const -= f * eq_rows[r][dim]
                for fc in free:
                    acc[fc] -= f * eq_rows[r][fc]
                acc[pc] = Fraction(0)
        row = [acc[fc] for fc in free]
        if not any(row):
            if const > 0:
                return ("infeasible", None, None, None)
            continue
        denom = 1
        for x in row + [const]:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        ints = [int(x * denom) for x in row]
        bignum = int(const * denom)
        g = vector_gcd(ints + [bignum])
        if g > 1:
            ints = [x // g for x in ints]
            bignum //= g
        reduced.append((tuple(ints), bignum))

    def recover(free_vals):
        full = [Fraction(0)] * dim
        for fc, v in zip(free, free_vals):
            full[fc] = Fraction(v)
        for r, pc in enumerate(pivots):
            acc = eq_rows[r][dim]
            for fc in free:
                if eq_rows[r][fc]:
                    acc -= eq_rows[r][fc] * full[fc]
            full[pc] = acc
        return full

    return ("ok", reduced, free, recover)


# ---------------------------------------------------------------------------
# feasibility and integer search

@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: tuple[Fraction, ...] | None

    def __bool__(self) -> bool:
        return self.feasible


INFEASIBLE = FeasibilityResult(False, None)


def rational_feasible(sys: LinearSystem) -> FeasibilityResult:
    """Exact rational feasibility; a FEASIBLE result carries a verified witness."""
    status, rows, free, recover = _eliminate_equalities(sys)
    if status == "infeasible":
        return INFEASIBLE
    sol = _Simplex(rows, len(free)).find_feasible()
    if sol is None:
        return INFEASIBLE
    witness = tuple(recover(sol))
    if not sys.satisfied_by(witness):
        raise AssertionError("simplex produced an invalid witness")
    return FeasibilityResult(True, witness)


def minimize(sys: LinearSystem, objective):
    """(status, point, value) minimizing objective.x over the system."""
    status, rows, free, recover = _eliminate_equalities(sys)
    if status == "infeasible":
        return ("infeasible", None, None)
    obj_free = [objective[fc] for fc in free]
    st, sol, value = _Simplex(rows, len(free)).minimize(obj_free)
    if st != "optimal":
        return (st, None, None)
    full = tuple(recover(sol))
    # value computed on the reduced coordinates misses the pinned part
    true_value = sum(Fraction(objective[j]) * full[j] for j in range(sys.dim))
    if not sys.satisfied_by(full):
        raise AssertionError("simplex produced an invalid optimum")
    return ("optimal", full, true_value)


def maximize(sys: LinearSystem, objective):
    st, point, value = minimize(sys, [-c for c in objective])
    return (st, point, None if value is None else -value)


@dataclass(frozen=True)
class IntegerSearchResult:
    status: str  # POINT | EMPTY | BUDGET_EXHAUSTED
    point: tuple[int, ...] | None
    nodes: int


def _most_fractional(witness) -> int | None:
    best = None
    best_dist = Fraction(0)
    for j, v in enumerate(witness):
        frac = v - (v.numerator // v.denominator)
        dist = min(frac, 1 - frac)
        if dist > best_dist:
            best_dist = dist
            best = j
    return best


def find_integer_point(sys: LinearSystem, node_budget: int = 10 ** 6) -> IntegerSearchResult:
    """Branch-and-bound integer search on the rational relaxation.

    EMPTY is only returned when every branch was closed by an exact
    infeasibility proof; running out of budget is reported honestly.
    """
    nodes = 0
    stack = [sys]
    exhausted = False
    unit = [0] * sys.dim
    while stack:
        if nodes >= node_budget:
            exhausted = True
            break
        current = stack.pop()
        nodes += 1
        res = rational_feasible(current)
        if not res.feasible:
            continue
        witness = res.witness
        j = _most_fractional(witness)
        if j is None:
            point = tuple(int(v) for v in witness)
            return IntegerSearchResult("POINT", point, nodes)
        floor = witness[j].numerator // witness[j].denominator
        lo = list(unit)
        lo[j] = -1
        hi = list(unit)
        hi[j] = 1
        # explore the floor branch first
        stack.append(current.with_extra([ge(hi, floor + 1)]))
        stack.append(current.with_extra([ge(lo, -floor)]))
    if exhausted:
        return IntegerSearchResult("BUDGET_EXHAUSTED", None, nodes)
    return IntegerSearchResult("EMPTY", None, nodes)


def enumerate_integer_points(sys: LinearSystem) -> list[tuple[int, ...]]:
    """All integer points of a bounded region, in lexicographic order.

    Fixes coordinates one at a time, bounding each by exact LP; raises
    UnboundedRegion if some coordinate is unbounded over the region.
    """
    dim = sys.dim
    points: list[tuple[int, ...]] = []

    def descend(current: LinearSystem, prefix: list[int]) -> None:
        j = len(prefix)
        if j == dim:
            pt = tuple(prefix)
            if not sys.satisfied_by(pt):
                raise AssertionError("enumerated point fails its system")
            points.append(pt)
            return
        unit = [0] * dim
        unit[j] = 1
        st_lo, _, lo = minimize(current, unit)
        if st_lo == "infeasible":
            return
        if st_lo == "unbounded":
            raise UnboundedRegion(f"coordinate {j} unbounded below")
        st_hi, _, hi = maximize(current, unit)
        if st_hi == "unbounded":
            raise UnboundedRegion(f"coordinate {j} unbounded above")
        lo_i = -((-lo.numerator) // lo.denominator)  # ceil
        hi_i = hi.numerator // hi.denominator        # floor
        for v in range(lo_i, hi_i + 1):
            descend(current.with_extra([eq(unit, v)]), prefix + [v])

    descend(sys, [])
    return points


# ---------------------------------------------------------------------------
# Fourier-Motzkin (small-instance oracle)

def fourier_motzkin_feasible(sys: LinearSystem) -> bool:
    """Rational feasibility by projection; exponential, test-oracle only.

    Implemented independently of the simplex path: equalities are removed by
    a self-contained Gaussian substitution, then the remaining inequalities
    are projected variable by variable (greedy order, dominance-deduplicated).
    """
    dim = sys.dim
    eq_rows = []
    ge_raw = []
    for c in sys.constraints:
        if c.relation is Relation.EQ:
            eq_rows.append([Fraction(x) for x in c.coeffs] + [Fraction(c.constant)])
        else:
            ge_raw.append([Fraction(x) for x in c.coeffs] + [Fraction(c.constant)])

    pivots: list[int] = []
    rank = 0
    for col in range(dim):
        pivot = next((i for i in range(rank, len(eq_rows)) if eq_rows[i][col]), None)
        if pivot is None:
            continue
        eq_rows[rank], eq_rows[pivot] = eq_rows[pivot], eq_rows[rank]
        pv = eq_rows[rank][col]
        eq_rows[rank] = [x / pv for x in eq_rows[rank]]
        for i in range(len(eq_rows)):
            if i != rank and eq_rows[i][col]:
                f = eq_rows[i][col]
                eq_rows[i] = [x - f * y for x, y in zip(eq_rows[i], eq_rows[rank])]
        pivots.append(col)
        rank += 1
    for i in range(rank, len(eq_rows)):
        if eq_rows[i][dim] != 0:
            return False
    free = [c for c in range(dim) if c not in pivots]

    def normalize(coeffs, bound):
        denom = 1
        for x in list(coeffs) + [bound]:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        ints = [int(x * denom) for x in coeffs]
        b = int(bound * denom)
        g = vector_gcd(ints + [b])
        if g > 1:
            ints = [x // g for x in ints]
            b //= g
        return tuple(ints), b

    # dominance dedup: for identical coefficient rows only the largest bound binds
    best: dict[tuple[int, ...], int] = {}
    for raw in ge_raw:
        acc = list(raw[:dim])
        bound = raw[dim]
        for r, pc in enumerate(pivots):
            f = acc[pc]
            if f:
                bound -= f * eq_rows[r][dim]
                for fc in free:
                    acc[fc] -= f * eq_rows[r][fc]
                acc[pc] = Fraction(0)
        coeffs = [acc[fc] for fc in free]
        if not any(coeffs):
            if bound > 0:
                return False
            continue
        key, b = normalize(coeffs, bound)
        if b > best.get(key, b - 1):
            best[key] = b

    nfree = len(free)
    remaining = list(range(nfree))
    rows = best
    while remaining:
        counts = []
        for k in remaining:
            npos = sum(1 for c in rows if c[k] > 0)
            nneg = sum(1 for c in rows if c[k] < 0)
            counts.append((npos * nneg, npos + nneg, k))
        _, _, k = min(counts)
        remaining.remove(k)
        pos = [(c, b) for c, b in rows.items() if c[k] > 0]
        neg = [(c, b) for c, b in rows.items() if c[k] < 0]
        nxt: dict[tuple[int, ...], int] = {}
        for c, b in rows.items():
            if c[k] == 0:
                if b > nxt.get(c, b - 1):
                    nxt[c] = b
        for (ac, ab) in pos:
            for (cc, cb) in neg:
                mp = -cc[k]
                mn = ac[k]
                coeffs = tuple(mp * a + mn * c for a, c in zip(ac, cc))
                bound = mp * ab + mn * cb
                if not any(coeffs):
                    if bound > 0:
                        return False
                    continue
                g = vector_gcd(list(coeffs) + [bound])
                if g > 1:
                    coeffs = tuple(x // g for x in coeffs)
                    bound //= g
                if bound > nxt.get(coeffs, bound - 1):
                    nxt[coeffs] = bound
        rows = nxt
    return all(b <= 0 for b in rows.values())
