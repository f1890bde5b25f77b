"""Ideal presentations and standard basis computations.

Global orders use Buchberger's algorithm with full tail reduction; local
orders use Mora's tangent-cone normal form with the smallest-ecart divisor
rule, which terminates on polynomial input and decides membership in the
power series ring.  Everything downstream (saturation, quotients, dimension,
monomial detection, torus points) reduces to these two engines.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InternalInvariantError,
    UsageError,
    WitnessSearchError,
)
from .polyring import (
    OrderDescriptor,
    Polynomial,
    PolyRing,
    expo_add,
    expo_deg,
    expo_divides,
    expo_lcm,
    expo_sub,
    inject,
    leading_term,
    project,
    substitute_scalars,
    w_order,
    w_order_max,
    wdot,
)
from .scalars import (
    AlgebraicNumber,
    ValueScalar,
    adjoin_root,
    factor_univariate,
    _pgcd,
    _pnorm,
)

_MAX_REDUCTION_STEPS = 50000


def scalar_inv(c):
    if isinstance(c, AlgebraicNumber):
        return c.inverse()
    return Fraction(1) / Fraction(c)


def monic(f: Polynomial, order: OrderDescriptor) -> Polynomial:
    _, c = leading_term(f, order)
    if c == 1:
        return f
    return f * scalar_inv(c)


def spoly(f: Polynomial, g: Polynomial, order: OrderDescriptor) -> Polynomial:
    mf, cf = leading_term(f, order)
    mg, cg = leading_term(g, order)
    m = expo_lcm(mf, mg)
    return f.mul_term(expo_sub(m, mf), scalar_inv(cf)) - g.mul_term(
        expo_sub(m, mg), scalar_inv(cg)
    )


def ecart(f: Polynomial, order: OrderDescriptor):
    """Highest minus leading weight; the Mora divisor selection key."""
    lo = w_order(f, order.weights)
    hi = w_order_max(f, order.weights)
    return hi - lo


@dataclass(frozen=True)
class BasisCertificate:
    order_text: str
    spair_reductions: int
    reduced: bool


class IdealPresentation:
    """Finite generating set plus the order used for its standard basis.

    In local mode every generator must lie in the maximal ideal (zero
    constant term): the presented object is the ideal generated in the power
    series ring.
    """

    def __init__(self, ring: PolyRing, generators, order: OrderDescriptor):
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial) or not g.ring.same(ring):
                raise UsageError("generators must be polynomials of the given ring")
            if not g.is_zero:
                gens.append(g)
        if len(order.weights) != ring.nvars():
            raise UsageError("order weight length does not match the ring")
        if order.mode == "local":
            for g in gens:
                if g.constant_term() != 0:
                    raise UsageError(
                        f"local-mode generator has a nonzero constant term: {g}"
                    )
        self.ring = ring
        self.generators = tuple(gens)
        self.order = order
        self._basis = None
        self._certificate = None

    def standard_basis(self):
        if self._basis is None:
            if self.order.mode == "global":
                basis, reds, reduced = _buchberger(self.generators, self.order)
            else:
                basis, reds, reduced = _mora_std(self.generators, self.order)
            self._basis = tuple(basis)
            self._certificate = BasisCertificate(
                order_text=self.order.describe(),
                spair_reductions=reds,
                reduced=reduced,
            )
        return self._basis

    def certificate(self) -> BasisCertificate:
        self.standard_basis()
        return self._certificate

    def is_zero_ideal(self):
        return not self.generators

    def is_unit_ideal(self):
        for g in self.standard_basis():
            if not g.is_zero and g.total_degree() == 0:
                return True
        return False

    def with_extra(self, extra):
        return IdealPresentation(
            self.ring, list(self.generators) + list(extra), self.order
        )

    def __repr__(self):
        gens = "; ".join(str(g) for g in self.generators) or "0"
        return f"IdealPresentation({gens} | {self.order.describe()})"


def presentation(ring, gens, mode="global", weights=None):
    if weights is None:
        if mode == "local":
            raise UsageError("local presentations need explicit weights")
        weights = (ValueScalar(0),) * ring.nvars()
    return IdealPresentation(ring, gens, OrderDescriptor(weights, mode))


# -- division ---------------------------------------------------------------


def _prepare(basis, order):
    out = []
    for g in basis:
        if g.is_zero:
            continue
        m, c = leading_term(g, order)
        out.append((g, m, c))
    return out


def _global_nf(f, prepared, order, steps=None):
    rem = f.ring.zero()
    h = f
    n = 0
    while not h.is_zero:
        n += 1
        if n > _MAX_REDUCTION_STEPS:
            raise InternalInvariantError("division did not terminate")
        m, c = leading_term(h, order)
        for g, mg, cg in prepared:
            if expo_divides(mg, m):
                h = h - g.mul_term(expo_sub(m, mg), c * scalar_inv(cg))
                break
        else:
            t = Polynomial(h.ring, {m: c})
            rem = rem + t
            h = h - t
    if steps is not None:
        steps[0] += n
    return rem


def _mora_nf(f, prepared, order):
    """Mora weak normal form: u*f = sum q_i g_i + r with u a local unit and
    the leading term of r not divisible by any basis leading term."""
    T = [(g, m, c, ecart(g, order)) for g, m, c in prepared]
    h = f
    n = 0
    while not h.is_zero:
        n += 1
        if n > _MAX_REDUCTION_STEPS:
            raise InternalInvariantError("Mora reduction did not terminate")
        m, c = leading_term(h, order)
        cands = [
            (i, rec) for i, rec in enumerate(T) if expo_divides(rec[1], m)
        ]
        if not cands:
            return h
        eh = ecart(h, order)
        i, (g, mg, cg, eg) = min(cands, key=lambda t: (t[1][3], t[0]))
        if eg > eh:
            T.append((h, m, c, eh))
        h = h - g.mul_term(expo_sub(m, mg), c * scalar_inv(cg))
    return h


def normal_form(f: Polynomial, basis, order: OrderDescriptor) -> Polynomial:
    """Remainder of f on division by the basis (weak normal form in local
    mode); zero exactly for ideal members when the basis is standard."""
    prepared = _prepare(basis, order)
    if order.mode == "global":
        return _global_nf(f, prepared, order)
    return _mora_nf(f, prepared, order)


def homogeneous_divide(f: Polynomial, divisors, order: OrderDescriptor):
    """Divide a w-homogeneous polynomial by w-homogeneous divisors, tracking
    quotients.  Terminates because a fixed weight level under positive
    weights carries finitely many monomials.

    Returns (quotients, remainder) with f = sum q_i d_i + remainder.
    """
    prepared = _prepare(divisors, order)
    quots = [f.ring.zero() for _ in prepared]
    rem = f.ring.zero()
    h = f
    n = 0
    while not h.is_zero:
        n += 1
        if n > _MAX_REDUCTION_STEPS:
            raise InternalInvariantError("homogeneous division did not terminate")
        m, c = leading_term(h, order)
        for i, (g, mg, cg) in enumerate(prepared):
            if expo_divides(mg, m):
                coef = c * scalar_inv(cg)
                quots[i] = quots[i] + Polynomial(h.ring, {expo_sub(m, mg): coef})
                h = h - g.mul_term(expo_sub(m, mg), coef)
                break
        else:
            t = Polynomial(h.ring, {m: c})
            rem = rem + t
            h = h - t
    return quots, rem


# -- standard bases ---------------------------------------------------------


def _pair_key(G, i, j, order):
    mi, _ = leading_term(G[i], order)
    mj, _ = leading_term(G[j], order)
    m = expo_lcm(mi, mj)
    return (expo_deg(m), m, i, j)


def _buchberger(gens, order):
    G = []
    for g in gens:
        if not g.is_zero:
            g = monic(g, order)
            if g not in G:
                G.append(g)
    reductions = 0
    pairs = [(i, j) for j in range(len(G)) for i in range(j)]
    guard = 0
    while pairs:
        guard += 1
        if guard > 20000:
            raise InternalInvariantError("Buchberger did not terminate")
        pairs.sort(key=lambda p: _pair_key(G, p[0], p[1], order))
        i, j = pairs.pop(0)
        mi, _ = leading_term(G[i], order)
        mj, _ = leading_term(G[j], order)
        if expo_lcm(mi, mj) == expo_add(mi, mj):
            continue  # coprime leading terms reduce to zero
        h = _global_nf(spoly(G[i], G[j], order), _prepare(G, order), order)
        reductions += 1
        if not h.is_zero:
            G.append(monic(h, order))
            k = len(G) - 1
            pairs.extend((i2, k) for i2 in range(k))
    G = _minimalize(G, order)
    # full interreduction (terminates for global orders)
    changed = True
    rounds = 0
    while changed and rounds < 100:
        changed = False
        rounds += 1
        for i in range(len(G)):
            others = [G[k] for k in range(len(G)) if k != i]
            r = _global_nf(G[i], _prepare(others, order), order)
            if r.is_zero:
                G.pop(i)
                changed = True
                break
            r = monic(r, order)
            if r != G[i]:
                G[i] = r
                changed = True
    G.sort(key=lambda g: order.key(leading_term(g, order)[0]))
    return G, reductions, _is_reduced(G, order)


def _mora_std(gens, order):
    G = []
    for g in gens:
        if not g.is_zero:
            g = monic(g, order)
            if g not in G:
                G.append(g)
    reductions = 0
    pairs = [(i, j) for j in range(len(G)) for i in range(j)]
    guard = 0
    while pairs:
        guard += 1
        if guard > 20000:
            raise InternalInvariantError("Mora basis computation did not terminate")
        pairs.sort(key=lambda p: _mora_pair_key(G, p[0], p[1], order))
        i, j = pairs.pop(0)
        h = _mora_nf(spoly(G[i], G[j], order), _prepare(G, order), order)
        reductions += 1
        if not h.is_zero:
            G.append(monic(h, order))
            k = len(G) - 1
            pairs.extend((i2, k) for i2 in range(k))
    G = _minimalize(G, order)
    G = [_tail_reduce_local(i, G, order) for i in range(len(G))]
    G.sort(key=lambda g: order.key(leading_term(g, order)[0]), reverse=True)
    return G, reductions, _is_reduced(G, order)


def _mora_pair_key(G, i, j, order):
    mi, _ = leading_term(G[i], order)
    mj, _ = leading_term(G[j], order)
    m = expo_lcm(mi, mj)
    return (wdot(order.weights, m), expo_deg(m), m, i, j)


def _minimalize(G, order):
    # drop elements whose leading term is divisible by another's; on equal
    # leading terms keep the earliest
    lts = [leading_term(g, order)[0] for g in G]
    out = []
    for i in range(len(G)):
        dominated = False
        for j in range(len(G)):
            if i == j:
                continue
            if expo_divides(lts[j], lts[i]):
                if lts[j] != lts[i] or j < i:
                    dominated = True
                    break
        if not dominated:
            out.append(G[i])
    return out


def _tail_reduce_local(idx, G, order, max_steps=200):
    g = G[idx]
    others = _prepare([G[k] for k in range(len(G)) if k != idx], order)
    if not others:
        return g
    lead_m, _ = leading_term(g, order)
    for _ in range(max_steps):
        target = None
        for m in sorted(g.coeffs, key=order.key, reverse=True):
            if m == lead_m:
                continue
            for og, om, oc in others:
                if expo_divides(om, m):
                    target = (m, og, om, oc)
                    break
            if target:
                break
        if target is None:
            return g
        m, og, om, oc = target
        g = g - og.mul_term(expo_sub(m, om), g.coeffs[m] * scalar_inv(oc))
    return g


def _is_reduced(G, order):
    lts = [leading_term(g, order)[0] for g in G]
    for i, g in enumerate(G):
        for m in g.coeffs:
            for j, lt in enumerate(lts):
                if i != j and expo_divides(lt, m):
                    return False
    return True


# -- derived operations -----------------------------------------------------


def ideal_member(f: Polynomial, I: IdealPresentation) -> bool:
    if f.is_zero:
        return True
    return normal_form(f, I.standard_basis(), I.order).is_zero


def ideals_equal(A: IdealPresentation, B: IdealPresentation) -> bool:
    """Equality of the presented ideals (same ring); membership both ways.

    For local presentations this is equality in the power series ring.
    """
    if not A.ring.same(B.ring):
        raise UsageError("cannot compare ideals in different rings")
    return all(ideal_member(g, B) for g in A.generators) and all(
        ideal_member(g, A) for g in B.generators
    )


def _fresh_name(ring, base):
    name = base
    while name in ring.index:
        name = "_" + name
    return name


def eliminate(ring: PolyRing, gens, elim_indices):
    """Generators of the elimination ideal (still expressed in the full
    ring).  Uses the weight trick: weight 1 on eliminated variables, 0 on the
    rest, refined by graded revlex, which is a genuine elimination order."""
    elim = set(elim_indices)
    if not elim:
        return list(gens)
    ws = [ValueScalar(1) if i in elim else ValueScalar(0) for i in range(ring.nvars())]
    order = OrderDescriptor(ws, "global")
    basis, _, _ = _buchberger(list(gens), order)
    out = []
    for g in basis:
        if all(all(m[i] == 0 for i in elim) for m in g.coeffs):
            out.append(g)
    return out


def saturate(I: IdealPresentation, g: Polynomial) -> IdealPresentation:
    """(I : g^infinity) by the Rabinowitsch trick, returned with a global
    grevlex presentation."""
    if g.is_zero:
        raise UsageError("cannot saturate by zero")
    ring = I.ring
    big = PolyRing(ring.field, ring.vars + (_fresh_name(ring, "s_"),))
    vmap = list(range(ring.nvars()))
    s = big.var(big.nvars() - 1)
    gens = [inject(f, big, vmap) for f in I.generators]
    gens.append(big.one() - s * inject(g, big, vmap))
    elim = eliminate(big, gens, [big.nvars() - 1])
    small_map = vmap + [None]
    back = [project(f, ring, small_map) for f in elim]
    return presentation(ring, back, "global")


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g when the division is exact."""
    if g.is_zero:
        raise UsageError("division by the zero polynomial")
    order = OrderDescriptor((ValueScalar(0),) * f.ring.nvars(), "global")
    prepared = _prepare([g], order)
    q = f.ring.zero()
    h = f
    while not h.is_zero:
        m, c = leading_term(h, order)
        gq, mg, cg = prepared[0]
        if not expo_divides(mg, m):
            raise InternalInvariantError(f"inexact division: {f} by {g}")
        coef = c * scalar_inv(cg)
        q = q + Polynomial(f.ring, {expo_sub(m, mg): coef})
        h = h - gq.mul_term(expo_sub(m, mg), coef)
    return q


def ideal_quotient(I: IdealPresentation, f: Polynomial) -> IdealPresentation:
    """(I : f) via intersection with (f) and exact division."""
    if f.is_zero:
        raise UsageError("quotient by the zero polynomial")
    ring = I.ring
    big = PolyRing(ring.field, ring.vars + (_fresh_name(ring, "t_"),))
    vmap = list(range(ring.nvars()))
    t = big.var(big.nvars() - 1)
    gens = [t * inject(g, big, vmap) for g in I.generators]
    gens.append((big.one() - t) * inject(f, big, vmap))
    elim = eliminate(big, gens, [big.nvars() - 1])
    small_map = vmap + [None]
    inter = [project(h, ring, small_map) for h in elim]
    quots = [exact_divide(h, f) for h in inter if not h.is_zero]
    return presentation(ring, quots, "global")


def _as_global(I: IdealPresentation) -> IdealPresentation:
    if I.order.mode == "global":
        return I
    return presentation(I.ring, I.generators, "global")


def contains_monomial(I: IdealPresentation):
    """Whether the ideal contains a monomial; (flag, witness monomial).

    Decided by saturating with respect to the product of all variables.  For
    weight-homogeneous generators this also answers the power series question,
    which is the relevant case for initial ideals.
    """
    if I.is_zero_ideal():
        return False, None
    ring = I.ring
    prod = ring.monomial((1,) * ring.nvars())
    sat = saturate(_as_global(I), prod)
    if not sat.is_unit_ideal():
        return False, None
    basis = I.standard_basis()
    witness = None
    for k in range(1, 65):
        cand = prod ** k
        if normal_form(cand, basis, I.order).is_zero:
            witness = cand
            break
    if witness is None:
        raise InternalInvariantError("saturation unit but no monomial power found")
    # shrink the witness exponent by exponent, last variable first
    expo = list(witness.support()[0])
    for i in range(len(expo) - 1, -1, -1):
        while expo[i] > 0:
            trial = list(expo)
            trial[i] -= 1
            cand = ring.monomial(trial)
            if cand.is_zero or not normal_form(cand, basis, I.order).is_zero:
                break
            expo = trial
    return True, ring.monomial(expo)


def dimension(I: IdealPresentation) -> int:
    """Krull dimension of the quotient by the leading-term ideal trick:
    the largest variable subset meeting no leading monomial."""
    basis = I.standard_basis()
    if I.is_unit_ideal():
        raise UsageError("the unit ideal has no dimension")
    lts = [leading_term(g, I.order)[0] for g in basis]
    n = I.ring.nvars()
    if n > 16:
        raise UsageError("dimension computation capped at 16 variables")
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lts]
    best = 0
    for mask in range(1 << n):
        S = frozenset(i for i in range(n) if mask >> i & 1)
        if len(S) <= best:
            continue
        if all(not sup <= S for sup in supports):
            best = len(S)
    return best


# -- torus points -----------------------------------------------------------


@dataclass
class TorusWitness:
    point: tuple
    field: object
    seed: int
    attempts: int


def _slice_values(seed, attempt, count):
    if attempt == 0:
        return [Fraction(1)] * count
    rng = random.Random(f"torus:{seed}:{attempt}")
    span = 4 + attempt
    out = []
    for _ in range(count):
        v = 0
        while v == 0:
            v = rng.randint(-span, span)
        out.append(Fraction(v))
    return out


def _univariate_part(gens, var):
    """gcd of the univariate-in-var members among the generators."""
    acc = []
    for g in gens:
        if g.is_zero:
            continue
        if all(all(e == 0 for i, e in enumerate(m) if i != var) for m in g.coeffs):
            cs = {}
            for m, c in g.coeffs.items():
                cs[m[var]] = c
            deg = max(cs)
            acc.append([cs.get(i, Fraction(0)) for i in range(deg + 1)])
    if not acc:
        return None
    g = acc[0]
    for other in acc[1:]:
        g = _pgcd(g, other)
    return _pnorm(g)


def _solve_zero_dim(ring, gens, remaining, assignment):
    """DFS back-substitution: eliminate down to a univariate polynomial in
    the last remaining variable, adjoin a nonzero root, recurse."""
    if not remaining:
        for g in gens:
            r = substitute_scalars(g, assignment)
            if not r.is_zero:
                return None
        return assignment
    var = remaining[-1]
    rest = remaining[:-1]
    cur = [substitute_scalars(g, assignment) for g in gens]
    cur = [g for g in cur if not g.is_zero]
    elim = eliminate(ring, cur, [i for i in rest])
    uni = _univariate_part(elim, var)
    if uni is None or len(uni) <= 1:
        # no univariate relation: variable is free on this slice; pick 1
        trial = dict(assignment)
        trial[var] = Fraction(1)
        return _solve_zero_dim(ring, gens, rest, trial)
    _, factors = factor_univariate(ring.field, uni)
    ordered = sorted(factors, key=lambda t: (len(t[0]), _fac_str(t[0])))
    for fac, _mult in ordered:
        if len(fac) == 2 and _is_zero_scalar(fac[0]):
            continue  # root zero: not a torus point
        if len(fac) == 2:
            root = (-fac[0]) / fac[1]
        else:
            _, root = adjoin_root(ring.field, fac)
        if _is_zero_scalar(root):
            continue
        trial = dict(assignment)
        trial[var] = root
        found = _solve_zero_dim(ring, gens, rest, trial)
        if found is not None:
            return found
    return None


def _fac_str(fac):
    from .scalars import scalar_str

    return tuple(scalar_str(c) for c in fac)


def _is_zero_scalar(x):
    if isinstance(x, AlgebraicNumber):
        return not x
    return x == 0


def torus_point(
    J: IdealPresentation, seed=0, max_attempts=16, start_attempt=0
) -> TorusWitness:
    """A point with all coordinates nonzero in the vanishing locus.

    The ideal must be monomial-free.  Generic rational values are substituted
    for a maximal independent variable set (deterministic, seeded), the rest
    is solved by elimination and root adjunction, rejecting zero coordinates;
    bounded retries with fresh slice values.  start_attempt skips the first
    few value choices, which is how callers ask for a different point.
    """
    flag, wit = contains_monomial(J)
    if flag:
        raise UsageError(f"ideal contains the monomial {wit}; no torus point")
    ring = J.ring
    n = ring.nvars()
    Jg = _as_global(J)
    basis = Jg.standard_basis()
    if not basis:
        values = _slice_values(seed, start_attempt, n)
        return TorusWitness(tuple(values), ring.field, seed, start_attempt)
    lts = [leading_term(g, Jg.order)[0] for g in basis]
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lts]
    indep = None
    for size in range(n, -1, -1):
        for mask in _masks_of_size(n, size):
            S = frozenset(i for i in range(n) if mask >> i & 1)
            if all(not sup <= S for sup in supports):
                indep = sorted(S)
                break
        if indep is not None:
            break
    indep = indep or []
    for attempt in range(start_attempt, start_attempt + max_attempts):
        values = _slice_values(seed, attempt, len(indep))
        assignment = {i: v for i, v in zip(indep, values)}
        remaining = [i for i in range(n) if i not in assignment]
        found = _solve_zero_dim(ring, list(basis), remaining, assignment)
        if found is None:
            continue
        point = tuple(found[i] for i in range(n))
        if any(_is_zero_scalar(x) for x in point):
            continue
        ok = True
        for g in J.generators:
            if not substitute_scalars(g, found).is_zero:
                ok = False
                break
        if ok:
            return TorusWitness(point, ring.field, seed, attempt + 1)
    raise WitnessSearchError(
        f"no torus point found in {max_attempts} attempts (seed {seed})"
    )


def _masks_of_size(n, size):
    # deterministic: lexicographic by variable index set
    from itertools import combinations

    for combo in combinations(range(n), size):
        mask = 0
        for i in combo:
            mask |= 1 << i
        yield mask
