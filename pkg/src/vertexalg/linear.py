"""Exact linear algebra over the rational-function field.

Weight-graded basis enumeration, torus-charge filtering, a division-free
elimination that keeps pivot polynomials available for nongeneric-level
reporting, commutant solves, relation finding, and decoupling analysis.

Commutant conditions accept "actions": either a weight-one current (all its
nonnegative modes must kill the element) or a pair (current, derivation)
where the derivation is an outer even derivation given on generators; the
combined zero mode is current_(0) + derivation, and higher modes come from
the current alone.  The second form realizes diagonal group actions whose
restriction to a free tensor factor is not inner.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil

from .coefficients import (
    PONE,
    PZERO,
    Poly,
    RF_ONE,
    RF_ZERO,
    RatFunc,
    format_poly,
    pdeg,
    pdivmod,
    pgcd,
    pmul,
    pnormalize,
    pprimitive,
    rational_roots,
)
from .core import Element, VAError, VAPresentation


class LinearError(VAError):
    pass


class NotTorusDiagonal(LinearError):
    pass


# ---------------------------------------------------------------------------
# Weight bases


class WeightBasis:
    def __init__(self, pres: VAPresentation, weight, monomials, filter_info=None):
        self.pres = pres
        self.weight = Fraction(weight)
        self.monomials = tuple(monomials)
        self.filter_info = filter_info
        self.index = {M: i for i, M in enumerate(self.monomials)}

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)


def weight_basis(P: VAPresentation, w) -> WeightBasis:
    """All canonical monomials of the given weight, in lexicographic order."""
    w = Fraction(w)
    if w < 0:
        raise LinearError("weight must be nonnegative")
    factors = []
    for g in P.generators:
        d = 0
        while g.weight + d <= w:
            factors.append((g.index, d))
            d += 1
    factors.sort()
    out = []

    def recurse(start, remaining, stack):
        if remaining == 0:
            out.append(tuple(stack))
            return
        for idx in range(start, len(factors)):
            f = factors[idx]
            fw = P.gen_weight(f[0]) + f[1]
            if fw > remaining:
                continue
            odd = P.gen_parity(f[0])
            if odd and stack and stack[-1] == f:
                continue
            stack.append(f)
            recurse(idx if not odd else idx + 1, remaining - fw, stack)
            stack.pop()

    recurse(0, w, [])
    out.sort()
    return WeightBasis(P, w, out)


def charge_filter(basis: WeightBasis, currents=None, charges=None, charge_maps=None):
    """Sub-basis of simultaneous torus eigenvectors with the given charges.

    Either currents (weight-one, acting diagonally through their zero modes)
    or explicit charge_maps (dicts generator id -> Fraction) may be given.
    """
    P = basis.pres
    maps = []
    if charge_maps is not None:
        maps = [dict(m) for m in charge_maps]
    else:
        for J in currents or []:
            maps.append(_diagonal_charges(P, J))
    if charges is None:
        charges = [Fraction(0)] * len(maps)
    charges = [Fraction(c) for c in charges]
    if len(charges) != len(maps):
        raise LinearError("one charge per current required")
    if not maps:
        return basis
    keep = []
    for M in basis.monomials:
        ok = True
        for cm, q in zip(maps, charges):
            total = sum((cm.get(g, Fraction(0)) for g, _ in M), Fraction(0))
            if total != q:
                ok = False
                break
        if ok:
            keep.append(M)
    return WeightBasis(P, basis.weight, keep, filter_info=(tuple(charges),))


def _diagonal_charges(P: VAPresentation, J: Element) -> dict:
    if P.weight_of(J) != 1:
        raise NotTorusDiagonal("charge currents must have weight one")
    out = {}
    for g in range(P.ngen):
        image = P.nprod(J, P.gen(g), 0)
        if image.is_zero():
            out[g] = Fraction(0)
            continue
        if set(image.data) != {((g, 0),)}:
            raise NotTorusDiagonal(
                f"current does not act diagonally on {P.generators[g].name}"
            )
        c = image.data[((g, 0),)]
        if not c.is_constant():
            raise NotTorusDiagonal("charge is not a constant")
        out[g] = c.constant_value()
    return out


# ---------------------------------------------------------------------------
# Division-free elimination with pivot polynomials


class PolySystem:
    """A sparse linear system over Q(param) kept as cleared polynomial rows."""

    def __init__(self, ncols, param="k"):
        self.ncols = ncols
        self.param = param
        self.rows = []  # list of dict col -> Poly
        self.cleared_factors = []  # denominators cleared while building rows

    def add_row(self, entries: dict):
        """entries: col -> RatFunc; the common denominator is cleared."""
        entries = {c: v for c, v in entries.items() if v}
        if not entries:
            return
        den = PONE
        for v in entries.values():
            g = pgcd(den, v.den)
            den = pdivmod(pmul(den, v.den), g)[0]
        if pdeg(den) > 0:
            self.cleared_factors.append(den)
        row = {}
        for c, v in entries.items():
            q = pdivmod(den, v.den)[0]
            row[c] = pmul(v.num, q)
        self.rows.append(_strip_row(row))

    def eliminate(self):
        """Column-ordered echelon form; returns (rank, pivots, pivot data)."""
        active = list(range(len(self.rows)))
        pivot_polys = []
        pivot_rows = []  # (col, row dict)
        for col in range(self.ncols):
            best = None
            for ai, ridx in enumerate(active):
                entry = self.rows[ridx].get(col)
                if entry:
                    key = (pdeg(entry), ai)
                    if best is None or key < best[0]:
                        best = (key, ai, ridx)
            if best is None:
                continue
            _, ai, ridx = best
            active.pop(ai)
            prow = self.rows[ridx]
            pentry = prow[col]
            pivot_polys.append(pprimitive(pentry))
            pivot_rows.append((col, prow))
            for ridx2 in active:
                row2 = self.rows[ridx2]
                entry2 = row2.get(col)
                if not entry2:
                    continue
                new_row = {}
                for c, v in row2.items():
                    new_row[c] = pmul(pentry, v)
                for c, v in prow.items():
                    t = pmul(entry2, v)
                    cur = new_row.get(c)
                    new_row[c] = _psub(cur, t) if cur else _pneg(t)
                self.rows[ridx2] = _strip_row({c: v for c, v in new_row.items() if v})
        return len(pivot_rows), pivot_polys, pivot_rows

    def kernel(self, pivot_rows):
        """Kernel basis as RatFunc coordinate vectors, one per free column."""
        pivot_cols = [c for c, _ in pivot_rows]
        pivot_set = set(pivot_cols)
        free_cols = [c for c in range(self.ncols) if c not in pivot_set]
        kernel = []
        for fc in free_cols:
            x = [RF_ZERO] * self.ncols
            x[fc] = RF_ONE
            for col, row in reversed(pivot_rows):
                total = RF_ZERO
                for c, v in row.items():
                    if c > col and x[c]:
                        total = total + RatFunc(v, PONE, _reduced=True) * x[c]
                if total:
                    x[col] = -total / RatFunc(row[col], PONE, _reduced=True)
            kernel.append(x)
        return kernel


def _pneg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def _psub(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        out = list(q)
        for i in range(len(out)):
            out[i] = -out[i]
        for i, c in enumerate(p):
            out[i] += c
        return pnormalize(out)
    out = list(p)
    for i, c in enumerate(q):
        out[i] -= c
    return pnormalize(out)


def _strip_row(row: dict) -> dict:
    """Remove the polynomial and rational content of a row."""
    if not row:
        return row
    g = PZERO
    for v in row.values():
        g = pgcd(g, v) if g else v
        if pdeg(g) == 0:
            break
    if pdeg(g) > 0:
        row = {c: pdivmod(v, g)[0] for c, v in row.items()}
    # rational content
    from math import gcd

    num = 0
    den = 1
    for v in row.values():
        for coeff in v:
            num = gcd(num, coeff.numerator)
            den = den * coeff.denominator // gcd(den, coeff.denominator)
    if num:
        cont = Fraction(num, den)
        row = {c: tuple(x / cont for x in v) for c, v in row.items()}
    return row


# ---------------------------------------------------------------------------
# Commutant computation


def _normalize_actions(actions):
    out = []
    for a in actions:
        if isinstance(a, Element):
            out.append((a, None))
        else:
            current, derivation = a
            if current is None and derivation is None:
                raise LinearError("empty action")
            out.append((current, derivation))
    return out


def apply_derivation(P: VAPresentation, derivation: dict, x: Element) -> Element:
    """Even derivation given on generators, extended by the Leibniz rule."""
    out = {}
    for M, coeff in x.data.items():
        for slot in range(len(M)):
            g, d = M[slot]
            image = derivation.get(g)
            if not image:
                continue
            img = Element(P, dict(image))
            img = img.deriv(d)
            for N, c2 in img.data.items():
                word = M[:slot] + tuple(N) + M[slot + 1 :]
                for W, c3 in P._canon_factors(word).items():
                    key = W
                    val = coeff * c2 * c3
                    out[key] = out.get(key, RF_ZERO) + val
    return Element(P, {M: c for M, c in out.items() if c})


class SolveReport:
    def __init__(self, pres, weight, basis, rank, pivot_polys, kernel_vectors,
                 system, actions=None):
        self.pres = pres
        self.weight = weight
        self.basis = basis
        self.generic_rank = rank
        self.pivot_polys = list(pivot_polys)
        self.kernel_vectors = kernel_vectors
        self.system = system
        self.actions = actions

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel_vectors)

    def kernel_elements(self):
        out = []
        for x in self.kernel_vectors:
            data = {}
            for i, c in enumerate(x):
                if c:
                    data[self.basis.monomials[i]] = c
            out.append(Element(self.pres, data))
        return out

    def coordinate_denominators(self):
        dens = []
        for x in self.kernel_vectors:
            for c in x:
                if c and pdeg(c.den) > 0:
                    dens.append(c.den)
        return dens

    def rank_at(self, k0) -> int:
        k0 = Fraction(k0)
        rows = []
        for row in self.system.original_rows:
            out = {}
            for col, v in row.items():
                val = v.evaluate(k0)
                if val:
                    out[col] = val
            if out:
                rows.append(out)
        return _fraction_rank(rows, self.system.ncols)

    def kernel_dim_at(self, k0) -> int:
        return self.system.ncols - self.rank_at(k0)

    def serialize(self):
        from .coefficients import format_ratfunc

        return {
            "weight": str(self.weight),
            "basis_size": len(self.basis),
            "monomials": [list(M) for M in self.basis.monomials],
            "generic_rank": self.generic_rank,
            "kernel_dim": self.kernel_dim,
            "pivot_polynomials": [
                f"({format_poly(p, self.pres.param)})" for p in self.pivot_polys
            ],
            "kernel": [
                [format_ratfunc(c, self.pres.param) for c in vec]
                for vec in self.kernel_vectors
            ],
        }


def _fraction_rank(rows, ncols) -> int:
    rank = 0
    rows = [dict(r) for r in rows]
    for col in range(ncols):
        piv = None
        for i, r in enumerate(rows):
            if r.get(col):
                piv = i
                break
        if piv is None:
            continue
        prow = rows.pop(piv)
        rank += 1
        pval = prow[col]
        for r in rows:
            ev = r.get(col)
            if ev:
                f = ev / pval
                for c, v in prow.items():
                    nv = r.get(c, Fraction(0)) - f * v
                    if nv:
                        r[c] = nv
                    else:
                        r.pop(c, None)
    return rank


def commutant_system(P: VAPresentation, actions, w, basis=None) -> "PolySystem":
    w = Fraction(w)
    if basis is None:
        basis = weight_basis(P, w)
    actions = _normalize_actions(actions)
    for current, _ in actions:
        if current is not None and P.weight_of(current) != 1:
            raise LinearError("commutant currents must have weight one")
    system = PolySystem(len(basis), param=P.param)
    original = []
    nmax = int(ceil(w)) if w > 0 else 0
    # rows are indexed by (action, n, target monomial)
    for a_idx, (current, derivation) in enumerate(actions):
        top = nmax if current is not None else 0
        for n in range(top + 1):
            rows = {}
            for col, M in enumerate(basis.monomials):
                v = P.element({M: 1})
                if current is not None:
                    image = P.nprod(current, v, n)
                else:
                    image = P.zero()
                if n == 0 and derivation is not None:
                    image = image + apply_derivation(P, derivation, v)
                for T, c in image.data.items():
                    rows.setdefault(T, {})[col] = c
            for T in sorted(rows):
                entries = rows[T]
                original.append(dict(entries))
                system.add_row(entries)
    system.original_rows = original
    system.basis = basis
    return system


def commutant_basis(P: VAPresentation, actions, w, basis=None) -> SolveReport:
    w = Fraction(w)
    if basis is None:
        basis = weight_basis(P, w)
    system = commutant_system(P, actions, w, basis)
    rank, pivots, pivot_rows = system.eliminate()
    kernel = system.kernel(pivot_rows)
    return SolveReport(P, w, basis, rank, pivots, kernel, system, actions)


def verify_commutant(P: VAPresentation, v: Element, actions) -> bool:
    """Re-check the commutant conditions directly on an assembled element."""
    if v.is_zero():
        return True
    actions = _normalize_actions(actions)
    w = P.weight_of(v)
    nmax = int(ceil(w)) if w > 0 else 0
    for current, derivation in actions:
        image = P.nprod(current, v, 0) if current is not None else P.zero()
        if derivation is not None:
            image = image + apply_derivation(P, derivation, v)
        if not image.is_zero():
            return False
        if current is None:
            continue
        for n in range(1, nmax + 2):
            if not P.nprod(current, v, n).is_zero():
                return False
    return True


def verify_invariant(P: VAPresentation, v: Element, actions) -> bool:
    """Group-invariance check: the combined zero modes annihilate v.

    This is orbifold membership.  It is weaker than verify_commutant, which
    also requires the higher current modes to act by zero (the coset
    condition); for free-field orbifolds only the zero modes implement the
    group action.
    """
    if v.is_zero():
        return True
    for current, derivation in _normalize_actions(actions):
        image = P.nprod(current, v, 0) if current is not None else P.zero()
        if derivation is not None:
            image = image + apply_derivation(P, derivation, v)
        if not image.is_zero():
            return False
    return True


def invariant_basis(P: VAPresentation, actions, w, basis=None) -> SolveReport:
    """Kernel of the combined zero modes on the weight-w space."""
    w = Fraction(w)
    if basis is None:
        basis = weight_basis(P, w)
    actions = [a if not isinstance(a, Element) else (a, None) for a in actions]
    zero_mode_actions = []
    for current, derivation in actions:
        zero_mode_actions.append((None, _zero_mode_as_derivation(P, current, derivation)))
    return commutant_basis(P, zero_mode_actions, w, basis)


def _zero_mode_as_derivation(P, current, derivation):
    """Fold a current's zero-mode action on generators into a derivation map.

    Valid because weight-one current zero modes act by derivations; the
    result can be combined with an outer derivation acting on other factors.
    """
    out = {g: dict(data) for g, data in (derivation or {}).items()}
    if current is not None:
        for g in range(P.ngen):
            image = P.nprod(current, P.gen(g), 0)
            if image.is_zero():
                continue
            slot = out.setdefault(g, {})
            for M, c in image.data.items():
                slot[M] = slot.get(M, RF_ZERO) + c
    return {g: data for g, data in out.items() if data}


def graded_dimensions(P: VAPresentation, actions, w_max, w_min=None) -> dict:
    step = P.weight_step()
    w = Fraction(w_min) if w_min is not None else step
    out = {}
    while w <= Fraction(w_max):
        if actions:
            out[w] = commutant_basis(P, actions, w).kernel_dim
        else:
            out[w] = len(weight_basis(P, w))
        w += step
    return out


# ---------------------------------------------------------------------------
# Nongeneric-level reporting


class NongenericReport:
    def __init__(self, certified, candidates, poles, factors):
        self.certified = certified      # dict Fraction -> (generic_dim, dim_at)
        self.candidates = set(candidates)
        self.poles = set(poles)
        self.factors = list(factors)    # rational-root-free pivot factors

    @property
    def levels(self):
        return set(self.certified)

    def serialize(self):
        return {
            "certified": {str(k): list(v) for k, v in sorted(self.certified.items())},
            "candidates": sorted(str(c) for c in self.candidates),
            "poles": sorted(str(p) for p in self.poles),
            "irrational_factors": [f"({format_poly(f)})" for f in self.factors],
        }


def nongeneric_levels(report: SolveReport) -> NongenericReport:
    """Rational roots of pivot polynomials and kernel-coordinate denominators.

    Each root is certified when the kernel dimension provably changes at that
    level (by an exact rank computation), otherwise listed as a candidate.
    """
    candidates = set()
    factors = []
    for p in report.pivot_polys:
        if pdeg(p) > 0:
            roots, cofactor = rational_roots(p)
            candidates.update(roots)
            if pdeg(cofactor) > 0 and cofactor not in factors:
                factors.append(cofactor)
    for den in report.coordinate_denominators():
        roots, cofactor = rational_roots(den)
        candidates.update(roots)
        if pdeg(cofactor) > 0 and cofactor not in factors:
            factors.append(cofactor)
    poles = set()
    for den in report.system.cleared_factors:
        roots, _ = rational_roots(den)
        poles.update(roots)
    certified = {}
    remaining = set()
    generic = report.kernel_dim
    for k0 in candidates:
        if k0 in poles:
            continue
        dim_at = report.kernel_dim_at(k0)
        if dim_at != generic:
            certified[k0] = (generic, dim_at)
        else:
            remaining.add(k0)
    return NongenericReport(certified, remaining, poles, factors)


# ---------------------------------------------------------------------------
# Normally ordered words and relations


def enumerate_words(P: VAPresentation, gens, w):
    """Right-nested normally ordered words of weight w in gens and derivatives.

    Returns a list of (label, Element); labels are tuples of
    (generator position, derivative order).  Repeated equal odd factors are
    skipped, as in the PBW spanning convention; odd squares reduce to
    brackets and so to other words whenever the generator set is closed.
    """
    w = Fraction(w)
    info = []
    for pos, g in enumerate(gens):
        info.append((pos, P.weight_of(g), P.parity_of(g)))
    slots = []
    for pos, wt, parity in info:
        d = 0
        while wt + d <= w:
            slots.append((pos, d, wt + d, parity))
            d += 1
    slots.sort()
    words = []

    def recurse(start, remaining, stack):
        if remaining == 0:
            words.append(tuple(stack))
            return
        for idx in range(start, len(slots)):
            pos, d, fw, parity = slots[idx]
            if fw > remaining:
                continue
            if parity and stack and stack[-1] == (pos, d):
                continue
            stack.append((pos, d))
            recurse(idx if not parity else idx + 1, remaining - fw, stack)
            stack.pop()

    recurse(0, w, [])
    words.sort()
    out = []
    for word in words:
        elem = None
        for pos, d in reversed(word):
            piece = gens[pos].deriv(d)
            elem = piece if elem is None else piece.no(elem)
        if elem is not None and not elem.is_zero():
            out.append((word, elem))
    return out


class Relation:
    """multiplier * target = combination, identically over the function field."""

    def __init__(self, target, multiplier: RatFunc, combination: Element, word_coeffs):
        self.target = target
        self.multiplier = multiplier
        self.combination = combination
        self.word_coeffs = word_coeffs

    def verify(self) -> bool:
        return (self.target * self.multiplier - self.combination).is_zero()

    def multiplier_roots(self):
        roots, cofactor = rational_roots(self.multiplier.num)
        return roots, cofactor

    def serialize(self):
        return {
            "multiplier": str(self.multiplier),
            "word_coefficients": {
                str(label): str(c) for label, c in self.word_coeffs.items()
            },
        }


class Obstruction:
    """Certificate that the target is not in the span of the words."""

    def __init__(self, weight, words_rank, combined_rank):
        self.weight = weight
        self.words_rank = words_rank
        self.combined_rank = combined_rank

    def serialize(self):
        return {
            "weight": str(self.weight),
            "words_rank": self.words_rank,
            "combined_rank": self.combined_rank,
        }


def find_relation(P: VAPresentation, target: Element, gens, w=None):
    """Express the target through normally ordered words in the generators.

    Solves multiplier * target = combination over the function field; the
    multiplier is the cleared common denominator (a primitive polynomial).
    Returns a Relation, or an Obstruction if the target is not in the span.
    """
    if w is None:
        w = P.weight_of(target)
    w = Fraction(w)
    if P.weight_of(target) != w:
        raise LinearError("target weight mismatch")
    words = enumerate_words(P, gens, w)
    basis = weight_basis(P, w)
    # solve [words] x = target by elimination over the function field
    cols = len(words)
    rows = {}
    for ci, (_, elem) in enumerate(words):
        for M, c in elem.data.items():
            rows.setdefault(M, {})[ci] = c
    target_col = {}
    for M, c in target.data.items():
        rows.setdefault(M, {})
        target_col[M] = c
    ordered = sorted(rows)
    mat = []
    rhs = []
    for M in ordered:
        mat.append(rows[M])
        rhs.append(target_col.get(M, RF_ZERO))
    sol = _solve_ratfunc(mat, rhs, cols)
    if sol is None:
        words_rank = _ratfunc_rank(mat, cols)
        combined = [dict(r) for r in mat]
        for i, r in enumerate(combined):
            if rhs[i]:
                r[cols] = rhs[i]
        combined_rank = _ratfunc_rank(combined, cols + 1)
        return Obstruction(w, words_rank, combined_rank)
    # clear denominators into a primitive polynomial multiplier
    den = PONE
    for c in sol:
        if c:
            g = pgcd(den, c.den)
            den = pdivmod(pmul(den, c.den), g)[0]
    multiplier = RatFunc(pprimitive(den), PONE)
    scale = multiplier
    combination = P.zero()
    word_coeffs = {}
    for ci, (label, elem) in enumerate(words):
        c = sol[ci] * scale
        if c:
            combination = combination + elem * c
            word_coeffs[label] = c
    return Relation(target, multiplier, combination, word_coeffs)


def _solve_ratfunc(rows, rhs, ncols):
    """Solve rows * x = rhs over RatFunc; None if inconsistent."""
    rows = [dict(r) for r in rows]
    rhs = list(rhs)
    pivots = []
    used = set()
    row_order = list(range(len(rows)))
    for col in range(ncols):
        piv = None
        for i in row_order:
            if i not in used and rows[i].get(col):
                piv = i
                break
        if piv is None:
            continue
        used.add(piv)
        pivots.append((col, piv))
        pval = rows[piv][col]
        for i in row_order:
            if i == piv:
                continue
            ev = rows[i].get(col)
            if ev:
                f = ev / pval
                for c, v in rows[piv].items():
                    nv = rows[i].get(c, RF_ZERO) - f * v
                    if nv:
                        rows[i][c] = nv
                    else:
                        rows[i].pop(c, None)
                rhs[i] = rhs[i] - f * rhs[piv]
    for i in row_order:
        if i not in used and rhs[i]:
            return None
    x = [RF_ZERO] * ncols
    for col, piv in pivots:
        x[col] = rhs[piv] / rows[piv][col]
    return x


def _ratfunc_rank(rows, ncols) -> int:
    rows = [dict(r) for r in rows]
    rank = 0
    for col in range(ncols):
        piv = None
        for i, r in enumerate(rows):
            if r.get(col):
                piv = i
                break
        if piv is None:
            continue
        prow = rows.pop(piv)
        rank += 1
        pval = prow[col]
        for r in rows:
            ev = r.get(col)
            if ev:
                f = ev / pval
                for c, v in prow.items():
                    nv = r.get(c, RF_ZERO) - f * v
                    if nv:
                        r[c] = nv
                    else:
                        r.pop(c, None)
    return rank


# ---------------------------------------------------------------------------
# Decoupling analysis


class DecouplingReport:
    def __init__(self, weight, commutant_dim, words_count, target, relation,
                 roots, root_cofactor, poles):
        self.weight = weight
        self.commutant_dim = commutant_dim
        self.words_count = words_count
        self.target = target
        self.relation = relation
        self.roots = dict(roots)          # root -> multiplicity
        self.root_cofactor = root_cofactor
        # the pinned target has poles exactly at the multiplier roots; the
        # remaining poles come from the generators' own normalization
        self.poles = set(poles) - set(self.roots)

    @property
    def multiplier(self) -> RatFunc:
        return self.relation.multiplier

    def serialize(self):
        return {
            "weight": str(self.weight),
            "commutant_dim": self.commutant_dim,
            "words": self.words_count,
            "multiplier": str(self.multiplier),
            "multiplier_roots": {str(r): m for r, m in sorted(self.roots.items())},
            "poles": sorted(str(p) for p in self.poles),
        }


def pin_commutant_element(report: SolveReport, shape: dict) -> Element:
    """The kernel element whose coefficients on the given monomials are as
    prescribed; used to normalize a deformation by its free-field limit shape.

    shape maps monomials to coefficients and must determine the element
    uniquely; every shape entry is verified on the result.
    """
    kers = report.kernel_elements()
    if not kers:
        raise LinearError("empty kernel; nothing to pin")
    rows = []
    rhs = []
    for M, value in shape.items():
        rows.append({i: v.coeff(tuple(M)) for i, v in enumerate(kers)})
        rhs.append(value if isinstance(value, RatFunc) else RatFunc.const(value))
    sol = _solve_ratfunc(rows, rhs, len(kers))
    if sol is None:
        raise LinearError("shape constraints are inconsistent with the kernel")
    out = report.pres.zero()
    for i, c in enumerate(sol):
        if c:
            out = out + kers[i] * c
    for M, value in shape.items():
        want = value if isinstance(value, RatFunc) else RatFunc.const(value)
        if out.coeff(tuple(M)) != want:
            raise LinearError("shape constraints do not pin a kernel element")
    return out


def decoupling_multiplier(P: VAPresentation, actions, gens, w,
                          target_shape=None, target=None,
                          charge_currents=None) -> DecouplingReport:
    """Decoupling relation for the weight-w deformation pinned by its shape.

    The commutant at weight w is solved over the function field; the target
    is the unique kernel element matching target_shape (or is given
    directly), and the relation multiplier * target = combination of
    normally ordered words in gens is computed.  The multiplier's rational
    roots are the levels where the pinned deformation fails to decouple;
    denominators of the ambient coefficients of the target and words are
    reported separately as poles.

    charge_currents, when given, restricts the solve to the joint charge-0
    eigenspace of their zero modes; kernel elements always lie there, so
    this only shrinks the system.
    """
    w = Fraction(w)
    basis = None
    if charge_currents:
        basis = charge_filter(
            weight_basis(P, w), currents=charge_currents,
            charges=[Fraction(0)] * len(charge_currents),
        )
    com = commutant_basis(P, actions, w, basis=basis)
    if target is None:
        if target_shape is None:
            raise LinearError("either a target or a target shape is required")
        target = pin_commutant_element(com, target_shape)
    if not verify_commutant(P, target, actions):
        raise LinearError("target is not in the commutant")
    words = enumerate_words(P, gens, w)
    expected = len(words)
    if com.kernel_dim > expected:
        # more commutant directions than words: a genuinely new generator
        raise LinearError(
            f"commutant dimension {com.kernel_dim} exceeds word count "
            f"{expected}; no decoupling relation can exist"
        )
    rel = find_relation(P, target, gens, w)
    if isinstance(rel, Obstruction):
        raise LinearError(
            f"target not in the span of words: ranks {rel.words_rank} vs "
            f"{rel.combined_rank}"
        )
    roots, cofactor = rel.multiplier_roots()
    poles = set()
    for elem in [target] + [e for _, e in words]:
        for c in elem.data.values():
            if pdeg(c.den) > 0:
                poles.update(rational_roots(c.den)[0])
    return DecouplingReport(
        w, com.kernel_dim, len(words), target, rel, roots, cofactor, poles
    )
