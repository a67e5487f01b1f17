"""Mode-action oracle on the Fock space of a free field algebra.

Used to cross-check the symbolic rewriting engine: states are monomials in
negative generator modes acting on the vacuum, generator modes obey the
(anti)commutation relations read off the bracket table, and modes of
composite fields are expanded with the iterate formula.  Everything here
works with explicit state vectors over Q, independent of the canonical-form
machinery in core.py.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .core import VAError, VAPresentation

# a state is a tuple of (gen_id, mode) pairs applied left-to-right to |0>,
# kept sorted ascending with parity signs tracked during sorting.


class FockOracle:
    def __init__(self, pres: VAPresentation):
        self.pres = pres
        self.pairing = {}
        for (i, j), cs in pres.table.items():
            for n, cn in enumerate(cs):
                if not cn:
                    continue
                if set(cn) != {()}:
                    raise VAError("Fock oracle requires a free (central) table")
                self.pairing[(i, j, n)] = cn[()].constant_value()

    # -- elementary modes ---------------------------------------------------

    def _contraction(self, g, m, h, n) -> Fraction:
        """Scalar [g_(m), h_(n)]_{+/-} = C(m, m+n+1) (g_(m+n+1) h)_vac."""
        i = m + n + 1
        if i < 0:
            return Fraction(0)
        s = self.pairing.get((g, h, i))
        if not s:
            return Fraction(0)
        return Fraction(comb(m, i)) * s if m >= 0 else Fraction(_comb_neg(m, i)) * s

    def apply_gen_mode(self, g: int, m: int, vec: dict) -> dict:
        out = {}
        for state, coeff in vec.items():
            for st2, c2 in self._apply_one(g, m, state):
                key = st2
                out[key] = out.get(key, Fraction(0)) + coeff * c2
        return {s: c for s, c in out.items() if c}

    def _apply_one(self, g, m, state):
        pg = self.pres.gen_parity(g)
        results = []
        if m < 0:
            # creation: insert into sorted position with parity signs
            sign = 1
            for pos, (h, n) in enumerate(state):
                if (g, m) < (h, n):
                    results.append((state[:pos] + ((g, m),) + state[pos:], Fraction(sign)))
                    return results
                if (g, m) == (h, n) and pg:
                    return results  # odd square of a single mode
                if pg and self.pres.gen_parity(h):
                    sign = -sign
            results.append((state + ((g, m),), Fraction(sign)))
            return results
        # annihilation-type mode: commute to the right, collect contractions
        sign = 1
        for pos, (h, n) in enumerate(state):
            c = self._contraction(g, m, h, n)
            if c:
                rest = state[:pos] + state[pos + 1 :]
                results.append((rest, Fraction(sign) * c))
            if pg and self.pres.gen_parity(h):
                sign = -sign
        # g_(m) |0> = 0 for m >= 0: no terminal term
        return results

    # -- composite field modes ------------------------------------------------

    def state_weight(self, state) -> Fraction:
        return sum(
            (self.pres.gen_weight(g) - m - 1 for g, m in state), Fraction(0)
        )

    def vec_max_weight(self, vec) -> Fraction:
        return max((self.state_weight(s) for s in vec), default=Fraction(-1))

    def apply_mono_mode(self, M, n: int, vec: dict) -> dict:
        if not vec:
            return {}
        if not M:
            return dict(vec) if n == -1 else {}
        if len(M) == 1:
            g, d = M[0]
            coeff = Fraction(1)
            mode = n
            for _ in range(d):
                coeff *= -mode
                mode -= 1
            if not coeff:
                return {}
            out = self.apply_gen_mode(g, mode, vec)
            return {s: c * coeff for s, c in out.items()}
        a = M[:1]
        rest = M[1:]
        pa = self.pres.mono_parity(a)
        pr = self.pres.mono_parity(rest)
        sign = Fraction(-1 if (pa and pr) else 1)
        wt_rest = self.pres.mono_weight(rest)
        wt_a = self.pres.mono_weight(a)
        top = self.vec_max_weight(vec)
        out = {}
        j = 0
        while wt_rest + top - (n + j) - 1 >= 0:
            inner = self.apply_mono_mode(rest, n + j, vec)
            if inner:
                for s, c in self.apply_mono_mode(a, -1 - j, inner).items():
                    out[s] = out.get(s, Fraction(0)) + c
            j += 1
        j = 0
        while wt_a + top - j - 1 >= 0:
            inner = self.apply_mono_mode(a, j, vec)
            if inner:
                for s, c in self.apply_mono_mode(rest, n - 1 - j, inner).items():
                    out[s] = out.get(s, Fraction(0)) + sign * c
            j += 1
        return {s: c for s, c in out.items() if c}

    # -- the state map ----------------------------------------------------------

    def state_of_monomial(self, M) -> dict:
        vec = {(): Fraction(1)}
        for g, d in reversed(M):
            vec = self.apply_gen_mode(g, -1 - d, vec)
            if d:
                vec = {s: c * factorial(d) for s, c in vec.items()}
        return vec

    def state_of_element(self, x) -> dict:
        out = {}
        for M, c in x.data.items():
            cv = c.constant_value()
            for s, sc in self.state_of_monomial(M).items():
                out[s] = out.get(s, Fraction(0)) + cv * sc
        return {s: c for s, c in out.items() if c}

    # -- the oracle check ---------------------------------------------------------

    def check_product(self, M, N, n: int) -> bool:
        """Compare engine M_(n) N against the mode action on the Fock space."""
        engine = self.pres.nprod(
            self.pres.element({M: 1}), self.pres.element({N: 1}), n
        )
        lhs = self.state_of_element(engine)
        rhs = self.apply_mono_mode(M, n, self.state_of_monomial(N))
        return lhs == rhs


def _comb_neg(m: int, i: int) -> int:
    """Binomial C(m, i) for negative m, integer i >= 0."""
    num = 1
    for t in range(i):
        num *= m - t
    return num // factorial(i)
