"""Finite-dimensional Lie (super)algebras given by structure constants.

A presentation stores a basis with parities, sparse structure constants
f_{ij}^m over Q, and an invariant bilinear form.  Validation checks
super-antisymmetry, the super Jacobi identity on all triples, and
invariance/supersymmetry of the form; the classical families are built from
explicit matrices in the defining representation so their constants are
computed, not keyed in.
"""

from __future__ import annotations

from fractions import Fraction

from .coefficients import Rational


class LieError(ValueError):
    pass


class NotSimpleError(LieError):
    pass


EVEN, ODD = 0, 1


class LiePresentation:
    """Validated structure-constant presentation with invariant form."""

    def __init__(self, names, parities, brackets, form, name="lie"):
        self.name = name
        self.names = tuple(names)
        self.parities = tuple(parities)
        self.dim = len(self.names)
        # brackets: dict (i, j) -> dict m -> Fraction, sparse, both orders stored
        self.brackets = {k: dict(v) for k, v in brackets.items() if v}
        self.form = tuple(tuple(Fraction(c) for c in row) for row in form)
        self._validate()

    # -- accessors ----------------------------------------------------------

    def bracket(self, i: int, j: int) -> dict:
        return self.brackets.get((i, j), {})

    def parity(self, i: int) -> int:
        return self.parities[i]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def sdim(self) -> int:
        return sum(1 if p == EVEN else -1 for p in self.parities)

    def same_structure(self, other) -> bool:
        return (
            isinstance(other, LiePresentation)
            and self.names == other.names
            and self.parities == other.parities
            and self.brackets == other.brackets
            and self.form == other.form
        )

    def bracket_vectors(self, x: dict, y: dict) -> dict:
        """Bracket of two coordinate vectors (dicts index -> Fraction)."""
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for m, c in self.bracket(i, j).items():
                    out[m] = out.get(m, Fraction(0)) + a * b * c
        return {m: c for m, c in out.items() if c}

    def form_vectors(self, x: dict, y: dict) -> Fraction:
        total = Fraction(0)
        for i, a in x.items():
            for j, b in y.items():
                total += a * b * self.form[i][j]
        return total

    # -- validation ---------------------------------------------------------

    def _validate(self):
        n = self.dim
        if len(self.form) != n or any(len(row) != n for row in self.form):
            raise LieError("form matrix has wrong shape")
        for (i, j) in self.brackets:
            if not (0 <= i < n and 0 <= j < n):
                raise LieError(f"bracket index out of range: ({i}, {j})")
        for i in range(n):
            for j in range(n):
                pi, pj = self.parities[i], self.parities[j]
                sign = -1 if (pi and pj) else 1
                # parity of the bracket
                for m, c in self.bracket(i, j).items():
                    if self.parities[m] != (pi + pj) % 2:
                        raise LieError(
                            f"bracket [{self.names[i]},{self.names[j]}] "
                            f"has wrong parity component {self.names[m]}"
                        )
                # super-antisymmetry: [x,y] = -(-1)^{p(x)p(y)} [y,x]
                lhs = self.bracket(i, j)
                rhs = self.bracket(j, i)
                keys = set(lhs) | set(rhs)
                for m in keys:
                    if lhs.get(m, 0) != -sign * rhs.get(m, 0):
                        raise LieError(
                            f"antisymmetry fails on ({self.names[i]}, {self.names[j]})"
                        )
                # supersymmetry of B; odd-even pairing vanishes
                if self.form[i][j] != sign * self.form[j][i]:
                    raise LieError(
                        f"form not supersymmetric at ({self.names[i]}, {self.names[j]})"
                    )
                if pi != pj and self.form[i][j] != 0:
                    raise LieError("form pairs opposite parities")
        self._check_jacobi()
        self._check_invariance()

    def _check_jacobi(self):
        # [x_i, [x_j, x_m]] = [[x_i, x_j], x_m] + (-1)^{p_i p_j} [x_j, [x_i, x_m]]
        n = self.dim
        for i in range(n):
            for j in range(n):
                sign = -1 if (self.parities[i] and self.parities[j]) else 1
                for m in range(n):
                    lhs = self.bracket_vectors({i: Fraction(1)}, self.bracket(j, m))
                    rhs = self.bracket_vectors(self.bracket(i, j), {m: Fraction(1)})
                    for t, c in self.bracket_vectors(
                        {j: Fraction(1)}, self.bracket(i, m)
                    ).items():
                        rhs[t] = rhs.get(t, Fraction(0)) + sign * c
                    rhs = {t: c for t, c in rhs.items() if c}
                    if lhs != rhs:
                        raise LieError(
                            "Jacobi identity fails on triple "
                            f"({self.names[i]}, {self.names[j]}, {self.names[m]})"
                        )

    def _check_invariance(self):
        # B([x,y], z) = B(x, [y,z])
        n = self.dim
        for i in range(n):
            for j in range(n):
                for m in range(n):
                    lhs = sum(
                        (c * self.form[t][m] for t, c in self.bracket(i, j).items()),
                        Fraction(0),
                    )
                    rhs = sum(
                        (c * self.form[i][t] for t, c in self.bracket(j, m).items()),
                        Fraction(0),
                    )
                    if lhs != rhs:
                        raise LieError(
                            "form not invariant on triple "
                            f"({self.names[i]}, {self.names[j]}, {self.names[m]})"
                        )

    # -- derived data -------------------------------------------------------

    def gram_inverse(self):
        n = self.dim
        aug = [
            [Fraction(self.form[i][j]) for j in range(n)]
            + [Fraction(1 if j == i else 0) for j in range(n)]
            for i in range(n)
        ]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if piv is None:
                raise LieError("form is degenerate")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [c * inv for c in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        return [row[n:] for row in aug]

    def dual_basis(self):
        """Coordinate vectors xi'_i with B(xi'_i, xi_j) = delta_{ij}."""
        ginv = self.gram_inverse()
        # xi'_i = sum_m c_{im} xi_m with sum_m c_{im} B(xi_m, xi_j) = delta_{ij},
        # i.e. C = G^{-1} with G the Gram matrix B(xi_i, xi_j) (G need not be
        # symmetric: odd-odd blocks are antisymmetric).
        n = self.dim
        duals = []
        for i in range(n):
            vec = {m: ginv[i][m] for m in range(n) if ginv[i][m]}
            duals.append(vec)
        for i in range(n):
            for j in range(n):
                val = self.form_vectors(duals[i], {j: Fraction(1)})
                if val != (1 if i == j else 0):
                    raise LieError("dual basis construction failed")
        return duals

    def dual_coxeter(self) -> Rational:
        """Half the adjoint Casimir eigenvalue; errors if not scalar."""
        duals = self.dual_basis()
        eig = None
        for x in range(self.dim):
            acc = {}
            for i in range(self.dim):
                inner = self.bracket_vectors(duals[i], {x: Fraction(1)})
                outer = self.bracket_vectors({i: Fraction(1)}, inner)
                for m, c in outer.items():
                    acc[m] = acc.get(m, Fraction(0)) + c
            acc = {m: c for m, c in acc.items() if c}
            if set(acc) - {x} or (x not in acc and acc):
                raise NotSimpleError("adjoint Casimir is not scalar")
            val = acc.get(x, Fraction(0))
            if eig is None:
                eig = val
            elif eig != val:
                raise NotSimpleError("adjoint Casimir is not scalar")
        if eig is None:
            raise NotSimpleError("zero-dimensional algebra")
        return eig / 2


def lie_from_constants(basis, constants, form, name="lie") -> LiePresentation:
    """Build and validate a presentation.

    basis: list of (name, parity) with parity "even"/"odd" or 0/1.
    constants: mapping (i, j) -> {m: value} or list of [i, j, [(m, value), ...]].
    form: dense matrix of Fractions / strings.
    """
    names = []
    parities = []
    for entry in basis:
        n, p = entry
        names.append(n)
        if p in (EVEN, ODD):
            parities.append(p)
        else:
            parities.append({"even": EVEN, "odd": ODD}[p])
    brackets = {}
    if isinstance(constants, dict):
        items = constants.items()
    else:
        items = (((i, j), dict(pairs)) for i, j, pairs in constants)
    for (i, j), comp in items:
        comp = {m: Fraction(c) for m, c in dict(comp).items() if Fraction(c)}
        if comp:
            brackets[(i, j)] = comp
    form = [[Fraction(c) for c in row] for row in form]
    return LiePresentation(names, parities, brackets, form, name=name)


# ---------------------------------------------------------------------------
# Classical families from matrices in the defining representation


def _mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    out = [[Fraction(0)] * p for _ in range(n)]
    for i in range(n):
        for k in range(m):
            if a[i][k]:
                for j in range(p):
                    out[i][j] += a[i][k] * b[k][j]
    return out


def _mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_trace(a):
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def _unit(n, i, j):
    m = [[Fraction(0)] * n for _ in range(n)]
    m[i][j] = Fraction(1)
    return m


def _mat_add_scaled(a, b, c):
    return [[x + c * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def lie_from_matrices(names, matrices, form_scale=Fraction(1), name="lie"):
    """Even Lie algebra spanned by given matrices, trace form times form_scale.

    Structure constants are obtained by expanding commutators in the span;
    the matrices must be linearly independent and closed under commutator.
    """
    dim = len(matrices)
    size = len(matrices[0])
    flat = [[m[i][j] for i in range(size) for j in range(size)] for m in matrices]

    def expand(mat):
        target = [mat[i][j] for i in range(size) for j in range(size)]
        # solve sum_m c_m flat[m] = target by Gaussian elimination
        cols = dim
        rows = len(target)
        aug = [[flat[m][r] for m in range(cols)] + [target[r]] for r in range(rows)]
        coeffs = [Fraction(0)] * cols
        r = 0
        pivots = []
        for c in range(cols):
            piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
            if piv is None:
                continue
            aug[r], aug[piv] = aug[piv], aug[r]
            inv = 1 / aug[r][c]
            aug[r] = [v * inv for v in aug[r]]
            for i in range(rows):
                if i != r and aug[i][c]:
                    f = aug[i][c]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
            pivots.append(c)
            r += 1
        for row_i, c in enumerate(pivots):
            coeffs[c] = aug[row_i][cols]
        # consistency
        check = [Fraction(0)] * rows
        for m in range(cols):
            if coeffs[m]:
                for i in range(rows):
                    check[i] += coeffs[m] * flat[m][i]
        if check != target:
            raise LieError("commutator not in the span of the basis")
        return {m: c for m, c in enumerate(coeffs) if c}

    brackets = {}
    for i in range(dim):
        for j in range(dim):
            comm = _mat_sub(_mat_mul(matrices[i], matrices[j]), _mat_mul(matrices[j], matrices[i]))
            comp = expand(comm)
            if comp:
                brackets[(i, j)] = comp
    form = [
        [form_scale * _mat_trace(_mat_mul(matrices[i], matrices[j])) for j in range(dim)]
        for i in range(dim)
    ]
    return LiePresentation(names, [EVEN] * dim, brackets, form, name=name)


def _sl2() -> LiePresentation:
    # H = diag(1/2, -1/2), Xp = e12, Xm = e21; B = trace form on C^2,
    # so B(H,H) = 1/2 and B(Xp,Xm) = 1, matching the affine OPE displays.
    h = [[Fraction(1, 2), Fraction(0)], [Fraction(0), Fraction(-1, 2)]]
    return lie_from_matrices(["H", "Xp", "Xm"], [h, _unit(2, 0, 1), _unit(2, 1, 0)], name="sl2")


def _sl3() -> LiePresentation:
    mats = []
    names = []
    for i in range(3):
        for j in range(3):
            if i != j:
                names.append(f"E{i+1}{j+1}")
                mats.append(_unit(3, i, j))
    for i in range(2):
        names.append(f"H{i+1}")
        m = [[Fraction(0)] * 3 for _ in range(3)]
        m[i][i] = Fraction(1)
        m[i + 1][i + 1] = Fraction(-1)
        mats.append(m)
    return lie_from_matrices(names, mats, name="sl3")


def _gl(n: int) -> LiePresentation:
    mats = []
    names = []
    for i in range(n):
        for j in range(n):
            names.append(f"E{i+1}{j+1}")
            mats.append(_unit(n, i, j))
    return lie_from_matrices(names, mats, name=f"gl{n}")


def _sp(n: int) -> LiePresentation:
    """sp_{2n} in the basis used by the beta-gamma embedding; trace form."""
    mats = []
    names = []
    for j in range(n):
        for k in range(j, n):
            names.append(f"S{j+1}{k+1}")
            mats.append(_mat_add_scaled(_unit(2 * n, j, k + n), _unit(2 * n, k, j + n), Fraction(1)))
    for j in range(n):
        for k in range(j, n):
            names.append(f"T{j+1}{k+1}")
            mats.append(
                _mat_add_scaled(
                    [[Fraction(0)] * (2 * n) for _ in range(2 * n)],
                    _mat_add_scaled(_unit(2 * n, j + n, k), _unit(2 * n, k + n, j), Fraction(1)),
                    Fraction(-1),
                )
            )
    for j in range(n):
        for k in range(n):
            names.append(f"U{j+1}{k+1}")
            mats.append(_mat_add_scaled(_unit(2 * n, j, k), _unit(2 * n, n + k, n + j), Fraction(-1)))
    return lie_from_matrices(names, mats, name=f"sp{2*n}")


def _so(m: int) -> LiePresentation:
    """so_m with basis M_ij = E_ij - E_ji (i < j); half the trace form."""
    mats = []
    names = []
    for i in range(m):
        for j in range(i + 1, m):
            names.append(f"M{i+1}{j+1}")
            mats.append(_mat_add_scaled(_unit(m, i, j), _unit(m, j, i), Fraction(-1)))
    if not mats:
        return LiePresentation([], [], {}, [], name=f"so{m}")
    return lie_from_matrices(names, mats, form_scale=Fraction(1, 2), name=f"so{m}")


def _osp12() -> LiePresentation:
    """osp(1|2) with the bracket and form read off the affine OPE display."""
    names = ["H", "Xp", "Xm", "phip", "phim"]
    parities = [EVEN, EVEN, EVEN, ODD, ODD]
    H, XP, XM, FP, FM = range(5)
    one = Fraction(1)
    half = Fraction(1, 2)
    br = {}

    def setbr(i, j, comp):
        comp = {m: Fraction(c) for m, c in comp.items() if c}
        if comp:
            br[(i, j)] = comp
        sign = -1 if (parities[i] and parities[j]) else 1
        flipped = {m: -sign * c for m, c in comp.items()}
        if flipped:
            br[(j, i)] = flipped

    setbr(H, XP, {XP: one})
    setbr(H, XM, {XM: -one})
    setbr(XP, XM, {H: 2 * one})
    setbr(H, FP, {FP: half})
    setbr(H, FM, {FM: -half})
    setbr(XP, FM, {FP: -one})
    setbr(XM, FP, {FM: -one})
    br[(FP, FP)] = {XP: half}
    br[(FM, FM)] = {XM: -half}
    setbr(FP, FM, {H: half})
    form = [[Fraction(0)] * 5 for _ in range(5)]
    form[H][H] = half
    form[XP][XM] = form[XM][XP] = one
    form[FP][FM] = half
    form[FM][FP] = -half
    return LiePresentation(names, parities, br, form, name="osp(1|2)")


_BUILTINS = {
    "sl2": _sl2,
    "sl3": _sl3,
    "sp2": lambda: _sp(1),
    "sp4": lambda: _sp(2),
    "so1": lambda: _so(1),
    "so2": lambda: _so(2),
    "so3": lambda: _so(3),
    "osp(1|2)": _osp12,
    "gl(1)": lambda: _gl(1),
    "gl(2)": lambda: _gl(2),
    "gl(3)": lambda: _gl(3),
    "gl1": lambda: _gl(1),
    "gl2": lambda: _gl(2),
    "gl3": lambda: _gl(3),
    "osp12": _osp12,
}


def builtin_lie(name: str) -> LiePresentation:
    try:
        builder = _BUILTINS[name]
    except KeyError:
        raise LieError(f"unknown built-in Lie algebra {name!r}") from None
    return builder()


def builtin_names():
    return sorted(set(_BUILTINS))
