"""Builders for the free-field and affine algebras and their named elements.

Every constructor attaches the standard conformal vector (when one exists)
as presentation metadata, and the embedding constructors return images that
carry a machine-checked homomorphism certificate.
"""

from __future__ import annotations

from fractions import Fraction

from .coefficients import (
    DivergesAtInfinity,
    RF_ONE,
    RF_ZERO,
    RatFunc,
)
from .core import EVEN, ODD, Element, Generator, VAError, VAPresentation
from .lie import LiePresentation, builtin_lie


class ConstructionError(VAError):
    pass


class CriticalLevelError(ConstructionError):
    pass


def _check_rank(n: int):
    if n < 0:
        raise ConstructionError(f"rank must be nonnegative, got {n}")


def _vac(c) -> dict:
    c = c if isinstance(c, RatFunc) else RatFunc.const(c)
    return {(): c} if c else {}


def _gen_mono(i: int, d: int = 0) -> dict:
    return {((i, d),): RF_ONE}


# ---------------------------------------------------------------------------
# Free field algebras


def heisenberg(n: int, param="k") -> VAPresentation:
    """H(n): even weight-1 generators with [a^i_lambda a^j] = delta_ij lambda."""
    _check_rank(n)
    gens = [Generator(i, f"a{i+1}", EVEN, 1) for i in range(n)]
    table = {(i, i): ({}, _vac(1)) for i in range(n)}
    P = VAPresentation(gens, table, param=param, name=f"H({n})")
    L = P.zero()
    half = RatFunc.const(Fraction(1, 2))
    for i in range(n):
        L = L + P.gen(i).no(P.gen(i)) * half
    P.metadata["conformal"] = L
    P.metadata["central_charge"] = RatFunc.const(n)
    return P


def heisenberg_pairs(n: int, names=None, param="k") -> VAPresentation:
    """Rank-2n Heisenberg in paired form: [a^i_lambda abar^j] = delta_ij lambda."""
    _check_rank(n)
    if names is None:
        names = [f"a{i+1}" for i in range(n)] + [f"abar{i+1}" for i in range(n)]
    gens = [Generator(i, names[i], EVEN, 1) for i in range(2 * n)]
    table = {}
    for i in range(n):
        table[(i, n + i)] = ({}, _vac(1))
        table[(n + i, i)] = ({}, _vac(1))
    P = VAPresentation(gens, table, param=param, name=f"Hpair({n})")
    L = P.zero()
    for i in range(n):
        L = L + P.gen(i).no(P.gen(n + i))
    P.metadata["conformal"] = L
    P.metadata["central_charge"] = RatFunc.const(2 * n)
    return P


def free_fermion(n: int, param="k") -> VAPresentation:
    """F(n): odd weight-1/2 generators with [phi^i_lambda phi^j] = delta_ij."""
    _check_rank(n)
    gens = [Generator(i, f"phi{i+1}", ODD, Fraction(1, 2)) for i in range(n)]
    table = {(i, i): (_vac(1),) for i in range(n)}
    P = VAPresentation(gens, table, param=param, name=f"F({n})")
    L = P.zero()
    mhalf = RatFunc.const(Fraction(-1, 2))
    for i in range(n):
        L = L + P.gen(i).no(P.gen(i, 1)) * mhalf
    P.metadata["conformal"] = L
    P.metadata["central_charge"] = RatFunc.const(Fraction(n, 2))
    return P


def bc_system(n: int, param="k") -> VAPresentation:
    """E(n): odd b^i, c^i of weight 1/2 with first-order pairing."""
    _check_rank(n)
    names = []
    for i in range(n):
        names.append(f"b{i+1}" if n > 1 else "b")
    for i in range(n):
        names.append(f"c{i+1}" if n > 1 else "c")
    gens = [Generator(i, names[i], ODD, Fraction(1, 2)) for i in range(2 * n)]
    table = {}
    for i in range(n):
        table[(i, n + i)] = (_vac(1),)
        table[(n + i, i)] = (_vac(1),)
    P = VAPresentation(gens, table, param=param, name=f"E({n})")
    L = P.zero()
    half = RatFunc.const(Fraction(1, 2))
    for i in range(n):
        L = L + (P.gen(i, 1).no(P.gen(n + i)) + P.gen(n + i, 1).no(P.gen(i))) * half
    P.metadata["conformal"] = L
    P.metadata["central_charge"] = RatFunc.const(n)
    return P


def beta_gamma(n: int, param="k") -> VAPresentation:
    """S(n): even beta^i, gamma^i of weight 1/2, [beta_l gamma] = 1 = -[gamma_l beta]."""
    _check_rank(n)
    names = []
    for i in range(n):
        names.append(f"beta{i+1}" if n > 1 else "beta")
    for i in range(n):
        names.append(f"gamma{i+1}" if n > 1 else "gamma")
    gens = [Generator(i, names[i], EVEN, Fraction(1, 2)) for i in range(2 * n)]
    table = {}
    for i in range(n):
        table[(i, n + i)] = (_vac(1),)
        table[(n + i, i)] = (_vac(-1),)
    P = VAPresentation(gens, table, param=param, name=f"S({n})")
    L = P.zero()
    half = RatFunc.const(Fraction(1, 2))
    for i in range(n):
        L = L + (P.gen(i).no(P.gen(n + i, 1)) - P.gen(i, 1).no(P.gen(n + i))) * half
    P.metadata["conformal"] = L
    P.metadata["central_charge"] = RatFunc.const(-n)
    return P


def symplectic_fermion(n: int, param="k") -> VAPresentation:
    """A(n): odd e^i, f^i of weight 1 with second-order pairing."""
    _check_rank(n)
    names = []
    for i in range(n):
        names.append(f"e{i+1}" if n > 1 else "e")
    for i in range(n):
        names.append(f"f{i+1}" if n > 1 else "f")
    gens = [Generator(i, names[i], ODD, 1) for i in range(2 * n)]
    table = {}
    for i in range(n):
        table[(i, n + i)] = ({}, _vac(1))
        table[(n + i, i)] = ({}, _vac(-1))
    P = VAPresentation(gens, table, param=param, name=f"A({n})")
    L = P.zero()
    for i in range(n):
        L = L - P.gen(i).no(P.gen(n + i))
    P.metadata["conformal"] = L
    P.metadata["central_charge"] = RatFunc.const(-2 * n)
    return P


def trivial(param="k") -> VAPresentation:
    return VAPresentation([], {}, param=param, name="C")


# ---------------------------------------------------------------------------
# Affine vertex superalgebras


def affine(lie: LiePresentation, level, param="k", name=None) -> VAPresentation:
    """V_level(g, B): one weight-1 generator per basis vector of g."""
    if isinstance(level, str):
        from .coefficients import parse_ratfunc

        level = parse_ratfunc(level, param)
    elif not isinstance(level, RatFunc):
        level = RatFunc.const(level)
    gens = [
        Generator(i, lie.names[i], lie.parities[i], 1) for i in range(lie.dim)
    ]
    table = {}
    for i in range(lie.dim):
        for j in range(lie.dim):
            c0 = {}
            for m, c in lie.bracket(i, j).items():
                c0[((m, 0),)] = RatFunc.const(c)
            c1 = {}
            central = level * RatFunc.const(lie.form[i][j])
            if central:
                c1[()] = central
            if c0 or c1:
                table[(i, j)] = (c0, c1)
    P = VAPresentation(
        gens, table, param=param, name=name or f"V({lie.name};{level})"
    )
    P.metadata["lie"] = lie
    P.metadata["level"] = level
    return P


def sugawara(P: VAPresentation) -> Element:
    """Sugawara conformal vector of an affine presentation."""
    lie = P.metadata.get("lie")
    level = P.metadata.get("level")
    if lie is None or level is None:
        raise ConstructionError("sugawara requires an affine presentation")
    hv = lie.dual_coxeter()
    shifted = level + RatFunc.const(hv)
    if not shifted:
        raise CriticalLevelError(f"critical level: k = {-hv}")
    duals = lie.dual_basis()
    L = P.zero()
    for i in range(lie.dim):
        dual_elem = P.zero()
        for m, c in duals[i].items():
            dual_elem = dual_elem + P.gen(m) * RatFunc.const(c)
        L = L + P.gen(i).no(dual_elem)
    scale = RF_ONE / (RatFunc.const(2) * shifted)
    L = L * scale
    return L


def sugawara_central_charge(P: VAPresentation) -> RatFunc:
    lie = P.metadata["lie"]
    level = P.metadata["level"]
    hv = lie.dual_coxeter()
    return (
        level
        * RatFunc.const(lie.sdim())
        / (level + RatFunc.const(hv))
    )


# ---------------------------------------------------------------------------
# Conformal structure testers


def virasoro_test(L: Element):
    """Check [L_l L] = dL + 2 lambda L + lambda^3/12 c; return (ok, c)."""
    P = L.pres
    br = P.lambda_bracket(L, L)
    ok = True
    if br.c(0) != P.derivative(L):
        ok = False
    if br.c(1) != L * RatFunc.const(2):
        ok = False
    if not br.c(2).is_zero():
        ok = False
    c3 = br.c(3)
    charge = RF_ZERO
    if set(c3.data) - {()}:
        ok = False
    else:
        # c_3 = c/2 vacuum since lambda^3/3! * (c/2) = lambda^3/12 c
        charge = c3.coeff(()) * RatFunc.const(2)
    if br.order() > 4:
        ok = False
    return ok, charge


def primary_test(L: Element, a: Element):
    """Check [L_l a] = da + Delta lambda a exactly; return (ok, Delta)."""
    P = L.pres
    br = P.lambda_bracket(L, a)
    if br.c(0) != P.derivative(a):
        return False, RF_ZERO
    if br.order() > 2:
        return False, RF_ZERO
    c1 = br.c(1)
    if c1.is_zero():
        return a.is_zero() or True, RF_ZERO
    # c1 must be a scalar multiple of a
    ks = set(c1.data)
    if ks != set(a.data):
        return False, RF_ZERO
    mono = next(iter(ks))
    delta = c1.data[mono] / a.data[mono]
    if c1 != a * delta:
        return False, RF_ZERO
    return True, delta


def normalize_virasoro(v: Element):
    """Rescale v to the Virasoro normalization; return (L, c) or None."""
    P = v.pres
    br = P.lambda_bracket(v, v)
    dv = P.derivative(v)
    c0 = br.c(0)
    if c0.is_zero() or dv.is_zero():
        return None
    mono = next(iter(dv.data))
    if mono not in c0.data:
        return None
    a = c0.data[mono] / dv.data[mono]
    if c0 != dv * a or not a:
        return None
    L = v * (RF_ONE / a)
    ok, c = virasoro_test(L)
    if not ok:
        return None
    return L, c


# ---------------------------------------------------------------------------
# Embeddings


class EmbeddingImage:
    """Images of a Lie algebra's basis as weight-1 elements of a target."""

    def __init__(self, source: LiePresentation, target: VAPresentation, images):
        self.source = source
        self.target = target
        self.images = list(images)
        if len(self.images) != source.dim:
            raise ConstructionError("one image per basis vector required")
        self.level = None

    def image_of(self, vec: dict) -> Element:
        out = self.target.zero()
        for i, c in vec.items():
            out = out + self.images[i] * RatFunc.const(c)
        return out

    def verify(self) -> RatFunc:
        """Check the homomorphism property on all basis pairs; return the level.

        [tau(x)_lambda tau(y)] must equal tau([x,y]) + lambda level B(x,y).
        """
        lie = self.source
        level = None
        P = self.target
        for i in range(lie.dim):
            for j in range(lie.dim):
                br = P.lambda_bracket(self.images[i], self.images[j])
                expected0 = self.image_of(lie.bracket(i, j))
                if br.c(0) != expected0:
                    raise ConstructionError(
                        f"homomorphism fails at c0 for pair "
                        f"({lie.names[i]}, {lie.names[j]})"
                    )
                c1 = br.c(1)
                if set(c1.data) - {()}:
                    raise ConstructionError(
                        f"non-central second-order term for pair "
                        f"({lie.names[i]}, {lie.names[j]})"
                    )
                if br.order() > 2:
                    raise ConstructionError("bracket order exceeds two")
                central = c1.coeff(())
                b = lie.form[i][j]
                if b == 0:
                    if central:
                        raise ConstructionError(
                            f"unexpected central term at "
                            f"({lie.names[i]}, {lie.names[j]})"
                        )
                    continue
                this_level = central / RatFunc.const(b)
                if level is None:
                    level = this_level
                elif level != this_level:
                    raise ConstructionError("inconsistent level across pairs")
        self.level = level if level is not None else RF_ZERO
        return self.level


def tau_embedding(n: int, param="k") -> EmbeddingImage:
    """sp_2n into the beta-gamma system S(n) at level -1/2."""
    if n < 1 or n > 2:
        raise ConstructionError("tau_embedding implemented for n = 1, 2")
    lie = builtin_lie(f"sp{2*n}")
    S = beta_gamma(n, param=param)

    def beta(i):
        return S.gen(i)

    def gamma(i):
        return S.gen(n + i)

    images = []
    for name in lie.names:
        kind, j, k = name[0], int(name[1]) - 1, int(name[2]) - 1
        if kind == "S":
            images.append(gamma(j).no(gamma(k)))
        elif kind == "T":
            images.append(beta(j).no(beta(k)))
        else:
            images.append(gamma(j).no(beta(k)))
    emb = EmbeddingImage(lie, S, images)
    level = emb.verify()
    if level != RatFunc.const(Fraction(-1, 2)):
        raise ConstructionError(f"tau embedding level check failed: {level}")
    return emb


def sigma_embedding(m: int, param="k") -> EmbeddingImage:
    """so_m into the free fermion algebra F(m) at level 1."""
    if m < 1 or m > 3:
        raise ConstructionError("sigma_embedding implemented for m = 1, 2, 3")
    lie = builtin_lie(f"so{m}")
    F = free_fermion(m, param=param)
    images = []
    for name in lie.names:
        i, j = int(name[1]) - 1, int(name[2]) - 1
        images.append(F.gen(i).no(F.gen(j)))
    emb = EmbeddingImage(lie, F, images)
    if lie.dim:
        level = emb.verify()
        if level != RF_ONE:
            raise ConstructionError(f"sigma embedding level check failed: {level}")
    else:
        emb.level = RF_ONE
    return emb


def restrict_image(emb: EmbeddingImage, sub: LiePresentation, coords) -> EmbeddingImage:
    """Image of a subalgebra given by coordinate vectors in the source basis."""
    images = [emb.image_of(vec) for vec in coords]
    out = EmbeddingImage(sub, emb.target, images)
    out.verify()
    return out


def diagonal_current(images) -> EmbeddingImage:
    """Sum of several embeddings of one Lie algebra into one presentation."""
    if not images:
        raise ConstructionError("need at least one embedding")
    first = images[0]
    for other in images[1:]:
        if other.source is not first.source and not other.source.same_structure(
            first.source
        ):
            raise ConstructionError("sources differ")
        if other.target is not first.target:
            raise ConstructionError("targets differ; embed into the tensor first")
    if len(images) == 1:
        return first
    summed = []
    for i in range(first.source.dim):
        total = first.images[i]
        for other in images[1:]:
            total = total + other.images[i]
        summed.append(total)
    out = EmbeddingImage(first.source, first.target, summed)
    level = out.verify()
    expected = RF_ZERO
    for e in images:
        if e.level is None:
            e_level = EmbeddingImage(e.source, e.target, e.images).verify()
        else:
            e_level = e.level
        expected = expected + e_level
    if level != expected:
        raise ConstructionError(
            f"diagonal level {level} differs from sum of levels {expected}"
        )
    return out


def embed_image(emb: EmbeddingImage, tensor: VAPresentation, factor: int) -> EmbeddingImage:
    """Push an embedding into a tensor product containing its target."""
    images = [tensor.embed_from_factor(x, factor) for x in emb.images]
    out = EmbeddingImage(emb.source, tensor, images)
    out.level = emb.level
    return out


# ---------------------------------------------------------------------------
# Deformable families and their limits


def deformable_form(P: VAPresentation) -> VAPresentation:
    """Rescaled form of an affine presentation over the kappa field, k = kappa^2.

    Generators a^xi = X^xi / kappa satisfy
    [a^xi_lambda a^eta] = B(xi, eta) lambda + (1/kappa) a^[xi, eta].
    """
    lie = P.metadata.get("lie")
    level = P.metadata.get("level")
    if lie is None or level is None:
        raise ConstructionError("deformable_form requires an affine presentation")
    if level != RatFunc.param():
        raise ConstructionError("deformable_form requires the symbolic level k")
    gens = [
        Generator(i, "a_" + lie.names[i], lie.parities[i], 1) for i in range(lie.dim)
    ]
    inv_kappa = RF_ONE / RatFunc.param()
    table = {}
    for i in range(lie.dim):
        for j in range(lie.dim):
            c0 = {}
            for m, c in lie.bracket(i, j).items():
                c0[((m, 0),)] = RatFunc.const(c) * inv_kappa
            c1 = {}
            if lie.form[i][j]:
                c1[()] = RatFunc.const(lie.form[i][j])
            if c0 or c1:
                table[(i, j)] = (c0, c1)
    out = VAPresentation(
        gens, table, param="kappa", name=f"def({P.name})"
    )
    out.metadata["lie"] = lie
    out.metadata["deformable_of"] = P
    return out


def limit_presentation(P: VAPresentation) -> VAPresentation:
    """Termwise kappa -> infinity limit of a deformable presentation."""
    gens = [
        Generator(g.index, g.name, g.parity, g.weight) for g in P.generators
    ]
    table = {}
    for key, cs in P.table.items():
        new_cs = []
        for cn in cs:
            lim = {}
            for M, c in cn.items():
                try:
                    v = c.limit_at_infinity()
                except DivergesAtInfinity:
                    raise ConstructionError(
                        f"bracket coefficient diverges at infinity: {c}"
                    ) from None
                if v:
                    lim[M] = RatFunc.const(v)
            new_cs.append(lim)
        table[key] = tuple(new_cs)
    out = VAPresentation(gens, table, param=P.param, name=f"lim({P.name})")
    out.metadata["limit_of"] = P
    if "lie" in P.metadata:
        out.metadata["lie"] = P.metadata["lie"]
    return out


def limit_element(x: Element, target: VAPresentation) -> Element:
    """Termwise limit of an element of a deformable presentation."""
    if target.metadata.get("limit_of") is not x.pres:
        raise ConstructionError("target is not the limit of the element's family")
    out = {}
    for M, c in x.data.items():
        try:
            v = c.limit_at_infinity()
        except DivergesAtInfinity:
            from .expressions import format_monomial

            raise ConstructionError(
                f"coefficient of {format_monomial(x.pres, M)} diverges at infinity"
            ) from None
        if v:
            out[M] = RatFunc.const(v)
    return Element(target, out)


# ---------------------------------------------------------------------------
# Named generator families from the orbifold constructions


def s_orbifold_w(S: VAPresentation, r: int, k: int) -> Element:
    """w-tilde of weight 2k+2 in the beta-gamma system of rank r."""
    out = S.zero()
    half = RatFunc.const(Fraction(1, 2))
    for i in range(r):
        beta = S.gen(i)
        gamma = S.gen(r + i)
        out = out + (
            beta.no(S.gen(r + i, 2 * k + 1)) - S.gen(i, 2 * k + 1).no(gamma)
        ) * half
    return out


def f_orbifold_j(F: VAPresentation, n: int, k: int) -> Element:
    """j-tilde of weight 2k+2 in the free fermion algebra of rank n."""
    out = F.zero()
    mhalf = RatFunc.const(Fraction(-1, 2))
    for i in range(n):
        out = out + F.gen(i).no(F.gen(i, 2 * k + 1)) * mhalf
    return out


def a_orbifold_w(A: VAPresentation, s: int, k: int) -> Element:
    """w of weight 2k+2 in the symplectic fermion algebra of rank s."""
    out = A.zero()
    half = RatFunc.const(Fraction(1, 2))
    for i in range(s):
        out = out + (
            A.gen(i).no(A.gen(s + i, 2 * k)) + A.gen(i, 2 * k).no(A.gen(s + i))
        ) * half
    return out


def h_orbifold_j(H: VAPresentation, m: int, k: int) -> Element:
    """j of weight 2k+2 in the rank-m Heisenberg algebra."""
    out = H.zero()
    for i in range(m):
        out = out + H.gen(i).no(H.gen(i, 2 * k))
    return out


def as_mixed_generators(AS: VAPresentation, n: int):
    """The mixed invariants of A(n) (x) S(n): j^{2k}, w^{2k+1}, mu^k.

    AS must be symplectic_fermion(n).tensor(beta_gamma(n)); generator order is
    e_i, f_i, beta_i, gamma_i.
    """
    half = RatFunc.const(Fraction(1, 2))

    def e(i, d=0):
        return AS.gen(i, d)

    def f(i, d=0):
        return AS.gen(n + i, d)

    def beta(i, d=0):
        return AS.gen(2 * n + i, d)

    def gamma(i, d=0):
        return AS.gen(3 * n + i, d)

    js = []
    ws = []
    mus = []
    for k in range(n):
        jk = AS.zero()
        wk = AS.zero()
        for i in range(n):
            jk = jk + (e(i).no(f(i, 2 * k)) + e(i, 2 * k).no(f(i))) * half
            wk = wk + (beta(i).no(gamma(i, 2 * k + 1)) - beta(i, 2 * k + 1).no(gamma(i))) * half
        js.append(jk)
        ws.append(wk)
    for k in range(2 * n):
        mk = AS.zero()
        for i in range(n):
            mk = mk + (beta(i).no(f(i, k)) - gamma(i).no(e(i, k))) * half
        mus.append(mk)
    return {"j": js, "w": ws, "mu": mus}


def as_diagonal_sp_action(AS: VAPresentation, n: int):
    """Diagonal sp_2n action on A(n) (x) S(n): tau currents plus an outer part.

    Returns a list of (current, derivation) pairs, one per sp_2n basis vector;
    the derivation maps generator ids to element data and covers the
    symplectic fermion factor, where the action is not inner.
    """
    lie = builtin_lie(f"sp{2*n}")
    tau = tau_embedding(n, param=AS.param)
    # push tau currents into the tensor: S-generators sit after the 2n A-ones
    currents = []
    for x in tau.images:
        data = {
            tuple((g + 2 * n, d) for g, d in M): c for M, c in x.data.items()
        }
        currents.append(Element(AS, data))
    # the outer action mirrors the tau-current zero-mode action with
    # e_i <-> beta_i and f_i <-> gamma_i
    derivations = []
    for idx, name in enumerate(lie.names):
        kind, j, k = name[0], int(name[1]) - 1, int(name[2]) - 1
        action = {}

        def add(gen_id, target_id, coeff, action=action):
            action.setdefault(gen_id, {})
            key = ((target_id, 0),)
            action[gen_id][key] = action[gen_id].get(key, RF_ZERO) + RatFunc.const(coeff)

        if kind == "S":
            # zero mode of :gamma_j gamma_k: sends beta_j -> -gamma_k etc.
            add(j, n + k, -1)
            add(k, n + j, -1)
        elif kind == "T":
            # zero mode of :beta_j beta_k: sends gamma_j -> +beta_k etc.
            add(n + j, k, 1)
            add(n + k, j, 1)
        else:
            # zero mode of :gamma_j beta_k: sends beta_j -> -beta_k, gamma_k -> +gamma_j
            add(j, k, -1)
            add(n + k, n + j, 1)
        derivations.append(action)
    return list(zip(currents, derivations)), lie


def parafermion_sl3_generators(H6: VAPresentation):
    """Quadratic and cubic invariants of the paired rank-3 Heisenberg algebra.

    H6 must be heisenberg_pairs(3) with pairs (a1, abar1), (a2, abar2),
    (a3, abar3) standing for (alpha12, alpha21), (alpha23, alpha32),
    (alpha13, alpha31).
    """

    def alpha(pair, barred, d=0):
        return H6.gen(pair + (3 if barred else 0), d)

    def q(pair, i, j):
        return alpha(pair, False, i).no(alpha(pair, True, j))

    def qbar(pair, i, j):
        return alpha(pair, True, i).no(alpha(pair, False, j))

    def c(i, j, k):
        # :d^i alpha12 d^j alpha23 d^k alpha31:
        return alpha(0, False, i).no(alpha(1, False, j).no(alpha(2, True, k)))

    def cbar(i, j, k):
        # :d^i alpha21 d^j alpha32 d^k alpha13:
        return alpha(0, True, i).no(alpha(1, True, j).no(alpha(2, False, k)))

    return {"q": q, "qbar": qbar, "c": c, "cbar": cbar}


def n2_coset_generators(P: VAPresentation):
    """J, F, L, G+, G- inside V_k(sl2) (x) E(1).

    P must be affine(sl2, k).tensor(bc_system(1)); generators H, Xp, Xm, b, c.
    """
    k = RatFunc.param()
    H = P.gen("H")
    Xp = P.gen("Xp")
    Xm = P.gen("Xm")
    b = P.gen("b")
    c = P.gen("c")
    bc = b.no(c)
    J = H - bc
    F = H + bc * (k / RatFunc.const(2))
    inv = RF_ONE / (k + RatFunc.const(2))
    L = (
        Xp.no(Xm) * inv
        + H.no(bc) * (RatFunc.const(2) * inv)
        - b.no(P.gen("c", 1)) * (k * inv / RatFunc.const(2))
        + P.gen("b", 1).no(c) * (k * inv / RatFunc.const(2))
        - P.derivative(H) * inv
    )
    Gp = Xp.no(b)
    Gm = Xm.no(c)
    return {"J": J, "F": F, "L": L, "Gp": Gp, "Gm": Gm}


def odd_pair_shape(P: VAPresentation, plus: str, minus: str, m: int) -> dict:
    """Shape of the weight-(2m+2) symplectic-fermion-type generator
    (1/2)(:x d^{2m} y: + :(d^{2m} x) y:) on the odd quadratic monomials,
    used to pin its deformation inside a commutant kernel.
    """
    ip = P.by_name[plus]
    im = P.by_name[minus]
    half = RatFunc.const(Fraction(1, 2))
    shape = {}
    for a in range(2 * m + 1):
        b = 2 * m - a
        shape[((ip, a), (im, b))] = half if a in (0, 2 * m) else RF_ZERO
    return shape


def osp_coset_virasoro(P: VAPresentation) -> Element:
    """The commutant Virasoro element of V_k(osp(1|2)) by V_k(sp_2)."""
    k = RatFunc.param()
    two = RatFunc.const(2)
    phip = P.gen("phip")
    phim = P.gen("phim")
    Xp = P.gen("Xp")
    Xm = P.gen("Xm")
    H = P.gen("H")
    d1 = RF_ONE / (two * k + RatFunc.const(3))
    d2 = RF_ONE / ((k + two) * (two * k + RatFunc.const(3)))
    return (
        phip.no(phim) * (RatFunc.const(-4) * d1)
        + (Xp.no(Xm) + H.no(H)) * d2
        + P.derivative(H) * ((RF_ONE + k) * d2)
    )


NAMED_FAMILIES = (
    "S_orbifold_w",
    "F_orbifold_j",
    "A_orbifold_w",
    "H_orbifold_j",
    "AS_mixed",
    "parafermion_sl3",
    "n2_generators",
)


def named_generators(family: str, **params):
    """Dispatch for the named generator families; see NAMED_FAMILIES."""
    if family == "S_orbifold_w":
        r = params.get("r", 1)
        S = params.get("presentation") or beta_gamma(r)
        ks = params.get("ks", range(r * r + 2 * r))
        return S, [s_orbifold_w(S, r, k) for k in ks]
    if family == "F_orbifold_j":
        n = params.get("n", 1)
        F = params.get("presentation") or free_fermion(n)
        ks = params.get("ks", range(n))
        return F, [f_orbifold_j(F, n, k) for k in ks]
    if family == "A_orbifold_w":
        s = params.get("s", 1)
        A = params.get("presentation") or symplectic_fermion(s)
        ks = params.get("ks", range(s))
        return A, [a_orbifold_w(A, s, k) for k in ks]
    if family == "H_orbifold_j":
        m = params.get("m", 1)
        H = params.get("presentation") or heisenberg(m)
        ks = params.get("ks", range((m * m + 3 * m) // 2))
        return H, [h_orbifold_j(H, m, k) for k in ks]
    if family == "AS_mixed":
        n = params.get("n", 1)
        AS = params.get("presentation") or symplectic_fermion(n).tensor(beta_gamma(n))
        gens = as_mixed_generators(AS, n)
        return AS, gens["j"] + gens["w"] + gens["mu"]
    if family == "parafermion_sl3":
        H6 = params.get("presentation") or heisenberg_pairs(3)
        fns = parafermion_sl3_generators(H6)
        out = [fns["q"](p, 0, i) for p in range(3) for i in range(4)]
        out += [fns["c"](0, j, k) for j in range(3) for k in range(3)]
        out += [fns["cbar"](0, j, k) for j in range(3) for k in range(3)]
        return H6, out
    if family == "n2_generators":
        from .lie import builtin_lie as _bl

        P = params.get("presentation") or affine(_bl("sl2"), RatFunc.param()).tensor(
            bc_system(1)
        )
        gens = n2_coset_generators(P)
        return P, [gens["F"], gens["L"], gens["Gp"], gens["Gm"]]
    raise ConstructionError(f"unknown named family {family!r}")
