"""Mode-action oracle equivalence for the rank-one free field algebras.

Every symbolic product a_(n) b of canonical basis monomials with
wt(a) + wt(b) <= 6 is compared against an explicit mode computation on the
truncated Fock space, for all n from -1 up to where the products vanish.
"""

from fractions import Fraction

import pytest

from vertexalg.constructions import (
    bc_system,
    beta_gamma,
    heisenberg,
    symplectic_fermion,
)
from vertexalg.fock import FockOracle
from vertexalg.linear import weight_basis

CAP = Fraction(6)


@pytest.mark.parametrize(
    "build,name",
    [
        (heisenberg, "H(1)"),
        (bc_system, "E(1)"),
        (beta_gamma, "S(1)"),
        (symplectic_fermion, "A(1)"),
    ],
)
def test_oracle_equivalence(build, name):
    P = build(1)
    oracle = FockOracle(P)
    step = P.weight_step()
    monos = []
    w = step
    while w <= CAP - step:
        monos.extend(weight_basis(P, w).monomials)
        w += step
    checked = 0
    for M in monos:
        wM = P.mono_weight(M)
        for N in monos:
            wtot = wM + P.mono_weight(N)
            if wtot > CAP:
                continue
            for n in range(-1, int(wtot) + 1):
                assert oracle.check_product(M, N, n), (name, M, N, n)
                checked += 1
    assert checked > 0
