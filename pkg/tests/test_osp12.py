import random

import numpy as np
import pytest

from superlie import (decompose, direct_sum, h_spectrum, irreducible_module,
                      osp12_standard, scramble, verify_triple)
from superlie.osp12 import (ModuleError, Osp12Module, TripleError, _half_h_tops,
                            check_representation, decomposition_multiset,
                            first_nonzero, generated_g0_submodule, obj_zeros)
from superlie.algebra import even_part
from superlie.scalars import Rat


def idx(label):
    from superlie.osp12 import OSP_LABELS
    return OSP_LABELS.index(label)


def basis_vec(n, i, c=1):
    v = obj_zeros(n)
    v[i] = Rat(c)
    return v


# --- the standard algebra's defining relations


def test_odd_squares_hit_the_even_raising_and_lowering():
    L = osp12_standard()
    assert L.bracket_basis(idx("F+"), idx("F+")) == {idx("E+"): Rat(1)}
    assert L.bracket_basis(idx("F-"), idx("F-")) == {idx("E-"): Rat(1)}


def test_derived_even_triple_relations():
    L = osp12_standard()
    Ep = L.bracket_basis(idx("F+"), idx("F+"))
    Em = L.bracket_basis(idx("F-"), idx("F-"))
    assert L.bracket({idx("H"): Rat(1)}, Ep) == {idx("E+"): Rat(4)}
    assert L.bracket(Ep, Em) == {idx("H"): Rat(-8)}
    assert L.bracket(Ep, {idx("F+"): Rat(1)}) == {}


def test_verify_triple_standard_osp():
    L = osp12_standard()
    t = verify_triple(L, {idx("F+"): Rat(1)}, {idx("F-"): Rat(1)}, {idx("H"): Rat(1)})
    assert t.kind == "osp"


def test_verify_triple_derived_sl2_in_even_part():
    ev = even_part(osp12_standard())
    labels = ev.basis_labels
    ep, em, h = labels.index("E+"), labels.index("E-"), labels.index("H")
    t = verify_triple(ev, {ep: Rat(1, 4)}, {em: Rat(-1, 4)}, {h: Rat(1, 2)})
    assert t.kind == "sl2"


def test_verify_triple_rejects_bad_pair():
    L = osp12_standard()
    with pytest.raises(TripleError):
        verify_triple(L, {idx("F+"): Rat(1)}, {idx("F+"): Rat(1)}, {idx("H"): Rat(1)})


# --- irreducible modules


def test_trivial_module_has_zero_actions():
    m = irreducible_module(0)
    assert m.dim == 1
    assert not m.act_e[0, 0] and not m.act_f[0, 0] and not m.act_h[0, 0]
    assert check_representation(m) is None


def test_v2_action_table():
    m = irreducible_module(2)
    assert m.dim == 3
    assert h_spectrum(m) == [2, 0, -2]
    assert m.act_e[0, 1] == Rat(2)      # e.v1 = 2 v0
    assert m.act_e[1, 2] == Rat(-2)     # e.v2 = -2 v1
    assert m.act_f[1, 0] == Rat(1) and m.act_f[2, 1] == Rat(1)
    assert first_nonzero(m.act_f @ basis_vec(3, 2)) is None  # f.v2 = 0


def test_v4_action_coefficient():
    m = irreducible_module(4)
    assert m.dim == 5
    assert h_spectrum(m) == [4, 2, 0, -2, -4]
    assert m.act_e[2, 3] == Rat(2)      # e.v3 = (4 - 2) v2


def test_odd_or_negative_highest_weight_rejected():
    with pytest.raises(ModuleError):
        irreducible_module(3)
    with pytest.raises(ModuleError):
        irreducible_module(-2)


def test_direct_sum_spectrum_oracle():
    m = direct_sum([irreducible_module(2), irreducible_module(2)])
    assert h_spectrum(m) == [2, 2, 0, 0, -2, -2]


def test_spectrum_rejects_wrong_h():
    m = irreducible_module(2)
    bad = Osp12Module(m.parity, m.act_e, m.act_f, m.act_h * Rat(1, 2))
    with pytest.raises(ModuleError):
        h_spectrum(bad)


def test_representation_property_against_structure_constants():
    """All fifteen basis-pair identities, straight from the bracket tensor."""
    L = osp12_standard()
    mods = [irreducible_module(2), irreducible_module(4, 1),
            scramble(direct_sum([irreducible_module(2), irreducible_module(0, 1)]), 3)]
    for m in mods:
        rho = {b: m.action(L.basis_labels[b]) for b in range(5)}
        for a in range(5):
            for b in range(5):
                sign = -1 if (L.parity[a] and L.parity[b]) else 1
                lhs = rho[a] @ rho[b] - sign * (rho[b] @ rho[a])
                rhs = sum(c * rho[k] for k, c in L.bracket_basis(a, b).items())
                if isinstance(rhs, int):
                    rhs = np.zeros_like(lhs)
                assert (lhs == rhs).all(), (L.basis_labels[a], L.basis_labels[b])


def test_lowering_chain_bound_from_highest_vectors():
    # an h-eigenvector y of eigenvalue 2k killed by e dies after exactly 2k+1 steps
    for lam in (0, 2, 6):
        m = irreducible_module(lam)
        y = basis_vec(m.dim, 0)
        cur = y
        for _ in range(lam):
            cur = m.act_f @ cur
        assert first_nonzero(cur) is not None
        assert first_nonzero(m.act_f @ cur) is None


# --- the generated even-part submodule


def test_generated_submodule_v2_top():
    m = irreducible_module(2)
    vecs = generated_g0_submodule(m, basis_vec(3, 0), 2)
    from superlie.osp12 import DenseEchelon
    span = DenseEchelon(3)
    for v in vecs:
        span.add(v)
    assert span.rank == 1
    assert span.contains(basis_vec(3, 1))


def test_generated_submodule_degenerate_zero():
    m = irreducible_module(0, 1)
    assert generated_g0_submodule(m, basis_vec(1, 0), 0) == []


def test_generated_submodule_v4_matches_closure():
    m = irreducible_module(4)
    vecs = generated_g0_submodule(m, basis_vec(5, 0), 4)
    from superlie.osp12 import DenseEchelon
    span = DenseEchelon(5)
    for v in vecs:
        span.add(v)
    assert span.rank == 2  # v1 and v3: the odd part of V(4)
    assert span.contains(basis_vec(5, 1)) and span.contains(basis_vec(5, 3))


def test_generated_submodule_rejects_minus_two():
    one = Osp12Module((1,), [[0]], [[0]], [[-2]])
    with pytest.raises(ModuleError):
        generated_g0_submodule(one, basis_vec(1, 0), -2)


def test_generated_submodule_rejects_non_eigenvector():
    m = irreducible_module(2)
    with pytest.raises(ModuleError):
        generated_g0_submodule(m, basis_vec(3, 0), 0)


# --- decomposition


def test_decompose_irreducible_is_identity():
    out = decompose(irreducible_module(2))
    assert [lam for lam, _ in out] == [2]
    assert len(out[0][1]) == 3


def test_decompose_scrambled_pairs():
    m = scramble(direct_sum([irreducible_module(2), irreducible_module(0)]), 17)
    assert decomposition_multiset(m) == [2, 0]
    m = scramble(direct_sum([irreducible_module(4), irreducible_module(2),
                             irreducible_module(2)]), 23)
    assert decomposition_multiset(m) == [4, 2, 2]


def test_decompose_round_trip_random_multisets():
    rng = random.Random(99)
    for trial in range(6):
        lams = sorted((rng.choice([0, 2, 4, 6]) for _ in range(rng.randint(1, 4))),
                      reverse=True)
        mods = [irreducible_module(l, rng.randint(0, 1)) for l in lams]
        m = scramble(direct_sum(mods), seed=1000 + trial)
        assert decomposition_multiset(m) == lams


def test_decompose_certificates():
    m = scramble(direct_sum([irreducible_module(4, 1), irreducible_module(2)]), 5)
    out = decompose(m)
    total = sum(lam + 1 for lam, _ in out)
    assert total == m.dim
    for lam, chain in out:
        assert lam % 2 == 0 and (lam + 1) % 2 == 1
        for k, v in enumerate(chain):
            assert first_nonzero(m.act_h @ v - (lam - 2 * k) * v) is None


def test_decompose_rejects_non_representation():
    m = irreducible_module(2)
    bad = Osp12Module(m.parity, m.act_e, m.act_f, m.act_h * Rat(3))
    with pytest.raises(ModuleError):
        decompose(bad)


def test_half_h_tops_counts_summands():
    # even parts: V(4) gives the weight-2 even chain, V(2) the weight-1 one
    m = direct_sum([irreducible_module(4), irreducible_module(2)])
    tops = _half_h_tops(m)
    assert sorted(lam for lam, _ in tops) == [1, 2]


def test_decompose_multiset_agrees_with_spectrum_counting():
    """Independent oracle: mult(lam) = dim ker(h-lam) - dim ker(h-lam-2)."""
    for seed, lams in ((31, [6, 4, 2, 2, 0]), (32, [8, 2]), (33, [4, 4, 0, 0])):
        mods = [irreducible_module(l, (seed + k) % 2) for k, l in enumerate(lams)]
        m = scramble(direct_sum(mods), seed)
        spectrum = h_spectrum(m)
        counts = {mu: spectrum.count(mu) for mu in set(spectrum)}
        derived = []
        for lam in sorted({mu for mu in counts if mu >= 0}, reverse=True):
            derived.extend([lam] * (counts.get(lam, 0) - counts.get(lam + 2, 0)))
        assert derived == sorted(lams, reverse=True)
        assert decomposition_multiset(m) == derived
