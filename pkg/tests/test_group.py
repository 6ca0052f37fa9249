import pytest

from ddbar.catalog import load_builtin
from ddbar.cdba import build_cdba, compile_bicomplex
from ddbar.cohomology import compute_report
from ddbar.errors import BadBidegree, GroupTooLarge, NotChainMap, NotInvertible
from ddbar.exterior import Form
from ddbar.group import (FiniteGroupAction, GeneratorAction, invariant_differentials_report,
                         invariant_subcomplex, reynolds_projector, validate_action)
from ddbar.pipeline import group_from_manifest, quotient_of


def _setup(name):
    manifest, _ = load_builtin(name)
    cdba = build_cdba(manifest)
    return manifest, cdba, compile_bicomplex(cdba)


@pytest.fixture(scope="module")
def nakamura():
    return _setup("nakamura")


@pytest.fixture(scope="module")
def iwasawa():
    return _setup("iwasawa")


def test_builtin_actions_validate(nakamura, iwasawa):
    m, x, _ = nakamura
    g = group_from_manifest(x, m, "sigma")
    assert g.order == 4
    assert g.elements[0].is_identity()
    m, x, _ = iwasawa
    assert group_from_manifest(x, m, "sigma").order == 3
    ident = FiniteGroupAction(x, [GeneratorAction.identity(3, 3)])
    assert ident.order == 1


def test_swap_is_not_a_chain_map(iwasawa):
    _, x, _ = iwasawa
    # g*(del phi3) = -phi2^phi1 = phi1^phi2, but del(g* phi3) = -phi1^phi2
    swap = GeneratorAction((Form.phi(3, 3, 2), Form.phi(3, 3, 1), Form.phi(3, 3, 3)))
    with pytest.raises(NotChainMap) as info:
        validate_action(x, swap)
    assert info.value.generator == "phi3"


def test_singular_and_badly_graded_actions():
    torus = build_cdba(load_builtin("torus3")[0])
    degenerate = GeneratorAction((Form.phi(3, 1, 1), Form.phi(3, 1, 1), Form.phi(3, 1, 3)))
    with pytest.raises(NotInvertible):
        validate_action(torus, degenerate)
    with pytest.raises(BadBidegree):
        GeneratorAction((Form.bphi(3, 1, 1), Form.phi(3, 1, 2), Form.phi(3, 1, 3)))
    scaling = GeneratorAction((Form.phi(3, 1, 1).scale(2), Form.phi(3, 1, 2), Form.phi(3, 1, 3)))
    with pytest.raises(GroupTooLarge):
        FiniteGroupAction(torus, [scaling], max_order=10)


def test_trivial_group_gives_the_full_complex(nakamura):
    _, x, bc = nakamura
    sub = invariant_subcomplex(bc, FiniteGroupAction(x, []))
    assert sub.dims == bc.dims
    assert compute_report(sub) == compute_report(bc)


def test_invariant_block_sizes(nakamura, iwasawa):
    m, x, bc = nakamura
    sub = invariant_subcomplex(bc, group_from_manifest(x, m, "sigma"))
    assert sub.dim(1, 0) == 0 and sub.dim(0, 1) == 0
    m, x, bc = iwasawa
    sub = invariant_subcomplex(bc, group_from_manifest(x, m, "sigma"))
    # weights 1, 1, 2 mod 3: phi^i ^ bphi^j is invariant iff the weights agree
    assert sub.dim(1, 1) == 5
    assert sub.dim(2, 0) == 2


@pytest.mark.parametrize("which", ["nakamura", "iwasawa"])
def test_projector_idempotent_and_equivariant(which, nakamura, iwasawa):
    m, x, bc = {"nakamura": nakamura, "iwasawa": iwasawa}[which]
    g = group_from_manifest(x, m, "sigma")
    proj = {(p, q): reynolds_projector(bc, g, p, q) for p, q in bc.bidegrees()}
    for (p, q), pm in proj.items():
        assert (pm @ pm - pm).is_zero()
        if p < bc.n:
            assert (proj[(p + 1, q)] @ bc.del_(p, q) - bc.del_(p, q) @ pm).is_zero()
        if q < bc.n:
            assert (proj[(p, q + 1)] @ bc.delbar(p, q) - bc.delbar(p, q) @ pm).is_zero()


def test_invariant_basis_forms_are_invariant(nakamura):
    m, x, bc = nakamura
    g = group_from_manifest(x, m, "sigma")
    sub = invariant_subcomplex(bc, g)
    for forms in sub.basis.values():
        for f in forms:
            for h in g.elements:
                assert h.apply(f) == f


def test_differential_reports(iwasawa):
    m, _, _ = iwasawa
    lines = quotient_of(m, "sigma").differentials
    assert "d(phi[3 ~3]) = -phi[1 2 ~3] + phi[3 ~1 ~2]" in lines
    nak = quotient_of(load_builtin("nakamura")[0], "sigma")
    for line in nak.differentials:
        assert line.startswith("d(") and " = " in line
    torus = _setup("torus3")
    sub = invariant_subcomplex(torus[2], FiniteGroupAction(torus[1], []))
    assert invariant_differentials_report(sub) == []
