import pytest

from tlcat.cellmod import cell_dim, cell_labels
from tlcat.coeffring import GENERIC, SpecializedField
from tlcat.diagrams import enumerate_diagrams
from tlcat.homsolve import (
    HomSolveError,
    audit_action,
    cell_rep,
    cell_simples,
    decompose_semisimple,
    hom_dim,
    hom_space,
    induce_rep,
    is_intertwiner,
    parse_spec,
    reg_rep,
    restrict_rep,
    restrict_tower,
    tensor_rep,
)


@pytest.mark.parametrize("n", range(6))
def test_cell_action_audit(n):
    for r in cell_labels(n):
        assert audit_action(cell_rep(n, r), enumerate_diagrams(n, n)) is None


def test_regular_module_audit_and_decomposition():
    M = reg_rep(3)
    assert audit_action(M) is None
    got = decompose_semisimple(M, cell_simples(3))
    assert got == {"cell:3:0": 1, "cell:3:1": 2}


@pytest.mark.parametrize("n", range(1, 7))
def test_hom_vanishing_between_cells(n):
    for a in cell_labels(n):
        for b in cell_labels(n):
            assert hom_dim(cell_rep(n, a), cell_rep(n, b)) == (1 if a == b else 0)


def test_hom_basis_are_intertwiners():
    M = reg_rep(3)
    N = cell_rep(3, 1)
    space = hom_space(M, N)
    assert space.dim == cell_dim(3, 1)
    assert all(is_intertwiner(H, M, N, enumerate_diagrams(3, 3)) for H in space.basis)


def test_non_semisimple_at_delta_one():
    F = SpecializedField(1)
    # Δ_3(1) has a radical at δ = 1, so Hom(Δ_3(0), Δ_3(1)) is nonzero there
    assert hom_dim(cell_rep(3, 0, F), cell_rep(3, 1, F)) == 1
    with pytest.raises(HomSolveError):
        decompose_semisimple(reg_rep(3, F), cell_simples(3, F))


def test_restriction_and_induction():
    assert decompose_semisimple(restrict_tower(cell_rep(4, 1)), cell_simples(3)) == {"cell:3:0": 1, "cell:3:1": 1}
    assert decompose_semisimple(restrict_tower(cell_rep(4, 2)), cell_simples(3)) == {"cell:3:1": 1}
    ind = induce_rep(cell_rep(3, 1))
    assert ind.dim == cell_dim(4, 1) + cell_dim(4, 2)
    assert audit_action(ind) is None


def test_tensor_restriction_hom():
    M = parse_spec("tensor(cell:4:0,cell:3:1)")
    N = parse_spec("res(cell:7:2,4,3)")
    assert hom_dim(M, N) == 1
    assert tensor_rep(cell_rep(4, 0), cell_rep(3, 1)).dim == 2
    assert restrict_rep(cell_rep(7, 2), 4, 3).dim == 14


def test_incompatible_modules_rejected():
    with pytest.raises(HomSolveError):
        hom_dim(cell_rep(3, 1), cell_rep(4, 1))
    with pytest.raises(HomSolveError):
        hom_dim(cell_rep(3, 1), cell_rep(3, 1, SpecializedField(2)))


@pytest.mark.parametrize("text", ["cell:3", "cell:3:2", "bogus(1)", "res(cell:4:1,2)"])
def test_bad_specs(text):
    with pytest.raises(ValueError):
        parse_spec(text, GENERIC)
