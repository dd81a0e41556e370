import pytest

from linkinv.diagram import linking_matrix
from linkinv.families import borromean, corpus, hopf, milnor, unlink, whitehead_iter
from linkinv.milnor import (
    MilnorError, MuValue, all_vanish, canonical_rotation, cochran_beta, indeterminacy_sequences,
    mu_bar, mu_table, parse_mu_values, sato_levine, serialize_mu_values,
)


def test_hopf_linking():
    assert mu_bar(hopf(1), (1, 2)) == MuValue((1, 2), 1, 0, 1)
    assert mu_bar(hopf(-1), (2, 1)).mu == -1


def test_borromean_triple():
    v = mu_bar(borromean(), (1, 2, 3))
    assert (v.mu, v.delta) == (-1, 0)
    # cyclic symmetry, and the transposition flips the sign
    for I in [(2, 3, 1), (3, 1, 2)]:
        assert mu_bar(borromean(), I).mu == v.mu
    assert mu_bar(borromean(), (2, 1, 3)).mu == -v.mu


@pytest.mark.parametrize("k", [1, 2, 3])
def test_milnor_links_top_invariant(k):
    v = mu_bar(milnor(k), (1,) * (2 * k) + (2, 2))
    assert (v.mu, v.delta) == (1, 0)


@pytest.mark.parametrize("k", [1, 2])
def test_first_nonvanishing_is_cyclically_symmetric(k):
    d = milnor(k)
    I = (1,) * (2 * k) + (2, 2)
    vals = {mu_bar(d, I[s:] + I[:s]).mu for s in range(len(I))}
    assert vals == {1}


def test_linking_matrix_agrees(links):
    for name, d in links.items():
        L = linking_matrix(d)
        for i in range(d.m):
            for j in range(d.m):
                if i != j:
                    assert mu_bar(d, (i + 1, j + 1)).mu == L[i][j], name


def test_unlink_table_vanishes():
    tb = mu_table(unlink(2), 6)
    assert tb.complete
    assert all(v.mu == 0 and v.delta == 0 for v in tb)
    assert all_vanish(tb) is None


def test_w2_is_boundary_like_through_six():
    tb = mu_table(whitehead_iter(2), 6)
    assert all(v.residue == 0 for v in tb)


def test_hopf_length_three_fully_indeterminate():
    tb = mu_table(hopf(1), 3)
    assert {v.I: v for v in tb}[(1, 2)].mu == 1
    mixed = [v for v in tb if len(v.I) == 3 and len(set(v.I)) > 1]
    assert mixed and all(v.delta == 1 and v.residue == 0 for v in mixed)


def test_table_sorted_and_deduplicated():
    tb = mu_table(borromean(), 4)
    keys = [(len(v.I), v.I) for v in tb]
    assert keys == sorted(keys)
    assert all(canonical_rotation(v.I) == v.I for v in tb)
    full = mu_table(borromean(), 3, dedupe=False)
    assert len(full) == 9 + 27


def test_table_budget_marks_partial():
    tb = mu_table(borromean(), 5, budget_seconds=0.0)
    assert not tb.complete
    assert "# budget exceeded" in tb.rows()


def test_table_cost_guard():
    with pytest.raises(MilnorError):
        mu_table(hopf(1), 10)
    with pytest.raises(MilnorError):
        mu_table(hopf(1), 1)


def test_index_errors():
    with pytest.raises(MilnorError):
        mu_bar(hopf(1), (1,))
    with pytest.raises(MilnorError):
        mu_bar(hopf(1), (1, 3))
    with pytest.raises(MilnorError):
        mu_bar(hopf(1), (1, 2), depth=1)
    with pytest.raises(MilnorError):
        mu_bar(hopf(1), (1, 2), route="other")


def test_indeterminacy_sequences():
    assert indeterminacy_sequences((1, 2)) == set()
    assert indeterminacy_sequences((1, 2, 3)) == {(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)}


def test_sato_levine():
    c = corpus()
    assert sato_levine(c["W1"]) == -1
    assert sato_levine(c["M1"]) == 1
    assert sato_levine(unlink(2)) == 0
    with pytest.raises(MilnorError):
        sato_levine(hopf(1))
    with pytest.raises(MilnorError):
        sato_levine(borromean())


def test_sato_levine_flips_under_mirror():
    from linkinv.diagram import mirror
    assert sato_levine(mirror(corpus()["W1"])) == 1


@pytest.mark.parametrize("k", [1, 2, 3])
def test_cochran_beta_milnor_links(k):
    assert cochran_beta(milnor(k), k) == 1


@pytest.mark.parametrize("i", [1, 2, 3])
def test_cochran_beta_unlink(i):
    assert cochran_beta(unlink(2), i) == 0


def test_cochran_beta_lower_stage():
    assert cochran_beta(milnor(2), 1) == 0


def test_cochran_beta_obstruction_named():
    with pytest.raises(MilnorError, match=r"mu-bar\(1, 1, 2, 2\)"):
        cochran_beta(milnor(1), 2)
    with pytest.raises(MilnorError):
        cochran_beta(hopf(1), 1)
    with pytest.raises(MilnorError):
        cochran_beta(milnor(1), 0)


@pytest.mark.parametrize("name", ["borromean", "W1", "M1", "M2"])
def test_rebasing_stays_within_indeterminacy(name):
    d = corpus()[name]
    for comp_shift in range(3):
        base = [c[min(comp_shift, len(c) - 1)] for c in d.components]
        for I in [(1, 2), (1, 1, 2, 2), (1, 2, 1, 2), (1, 1, 1, 2)] + ([(1, 2, 3)] if d.m == 3 else []):
            a = mu_bar(d, I)
            b = mu_bar(d, I, base_edges=base)
            assert a.delta == b.delta
            if a.delta:
                assert (a.mu - b.mu) % a.delta == 0
            else:
                assert a.mu == b.mu, (name, I)


@pytest.mark.parametrize("name", ["hopf+", "W1", "M1", "M1-twisted"])
def test_cable_route_agrees(name):
    d = corpus()[name]
    for I in [(1, 1, 2, 2), (1, 2, 1, 2)]:
        a, b = mu_bar(d, I), mu_bar(d, I, route="cable")
        assert (a.mu, a.delta) == (b.mu, b.delta)


def test_serialization_roundtrip():
    tb = mu_table(borromean(), 3)
    text = serialize_mu_values(tb)
    assert text.splitlines()[0] == "I\tmu\tdelta\tresidue"
    assert "1,2,3\t-1\t0\t-1" in text.splitlines()
    assert parse_mu_values(text) == list(tb)


def test_residue_convention():
    v = MuValue.make((1, 1, 2), -7, 3)
    assert v.residue == 2
    assert not v.vanishes
    assert MuValue.make((1, 2), 0, 0).vanishes
