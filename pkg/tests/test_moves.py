import pytest

from linkinv.conway import conway_skein
from linkinv.diagram import LinkDiagram, is_projection_connected, linking_matrix, validate
from linkinv.drawing import braid_closure
from linkinv.families import borromean, hopf, trefoil
from linkinv.moves import (MoveError, MoveSpec, apply_move, connect_projection, faces,
                           move_sites, projection_groups, seifert_circles, sublink)


def test_switch_hopf_gives_lk_zero():
    d = apply_move(hopf(1), MoveSpec("switch", (0,)))
    assert linking_matrix(d)[0][1] == 0
    assert len(d) == 2


def test_smooth_hopf_gives_unknot():
    d = apply_move(hopf(1), MoveSpec("smooth", (0,)))
    assert d.m == 1 and len(d) == 1
    assert validate(d) == []
    assert conway_skein(d).raw == (1,)


def test_smooth_changes_component_count_by_one(links):
    for d in links.values():
        for k in range(len(d)):
            s = apply_move(d, MoveSpec("smooth", (k,)))
            assert abs(s.m - d.m) == 1
            assert len(s) == len(d) - 1


def test_r1_add_then_remove():
    d = trefoil()
    for mv in move_sites(d, "R1+"):
        up = apply_move(d, mv)
        assert len(up) == 4 and validate(up) == []
        loops = [s.site for s in move_sites(up, "R1-")]
        assert any(apply_move(up, MoveSpec("R1-", l)).equal_up_to_relabeling(d) for l in loops)


def test_r1_on_free_loop():
    d = apply_move(LinkDiagram.unlink(1), MoveSpec("R1+", (1, 1, True)))
    assert len(d) == 1 and validate(d) == []


def test_r2_add_and_remove():
    d = hopf(1)
    sites = move_sites(d, "R2+")
    assert sites == sorted(sites, key=lambda m: m.site)
    up = apply_move(d, sites[0])
    assert len(up) == 4 and validate(up) == []
    back = [apply_move(up, s) for s in move_sites(up, "R2-")]
    assert any(b.equal_up_to_relabeling(d) for b in back)


def test_r3_keeps_crossing_count():
    d = braid_closure([1, 2, 1], 3)
    sites = move_sites(d, "R3")
    assert sites
    for mv in sites:
        e = apply_move(d, mv)
        assert len(e) == 3 and validate(e) == []
        assert sorted(x.sign for x in e.crossings) == sorted(x.sign for x in d.crossings)


def test_invalid_sites():
    d = hopf(1)
    with pytest.raises(MoveError):
        apply_move(d, MoveSpec("switch", (7,)))
    with pytest.raises(MoveError):
        apply_move(d, MoveSpec("R1-", (1,)))
    with pytest.raises(MoveError):
        apply_move(d, MoveSpec("R3", (1, 2, 3)))
    with pytest.raises(MoveError):
        MoveSpec("R4", ())


def test_faces_satisfy_euler(links):
    for d in links.values():
        if len(d):
            total = sum(len(f) for f in faces(d))
            assert total == 4 * len(d)


def test_seifert_circles_of_braid_closure():
    assert len(seifert_circles(trefoil())) == 2
    assert len(seifert_circles(borromean())) == 3


@pytest.mark.parametrize("m, crossings", [(1, 0), (2, 2), (3, 4)])
def test_connect_projection_unlinks(m, crossings):
    d = connect_projection(LinkDiagram.unlink(m))
    assert len(d) == crossings
    assert is_projection_connected(d) and validate(d) == []
    assert all(v == 0 for row in linking_matrix(d) for v in row)


def test_connect_projection_noop_when_connected():
    assert connect_projection(hopf(1)) == hopf(1)


def test_sublink_of_borromean_is_unlink():
    b = borromean()
    for keep in ([0, 1], [1, 2], [0, 2]):
        s = sublink(b, keep)
        assert s.m == 2 and validate(s) == []
        assert conway_skein(s).raw == ()
    assert sublink(b, [2]).m == 1


def test_alternating_diagram_has_no_r3_site():
    assert move_sites(borromean(), "R3") == []
