import numpy as np
import pytest

from fracspec import DomainMask2D, Grid1D, GridFn1D, ParameterError
from fracspec.grids import check_order


def test_uniform_grid():
    g = Grid1D.uniform(-1, 1, 5)
    np.testing.assert_array_equal(g.nodes, [-1, -0.5, 0, 0.5, 1])
    assert g.is_uniform()
    assert g.trapezoid_weights().sum() == pytest.approx(2.0, abs=1e-14)


def test_graded_grid_clusters_at_both_ends():
    g = Grid1D.graded(0, 1, 33, 2.5)
    assert g.a == 0 and g.b == 1 and g.n == 33
    h = g.spacing
    assert h[0] < h[16] and h[-1] < h[16]
    assert not g.is_uniform()


def test_nodes_read_only():
    g = Grid1D.uniform(0, 1, 4)
    with pytest.raises(ValueError):
        g.nodes[0] = 3.0


@pytest.mark.parametrize("nodes", [[0, 1], [0, 0.5, 0.5, 1], [0, 2, 1]])
def test_bad_nodes(nodes):
    with pytest.raises(ParameterError):
        Grid1D(np.array(nodes, dtype=float))


def test_gridfn_length_checked():
    g = Grid1D.uniform(0, 1, 4)
    with pytest.raises(ParameterError):
        GridFn1D(g, np.zeros(3))


def test_check_order():
    assert check_order(0.3) == 0.3
    with pytest.raises(ParameterError):
        check_order(0.3, bvp=True)
    with pytest.raises(ParameterError):
        check_order(0.5, bvp=True)
    assert check_order(1, bvp=True) == 1.0


def test_mask_text_round_trip(tmp_path):
    m = DomainMask2D(0.125, np.array([[0, 1, 1], [1, 1, 0]], dtype=bool))
    text = m.to_text()
    assert text.splitlines()[0] == "h=0.125"
    back = DomainMask2D.from_text(text)
    assert back.h == m.h
    np.testing.assert_array_equal(back.mask, m.mask)
    m.save(tmp_path / "m.txt")
    np.testing.assert_array_equal(DomainMask2D.load(tmp_path / "m.txt").mask, m.mask)


@pytest.mark.parametrize("text", ["0110\n", "h=0.1\n01\n011\n", "h=0.1\n0x\n", "h=-1\n1\n", "h=0.1\n00\n"])
def test_malformed_mask_text(text):
    with pytest.raises(ParameterError):
        DomainMask2D.from_text(text)


def test_mask_geometry():
    m = DomainMask2D(0.5, np.ones((2, 3), dtype=bool), origin=(1.0, 2.0))
    assert m.cells == 6
    assert m.area == pytest.approx(1.5)
    c = m.centers()
    np.testing.assert_allclose(c[0], [1.25, 2.25])
    padded = DomainMask2D(0.5, np.pad(m.mask, 2))
    assert padded.cropped().mask.shape == (2, 3)
    assert padded.same_cells(m)
