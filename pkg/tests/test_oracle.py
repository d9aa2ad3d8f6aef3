from __future__ import annotations

from fractions import Fraction as F

import pytest

from ppconj import AffElem, PiecewiseProjMap, make_pmap, numeric_oracle, stair
from ppconj.errors import PreconditionViolated
from ppconj.oracle import GRID_SHIFT, float_eval, sample_grid
from ppconj.randomgen import RandomSpec, random_element
from worked_examples import discrete_z, stair_working_y, stair_working_z


def test_equal_maps():
    f = random_element(RandomSpec(seed=4))
    assert numeric_oracle(f, f, samples=1000) < 1e-12


def test_stair_conjugator():
    y, z = stair_working_y(), stair_working_z()
    g = stair(y, z, AffElem(1, -1)).g
    assert numeric_oracle((g, z), (y, g), samples=1000) < 1e-9


def test_perturbation_detected():
    f = discrete_z()
    g = PiecewiseProjMap.affine(1, F(1, 1000)) * f
    assert g != f
    assert abs(numeric_oracle(f, g, samples=1000) - 1e-3) < 1e-9
    # a local perturbation: one interpolation node moved by 1/1000
    a = make_pmap([0, 1], [(1, 0, 0, 1), (2, 0, 0, 1), (1, 1, 0, 1)])
    b = make_pmap([0, 1], [(1, 0, 0, 1), (F(2001, 1000), 0, 0, 1), (1, F(1001, 1000), 0, 1)])
    assert abs(numeric_oracle(a, b, samples=1000) - 1e-3) < 1e-6


def test_chain_is_right_to_left():
    f, g = PiecewiseProjMap.affine(2, 0), PiecewiseProjMap.affine(1, 1)
    assert float_eval((f, g), 1.0) == 4.0


def test_grid_avoids_nodes():
    pts = sample_grid(F(0), F(1), 11)
    assert len(pts) == 11 and pts[0] == GRID_SHIFT / 10
    assert all(p * 10 != int(p * 10) for p in pts)
    with pytest.raises(PreconditionViolated):
        sample_grid(F(0), F(1), 1)
