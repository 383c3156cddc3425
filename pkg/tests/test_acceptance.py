"""Acceptance gate: the nine headline criteria, one test each.

Each test wraps its body in ``record_acceptance`` so a PASS/FAIL line
per criterion is printed in the terminal summary after the run.  All
numeric claims are exact; the timing claims have generous headroom on
desk hardware.
"""

from __future__ import annotations

import json
import random
import time
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest
from conftest import SUBLATTICE_BASES, record_acceptance

import cslcolour
from cslcolour.cli import main
from cslcolour.coincidence import (
    analyze,
    census_contradictions,
    commensurable_map,
    enumerate_square_rotations,
    window_census,
)
from cslcolour.cyclo8 import (
    AMMANN_BEENKER_ROTATION,
    cyc8,
    multiplication_map,
    principal_submodule,
)
from cslcolour.lattice import (
    Colouring,
    intersect,
    lattice_new,
    standard_lattice,
    transform,
)

CONFIG_DIR = Path(cslcolour.__file__).parent / "configs"
ALL_CONFIGS = [
    "example1.json",
    "example2.json",
    "example2_rect.json",
    "ammann_beenker.json",
    "identity.json",
]

Z2 = standard_lattice(2)
ROT = commensurable_map([["4/5", "-3/5"], ["3/5", "4/5"]])
EX1 = Colouring(
    Z2,
    lattice_new([[6, 0], [2, 1]]),
    reps=[[0, 0], [1, 0], [2, 0], [3, 0], [4, 0], [5, 0]],
)
EX2 = Colouring(Z2, lattice_new([[3, 0], [0, 1]]), reps=[[0, 0], [1, 0], [2, 0]])


def rank4_case():
    colouring = Colouring(
        standard_lattice(4),
        principal_submodule(cyc8(1, 0, 1, 0)),
        reps=[[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0]],
    )
    return colouring, multiplication_map(AMMANN_BEENKER_ROTATION)


@pytest.fixture(scope="module")
def corpus():
    """52 rotations x 12 sublattices, fully analyzed, with wall time."""
    rotations = enumerate_square_rotations(40)
    assert len(rotations) >= 50
    subs = [lattice_new(b) for b in SUBLATTICE_BASES]
    assert len(subs) >= 10
    start = time.perf_counter()
    cases = [
        (rot, sub, analyze(Colouring(Z2, sub), rot))
        for rot in rotations
        for sub in subs
    ]
    elapsed = time.perf_counter() - start
    return rotations, subs, cases, elapsed


def test_criterion_1_example1_exact():
    with record_acceptance(1, "worked planar example 1 exact, under 0.1 s"):
        start = time.perf_counter()
        a = analyze(EX1, ROT)
        elapsed = time.perf_counter() - start
        assert (a.m, a.sigma1, a.sigma2) == (6, 5, 10)
        assert (a.s, a.t, a.u, a.v) == (6, 6, 2, 2)
        assert a.colour_coincidence is False
        assert elapsed < 0.1


def test_criterion_2_example2_exact():
    with record_acceptance(2, "worked planar example 2 exact, under 0.1 s"):
        start = time.perf_counter()
        a = analyze(EX2, ROT)
        elapsed = time.perf_counter() - start
        assert (a.sigma1, a.sigma2) == (5, 5)
        assert (a.s, a.t) == (3, 3)
        assert a.colour_coincidence is True
        assert a.permutation == ((0, 0), (1, 2), (2, 1))  # fixes 0, swaps 1 and 2
        assert elapsed < 0.1


def test_criterion_3_rank4_module_exact():
    with record_acceptance(3, "rank-4 eightfold module case exact, under 1 s"):
        colouring, amap = rank4_case()
        start = time.perf_counter()
        a = analyze(colouring, amap)
        elapsed = time.perf_counter() - start
        assert (a.m, a.sigma1, a.sigma2) == (4, 9, 9)
        assert a.colour_coincidence is True
        assert a.permutation == ((0, 0), (1, 1), (2, 2), (3, 3))
        assert elapsed < 1.0


def test_criterion_4_index_formula_suite(corpus):
    with record_acceptance(4, "index formula and divisibility chain over the corpus, under 30 s"):
        rotations, subs, cases, elapsed = corpus
        assert len(cases) == len(rotations) * len(subs) >= 500
        for _, _, a in cases:
            assert a.sigma2 * a.m == a.t * a.u * a.sigma1
            assert a.sigma2 * a.m == a.s * a.v * a.sigma1
            assert a.m % a.s == 0
            assert a.m % a.t == 0
            assert a.s % a.u == 0
            assert a.t % a.v == 0
        assert elapsed < 30.0


def test_criterion_5_nested_meet_identity(corpus):
    with record_acceptance(5, "nested meet identity exact on the corpus"):
        _, _, cases, _ = corpus
        for rot, sub, a in cases:
            image = transform(sub, rot.matrix)
            sub_meet = intersect(sub, a.csl1)
            image_meet = intersect(image, a.csl1)
            assert intersect(sub_meet, image_meet) == a.csl2
            if sub_meet == image_meet:
                assert sub_meet == a.csl2


def test_criterion_6_full_colour_equivalence(corpus):
    with record_acceptance(6, "colour coincidence index tests, both directions populated"):
        _, _, cases, _ = corpus
        equal_cc = unequal_noncc = nontrivial_cc = 0
        for _, _, a in cases:
            if a.colour_coincidence:
                assert a.sigma1 % a.sigma2 == 0
            if a.s == a.t == a.m:
                assert a.colour_coincidence == (a.sigma1 == a.sigma2)
                if a.colour_coincidence:
                    equal_cc += 1
                    if a.m > 1:
                        nontrivial_cc += 1
                else:
                    unequal_noncc += 1
        assert equal_cc >= 3
        assert nontrivial_cc >= 3
        assert unequal_noncc >= 3


def test_criterion_7_oracle_concordance(corpus, tmp_path):
    with record_acceptance(7, "window oracle agrees with the analysis, no contradictions"):
        # the three worked examples at radius 10, colour sets equal
        rank4_colouring, rank4_map = rank4_case()
        examples = [(EX1, ROT), (EX2, ROT), (rank4_colouring, rank4_map)]
        for colouring, amap in examples:
            a = analyze(colouring, amap)
            census = window_census(colouring, amap, 10)
            assert census["observed_I"] == list(a.set_I)
            assert census["observed_J"] == list(a.set_J)
            assert census_contradictions(a, census) == []
        # example 1 sends black points to black and red points, verbatim
        census1 = window_census(EX1, ROT, 10)
        assert census1["transfer"][0] == [0, [0, 3]]
        # 10 seeded corpus cases; the admission bound sigma1 <= 5 keeps the
        # radius-10 window dense enough to reach every residue class
        _, _, cases, _ = corpus
        candidates = [
            (rot, sub, a) for rot, sub, a in cases if a.sigma1 <= 5
        ]
        sampled = random.Random(405060).sample(candidates, 10)
        for rot, sub, a in sampled:
            colouring = Colouring(Z2, sub)
            census = window_census(colouring, rot, 10)
            assert census["observed_I"] == list(a.set_I)
            assert census["observed_J"] == list(a.set_J)
            assert census_contradictions(a, census) == []
        # the census must never contradict the analysis, saturated or not
        for rot, sub, a in cases:
            census = window_census(Colouring(Z2, sub), rot, 6)
            assert census_contradictions(a, census) == []
        # and the CLI oracle must exit 0 on every bundled config
        for name in ALL_CONFIGS:
            out = tmp_path / f"oracle_{name}"
            code = main(["oracle", str(CONFIG_DIR / name), "--out", str(out)])
            assert code == 0, name


def test_criterion_8_byte_determinism(tmp_path):
    with record_acceptance(8, "bundled configs reproduce byte-identically"):
        for name in ALL_CONFIGS:
            path = str(CONFIG_DIR / name)
            outputs = []
            for attempt in range(2):
                stem = tmp_path / f"{name}_{attempt}"
                blobs = []
                for command in ("analyze", "oracle"):
                    dest = f"{stem}_{command}.json"
                    assert main([command, path, "--out", dest]) == 0
                    blobs.append(Path(dest).read_bytes())
                for mode in ("parent", "csl", "csl-inv"):
                    dest = f"{stem}_{mode}.svg"
                    assert main(["render", path, "--mode", mode, "--out", dest]) == 0
                    blobs.append(Path(dest).read_bytes())
                outputs.append(blobs)
            assert outputs[0] == outputs[1], name


def test_criterion_9_figure_structure(tmp_path):
    with record_acceptance(9, "planar example 1 figure: rep colours and x-period 6"):
        dest = tmp_path / "example1_parent.svg"
        code = main([
            "render", str(CONFIG_DIR / "example1.json"),
            "--mode", "parent", "--out", str(dest),
        ])
        assert code == 0
        ns = "{http://www.w3.org/2000/svg}"
        root = ET.fromstring(dest.read_text(encoding="utf-8"))
        colour_at = {
            c.get("data-coords"): int(c.get("data-colour"))
            for c in root.iter(f"{ns}circle")
            if c.get("class") == "pt"
        }
        assert colour_at["1,0"] == 1
        assert colour_at["2,1"] == 0
        assert colour_at["6,0"] == 0
        for i in range(6):
            assert colour_at[f"{i},0"] == i  # reps painted in order along the axis
        for x in range(-8, 3):
            assert colour_at[f"{x},0"] == colour_at[f"{x + 6},0"]  # period 6
