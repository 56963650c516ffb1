from __future__ import annotations

import dataclasses
from itertools import product

import pytest

from coxbridge import KNOTS_DIR
from coxbridge.coxeter import get_group
from coxbridge.diagram import build_diagram, parse_line
from coxbridge.errors import NotAReflection, OmegaOutOfRange, RankMismatch
from coxbridge.homsearch import (
    QuotientCertificate,
    analyze,
    brute_force_exists,
    load_certificates,
    propagate,
    save_certificates,
    search,
    verify,
    verify_certificate,
)
from coxbridge.wirtinger import wirtinger_number


def all_colorings(d, gt) -> list[tuple[int, ...]]:
    """Oracle: every labeling of the strands that satisfies every crossing."""
    out = []
    for lab in product(range(gt.n_reflections), repeat=len(d.strands)):
        if verify(d, gt, lab):
            out.append(lab)
    return out


def test_trefoil_in_a2(trefoil):
    gt = get_group("A2")
    wr = wirtinger_number(trefoil)
    labels = propagate(trefoil, wr.moves, gt, {wr.seeds[0]: 0, wr.seeds[1]: 1})
    assert sorted(labels) == [0, 1, 2]
    assert verify(trefoil, gt, labels)
    # 3 constant + 6 surjective, the same as Fox 3-colorings
    assert len(all_colorings(trefoil, gt)) == 9


def test_figure8_in_a2_fails(figure8):
    gt = get_group("A2")
    wr = wirtinger_number(figure8)
    labels = propagate(figure8, wr.moves, gt, {wr.seeds[0]: 0, wr.seeds[1]: 1})
    first, second = (labels[mv.new] for mv in wr.moves)
    assert first == 2 and second == 1
    assert not verify(figure8, gt, labels)
    assert len(all_colorings(figure8, gt)) == 3  # constants only


def test_constant_labeling_verifies(knot_816):
    gt = get_group("H3")
    wr = wirtinger_number(knot_816)
    for r in (0, 7, 14):
        labels = propagate(knot_816, wr.moves, gt, {s: r for s in wr.seeds})
        assert labels == [r] * 8
        assert verify(knot_816, gt, labels)


def test_not_a_reflection(knot_816):
    gt = get_group("A3")
    wr = wirtinger_number(knot_816)
    with pytest.raises(NotAReflection):
        propagate(knot_816, wr.moves, gt, {wr.seeds[0]: 6, wr.seeds[1]: 0, wr.seeds[2]: 1})


def test_rank_mismatch(trefoil, library):
    with pytest.raises(RankMismatch):
        search(trefoil, wirtinger_number(trefoil), get_group("A3"), library["A3"])


@pytest.mark.parametrize("group", ["A3", "H3"])
def test_816_matches_brute_force(knot_816, library, group):
    gt = get_group(group)
    wr = wirtinger_number(knot_816)
    cert = search(knot_816, wr, gt, library[group])
    assert (cert is not None) == brute_force_exists(knot_816, wr, gt)


def test_816_two_diagrams_agree(knot_816, htw_small, library):
    from coxbridge.fox import determinant

    eights = [d for d in htw_small if d.m == 8 and determinant(d) == 35]
    assert len(eights) == 1
    a, b = analyze(knot_816, library), analyze(eights[0], library)
    assert a.omega == b.omega == 3
    assert a.hits == b.hits


def test_certificate_roundtrip_and_tamper(htw_small, library, tmp_path):
    reps = [analyze(d, library) for d in htw_small if d.m == 8]
    certs = [c for r in reps for c in r.certificates.values()]
    assert certs, "expected at least one A3 hit at 8 crossings"
    for c in certs:
        assert verify_certificate(c)
    save_certificates(certs, tmp_path / "c.json")
    back = load_certificates(tmp_path / "c.json")
    assert back == certs
    c = certs[0]
    labels = list(c.labels)
    labels[-1] = (labels[-1] + 1) % get_group(c.group).n_reflections
    assert not verify_certificate(dataclasses.replace(c, labels=tuple(labels)))
    assert not verify_certificate(dataclasses.replace(c, seeds=c.seeds[:2]))
    assert not verify_certificate(dataclasses.replace(c, assignment=c.assignment[::-1]))


def test_certificate_needs_gauss():
    c = QuotientCertificate("k", "A3", 3, (0, 1, 2), (0, 1, 2), (0, 1, 2), "")
    with pytest.raises(ValueError):
        verify_certificate(c)


def test_analyze_dihedral(trefoil, figure8, library):
    a = analyze(trefoil, library)
    assert a.dihedral.group == "I2(3)" and a.bridge == 2
    b = analyze(figure8, library)
    assert b.dihedral.group == "I2(5)" and b.bridge == 2
    assert "bridge = meridional rank = 2" in b.summary()


def test_analyze_negative_control(library):
    with open(KNOTS_DIR / "k12a210.dt") as fh:
        line = [l for l in fh if not l.startswith("#")][0]
    d = build_diagram(parse_line(line))
    rep = analyze(d, library)
    assert rep.omega == 3
    assert rep.hits == {"A3": False, "H3": False}
    assert rep.bridge is None
    assert rep.summary().endswith("bridge <= 3, MRCQ not found")


def test_omega_out_of_range(knot_816, library):
    with pytest.raises(OmegaOutOfRange):
        analyze(knot_816, library, k_max=2)


def test_group_filter(knot_816, library):
    assert set(analyze(knot_816, library, groups=["H3"]).hits) == {"H3"}


def test_search_matches_brute_force_at_eleven_crossings(library):
    from conftest import load_knots

    sample = [d for d in load_knots("htw_11.dt")[::10] if wirtinger_number(d).omega == 3]
    assert len(sample) > 30
    for d in sample:
        wr = wirtinger_number(d)
        for group in ("A3", "H3"):
            gt = get_group(group)
            cert = search(d, wr, gt, library[group])
            assert (cert is not None) == brute_force_exists(d, wr, gt), (d.name, group)
            if cert is not None:
                assert verify_certificate(cert, gt)
