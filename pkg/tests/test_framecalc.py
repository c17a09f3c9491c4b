import itertools
from fractions import Fraction

import pytest

from bihcheck import framecalc as fc
from bihcheck.multipoly import MultiPoly, P


def frames():
    return [fc.standard_frame(n) for n in (2, 3, 4)] + [fc.gradient_frame()]


def templates(frame):
    out = [fc.ShapeTemplate.zero(frame)]
    if "U" in frame.labels:
        out += [fc.ruled_template(frame), fc.nonhopf_template(frame)]
    else:
        out.append(fc.hopf_gradient_template(frame))
    return out


@pytest.mark.parametrize("frame", frames(), ids=lambda f: f"dim{f.dim}-{f.labels[0]}")
def test_phi_structure(frame):
    assert frame.structure_defects() == []


def test_broken_phi_detected():
    bad = fc.Frame(("xi", "U", "phiU"), "xi", ((0, 0, 0), (0, 0, 1), (0, 1, 0)))
    assert "phi is not skew-symmetric" in bad.structure_defects()
    bad = fc.Frame(("xi", "U", "phiU"), "xi", ((0, 1, 0), (-1, 0, 0), (0, 0, 0)))
    assert bad.structure_defects()


def test_standard_frame_labels():
    assert fc.standard_frame(3).labels == ("xi", "U", "phiU", "E1", "phiE1")
    assert fc.standard_frame(5).dim == 9


@pytest.mark.parametrize("frame", [fc.standard_frame(2), fc.standard_frame(3), fc.gradient_frame()],
                         ids=lambda f: f"dim{f.dim}-{f.labels[0]}")
def test_gauss_antisymmetry(frame):
    for A in templates(frame):
        for x, y, z, w in itertools.product(frame.labels, repeat=4):
            v = fc.gauss_component(frame, A, x, y, z, w)
            assert v == -fc.gauss_component(frame, A, y, x, z, w)
            assert v == -fc.gauss_component(frame, A, x, y, w, z)


@pytest.mark.parametrize("frame", frames(), ids=lambda f: f"dim{f.dim}-{f.labels[0]}")
def test_flat_template_sectional_curvatures(frame):
    zero = fc.ShapeTemplate.zero(frame)
    for x, y in itertools.permutations(frame.labels, 2):
        # basis vectors map to +-basis vectors under phi, so <phi x, y> is a matrix entry
        holomorphic = frame.phi[frame.index(y)][frame.index(x)] != 0
        assert fc.gauss_component(frame, zero, x, y, y, x) == (4 if holomorphic else 1)


def test_gauss_examples():
    f = fc.standard_frame(2)
    zero = fc.ShapeTemplate.zero(f)
    assert fc.gauss_component(f, zero, "U", "xi", "xi", "U") == 1
    assert fc.gauss_component(f, zero, "U", "phiU", "phiU", "U") == 4
    assert fc.gauss_component(f, fc.ruled_template(f), "phiU", "xi", "U", "phiU") == 0


def test_unknown_label_rejected():
    f = fc.standard_frame(2)
    with pytest.raises(KeyError):
        fc.gauss_component(f, fc.ShapeTemplate.zero(f), "U", "V", "U", "xi")


def test_template_must_be_symmetric():
    with pytest.raises(fc.FrameError):
        fc.ShapeTemplate(("a", "b"), (("alpha", "beta"), ("0", "gamma")))


def test_hopf_test():
    g = fc.gradient_frame()
    assert fc.hopf_test(fc.hopf_gradient_template(g), g)
    f = fc.standard_frame(2)
    assert fc.hopf_obstructions(fc.nonhopf_template(f), f) == {"U": P("beta")}
    assert not fc.hopf_test(fc.ruled_template(f), f)
    assert fc.hopf_test(fc.ruled_template(f).subs("beta", 0), f)


def test_trace_and_H():
    g = fc.gradient_frame()
    tr, _ = fc.trace_and_H(fc.hopf_gradient_template(g), 2)
    assert tr == P("-3/2*H + lambda + delta")
    assert fc.mean_curvature_relation(fc.hopf_gradient_template(g), 2) == P("lambda + delta - 9/2*H")
    f = fc.standard_frame(4)
    assert fc.trace_and_H(fc.ruled_template(f), 4)[1] == P("alpha") * Fraction(1, 7)
    assert fc.trace_and_H(fc.ShapeTemplate.zero(f), 4) == (0, 0)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_ruled_scenario_minimal(n):
    v = fc.ruled_scenario(n)
    assert v.verdict == "minimal" and v.ok
    steps = {s.name: s for s in v.certificate.steps}
    assert steps["gauss side"].produced == 0
    assert steps["branches"].data["branches"] == ["alpha = 0", "beta^2 = 1/2"]
    assert steps["reject beta^2 = 1/2"].data["witness"] == Fraction(3, 2)
    if n >= 3:
        assert steps["gauss side"].data["explicit frame agrees"]


def test_ruled_scenario_alpha_zero():
    v = fc.ruled_scenario(2, alpha=0)
    assert v.verdict == "minimal"
    assert v.certificate.step("branches").note == "identity 0 = 0"


def test_ruled_scenario_reports_discrepancy(monkeypatch):
    monkeypatch.setattr(fc, "GAUSS_C", 2)
    v = fc.ruled_scenario(2)
    # the flat part vanishes termwise, so c does not enter this component
    assert v.certificate.step("gauss side").produced == 0
    monkeypatch.setattr(fc, "ruled_template", lambda f: fc.ShapeTemplate.from_columns(
        f, {"xi": {"xi": "alpha", "U": "beta"}, "U": {"xi": "beta"}, "phiU": {"phiU": "alpha"}}))
    v = fc.ruled_scenario(2)
    step = v.certificate.step("gauss side")
    assert not step.ok and step.note.startswith("discrepancy polynomial")
    assert v.verdict == "inconclusive"


def test_serialization():
    f = fc.standard_frame(2)
    d = fc.ruled_template(f).to_dict()
    assert d["matrix"][0] == ["alpha", "beta", "0"]
    assert fc.standard_frame(2).to_dict()["phi"][2] == ["0", "1", "0"]
    assert MultiPoly.zero() == P(d["matrix"][2][2])
