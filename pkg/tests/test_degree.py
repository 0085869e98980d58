import pytest
from hypothesis import HealthCheck, given, settings

from facegroup.errors import NonOrientableTarget
from facegroup.services.catalog import example_sphere
from facegroup.services.complexes import PointedComplex, build_explicit, cartesian_grid
from facegroup.services.degree import check_orientation, default_orientation, degree, degree_report
from facegroup.services.spheres import constant, inverse, product
from strategies import move_walks, spheres

FACE = ("e1", "e2", "e3")

TETRA_FACES = [("a", "b", "c"), ("a", "c", "d"), ("a", "d", "b"), ("b", "d", "c")]


@pytest.fixture(scope="module")
def tetra():
    return build_explicit(TETRA_FACES)


def test_reference_degrees(oct, fig3, fig10):
    assert degree(constant(oct, 3, 3), FACE) == 0
    assert degree(fig3, FACE) == 0
    assert degree(fig10, FACE) == -1
    assert degree(fig10, ("e1", "e3", "e2")) == 1
    assert degree(fig10, ("e3", "e1", "e2")) == -1


def test_report_agrees_on_every_face(fig10, fig3):
    report = degree_report(fig10)
    assert len(report) == 8
    assert set(report.values()) == {-1}
    assert set(degree_report(fig3).values()) == {0}


def test_products_and_inverses(fig10, fig3):
    assert degree(product(fig10, fig10), FACE) == -2
    assert degree(product(fig10, fig3), FACE) == -1
    assert degree(inverse(fig10), FACE) == 1
    assert degree(product(fig10, inverse(fig10)), FACE) == 0


SLOW = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])


@SLOW
@given(move_walks(example_sphere("fig10"), max_steps=200))
def test_moves_preserve_degree(walk):
    assert all(degree(f, FACE) == -1 for f in walk)


@SLOW
@given(spheres(max_size=4).flatmap(lambda f: move_walks(product(f, example_sphere("fig10")), max_steps=120, max_size=10)))
def test_moves_preserve_degree_after_products(walk):
    assert all(degree(f, FACE) == -1 for f in walk)


@settings(max_examples=60, deadline=None)
@given(spheres())
def test_random_spheres_are_paired_consistently(f):
    assert len(set(degree_report(f).values())) == 1


def _degree_by_triangles(f, face):
    X = f.complex
    ids = [X.lookup(v) for v in face]
    want = {tuple(ids[k:] + ids[:k]) for k in range(3)}
    total = 0
    for tri in cartesian_grid(f.m, f.n).triangles():
        labels = tuple(f.label(i, j) for i, j in tri)
        if set(labels) == set(ids):
            total += 1 if labels in want else -1
    return total


@settings(max_examples=60, deadline=None)
@given(spheres(max_size=5))
def test_degree_matches_a_triangle_by_triangle_count(f):
    for face in (FACE, ("e1", "-e2", "e3"), ("-e1", "-e2", "-e3")):
        assert degree(f, face) == _degree_by_triangles(f, face)


def test_orientation_checks(tetra):
    orient = check_orientation(tetra, TETRA_FACES)
    assert len(orient.faces) == 4
    assert orient.sign(orient.oriented([0, 1, 2])) == 1

    flipped = [("a", "c", "b")] + TETRA_FACES[1:]
    with pytest.raises(NonOrientableTarget) as exc:
        check_orientation(tetra, flipped)
    assert exc.value.edge is not None
    with pytest.raises(NonOrientableTarget):
        check_orientation(tetra, TETRA_FACES[:3])
    with pytest.raises(NonOrientableTarget):
        check_orientation(tetra, TETRA_FACES + [("a", "b", "c")])
    with pytest.raises(NonOrientableTarget):
        check_orientation(tetra, [("a", "b")] + TETRA_FACES[1:])


def test_only_closed_surfaces_orient():
    solid = build_explicit([["a", "b", "c", "d"]])
    with pytest.raises(NonOrientableTarget):
        check_orientation(solid, TETRA_FACES)
    disk = build_explicit([["a", "b", "c"], ["a", "c", "d"]])
    with pytest.raises(NonOrientableTarget):
        check_orientation(disk, [("a", "b", "c"), ("a", "c", "d")])


def test_degree_over_a_tetrahedron(tetra):
    target = PointedComplex(tetra, "a")
    orient = check_orientation(tetra, TETRA_FACES)
    with pytest.raises(NonOrientableTarget):
        default_orientation(tetra)
    with pytest.raises(NonOrientableTarget):
        degree(constant(target, 2, 2), ("a", "b", "c"))
    assert degree(constant(target, 2, 2), ("a", "b", "c"), orient) == 0


def test_bad_faces(fig10, tetra):
    with pytest.raises(NonOrientableTarget):
        degree(fig10, ("e1", "-e1", "e2"))
    with pytest.raises(NonOrientableTarget):
        degree(fig10, ("e1", "e2"))
    with pytest.raises(NonOrientableTarget):
        degree(fig10, FACE, check_orientation(tetra, TETRA_FACES))
