import pytest

from flagtrop.quiver import build_quiver


@pytest.mark.parametrize(
    "n,verts,arrows,boxes",
    [(2, 3, 2, 0), (3, 6, 6, 1), (4, 10, 12, 3), (5, 15, 20, 6)],
)
def test_counts(n, verts, arrows, boxes):
    q = build_quiver(n)
    assert len(q.vertices) == verts
    assert len(q.arrows) == arrows
    assert len(q.boxes) == boxes
    assert len(q.arrows) == n * (n - 1)
    assert len(q.boxes) == (n - 1) * (n - 2) // 2
    # column j has n - j vertical arrows
    for j in range(1, n + 1):
        col = [a for a in q.vertical_arrows() if a.tail[1] == j]
        assert len(col) == n - j


def test_every_bullet_has_in_and_out():
    for n in (2, 3, 4, 5):
        q = build_quiver(n)
        for v in q.bullets:
            assert q.incoming(v)
            assert q.outgoing(v)


def test_letter_arrows_n3():
    q = build_quiver(3)
    letters = q.letter_arrows()
    assert [a.name for a in letters] == [
        "v21->v11",
        "v31->v21",
        "v22->v21",
        "v32->v22",
        "v32->v31",
        "v33->v32",
    ]


def test_box_relation_adjacency():
    q = build_quiver(3)
    (a1, a2, a3, a4) = q.boxes[0]
    # bottom horizontal, left vertical, right vertical, top horizontal
    assert (a1.tail, a1.head) == ((3, 2), (3, 1))
    assert (a2.tail, a2.head) == ((3, 1), (2, 1))
    assert (a3.tail, a3.head) == ((3, 2), (2, 2))
    assert (a4.tail, a4.head) == ((2, 2), (2, 1))
    # the two sides share endpoints: a2 after a1 and a4 after a3
    assert a1.head == a2.tail and a3.head == a4.tail
    assert a2.head == a4.head and a1.tail == a3.tail


def test_diagonals():
    q = build_quiver(3)
    assert q.diagonal(1) == [(1, 1), (2, 2), (3, 3)]
    assert q.diagonal(2) == [(2, 1), (3, 2)]
    assert q.diagonal(3) == [(3, 1)]


def test_enumerate_paths_n2():
    q = build_quiver(2)
    paths = q.enumerate_paths(set(q.stars))
    assert len(paths) == 1
    assert paths[0].length == 2
    assert paths[0].start == (2, 2) and paths[0].end == (1, 1)


def test_enumerate_paths_n3():
    q = build_quiver(3)
    paths = q.enumerate_paths(set(q.stars))
    ends = {(p.start, p.end, p.length) for p in paths}
    assert ((2, 2), (1, 1), 2) in ends
    assert ((3, 3), (2, 2), 2) in ends
    assert ((3, 3), (1, 1), 4) in ends
    # interior vertices avoid the endpoint set: no path through a star
    for p in paths:
        for v in p.vertices()[1:-1]:
            assert v not in q.stars


def test_independent_arrows():
    q = build_quiver(4)
    ind = q.independent_arrows()
    assert len(ind) == len(q.arrows) - len(q.boxes)


def test_dot_export():
    dot = build_quiver(3).to_dot()
    assert dot.startswith("digraph")
    assert '"v33" -> "v32"' in dot
