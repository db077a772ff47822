import pydot
import pytest

from rbparity import BLACK, NIL, RED, LLRBTree, NodeStore, RB23Tree, RBTree, build


def small():
    # A(black, right=C(red, left=B))
    return build(RBTree, (10, "B", (5, "B", None, None), (30, "R", (20, "B", None, None), (40, "B", None, None))))


def test_rotate_left_moves_links():
    t = small()
    a = t.root
    c = t.store.right[a]
    b = t.store.left[c]
    top = t.rotate_left(a)
    s = t.store
    assert top == c == t.root
    assert s.left[c] == a and s.right[a] == b
    assert s.parent[a] == c and s.parent[b] == a and s.parent[c] == NIL
    assert t.stats.rotations == 1
    assert t.inorder_keys() == [5, 10, 20, 30, 40]


def test_rotations_are_inverse_and_color_neutral():
    t = small()
    before = t.shape()
    colors = list(t.store.color)
    t.rotate_right(t.rotate_left(t.root))
    assert t.shape() == before
    assert t.store.color == colors
    assert t.stats.rotations == 2


def test_rotate_into_nil_is_refused():
    t = build(RBTree, (1, "B", None, None))
    with pytest.raises(AssertionError):
        t.rotate_left(t.root)
    with pytest.raises(AssertionError):
        t.rotate_right(t.root)


def test_rotation_below_root_rewires_parent():
    t = RBTree(range(1, 8))
    s = t.store
    h = t._find(4)
    p = s.parent[h]
    x = t.rotate_left(h)
    assert s.right[p] == x and s.parent[x] == p
    assert t.inorder_keys() == list(range(1, 8))


def test_nodestore_reuses_freed_slots():
    s = NodeStore()
    a = s.alloc(1)
    b = s.alloc(2)
    s.free(a)
    assert s.live() == 1
    assert s.alloc(3) == a
    assert s.capacity() == 2
    assert s.key[b] == 2


@pytest.mark.parametrize(
    "shape, rule",
    [
        ((2, "R", None, None), "b"),
        ((2, "B", (3, "B", None, None), None), "a"),
        ((2, "B", (1, "R", (0, "R", None, None), None), None), "c"),
        ((2, "B", (1, "B", None, None), None), "d"),
    ],
)
def test_validate_catches(shape, rule):
    t = build(RBTree, shape)
    assert rule in {v.rule for v in t.validate()}


def test_validate_variant_rules():
    four = (2, "B", (1, "R", None, None), (3, "R", None, None))
    assert build(RBTree, four).validate() == []
    assert {v.rule for v in build(RB23Tree, four).validate()} == {"e"}
    assert {v.rule for v in build(LLRBTree, four).validate()} == {"f"}


def test_validate_links_and_size():
    t = RBTree([1, 2, 3])
    t.store.parent[t.store.left[t.root]] = t.store.right[t.root]
    assert "links" in {v.rule for v in t.validate()}
    t = RBTree([1, 2, 3])
    t.size = 7
    assert "size" in {v.rule for v in t.validate()}


def test_validate_reports_cycle():
    t = RBTree([1, 2, 3])
    s = t.store
    s.left[s.left[t.root]] = t.root
    assert "links" in {v.rule for v in t.validate()}


def test_empty_tree():
    t = RBTree()
    assert t.validate() == []
    assert len(t) == 0 and list(t) == []
    assert t.height() == 0 and t.black_height() == 0
    assert not t.delete(1)
    with pytest.raises(KeyError):
        t.min_key()


def test_container_protocol():
    t = RB23Tree([5, 3, 8])
    assert 3 in t and 4 not in t
    assert list(t) == [3, 5, 8]
    assert (t.min_key(), t.max_key()) == (3, 8)
    assert not t.insert(5)
    assert len(t) == 3


def test_clone_is_deep_and_retypes():
    t = RB23Tree(range(20))
    c = t.clone(RBTree)
    assert isinstance(c, RBTree) and c.shape() == t.shape()
    c.delete(0)
    assert 0 in t and t.validate() == []


def test_dot_parses_and_labels():
    t = RBTree([10, 20, 30])
    graphs = pydot.graph_from_dot_data(t.to_dot())
    g = graphs[0]
    labels = sorted(n.get_label().strip('"') for n in g.get_nodes() if n.get_label())
    assert labels == ["10 [red]", "20 [black]", "30 [red]"]
    assert len(g.get_edges()) == 2


def test_dot_of_empty_tree_has_no_nodes():
    g = pydot.graph_from_dot_data(RBTree().to_dot())[0]
    assert [n for n in g.get_nodes() if n.get_name() not in ("node", "edge")] == []
