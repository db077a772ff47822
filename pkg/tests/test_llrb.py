import itertools
import random

import pytest
from fixtures import RED_LEAF_25
from oracles import RefLLRB, Tree23, rb_groups

from rbparity import LLRBTree, RB23Tree, RBTree, build

class Logged(LLRBTree):
    def rotate_left(self, h):
        s = self.store
        self.log.append(("L", s.key[h], s.key[s.right[h]]))
        return super().rotate_left(h)

    def rotate_right(self, h):
        s = self.store
        self.log.append(("R", s.key[h], s.key[s.left[h]]))
        return super().rotate_right(h)


def red_leaf_tree(cls):
    t = build(cls, RED_LEAF_25)
    assert t.validate() == []
    return t


def test_red_leaf_fixture_is_left_leaning():
    t = red_leaf_tree(LLRBTree)
    s = t.store
    h = t._find(25)
    assert s.color[h] == 1 and s.left[h] == 0 and s.right[h] == 0


def test_red_leaf_delete_rotates_four_times():
    t = red_leaf_tree(Logged)
    t.log = []
    assert t.delete(25)
    assert t.stats.rotations == 4
    # (direction, node rotated down, node lifted)
    assert t.log == [("R", 18, 9), ("R", 24, 21), ("L", 21, 24), ("L", 9, 18)]
    assert t.validate() == []
    assert 25 not in t


@pytest.mark.parametrize("cls", [RBTree, RB23Tree])
def test_red_leaf_delete_is_free_elsewhere(cls):
    t = red_leaf_tree(cls)
    assert t.delete(25)
    assert t.stats.rotations == 0 and t.stats.fixup_steps == 0
    assert t.validate() == []


def test_insert_right_red_rotates_left():
    t = LLRBTree([10, 20])
    assert t.shape() == (20, 0, (10, 1, None, None), None)
    assert t.stats.rotations == 1


def test_insert_three_splits():
    t = LLRBTree([10, 20, 30])
    assert t.shape() == (20, 0, (10, 0, None, None), (30, 0, None, None))


def test_absent_key_delete_keeps_tree_valid():
    rng = random.Random(5)
    t = LLRBTree(rng.sample(range(0, 1000, 2), 200))
    for k in range(1, 1000, 2):
        assert not t.delete(k)
        assert t.validate() == []
    assert len(t) == 200


def test_delete_from_empty_and_single():
    t = LLRBTree()
    assert not t.delete(3)
    t.insert(3)
    assert t.delete(3)
    assert t.root == 0 and len(t) == 0


@pytest.mark.parametrize("n", [6, 7])
def test_matches_reference_on_all_orders(n):
    for perm in itertools.permutations(range(n)):
        ours, ref = LLRBTree(), RefLLRB()
        for k in perm:
            ours.insert(k)
            ref.insert(k)
        assert ours.shape() == ref.shape()
        assert ours.stats.rotations == ref.rotations
        for k in perm[::2] + perm[1::2]:
            ours.delete(k)
            ref.delete(k)
            assert ours.shape() == ref.shape()
            assert ours.stats.rotations == ref.rotations


def test_insert_builds_the_textbook_2_3_tree():
    rng = random.Random(11)
    for _ in range(200):
        keys = rng.sample(range(100), rng.randrange(1, 60))
        t, ref = LLRBTree(), Tree23()
        for k in keys:
            t.insert(k)
            ref.insert(k)
        assert rb_groups(t.shape()) == ref.groups()
