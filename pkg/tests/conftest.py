import pytest

from gtm import (
    Arrow,
    BoundQuiver,
    ModulePair,
    Tree,
    TreeMorphism,
    module_for_root,
    standard_spec,
)


@pytest.fixture(scope="session")
def a2():
    return BoundQuiver(["1", "2"], [Arrow("a", "1", "2")])


@pytest.fixture(scope="session")
def flip_pair(a2):
    """Two downward prongs against a single target vertex; Hom is spanned
    by the sign-flip map v2 -> w4, v3 -> -w4."""
    t1 = Tree([1, 2, 3], [Arrow("a", 1, 2), Arrow("b", 1, 3)])
    t2 = Tree([4], [])
    f1 = TreeMorphism(t1, a2, {1: "1", 2: "2", 3: "2"}, {"a": "a", "b": "a"})
    f2 = TreeMorphism(t2, a2, {4: "2"}, {})
    return ModulePair(f1, f2)


@pytest.fixture(scope="session")
def ggm_pair(a2):
    """The hexagon example: exactly six graph maps, spanning a hom space
    of dimension two."""
    t1 = Tree([1, 2, 3], [Arrow("a", 1, 2), Arrow("b", 1, 3)])
    t2 = Tree([4, 5], [Arrow("c", 4, 5)])
    f1 = TreeMorphism(t1, a2, {1: "1", 2: "2", 3: "2"}, {"a": "a", "b": "a"})
    f2 = TreeMorphism(t2, a2, {4: "1", 5: "2"}, {"c": "a"})
    return ModulePair(f1, f2)


@pytest.fixture(scope="session")
def ghost_pair(a2):
    """A cofork against a double fork: the pair carries a ghost."""
    t1 = Tree([1, 2, 4], [Arrow("a", 1, 4), Arrow("b", 2, 4)])
    t2 = Tree(
        [5, 6, 7, 8, 9],
        [Arrow("d", 6, 5), Arrow("e", 6, 7), Arrow("f", 8, 7), Arrow("g", 8, 9)],
    )
    f1 = TreeMorphism(
        t1, a2, {1: "1", 2: "1", 4: "2"}, {"a": "a", "b": "a"}
    )
    f2 = TreeMorphism(
        t2,
        a2,
        {5: "2", 6: "1", 7: "2", 8: "1", 9: "2"},
        {"d": "a", "e": "a", "f": "a", "g": "a"},
    )
    return ModulePair(f1, f2)


@pytest.fixture(scope="session")
def dec_morphism(a2):
    """The decomposable double prong onto one arrow: K^2 -> K by (1 1)."""
    t = Tree([0, 1, 2], [Arrow("a", 1, 0), Arrow("b", 2, 0)])
    return TreeMorphism(t, a2, {0: "2", 1: "1", 2: "1"}, {"a": "a", "b": "a"})


@pytest.fixture(scope="session")
def d5_spec():
    return standard_spec(5)


@pytest.fixture(scope="session")
def d5_morphism(d5_spec):
    """The doubled-middle module with dimension vector (1,1,2,1,1)."""
    return module_for_root(d5_spec, (1, 1, 2, 1, 1))


@pytest.fixture(scope="session")
def d5_bad_morphism(d5_spec):
    """The same root with the branch arrow c doubled: a wrong choice."""
    return module_for_root(d5_spec, (1, 1, 2, 1, 1), cprime="c")
