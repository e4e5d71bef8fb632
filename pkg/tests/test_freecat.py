import pytest
from hypothesis import given
from hypothesis import strategies as st

from locat.category import NotComposable, cyclic_group, fix_p
from locat.freecat import (
    DirectedGraph,
    EndpointMismatch,
    Path,
    empty_path,
    free_category,
    free_functor,
    is_path,
    path_concat,
    path_target,
)

LOOP = DirectedGraph(frozenset({"v"}), {"e": ("v", "v")})
SPAN = DirectedGraph(frozenset({"a", "b", "c"}), {"x": ("a", "b"), "y": ("b", "c"), "z": ("a", "c")})


def test_paths():
    p = Path("a", ("x", "y"))
    assert is_path(SPAN, p)
    assert path_target(SPAN, p) == "c"
    assert not is_path(SPAN, Path("a", ("y",)))
    assert path_target(SPAN, empty_path("b")) == "b"


def test_concat():
    p = path_concat(SPAN, Path("a", ("x",)), Path("b", ("y",)))
    assert p == Path("a", ("x", "y"))
    with pytest.raises(NotComposable):
        path_concat(SPAN, Path("a", ("x",)), Path("a", ("z",)))


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_concat_associative_and_unital(i, j, k):
    p, q, r = (Path("v", ("e",) * n) for n in (i, j, k))
    assert path_concat(LOOP, path_concat(LOOP, p, q), r) == path_concat(LOOP, p, path_concat(LOOP, q, r))
    assert path_concat(LOOP, empty_path("v"), p) == p == path_concat(LOOP, p, empty_path("v"))


def test_hom_enumeration():
    free = free_category(SPAN)
    assert set(free.hom("a", "c", 3)) == {Path("a", ("x", "y")), Path("a", ("z",))}
    loop = free_category(LOOP)
    # one path of each length 0..3
    assert len(loop.hom("v", "v", 3)) == 4


def test_free_functor_into_cyclic_group():
    z3 = cyclic_group(3)
    ev = free_functor(LOOP, {"e": "z1"}, z3, {"v": "0"})
    assert ev(Path("v", ("e",) * 3)) == "1_0"
    assert ev(Path("v", ("e",) * 4)) == "z1"


def test_free_functor_checks_endpoints():
    with pytest.raises(EndpointMismatch):
        free_functor(SPAN, {"x": "f", "y": "t", "z": "f"}, fix_p(), {"a": "X", "b": "Y", "c": "Z"})
