"""Testing for the FH toolkit."""

from fh_toolkit.formats import parse_structure
from fh_toolkit.types import FiniteStructure

# Symmetric triangle: every point closes up to the whole set, δ = 0.
TEST_TRIANGLE_TEXT = """\
structure triangle
arity 2
group sym
elements a b c
rel a b
rel b c
rel a c
end
"""

# Two symmetric 3-orbits sharing an edge, δ = 2.
TEST_PATH_TEXT = """\
structure path
arity 3
group sym
elements a b c d
rel a b c
rel b c d
end
"""

# Complete graph on four points, δ = -2.
TEST_K4_TEXT = """\
structure k4
arity 2
group sym
elements a b c d
rel a b
rel a c
rel a d
rel b c
rel b d
rel c d
end
"""

# Ordered path a -> b -> c.
TEST_ORDERED_TEXT = """\
structure ordered
arity 2
group id
elements a b c
rel a b
rel b c
end
"""

TEST_BASE_TYPE_TEXT = """\
type q3
arity 3
tail 8
rel 0 3 4
rel 1 4 5
rel 2 3 9
rel 0 5 6
rel 1 6 7
rel 2 5 10
rel 0 7 8
rel 1 8 9
rel 0 9 10
end
"""


def triangle() -> FiniteStructure:
    """The symmetric triangle."""
    return parse_structure(TEST_TRIANGLE_TEXT)


def path() -> FiniteStructure:
    """Two 3-orbits sharing two points."""
    return parse_structure(TEST_PATH_TEXT)


def k4() -> FiniteStructure:
    """A structure outside the class."""
    return parse_structure(TEST_K4_TEXT)


def ordered() -> FiniteStructure:
    """An ordered structure."""
    return parse_structure(TEST_ORDERED_TEXT)
