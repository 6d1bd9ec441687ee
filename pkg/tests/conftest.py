import pytest

from clustercat.category import ClusterCategory
from clustercat.quiver import build_quiver, standard_quiver


@pytest.fixture(scope="session")
def a2():
    # arrow 2 -> 1, so P1 = S1 and P2 has dimension (1, 1)
    return ClusterCategory(build_quiver("A2", "2->1"))


@pytest.fixture(scope="session")
def d4():
    # three arrows into the central vertex 2
    return ClusterCategory(build_quiver("D4", "1->2,3->2,4->2"))


_CATS = {}


def category(type_label, orientation="linear"):
    key = (type_label, orientation)
    if key not in _CATS:
        _CATS[key] = ClusterCategory(standard_quiver(type_label, orientation))
    return _CATS[key]
