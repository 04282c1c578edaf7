import pytest

from idealtop import corpus, search
from idealtop.space import GroundSet, Space, space_from_document


@pytest.fixture(scope="session")
def space_a() -> Space:
    """Four points, opens {}, {w1}, {w2}, {w1,w2}, X; ideal {{}, {w3}}."""
    return space_from_document(corpus.SPACE_A_DOC)


@pytest.fixture(scope="session")
def space_b() -> Space:
    """Four points, opens {}, {w3,w4}, {w1,w3,w4}, {w2,w3,w4}, X; ideal {{}, {w1}}."""
    return space_from_document(corpus.SPACE_B_DOC)


def _spaces_up_to(max_points: int) -> list[Space]:
    out = []
    for n in range(1, max_points + 1):
        ground = GroundSet(search.default_labels(n))
        for topo in search.enumerate_topologies(n):
            for ideal in search.enumerate_ideals(n):
                out.append(Space(ground, topo, ideal))
    return out


@pytest.fixture(scope="session")
def small_spaces() -> list[Space]:
    """Every labeled space on up to three points: 1*2 + 4*4 + 29*8 = 250."""
    spaces = _spaces_up_to(3)
    assert len(spaces) == 250
    return spaces


@pytest.fixture(scope="session")
def corpus_spaces() -> list[Space]:
    return [entry.space() for entry in corpus.ENTRIES]
