import pytest

from uhusiano import ReviewScheme
from uhusiano.groups.bundle import build_paper_group
from uhusiano.rings.family import paper_partition
from uhusiano.rings.cayley import cayley_scheme
from uhusiano.schemes.tensor import intersection_tensor
from uhusiano.perms.group import right_translation_group
from uhusiano.perms.search import automorphism_group


@pytest.fixture(scope="session")
def bundle5():
    return build_paper_group(5)


@pytest.fixture(scope="session")
def partition5(bundle5):
    return paper_partition(bundle5)


@pytest.fixture(scope="session")
def scheme5(partition5):
    return cayley_scheme(partition5)


@pytest.fixture(scope="session")
def tensor5(scheme5):
    return intersection_tensor(scheme5)


@pytest.fixture(scope="session")
def translations5(bundle5):
    return right_translation_group(bundle5.group)


@pytest.fixture(scope="session")
def aut5(scheme5, translations5):
    return automorphism_group(scheme5, seed=translations5)


@pytest.fixture(scope="session")
def review5():
    # shared so that automorphism groups are computed once
    return ReviewScheme({"p": 5})


@pytest.fixture(scope="session", params=[5, 7], ids=["p5", "p7"])
def prime(request):
    return request.param


@pytest.fixture(scope="session")
def bundle(prime):
    return build_paper_group(prime)


@pytest.fixture(scope="session")
def partition(bundle):
    return paper_partition(bundle)


@pytest.fixture(scope="session")
def scheme(partition):
    return cayley_scheme(partition)


@pytest.fixture(scope="session")
def tensor(scheme):
    return intersection_tensor(scheme)


@pytest.fixture(scope="session")
def aut(scheme, bundle):
    return automorphism_group(scheme, seed=right_translation_group(bundle.group))
