import pytest

from bisymp.presentations import (quantum_plane, quantum_affine_space,
                                  dimension2_presentation)
from bisymp.linalg import Matrix
from bisymp.koszul import frobenius_check
from bisymp.ncforms import CobarAlgebra, FormCalculus, build_omega


def qa3():
    return quantum_affine_space({(0, 1): 2, (0, 2): 3, (1, 2): 5})


def m_family(rows):
    return dimension2_presentation(["x1", "x2"], Matrix.from_rows(rows))


FIXTURE_PRESENTATIONS = {
    "quantum-plane": lambda: quantum_plane(2),
    "commutative-plane": lambda: quantum_plane(1),
    "quantum-affine-3": qa3,
    "M-nondiagonal": lambda: m_family([[1, 1], [0, 1]]),
    "M-identity": lambda: m_family([[1, 0], [0, 1]]),
}


class Workbench:
    """Frobenius data, cobar algebra, form calculus and omega for one input."""

    def __init__(self, presentation):
        self.presentation = presentation
        self.frob = frobenius_check(presentation)
        self.cobar = CobarAlgebra(self.frob)
        self.calc = FormCalculus(self.cobar)
        self.omega = build_omega(self.calc, self.frob)


_cache = {}


def workbench(name) -> Workbench:
    if name not in _cache:
        _cache[name] = Workbench(FIXTURE_PRESENTATIONS[name]())
    return _cache[name]


@pytest.fixture(params=sorted(FIXTURE_PRESENTATIONS))
def any_workbench(request):
    return workbench(request.param)


@pytest.fixture
def qp_workbench():
    return workbench("quantum-plane")
