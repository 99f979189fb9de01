import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kernelim import Graph, LaplacianKind, eigendecompose, laplacian


@pytest.fixture
def two_node():
    """Unit edge: L = [[1,-1],[-1,1]], eigenvalues (0, 2)."""
    return Graph(n=2, edges=((0, 1, 1.0),))


@pytest.fixture
def two_node_spectrum(two_node):
    return eigendecompose(laplacian(two_node, LaplacianKind.STANDARD))


@pytest.fixture
def path3():
    """Path 0-1-2 with unit weights, eigenvalues (0, 1, 3)."""
    return Graph(n=3, edges=((0, 1, 1.0), (1, 2, 1.0)))


@pytest.fixture
def path3_spectrum(path3):
    return eigendecompose(laplacian(path3, LaplacianKind.STANDARD))


@pytest.fixture
def star4():
    """Center node 0 with three unit-weight leaves."""
    return Graph(n=4, edges=((0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)))
