import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hilali.graded import GradedDims, GradedLinearMap, RationalMatrix  # noqa: E402
from hilali.maps import MapModel  # noqa: E402
from hilali.spaces import SpaceModel  # noqa: E402

ACCEPTANCE_LINES = []


def record(criterion: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_dims(rng: random.Random, low: int, high: int, max_rank: int, base: dict) -> GradedDims:
    dims = dict(base)
    for d in range(low, high + 1):
        if rng.random() < 0.6:
            dims[d] = rng.randint(1, max_rank)
    return GradedDims.finite(dims, high)


def random_matrix(rng: random.Random, rows: int, cols: int) -> RationalMatrix:
    # sparse small entries so that rank deficiency is common
    pool = [0, 0, 0, 1, -1, 2, Fraction(1, 2), Fraction(-3, 4)]
    if rng.random() < 0.3 and rows and cols:
        # force a low-rank block: outer product
        u = [rng.choice(pool) for _ in range(rows)]
        v = [rng.choice(pool) for _ in range(cols)]
        return RationalMatrix.from_rows([[a * b for b in v] for a in u], cols)
    return RationalMatrix.from_rows([[rng.choice(pool) for _ in range(cols)] for _ in range(rows)], cols)


def random_graded_map(rng: random.Random, source: GradedDims, target: GradedDims, skip=()) -> GradedLinearMap:
    blocks = {}
    for d in range(max(source.bound, target.bound) + 1):
        if d in skip:
            continue
        r, c = target[d], source[d]
        if r and c:
            blocks[d] = random_matrix(rng, r, c)
    return GradedLinearMap(source, target, blocks)


def random_space(rng: random.Random, name: str, max_rank: int = 4, top: int = 8) -> SpaceModel:
    homology = random_dims(rng, 2, top, max_rank, {0: 1})
    homotopy = random_dims(rng, 2, top, max_rank, {})
    return SpaceModel(name, homology, homotopy)


def random_map_model(rng: random.Random, max_rank: int = 4, top: int = 8) -> MapModel:
    x, y = random_space(rng, "X", max_rank, top), random_space(rng, "Y", max_rank, top)
    h = random_graded_map(rng, x.homology, y.homology, skip=(0,))
    h = GradedLinearMap(x.homology, y.homology, {**h.blocks, 0: RationalMatrix.scalar(1)})
    pi = random_graded_map(rng, x.homotopy, y.homotopy)
    return MapModel("random", x, y, h, pi)


@pytest.fixture
def rng():
    return random.Random(20240611)
