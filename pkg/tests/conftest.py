from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from moritakit.instances import (  # noqa: E402
    bundled_names,
    cyclic_cocycle,
    cyclic_group,
    load_bundled,
    make_fibonacci,
    make_pointed,
    make_pointed_context,
    make_regular_context,
)


def z2(k: int = 0):
    table, labels = cyclic_group(2)
    return make_pointed(table, cyclic_cocycle(2, k) if k else None, labels)


def z3(k: int = 0):
    table, labels = cyclic_group(3)
    return make_pointed(table, cyclic_cocycle(3, k) if k else None, labels)


def vec():
    return make_pointed([[0]], None, ["1"])


FUSION_FACTORIES = {
    "vec": vec,
    "z2_trivial": lambda: z2(0),
    "z2_nontrivial": lambda: z2(1),
    "z3_trivial": lambda: z3(0),
    "z3_omega": lambda: z3(1),
    "fib": make_fibonacci,
}


@pytest.fixture(params=sorted(FUSION_FACTORIES))
def any_fusion(request):
    return FUSION_FACTORIES[request.param]()


@pytest.fixture(scope="session")
def pointed_ctx():
    return make_pointed_context()


@pytest.fixture(scope="session")
def regular_z2w_ctx():
    return make_regular_context(z2(1))


CORPUS = bundled_names()
CONTEXT_NAMES = [n for n in CORPUS if load_bundled(n).context is not None]
MODULE_NAMES = [n for n in CORPUS if load_bundled(n).modules]
