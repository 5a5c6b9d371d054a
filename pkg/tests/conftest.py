import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def end2_L2():
    from operadkit.table import endomorphism_set_operad
    return endomorphism_set_operad([0, 1], 2)


@pytest.fixture(scope="session")
def end2_L3():
    from operadkit.table import endomorphism_set_operad
    return endomorphism_set_operad([0, 1], 3)
