import pytest

from faultbandit import table6_dataset, table6_models


@pytest.fixture
def six_module_dataset():
    return table6_dataset()


@pytest.fixture
def six_module_models():
    return table6_models()
