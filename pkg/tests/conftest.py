import pytest

from blowdown import QDivisor, contract
from blowdown.explorer import frobenius_construction


class Reference:
    """The bundled nine-blow-up construction, built once per session."""

    def __init__(self):
        self.construction = frobenius_construction(3, 3)
        self.model = self.construction.model
        self.contraction = contract(self.model, self.construction.contracted_names)
        self.ample = QDivisor({"E2": 1, "E3": 1, "E1": -1})
        self.k_target = self.contraction.pushforward(self.model.canonical_divisor())


@pytest.fixture(scope="session")
def ref():
    return Reference()
