"""Game-mediated oracle handles: every adversary query passes through a counter with a budget."""

from threading import Lock
from typing import Optional

from qotp.auth.subspace import AuthSecretKey, Signature, auth_verify
from qotp.exceptions import BudgetExceededError
from qotp.linalg.gf2 import BitVector
from qotp.otp.scheme import ObfHandle, Output, XInput
from qotp.quantum.statevector import RegisterLayout, StateVector


class _Budget:
    def __init__(self, name: str, budget: Optional[int]):
        self.name = name
        self.budget = budget
        self.count = 0
        self._lock = Lock()

    def spend(self) -> None:
        with self._lock:
            if self.budget is not None and self.count >= self.budget:
                raise BudgetExceededError(self.name, self.budget)
            self.count += 1


class CountedVerifier:
    """Classical Verify oracle under a hidden key."""

    __slots__ = ("_verify", "_budget")

    def __init__(self, sk: AuthSecretKey, budget: Optional[int] = None):
        self._verify = lambda sig: auth_verify(sk, sig)
        self._budget = _Budget("Verify", budget)

    def __call__(self, sig: Signature) -> bool:
        self._budget.spend()
        return self._verify(sig)

    @property
    def query_count(self) -> int:
        return self._budget.count

    @property
    def budget(self) -> Optional[int]:
        return self._budget.budget


class CountedHandle:
    """Adversary-side view of an :class:`ObfHandle`, counted separately from challenger evaluations."""

    __slots__ = ("_handle", "_budget", "x_bits", "tag_bits", "output_width", "bottom_codeword")

    def __init__(self, handle: ObfHandle, budget: Optional[int] = None):
        self._handle = handle
        self._budget = _Budget("P", budget)
        self.x_bits = handle.x_bits
        self.tag_bits = handle.tag_bits
        self.output_width = handle.output_width
        self.bottom_codeword = handle.bottom_codeword

    def evaluate(self, x: XInput, z: BitVector) -> Output:
        self._budget.spend()
        return self._handle.evaluate(x, z)

    def evaluate_coherent(
        self, state: StateVector, layout: RegisterLayout, x_reg: str, z_reg: str, out_reg: str
    ) -> StateVector:
        self._budget.spend()
        return self._handle.evaluate_coherent(state, layout, x_reg, z_reg, out_reg)

    @property
    def query_count(self) -> int:
        return self._budget.count
