"""Elementary-operation counting shared by all structures.

Counts are machine independent: every treap node recomputation, every
multiplicity delta and every 64-bit sketch word XOR adds to the same
process-wide counter.  Callers snapshot it around an operation.
"""


class OpMeter:
    __slots__ = ("n",)

    def __init__(self):
        self.n = 0

    def read(self) -> int:
        return self.n

    def add(self, k: int = 1) -> None:
        self.n += k


METER = OpMeter()
