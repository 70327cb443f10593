import dataclasses
from fractions import Fraction
from typing import Any, Optional, Sequence, Tuple

from mpmath import MPContext

from besselzeta.core.numerics import BigReal, to_mpf
from besselzeta.core.order import Order


@dataclasses.dataclass(frozen=True)
class CoefficientTable:
    """Immutable snapshot of one coefficient family for one order.

    Entries are addressed by their mathematical index, so ``table[2]`` of a ``d`` table is d_2.
    Extending a table produces a new snapshot whose prefix equals the old entries.

    Args:
        family (str): Family name.
        order (Order): Bessel order the table belongs to.
        entries (Tuple[Any, ...]): Values from ``first_index`` upwards.
        precision (int): Bits used for floating entries and beta0.
        first_index (int): Mathematical index of ``entries[0]``.
        beta0 (Optional[BigReal], optional): beta_0, only for family beta. Defaults to None.

    Attributes:
        family (str): Family name.
        order (Order): Bessel order the table belongs to.
        entries (Tuple[Any, ...]): Values from ``first_index`` upwards.
        precision (int): Bits used for floating entries and beta0.
        first_index (int): Mathematical index of ``entries[0]``.
        beta0 (Optional[BigReal]): beta_0, only for family beta.
    """

    family: str
    order: Order
    entries: Tuple[Any, ...]
    precision: int
    first_index: int
    beta0: Optional[BigReal] = None

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: int) -> Any:
        position = index - self.first_index
        if position < 0 or position >= len(self.entries):
            raise IndexError(
                f"Index {index} outside {self.family} table covering {self.first_index}..{self.last_index}."
            )
        return self.entries[position]

    @property
    def last_index(self) -> int:
        return self.first_index + len(self.entries) - 1

    def indices(self) -> range:
        return range(self.first_index, self.first_index + len(self.entries))

    def is_exact(self) -> bool:
        return all(isinstance(entry, Fraction) for entry in self.entries[1 if self.family == "beta" else 0 :])

    def as_mpf(self, index: int, ctx: MPContext) -> BigReal:
        return to_mpf(ctx, self[index])

    def head(self, count: int) -> "CoefficientTable":
        """Snapshot restricted to the first ``count`` entries."""
        return dataclasses.replace(self, entries=self.entries[:count])

    def extended(self, entries: Sequence[Any]) -> "CoefficientTable":
        """New snapshot holding ``entries``, which must start with the current entries."""
        if tuple(entries[: len(self.entries)]) != self.entries:
            raise ValueError(f"Extension of the {self.family} table rewrote existing entries.")
        return dataclasses.replace(self, entries=tuple(entries))
