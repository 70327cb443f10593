import logging
import threading
from collections.abc import KeysView
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from besselzeta.coefficients.families import (
    AsymptoticRatioFamily,
    HawkinsFamily,
    InfinityLogFamily,
    OriginLogFamily,
    OriginRatioFamily,
)
from besselzeta.coefficients.family import CoefficientFamily
from besselzeta.coefficients.table import CoefficientTable
from besselzeta.core.errors import DomainError
from besselzeta.core.numerics import DEFAULT_PRECISION
from besselzeta.core.order import Order

TableKey = Tuple[str, str, int]


@dataclass
class FamilyAndLock:
    """Dataclass containing a coefficient family and the lock guarding its table extension.

    Args:
        family (CoefficientFamily): Family implementing the recursion.
        family_lock (threading.Lock): Single writer lock for extending this family's tables.

    Attributes:
        family (CoefficientFamily): Family implementing the recursion.
        family_lock (threading.Lock): Single writer lock for extending this family's tables.
    """

    family: CoefficientFamily
    family_lock: threading.Lock = field(default_factory=threading.Lock)


@dataclass
class FamilyRegistry:
    """Coefficient family register dataclass.

    Attributes:
        families (Dict[str, FamilyAndLock]): Mapping from family names to registered families.

    Raises:
        KeyError: Raises if family key doesn't exist in registry.
    """

    families: Dict[str, FamilyAndLock]

    def keys(self) -> KeysView:
        return self.families.keys()

    def __getitem__(self, family_key: str) -> FamilyAndLock:
        if family_key not in self.families:
            raise KeyError(f"{family_key} not a registered coefficient family.")

        return self.families[family_key]

    def __setitem__(self, family_key: str, family_and_lock: FamilyAndLock) -> None:
        self.families[family_key] = family_and_lock

    def __contains__(self, family_key: str) -> bool:
        return family_key in self.families


def _packaged_families() -> Dict[str, FamilyAndLock]:
    families: List[CoefficientFamily] = [
        HawkinsFamily(),
        AsymptoticRatioFamily(),
        OriginRatioFamily(),
        OriginLogFamily(),
        InfinityLogFamily(),
    ]
    return {family.name: FamilyAndLock(family=family) for family in families}


class CoefficientStore:
    """Lazily extended, immutable coefficient tables keyed by (family, order, precision).

    Readers receive snapshots and never block each other; extending a table happens under the
    family's lock, acquired with a timeout.

    Args:
        family_lock_timeout (float, optional): Seconds to wait for a family lock. Defaults to 30.

    Attributes:
        _family_registry (FamilyRegistry): Families available to every store.
        _family_lock_timeout (float): Seconds to wait for a family lock.
        _snapshots (Dict[TableKey, CoefficientTable]): Latest snapshot per key.

    Raises:
        TimeoutError: Raises if a family lock cannot be acquired in time.
        KeyError: Raises on unregistered families.
    """

    _family_registry: FamilyRegistry = FamilyRegistry(families=_packaged_families())

    def __init__(self, family_lock_timeout: float = 30):
        self._family_lock_timeout = family_lock_timeout
        self._snapshots: Dict[TableKey, CoefficientTable] = {}

    @classmethod
    def register_family(cls, family_key: str, family_object: CoefficientFamily) -> None:
        """Register a family into the class registry.

        Args:
            family_key (str): Key of family to register.
            family_object (CoefficientFamily): Family object to register.
        """
        if family_key in cls._family_registry:
            logging.warning(f"Overwriting previous registration of coefficient family {family_key}.")
        cls._family_registry[family_key] = FamilyAndLock(family=family_object)

    @classmethod
    def list_families(cls) -> KeysView:
        return cls._family_registry.keys()

    @classmethod
    def return_family(cls, family_key: str) -> CoefficientFamily:
        return cls._family_registry[family_key].family

    @staticmethod
    def key(family: str, order: Order, precision: int) -> TableKey:
        return (family, order.key(), precision)

    def acquire_family_lock(self, family_key: str) -> threading.Lock:
        """Acquire the lock of a family.

        Raises:
            TimeoutError: Raises if locking times out.

        Returns:
            threading.Lock: The acquired lock, the caller releases it.
        """
        family_lock = self._family_registry[family_key].family_lock
        if not family_lock.acquire(timeout=self._family_lock_timeout):
            raise TimeoutError(f"Timeout acquiring {family_key} family lock in {self._family_lock_timeout} seconds.")
        logging.debug(f"Family lock {family_key} acquired, extending.")
        return family_lock

    def table(self, family_key: str, order: Order, count: int, precision: int = DEFAULT_PRECISION) -> CoefficientTable:
        """Return a snapshot holding at least the first ``count`` entries of a family.

        Args:
            family_key (str): Family name.
            order (Order): Bessel order.
            count (int): Number of entries requested, from the family's first index.
            precision (int, optional): Bits for floating entries. Defaults to DEFAULT_PRECISION.

        Raises:
            DomainError: Raises if count is not positive.

        Returns:
            CoefficientTable: Snapshot restricted to exactly ``count`` entries.
        """
        family = self._family_registry[family_key].family
        minimum = 2 if family_key == "d" else 1
        if count < minimum:
            raise DomainError(f"{family_key} tables need at least {minimum} entries, got {count}.")
        key = self.key(family_key, order, precision)
        snapshot = self._snapshots.get(key)
        if snapshot is not None and len(snapshot) >= count:
            return snapshot.head(count)

        dependencies = {
            dependency: self.table(dependency, order, dependency_count, precision)
            for dependency, dependency_count in family.dependency_counts(count).items()
        }
        family_lock = self.acquire_family_lock(family_key)
        try:
            # another writer may have extended the table while this one waited
            snapshot = self._snapshots.get(key)
            if snapshot is not None and len(snapshot) >= count:
                return snapshot.head(count)
            known = snapshot.entries if snapshot is not None else ()
            entries = family.extend(order, known, count, precision, dependencies)
            if snapshot is None:
                snapshot = CoefficientTable(
                    family=family_key,
                    order=order,
                    entries=tuple(entries),
                    precision=precision,
                    first_index=family.first_index,
                    beta0=None if family.exact else entries[0],
                )
            else:
                snapshot = snapshot.extended(entries)
            self._snapshots[key] = snapshot
            logging.debug(f"Extended {family_key} table for nu={order.text} ({order.mode}) to {len(snapshot)} entries.")
        finally:
            if family_lock.locked():
                family_lock.release()
                logging.debug(f"Released {family_key} family lock.")
        return snapshot.head(count)

    def preload(self, tables: Iterable[CoefficientTable]) -> None:
        """Seed the store with previously persisted tables, keeping whichever snapshot is longer."""
        for loaded_table in tables:
            if loaded_table.family not in self._family_registry:
                logging.warning(f"Skipping cached table of unknown family {loaded_table.family}.")
                continue
            key = self.key(loaded_table.family, loaded_table.order, loaded_table.precision)
            current = self._snapshots.get(key)
            if current is None or len(current) < len(loaded_table):
                self._snapshots[key] = loaded_table

    def snapshots(self) -> List[CoefficientTable]:
        return list(self._snapshots.values())

    def cached_families(self) -> Dict[str, int]:
        """Number of cached tables per family."""
        counts: Dict[str, int] = {}
        for family_key, _, _ in self._snapshots:
            counts[family_key] = counts.get(family_key, 0) + 1
        return counts

    def clear(self, family_key: Optional[str] = None) -> None:
        """Drop cached tables, of one family or of all."""
        for key in list(self._snapshots):
            if family_key is None or key[0] == family_key:
                del self._snapshots[key]


_default_store = CoefficientStore()


def default_store() -> CoefficientStore:
    """Process-wide store used by the module level sequence functions."""
    return _default_store


def c_seq(order: Order, count: int, precision: int = DEFAULT_PRECISION) -> CoefficientTable:
    """Hawkins coefficients c_0 .. c_{count-1}."""
    return _default_store.table("c", order, count, precision)


def d_seq(order: Order, count: int, precision: int = DEFAULT_PRECISION) -> CoefficientTable:
    """Asymptotic ratio coefficients d_2 .. d_{count+1}."""
    return _default_store.table("d", order, count, precision)


def a_seq(order: Order, count: int, precision: int = DEFAULT_PRECISION) -> CoefficientTable:
    """Origin ratio coefficients a_0 .. a_{count-1}."""
    return _default_store.table("a", order, count, precision)


def alpha_seq(order: Order, count: int, precision: int = DEFAULT_PRECISION) -> CoefficientTable:
    """Origin log coefficients alpha_1 .. alpha_count."""
    return _default_store.table("alpha", order, count, precision)


def beta_seq(order: Order, count: int, precision: int = DEFAULT_PRECISION) -> CoefficientTable:
    """Infinity log coefficients beta_0 .. beta_{count-1}, beta_0 also exposed as ``beta0``."""
    return _default_store.table("beta", order, count, precision)
