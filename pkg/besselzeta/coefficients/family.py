import os
import pathlib
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Mapping, Optional, Sequence

from besselzeta.coefficients import templates
from besselzeta.coefficients.table import CoefficientTable
from besselzeta.core.meta_table import FamilyMeta, FamilyMetaTable, load_family_table
from besselzeta.core.numerics import BigReal
from besselzeta.core.order import Order


def packaged_meta_path() -> str:
    """Path of the family meta table shipped with besselzeta."""
    template_module_file_path = pathlib.Path(os.path.abspath(templates.__file__))
    return str(template_module_file_path.parent / "families_meta.yaml")


class CoefficientFamily(ABC):
    """Base class for one family of expansion coefficients.

    Subclasses set ``family_name`` and implement :meth:`extend`. The family's index range and
    dependencies come from the meta table so that the store can wire families together without
    knowing their recursions.

    Args:
        family_meta_path (str, optional): Path to the meta table. Defaults to the packaged table.

    Attributes:
        _family_meta_path (str): Path to the meta table.
        _meta_table (FamilyMetaTable): Loaded meta table.
        _meta (FamilyMeta): Entry of this family in the meta table.
    """

    family_name: str = ""

    def __init__(self, family_meta_path: Optional[str] = None):
        self._family_meta_path = family_meta_path or packaged_meta_path()
        self._meta_table = load_family_table(self._family_meta_path)
        self._meta = self.__verify_meta_table(self._meta_table)

    def __verify_meta_table(self, meta_table: FamilyMetaTable) -> FamilyMeta:
        """Verify the family is described by the meta table and its dependencies are too."""
        family_meta = meta_table[self.family_name]
        for dependency in family_meta.depends_on:
            if dependency not in meta_table:
                raise KeyError(f"{self.family_name} depends on unregistered family {dependency}.")
        return family_meta

    @property
    def name(self) -> str:
        return self._meta.name

    @property
    def first_index(self) -> int:
        return self._meta.first_index

    @property
    def depends_on(self) -> List[str]:
        return list(self._meta.depends_on)

    @property
    def exact(self) -> bool:
        return self._meta.exact

    @property
    def description(self) -> str:
        return self._meta.description

    def dependency_counts(self, count: int) -> Dict[str, int]:
        """Entries needed from each dependency to produce ``count`` entries of this family."""
        return {dependency: count for dependency in self.depends_on}

    def leading_value(self, order: Order, precision: int) -> Optional[BigReal]:
        """Transcendental leading value kept outside the rational entries, None for most families."""
        return None

    @abstractmethod
    def extend(
        self,
        order: Order,
        known: Sequence[Any],
        count: int,
        precision: int,
        dependencies: Mapping[str, CoefficientTable],
    ) -> List[Any]:
        """Return the first ``count`` entries, reusing the ``known`` prefix unchanged.

        Raises:
            NotImplementedError: When not implemented in subclass.
        """
        raise NotImplementedError("Coefficient families need to implement their recursion.")
