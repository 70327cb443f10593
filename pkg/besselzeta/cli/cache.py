"""Persistent coefficient cache.

The cache is a YAML multi-document stream. The first document is a header naming the format
and its version, each following document holds one coefficient table. Rational entries are
written as ``p/q`` strings and floating entries with every digit their precision carries.
"""

import dataclasses
import logging
import os
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional

import mpmath
import yaml

from besselzeta.coefficients.table import CoefficientTable
from besselzeta.core.errors import CacheError, DomainError
from besselzeta.core.numerics import context, decimal_digits, parse_rational
from besselzeta.core.order import Order

CACHE_FORMAT = "besselzeta-coefficients"
CACHE_VERSION = 1
DEFAULT_CACHE_PATH = os.path.join("~", ".cache", "besselzeta", "coefficients.yaml")
FIRST_INDICES = {"c": 0, "d": 2, "a": 0, "alpha": 1, "beta": 0}


def _encode(value: Any, precision: int) -> str:
    if isinstance(value, Fraction):
        return str(value)
    # three extra digits so reading the string back rounds to the same binary value
    return mpmath.nstr(value, decimal_digits(precision) + 3, strip_zeros=False)


def _decode(text: str, precision: int) -> Any:
    if "." in text or "e" in text:
        return context(precision).mpf(text)
    return Fraction(text)


@dataclasses.dataclass
class CacheRecord:
    """One persisted coefficient table.

    Args:
        family (str): Family name.
        nu (str): Canonical text of the order.
        exact (bool): Whether the order runs in exact mode.
        precision (int): Bits of the floating entries.
        values (List[str]): Encoded entries from the first index upwards.
        beta0 (Optional[str], optional): Encoded beta_0 for beta tables. Defaults to None.
    """

    family: str
    nu: str
    exact: bool
    precision: int
    values: List[str]
    beta0: Optional[str] = None

    @classmethod
    def from_table(cls, table: CoefficientTable) -> "CacheRecord":
        return cls(
            family=table.family,
            nu=table.order.text,
            exact=table.order.exact,
            precision=table.precision,
            values=[_encode(entry, table.precision) for entry in table.entries],
            beta0=None if table.beta0 is None else _encode(table.beta0, table.precision),
        )

    def to_table(self) -> CoefficientTable:
        """Rebuild the table.

        Raises:
            CacheError: Raises if the record is malformed.
        """
        if self.family not in FIRST_INDICES:
            raise CacheError(f"Cached table of unknown family {self.family!r}.")
        try:
            order = Order(value=parse_rational(self.nu), exact=bool(self.exact), text=self.nu)
            entries = tuple(_decode(str(value), self.precision) for value in self.values)
            beta0 = None if self.beta0 is None else _decode(str(self.beta0), self.precision)
        except (DomainError, ValueError, ZeroDivisionError) as e:
            raise CacheError(f"Malformed cached {self.family} table for nu={self.nu}: {e}")
        if not entries:
            raise CacheError(f"Cached {self.family} table for nu={self.nu} is empty.")
        return CoefficientTable(
            family=self.family,
            order=order,
            entries=entries,
            precision=int(self.precision),
            first_index=FIRST_INDICES[self.family],
            beta0=beta0,
        )


@dataclasses.dataclass
class CacheFile:
    """Header plus records of a cache file.

    Args:
        records (List[CacheRecord]): Persisted tables.
        version (int, optional): Format version. Defaults to CACHE_VERSION.
    """

    records: List[CacheRecord]
    version: int = CACHE_VERSION

    def dump(self, path: str) -> None:
        path = os.path.expanduser(path)
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        documents: List[Dict[str, Any]] = [{"format": CACHE_FORMAT, "version": self.version}]
        documents.extend(dataclasses.asdict(record) for record in self.records)
        with open(path, "w") as open_cache_buffer:
            yaml.safe_dump_all(documents, open_cache_buffer, sort_keys=False)
        logging.debug(f"Wrote {len(self.records)} coefficient tables to {path}.")

    @classmethod
    def load(cls, path: str) -> "CacheFile":
        """Read a cache file, all or nothing.

        Raises:
            CacheError: Raises if the file is unreadable, has a foreign header or version, or a malformed record.
        """
        path = os.path.expanduser(path)
        try:
            with open(path, "r") as open_cache_buffer:
                documents = list(yaml.safe_load_all(open_cache_buffer))
        except (OSError, yaml.YAMLError) as e:
            raise CacheError(f"Could not read cache {path}: {e}")
        if not documents or not isinstance(documents[0], dict):
            raise CacheError(f"Cache {path} has no header.")
        header = documents[0]
        if header.get("format") != CACHE_FORMAT:
            raise CacheError(f"Cache {path} is not a {CACHE_FORMAT} file.")
        if header.get("version") != CACHE_VERSION:
            raise CacheError(f"Cache {path} has version {header.get('version')}, expected {CACHE_VERSION}.")
        records = []
        for document in documents[1:]:
            try:
                records.append(CacheRecord(**document))
            except TypeError as e:
                raise CacheError(f"Malformed record in cache {path}: {e}")
        return cls(records=records, version=header["version"])


def store_tables(path: str, tables: Iterable[CoefficientTable]) -> None:
    CacheFile(records=[CacheRecord.from_table(table) for table in tables]).dump(path)


def load_tables(path: str, strict: bool = False) -> List[CoefficientTable]:
    """Tables stored at ``path``.

    Args:
        path (str): Cache file.
        strict (bool, optional): Raise instead of ignoring a bad file. Defaults to False.

    Raises:
        CacheError: Raises in strict mode if the file is missing, foreign or malformed.

    Returns:
        List[CoefficientTable]: The tables, empty when a non-strict load ignored the file.
    """
    try:
        return [record.to_table() for record in CacheFile.load(path).records]
    except CacheError as e:
        if strict:
            raise
        logging.warning(f"Ignoring coefficient cache, recomputing: {e}")
        return []


def cache_roundtrip(path: str, tables: Iterable[CoefficientTable]) -> List[CoefficientTable]:
    """Store ``tables`` at ``path`` and load them back strictly."""
    store_tables(path, tables)
    return load_tables(path, strict=True)
