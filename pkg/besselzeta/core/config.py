import dataclasses
import logging
import os
import pathlib
from fractions import Fraction
from typing import Any, Dict, Optional, Union

import yaml
from mpmath import MPContext

from besselzeta.core import templates
from besselzeta.core.errors import ConfigError, DomainError
from besselzeta.core.numerics import BigReal, parse_rational, to_mpf

BETA_POLICIES = ("optimal", "fixed")
REMAINDER_MODES = ("quadrature", "none")
AUTO_SPLIT = "auto"


def _defaults_path() -> str:
    template_module_file_path = pathlib.Path(os.path.abspath(templates.__file__))
    return str(template_module_file_path.parent / "eval_defaults.yaml")


@dataclasses.dataclass(frozen=True)
class EvalConfig:
    """Settings shared by every evaluation routine.

    Args:
        precision (int, optional): Target precision in bits, defaults to 256.
        alpha_terms (int, optional): Budget of origin series terms, defaults to 512.
        beta_policy (str, optional): ``optimal`` truncation or ``fixed`` depth, defaults to ``optimal``.
        beta_terms (int, optional): Depth used by the ``fixed`` policy, defaults to None.
        split_T (Union[str, Fraction], optional): Split point or ``auto``, defaults to 1.
        remainder (str, optional): ``quadrature`` adds the exponentially small remainder, ``none`` drops it.
        tolerance (float, optional): Absolute tolerance, defaults to None meaning 2^(16-precision).
        guard_bits (int, optional): Extra working bits, defaults to 32.
        quad_degree (int, optional): Maximum quadrature degree, defaults to None (mpmath's choice).

    Attributes:
        precision (int): Target precision in bits.
        alpha_terms (int): Budget of origin series terms.
        beta_policy (str): ``optimal`` or ``fixed``.
        beta_terms (Optional[int]): Depth used by the ``fixed`` policy.
        split_T (Union[str, Fraction]): Split point or ``auto``.
        remainder (str): ``quadrature`` or ``none``.
        tolerance (Optional[float]): Absolute tolerance.
        guard_bits (int): Extra working bits.
        quad_degree (Optional[int]): Maximum quadrature degree.

    Raises:
        ConfigError: Raises on any invalid combination of values.
    """

    precision: int = 256
    alpha_terms: int = 512
    beta_policy: str = "optimal"
    beta_terms: Optional[int] = None
    split_T: Union[str, Fraction] = Fraction(1)
    remainder: str = "quadrature"
    tolerance: Optional[float] = None
    guard_bits: int = 32
    quad_degree: Optional[int] = None

    def __post_init__(self) -> None:
        if not isinstance(self.precision, int) or self.precision < 53:
            raise ConfigError(f"precision must be an integer of at least 53 bits, got {self.precision!r}.")
        if not isinstance(self.alpha_terms, int) or self.alpha_terms < 4:
            raise ConfigError(f"alpha_terms must be an integer >= 4, got {self.alpha_terms!r}.")
        if self.beta_policy not in BETA_POLICIES:
            raise ConfigError(f"beta_policy must be one of {BETA_POLICIES}, got {self.beta_policy!r}.")
        if self.beta_policy == "fixed" and (not isinstance(self.beta_terms, int) or self.beta_terms < 0):
            raise ConfigError("beta_policy 'fixed' needs a non-negative integer beta_terms.")
        if self.remainder not in REMAINDER_MODES:
            raise ConfigError(f"remainder must be one of {REMAINDER_MODES}, got {self.remainder!r}.")
        if not isinstance(self.guard_bits, int) or self.guard_bits < 0:
            raise ConfigError(f"guard_bits must be a non-negative integer, got {self.guard_bits!r}.")
        if self.tolerance is not None and not float(self.tolerance) > 0:
            raise ConfigError(f"tolerance must be positive, got {self.tolerance!r}.")
        object.__setattr__(self, "split_T", self._normalize_split(self.split_T))

    @staticmethod
    def _normalize_split(split: Any) -> Union[str, Fraction]:
        if isinstance(split, str) and split.strip().lower() == AUTO_SPLIT:
            return AUTO_SPLIT
        try:
            value = split if isinstance(split, Fraction) else parse_rational(str(split))
        except DomainError:
            raise ConfigError(f"split_T must be a positive number or 'auto', got {split!r}.")
        if value <= 0:
            raise ConfigError(f"split_T must be positive, got {split!r}.")
        return value

    @property
    def working_precision(self) -> int:
        return self.precision + self.guard_bits

    def tolerance_value(self, ctx: MPContext) -> BigReal:
        """Absolute tolerance as an ``mpf`` of ``ctx``."""
        if self.tolerance is None:
            return ctx.ldexp(1, 16 - self.precision)
        return to_mpf(ctx, parse_rational(str(self.tolerance)))

    def with_overrides(self, **overrides: Any) -> "EvalConfig":
        """Copy with every non-None override applied."""
        applied = {key: value for key, value in overrides.items() if value is not None}
        unknown = set(applied) - {field.name for field in dataclasses.fields(self)}
        if unknown:
            raise ConfigError(f"Unknown configuration keys: {sorted(unknown)}.")
        return dataclasses.replace(self, **applied)

    @classmethod
    def load(cls, config_path: Optional[str] = None) -> "EvalConfig":
        """Load packaged defaults, overlaid by an optional user YAML file.

        Args:
            config_path (Optional[str], optional): Path to a user YAML file. Defaults to None.

        Raises:
            ConfigError: Raises if a file is unreadable, not a mapping, or has unknown keys.

        Returns:
            EvalConfig: Resulting configuration.
        """
        values = cls._read_mapping(_defaults_path())
        if config_path is not None:
            user_values = cls._read_mapping(config_path)
            logging.debug(f"Overlaying configuration from {config_path}: {sorted(user_values)}.")
            values.update(user_values)
        known = {field.name for field in dataclasses.fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise ConfigError(f"Unknown configuration keys: {sorted(unknown)}.")
        return cls(**values)

    @staticmethod
    def _read_mapping(path: str) -> Dict[str, Any]:
        try:
            with open(path, "r") as open_config_buffer:
                config_yaml_obj = yaml.safe_load(open_config_buffer)
        except (OSError, yaml.YAMLError) as e:
            raise ConfigError(f"Could not read configuration {path}: {e}")
        if config_yaml_obj is None:
            return {}
        if not isinstance(config_yaml_obj, dict):
            raise ConfigError(f"Configuration {path} must be a mapping.")
        return config_yaml_obj
