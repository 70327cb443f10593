import dataclasses
import enum
from fractions import Fraction
from typing import Any, Dict, Optional

import mpmath

from besselzeta.core.numerics import BigComplex, BigReal, decimal_digits
from besselzeta.zeta.classify import PointClass


class Method(enum.Enum):
    CLOSED_FORM = "closed-form"
    SERIES = "series"
    RESIDUE = "residue"


@dataclasses.dataclass(frozen=True)
class EvalResult:
    """Value of an evaluation together with its provenance.

    Args:
        value (BigComplex): The value.
        error_estimate (BigReal): Estimated absolute error.
        classification (PointClass): Classification of the point.
        alpha_terms_used (int): Origin series terms summed.
        beta_terms_used (int): Infinity series terms summed.
        method (Method): How the value was obtained.
        precision (int): Target precision in bits.
        exact (Optional[Fraction], optional): Exact value when a rational closed form applies.
        split (Optional[BigReal], optional): Split point used by series evaluation.
        branch (Optional[str], optional): Named branch of a piecewise formula.

    Attributes:
        value (BigComplex): The value.
        error_estimate (BigReal): Estimated absolute error.
        classification (PointClass): Classification of the point.
        alpha_terms_used (int): Origin series terms summed.
        beta_terms_used (int): Infinity series terms summed.
        method (Method): How the value was obtained.
        precision (int): Target precision in bits.
        exact (Optional[Fraction]): Exact value when a rational closed form applies.
        split (Optional[BigReal]): Split point used by series evaluation.
        branch (Optional[str]): Named branch of a piecewise formula.
    """

    value: BigComplex
    error_estimate: BigReal
    classification: PointClass
    alpha_terms_used: int
    beta_terms_used: int
    method: Method
    precision: int
    exact: Optional[Fraction] = None
    split: Optional[BigReal] = None
    branch: Optional[str] = None

    @property
    def real(self) -> BigReal:
        return self.value.real

    def to_record(self, digits: Optional[int] = None) -> Dict[str, Any]:
        """Plain dict of strings and ints, used by every output format."""
        digits = digits or decimal_digits(self.precision)
        record: Dict[str, Any] = {
            "value": {
                "re": mpmath.nstr(self.value.real, digits),
                "im": mpmath.nstr(self.value.imag, digits),
            },
            "error_estimate": mpmath.nstr(self.error_estimate, 6),
            "classification": str(self.classification),
            "alpha_terms_used": self.alpha_terms_used,
            "beta_terms_used": self.beta_terms_used,
            "method": self.method.value,
            "prec": self.precision,
            "split": None if self.split is None else mpmath.nstr(self.split, 20),
        }
        if self.exact is not None:
            record["exact"] = str(self.exact)
        if self.branch is not None:
            record["branch"] = self.branch
        return record
