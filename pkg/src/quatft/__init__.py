"""Two-sided quaternion Fourier transform and uncertainty-principle certificates."""

from .qft import (
    PolyGauss,
    QPolyGauss,
    convolve,
    delta,
    dilate,
    dilation_law,
    hermite_factor,
    qft_direct,
    qft_fast,
    qft_inverse,
    qft_inverse_direct,
    qft_polygauss,
)
from .qsignal import (
    GridSpec,
    MissingComponentsError,
    PPMParseError,
    QSignal,
    QSpectrum,
    component_split,
    l1_norm,
    l2_norm,
    load_ppm_as_pure_quaternion,
    module_l2_norm,
    module_norm,
    recombine,
)
from .quaternion import (
    Quaternion,
    QuaternionDomainError,
    conj,
    format_quaternion,
    from_polar,
    inverse,
    modulus,
    mul,
    parse_quaternion,
    polar,
)
from .uncertainty import (
    BeurlingParams,
    CertificateReport,
    Conclusion,
    CowlingPriceParams,
    GelfandShilovParams,
    HardyParams,
    beurling_certify,
    beurling_integral,
    cowling_price_check,
    gelfand_shilov_check,
    hardy_check,
    young_bound_check,
    young_slack,
)

__version__ = "0.1.0"

__all__ = [
    "PolyGauss",
    "QPolyGauss",
    "convolve",
    "delta",
    "dilate",
    "dilation_law",
    "hermite_factor",
    "qft_direct",
    "qft_fast",
    "qft_inverse",
    "qft_inverse_direct",
    "qft_polygauss",
    "GridSpec",
    "MissingComponentsError",
    "PPMParseError",
    "QSignal",
    "QSpectrum",
    "component_split",
    "l1_norm",
    "l2_norm",
    "load_ppm_as_pure_quaternion",
    "module_l2_norm",
    "module_norm",
    "recombine",
    "Quaternion",
    "QuaternionDomainError",
    "conj",
    "format_quaternion",
    "from_polar",
    "inverse",
    "modulus",
    "mul",
    "parse_quaternion",
    "polar",
    "BeurlingParams",
    "CertificateReport",
    "Conclusion",
    "CowlingPriceParams",
    "GelfandShilovParams",
    "HardyParams",
    "beurling_certify",
    "beurling_integral",
    "cowling_price_check",
    "gelfand_shilov_check",
    "hardy_check",
    "young_bound_check",
    "young_slack",
]
