"""Edwards and Huff curves with prescribed rational x-coordinates."""
from .curves import (
    AffinePoint,
    CurveError,
    EdwardsCurve,
    Family,
    GeneralHuffCurve,
    HuffCurve,
    SequenceSpec,
    SpecError,
    TwistedEdwardsCurve,
    contains,
    fiber_x,
    fiber_y,
    make_curve,
)
from .elliptic import (
    ECPoint,
    WeierstrassCurve,
    order_certificate,
    paper_point_edwards,
    quartic_to_weierstrass,
)
from .families import (
    AdmissibilityReport,
    CurveCertificate,
    GenerationResult,
    InadmissibleError,
    PartialResultWarning,
    edwards_admissible,
    edwards_generate,
    generate,
    general_huff_generate,
    huff_admissible,
    huff_generate,
    twisted_admissible,
    twisted_generate,
)
from .oracle import brute_force_points, independent_verify, quartic_search

__version__ = "0.1.0"

__all__ = [
    "AffinePoint",
    "CurveError",
    "EdwardsCurve",
    "Family",
    "GeneralHuffCurve",
    "HuffCurve",
    "SequenceSpec",
    "SpecError",
    "TwistedEdwardsCurve",
    "contains",
    "fiber_x",
    "fiber_y",
    "make_curve",
    "ECPoint",
    "WeierstrassCurve",
    "order_certificate",
    "paper_point_edwards",
    "quartic_to_weierstrass",
    "AdmissibilityReport",
    "CurveCertificate",
    "GenerationResult",
    "InadmissibleError",
    "PartialResultWarning",
    "edwards_admissible",
    "edwards_generate",
    "generate",
    "general_huff_generate",
    "huff_admissible",
    "huff_generate",
    "twisted_admissible",
    "twisted_generate",
    "brute_force_points",
    "independent_verify",
    "quartic_search",
]
