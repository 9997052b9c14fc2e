from .dual import DualNumber
from .params import DomainError, GlobalParams
from .poly import Poly, monic_enum, resultant
from .rings import (
    GF,
    QQ,
    Cyclotomic,
    CycInt,
    Elem,
    FieldElem,
    Ring,
    RingError,
    ZMod,
    cyclotomic_poly,
    embed_cyclo,
)
from .series import FracSeries, SeriesError, qseries_from_list, series_solve

__all__ = [
    "CycInt", "Cyclotomic", "DomainError", "DualNumber", "Elem", "FieldElem",
    "FracSeries", "GF", "GlobalParams", "Poly", "QQ", "Ring", "RingError",
    "SeriesError", "ZMod", "cyclotomic_poly", "embed_cyclo", "monic_enum",
    "qseries_from_list", "resultant", "series_solve",
]
