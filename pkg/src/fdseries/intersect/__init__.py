from .ideals import (
    ClassGenerator,
    FirstOrderIdeal,
    PrincipalityResult,
    RankCertificate,
    intersect_first_order,
    is_right_divisible,
    principality_test,
    same_symbol_generator,
)

__all__ = [
    "ClassGenerator",
    "FirstOrderIdeal",
    "PrincipalityResult",
    "RankCertificate",
    "intersect_first_order",
    "is_right_divisible",
    "principality_test",
    "same_symbol_generator",
]
