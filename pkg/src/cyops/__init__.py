"""Calabi-Yau-type differential operators over Q."""

__version__ = "0.1.0"

from .checker import (CYVerdict, GaloisVerdict, check_cy_type, galois_classify,  # noqa: E402
                      n_integral_witness, order7_relations, reconstruct_sym_root)
from .constructions import (pullback_inversion, pullback_monomial, sym_power_order2,  # noqa: E402
                            sym_square_order, twist)
from .frobenius import local_structure, mum_flag  # noqa: E402
from .normal_form import (lambert_coefficients, normal_form, prody_check,  # noqa: E402
                          q_coordinate, special_normal_form_equal, structure_series,
                          y_invariants)
from .operators import (DOperator, ThetaOperator, apply, dual, indicial,  # noqa: E402
                        min_operator_of_series, multiply, self_dual_witness, to_d_form,
                        to_theta_form)
from .parser import parse_operator  # noqa: E402

__all__ = [
    "CYVerdict", "DOperator", "GaloisVerdict", "ThetaOperator", "apply", "check_cy_type",
    "dual", "galois_classify", "indicial", "lambert_coefficients", "local_structure",
    "min_operator_of_series", "multiply", "mum_flag", "n_integral_witness", "normal_form",
    "order7_relations", "parse_operator", "prody_check", "pullback_inversion",
    "pullback_monomial", "q_coordinate", "reconstruct_sym_root", "self_dual_witness",
    "special_normal_form_equal", "structure_series", "sym_power_order2", "sym_square_order",
    "to_d_form", "to_theta_form", "twist", "y_invariants",
]
