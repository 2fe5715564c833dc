from reeskit.divided_powers import (
    DualFunctional,
    GammaElement,
    bullet,
    comultiplication,
    dp_basis,
    dp_multiply,
    gamma_dual_degree,
    gamma_map_degree,
    gamma_module_degree,
    gamma_of_vector,
    sym_dual_iso,
)
from reeskit.errors import DomainError, ReesKitError, ScriptError, VerificationError
from reeskit.gamma_rees import (
    canonical_map_degree,
    rees_via_gamma,
    verify_theorem_a,
)
from reeskit.groebner import (
    FreeModuleVector,
    GroebnerBasis,
    Ideal,
    SubmoduleBasis,
    buchberger,
    eliminate,
    lift,
    module_groebner,
    normal_form,
    syzygies,
)
from reeskit.module import (
    ModuleMap,
    PresentedModule,
    PresentedRing,
    direct_sum,
    direct_sum_map,
    double_dual_embedding,
    double_dual_map,
    dual,
    dual_map,
    ideal_inclusion,
    is_versal,
    versal_map,
)
from reeskit.polynomial import GREVLEX, LEX, MonomialOrder, Polynomial
from reeskit.rees import (
    GradedAlgebraMap,
    GradedAlgebraPresentation,
    algebra_map_kernel,
    hilbert_function,
    presentation_equal,
    rees_map,
    rees_of_ideal,
    rees_of_map,
    rees_via_versal,
    sym_map,
    sym_presentation,
    symmetric_power,
    tensor_presentation,
)
from reeskit.script import SessionScript, parse_script

from ._version import __version__

__all__ = [
    "__version__",
    "Polynomial",
    "MonomialOrder",
    "GREVLEX",
    "LEX",
    "Ideal",
    "GroebnerBasis",
    "FreeModuleVector",
    "SubmoduleBasis",
    "buchberger",
    "normal_form",
    "eliminate",
    "syzygies",
    "lift",
    "module_groebner",
    "PresentedRing",
    "PresentedModule",
    "ModuleMap",
    "dual",
    "dual_map",
    "double_dual_map",
    "double_dual_embedding",
    "is_versal",
    "versal_map",
    "direct_sum",
    "direct_sum_map",
    "ideal_inclusion",
    "GradedAlgebraPresentation",
    "GradedAlgebraMap",
    "sym_presentation",
    "symmetric_power",
    "sym_map",
    "algebra_map_kernel",
    "rees_of_map",
    "rees_via_versal",
    "rees_map",
    "rees_of_ideal",
    "tensor_presentation",
    "presentation_equal",
    "hilbert_function",
    "GammaElement",
    "DualFunctional",
    "dp_basis",
    "dp_multiply",
    "gamma_of_vector",
    "gamma_module_degree",
    "comultiplication",
    "bullet",
    "sym_dual_iso",
    "gamma_dual_degree",
    "gamma_map_degree",
    "canonical_map_degree",
    "rees_via_gamma",
    "verify_theorem_a",
    "SessionScript",
    "parse_script",
    "ReesKitError",
    "DomainError",
    "VerificationError",
    "ScriptError",
]
