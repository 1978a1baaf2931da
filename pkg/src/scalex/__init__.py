"""scalex: decision engine and numerical lab for scaling-element C*-algebras."""

from .spectra import (
    GeneratorDescriptor,
    Properness,
    ScalingSpectrum,
    SpectralSet,
    has_compact_open_at_one,
    has_infinite_projection,
    hom_exists,
    iso_exists,
    nonproper_admissible,
    normalize,
    proper_default,
)
from .ktheory import (
    Component,
    KGroupResult,
    PuncturedSet,
    components,
    ev_component_class,
    k_of_functions,
    k_of_generator,
    k_of_quotient_algebra,
    k_of_toeplitz_algebra,
)
from .operators import (
    PiecewiseFunction,
    PropernessVerdict,
    TruncatedShiftModel,
    classify_properness,
    conjugate_random,
    estimate_spectrum,
    functional_calculus,
    infinite_projection_witness,
    realize,
    scaling_defect,
    synthesize,
)
from .wold import WoldReport, polar, reconstruct, supports, wold_decompose
from .pairs import (
    SampledFunction,
    SampledPairRep,
    defect_projection,
    function_action,
    matrix_units,
    pair_relation_check,
    shift_action,
)

__version__ = "0.1.0"
