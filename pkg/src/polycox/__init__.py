"""polycox: coherent presentations of monoids by homotopical
completion-reduction of string rewriting systems, specialized to Garside's
and Artin's coherent presentations of Artin monoids."""

from .completion import (
    Branching,
    BranchKind,
    Polygraph31,
    Sphere3,
    SphereEntry,
    ThreeCell,
    TripleBranching,
    cells_by_branching,
    classify_local,
    critical_branchings,
    fill_parallel,
    generating_triple_confluence,
    homotopical_complete,
    triple_critical_branchings,
)
from .coxeter import (
    CoxeterGroup,
    CoxeterMatrix,
    WElement,
    complement,
    enumerate_group,
    is_reduced_product,
    left_weighted,
    longest_element,
    rank3_finite,
    sliding_normal_form,
    smallest_divisor,
)
from .errors import (
    BudgetError,
    ClassificationError,
    CoherenceError,
    CompositionError,
    CycleError,
    DivergenceError,
    InfiniteOrUnknown,
    InputError,
    NielsenError,
    NonterminationError,
    OrientationError,
    PolycoxError,
    PreconditionError,
    StepError,
)
from .garside import (
    ArtinProjection,
    Classification,
    FamilyTag,
    Gar3,
    GarsideCompletion,
    GarsidePresentation,
    artin_coherent,
    artin_presentation,
    artin_reduction_part,
    cell_census,
    classify_tuple,
    complete_garside,
    gar4_spheres,
    garside_coherent,
    garside_order,
    garside_presentation,
    garside_reduction_part,
    phi_key,
)
from .paths import (
    Path2,
    Step2,
    compose,
    identity_path,
    inverse,
    normalize,
    normalize_path,
    paths_equal,
    whisker,
)
from .tietze import (
    CollapsiblePart,
    OrderWitness,
    SphereCollapse,
    ThreeCollapse,
    TwoCollapse,
    adjoin_definition,
    homotopical_reduce,
    nielsen_invert_rule,
    standard_coherent_presentation,
    validate_collapsible,
)
from .words import (
    Deglex,
    GarsideWreath,
    Ordering,
    Polygraph2,
    Rule,
    UserTable,
    Word,
    apply_step,
    check_termination,
    compare,
    deglex_from_names,
    find_redexes,
)

__all__ = [name for name in dir() if not name.startswith("_")]
