"""Constructive solving of finite split embedding problems over surface
groups, with independently checkable certificates."""

from .errors import SurfepError
from .groups import (
    ActionSpec,
    FiniteGroup,
    GroupHom,
    SubgroupHandle,
    catalog,
    cyclic_group,
    direct_product,
    find_section,
    group_from_permutations,
    image,
    inversion_action,
    kernel,
    klein_four_group,
    make_group,
    make_hom,
    minimal_generator_count,
    semidirect_product,
    subgroup_closure,
    symmetric_group_3,
    trivial_action,
    trivial_group,
)
from .surface import (
    BasisState,
    SurfaceTuple,
    Word,
    evaluate_word,
    expand_word,
    initial_basis_state,
    make_surface_tuple,
    map_tuple,
    move_pair_to_front,
    normalize_to_front,
    open_subgroup_genus,
    parse_word,
    pigeonhole_select,
    tuple_image,
    word_x,
    word_y,
)
from .embedding import (
    SolutionCertificate,
    SplitEP,
    SubgroupSpec,
    claim_proper,
    make_split_ep,
    subgroup_image_under,
    verify_solution,
    word_in_n,
)
from .solver import (
    EtaParams,
    ExtensionPlan,
    eta_construct,
    make_eta_params,
    plan_extension,
    reverify_certificate,
    solve_free_product,
    solve_gamma_level,
    solve_relative,
)
from .oracle import (
    InstanceRecipe,
    enumerate_surface_tuples,
    generate_instances,
    random_surface_tuple,
    reference_minimal_generators,
)

__version__ = "0.1.0"
