"""pds-forge: exact certificates and exhaustive search for partial difference sets."""

from .certify import (
    Certificate,
    Step,
    block_roots,
    c_system,
    certificate_to_dict,
    certificate_to_json,
    certify,
    delta_candidates,
    enumerate_c_solutions,
    group_reduction,
    k_bound_exact,
    line_weights,
    mu_candidates,
    parity_obstruction,
    replay_certificate,
    sporadic_classify,
)
from .errors import CertificationError, DomainError, GroupMismatchError
from .groups import (
    GroupElement,
    GroupSpec,
    OrbitPartition,
    PlaneDesign,
    build_plane,
    compose,
    element_order,
    inverse,
    lmt_orbits,
    power,
    sylow,
)
from .params import (
    PdsParams,
    SubPdsReport,
    complement,
    conference_case,
    divisibility_check,
    dual_delta,
    enumerate_feasible,
    ma1_sizes,
    ma2_excludes,
    nontrivial_range,
    parity_check,
    srg_consistent,
)
from .search import (
    CandidateSet,
    DifferenceProfile,
    PdsVerdict,
    difference_profile,
    empirical_block_count,
    read_set_file,
    search,
    verify_pds,
    write_set_file,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
