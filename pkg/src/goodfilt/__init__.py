"""Good filtrations for reductive pairs: characters, linkage, subsystems and certificates."""
from .budget import BudgetError, budgets, override
from .charring import (
    Character,
    Decomposition,
    decompose,
    exterior_power_decompose,
    irreducible_character,
    sym_power_decompose,
    tensor_decompose,
    weyl_dimension,
)
from .linkage import (
    alcove_reduce,
    linkage_minimal_test,
    low_alcove_min_prime,
    order_compare,
    root_lattice_test,
    wp_conjugacy_primes,
    wp_dot_conjugate,
)
from .primes import PrimeConditionSet
from .rootsys import RootSystem, build_root_system
from .sl2data import grading_profile, load_distinguished_orbits, optimal_prime_threshold, sl2_restrict, spin_threshold
from .subsys import branch_decompose, enumerate_subsystems, find_subsystem, involution_centralizer_test
from .verifier import exceptional_protocol, replay, sl2_orbit_report, subsystem_prime_report, vdk_certify

__version__ = "0.1.0"
