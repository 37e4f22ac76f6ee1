"""Common meadows built from finite commutative rings."""

from .construct import (Decomposition, IsoStatus, MeadowHom, MeadowIso, build_M,
                        build_group_algebra_meadow, check_product_structure, decompose_local,
                        lift_surjective_hom, meadow_product, meadows_isomorphic,
                        verify_meadow_iso)
from .directed_lattice import DirectedLattice, build_directed_lattice
from .dsl import parse_ring
from .errors import (CoherenceError, InternalConsistencyError, MeadowError, NotAnIdealError,
                     NotCommonError, NotSurjectiveError, SizeCapError, SpecSyntaxError)
from .finite_ring import (FiniteRing, RingHom, find_ring_isomorphism, make_group_algebra,
                          make_poly_quotient, make_product, make_quotient, make_zn)
from .ideals import Ideal, enumerate_ideals, maximal_ideals
from .lattice import FiniteLattice
from .meadow import (Element, Meadow, check_common, check_pre_meadow, check_transition_maps,
                     invertibility_set, is_common, is_local, madd, meadow_atoms, minv, mmul,
                     mneg, order_leq, zero_of)

__version__ = "0.1.0"
