"""Consistent power constructions over finite posets, checked exactly."""

from .poset import FinitePoset, build_poset, all_posets, upper_sets, way_below, BUILTIN_POSETS
from .basis import AbstractBasis, validate_basis, round_ideals, ideal_poset
from .rational import INF, fmt, parse_rational
from .theory import (UNDEFINED, TheorySpec, PartialAlgebra, check_laws, check_homomorphism,
                     subalgebra_closure, is_subalgebra, CONE, QUASI_CONE, KEGELSPITZE)
from .index import IndexElement, index_element, idx_leq, idx_way_below, idx_add, idx_scale, idx_free_extend
from .valuation import (SimpleValuation, valuation, val_leq_split, val_leq_pointwise, val_way_below,
                        val_plus_r, linear_sum, val_free_extend, consistent_basis_enumerate)
from .monad import VALUATION, INDEX, check_monad_laws

__version__ = "0.1.0"
