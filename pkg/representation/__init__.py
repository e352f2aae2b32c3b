from .group_rep import GroupRep, permutation_order
from .decomposition import (DecompositionType, IsotypicBlock, IsotypicData, bicommutant, commutant, decomposition_type,
                            good_for_type_check, group_algebra_dimension, isotypic_structure)
