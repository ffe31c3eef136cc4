"""Character theory of SL2 over Z/p^N, parahoric induction/restriction and chamber-homology chain maps."""

__version__ = "0.1.0"

from .errors import DomainError, ResourceBudgetError, TableError, VerificationError
from .cyclo import Cyclotomic, root_of_unity
from .groups import (GroupModel, IwahoriTriple, Kind, ResidueInt, ResidueMatrix,
                     double_coset_decomposition, edge_homomorphism_q1, enumerate_group,
                     iwahori_factorize, lambda_projection)
from .chartab import (CharacterTable, ClassFunction, VirtualCharacter, character_table,
                      decompose, induce, inner_product, restrict)
from .workspace import Workspace
