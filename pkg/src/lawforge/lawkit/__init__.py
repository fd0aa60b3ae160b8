"""Law constructors and Lie-type data tables."""

from .constructors import (LawRecipe, TrivialWordError, extension_combine, max_order_law,
                           max_order_recipe, product_law, psl2_law, small_field_law,
                           solvable_law, solvable_recipe, union_combine)
from .tables import (FAMILIES, LieTypeTag, TagError, field_degree_factor, law_degree,
                     max_order_constant, max_order_degree, projective_dim, root_gcd,
                     root_gcd_sum, root_system, table_a, table_b, table_c, table_d,
                     table_n, torus_exponent)

__all__ = [
    "FAMILIES", "LawRecipe", "LieTypeTag", "TagError", "TrivialWordError",
    "extension_combine", "field_degree_factor", "law_degree", "max_order_constant",
    "max_order_degree", "max_order_law", "max_order_recipe", "product_law",
    "projective_dim", "psl2_law", "root_gcd", "root_gcd_sum", "root_system",
    "small_field_law", "solvable_law", "solvable_recipe", "table_a", "table_b",
    "table_c", "table_d", "table_n", "torus_exponent", "union_combine",
]
