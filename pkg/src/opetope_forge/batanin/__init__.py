"""Batanin trees, globular sets, globular operads and the operad K."""

from .btree import (BTree, BTreeError, boundary, decode_glob, from_delta, glob_cells, maximal_cells, promote,
                    substitute, tensor, to_delta, trees, upsilon)
from .globset import (TREE_OPS, GlobError, GlobSet, StrictOps, labellings, omega_free, paste, tau_hat,
                      terminal_globset)
from .kgen import (Gen, KClass, KFragment, KId, KNode, KnFragment, bare, count_contraction_maps, generate_K,
                   kcell_from_json, kcell_to_json,
                   generate_K_n)
from .operad import (FiniteCollection, OperadError, TerminalOperad, algebra_eval, check_algebra_table,
                     check_collection, check_operad, contraction_choices, contractions, count_contractions,
                     describe_contractions, terminal_algebra_table)

__all__ = [
    "BTree", "BTreeError", "boundary", "decode_glob", "from_delta", "glob_cells", "maximal_cells", "promote",
    "substitute", "tensor", "to_delta", "trees", "upsilon",
    "GlobSet", "GlobError", "StrictOps", "TREE_OPS", "labellings", "omega_free", "paste", "tau_hat",
    "terminal_globset",
    "Gen", "KId", "KNode", "KClass", "KFragment", "KnFragment", "bare", "generate_K", "generate_K_n",
    "count_contraction_maps", "kcell_to_json", "kcell_from_json",
    "TerminalOperad", "FiniteCollection", "OperadError", "algebra_eval", "check_algebra_table",
    "check_collection", "check_operad", "contraction_choices", "contractions", "count_contractions",
    "describe_contractions", "terminal_algebra_table",
]
