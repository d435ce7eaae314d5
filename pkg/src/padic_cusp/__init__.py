"""Exact computations around supercuspidal representations of p-adic SL_n and GL_n.

Modules: local_field (p-adic arithmetic), cyclotomic (exact roots of unity),
root_data, building (Moy-Prasad filtrations, apartments, the tree), tori,
finrep (finite groups and characters), heisenberg_weil, genericity, yu
(Yu data and the rank-one pipeline), yu_config, characters, svg and cli.
"""

__version__ = "0.1.0"
