"""Exact verification of group-ring module structures on cyclic covers.

Subpackages by layer: linalg (exact integer linear algebra), groupring
(multi-variable cyclic group rings), gmodule (presented modules with a
cyclic group action), fermat (the tower of homology models and the
statements verified on it), lattice (root lattices, forms, and monodromy
transformations), cli (batch verification reports).
"""

__version__ = "1.0.0"
