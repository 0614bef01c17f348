"""knapsackga package.

Merkle-Hellman knapsack cipher workbench with a genetic-algorithm attack on
the underlying subset-sum problem.
"""

from __future__ import annotations

__version__ = "0.1.0"

__all__: list[str] = ["__version__"]
