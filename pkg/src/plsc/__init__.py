"""Exact-arithmetic persistence landscapes.

Diagrams, landscapes, norms and kernels, max-plus evaluation, and exact
reconstruction of diagram families from average landscapes, all over
arbitrary-precision rationals.
"""

from .diagram import (DiagramFamily, EMPTY_DIAGRAM, PersistenceDiagram,
                      bottleneck_bruteforce, bottleneck_distance, connectify,
                      is_connected, is_generic, make_generic, parse_diagram,
                      product_distance, serialize_diagram)
from .errors import InputError, PreconditionError
from .landscape import (EMPTY_LANDSCAPE, Landscape, PiecewiseLinearFunction,
                        ZERO_FUNCTION, average_of, critical_points, diagram_of,
                        evaluate, landscape_of, linear_combination,
                        parse_landscape, sample_grid, serialize_landscape, tent)
from .analysis import (PoissonWeights, WeightSpec, format_matrix_csv,
                       gram_matrix, inner_product, p_distance, p_norm,
                       poisson_kernel, poisson_norm, poisson_weight,
                       sup_distance, weighted_inner_product)
from .tropical import (TROPICAL_ONE, TROPICAL_ZERO, TropicalValue,
                       feature_grid, lambda_kt, sigma_k, tropical_tent)
from .reconstruct import (BipartiteGraph, IndependenceReport,
                          LabeledCriticalSet, bipartite_graph, critical_set,
                          find_progressions, is_arithmetically_independent,
                          reconstruct_from_average, recover_from_bipartite)
from .benchgen import (counterexample_pair, random_diagram,
                       random_independent_family)
from .rational import Rational, format_rational, parse_rational, to_rational

__version__ = "0.1.0"
