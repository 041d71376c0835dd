"""diversekit: diverse solutions for subset-minimization problems.

Solvers for finding r mutually diverse solutions (maximal summed pairwise
Hamming distance) to vertex cover, hitting set, point-line cover and
feedback arc set in tournaments, built on tree-decomposition dynamic
programming with composable dynamic cores and on loss-less kernelization.
"""

from .core_engine import (DynamicCore, EvaluationResult, NodeStats, evaluate,
                          extract_witness, solution_from_witness)
from .cores import (DiverseSolveResult, diverse_product_core,
                    diverse_vc_max_diversity, diverse_vc_sweep,
                    framework_max_diversity, solve_diverse, solve_diverse_vc,
                    solve_diverse_vc_direct, vc_core)
from .decomposition import (RootedTreeDecomposition, find_vertex_cover,
                            normalize, parse_td, pd_from_vertex_cover, validate)
from .diversity import (SolutionTuple, diversity, hamming_distance, influence,
                        max_possible_diversity)
from .instances import (FAST, HS, PLC, VC, Graph, Hypergraph, ParseError,
                        PointSet, ProblemInstance, Tournament, canonical_line,
                        enumerate_domain, parse_graph, parse_hypergraph,
                        parse_points, parse_tournament, point_on_line,
                        serialize_graph, serialize_hypergraph, serialize_points,
                        serialize_tournament, spanned_lines)
from .kernels import (DiverseKernelOutput, LosslessKernelResult, NoVerdict,
                      diverse_kernel_transform, domain_recover,
                      fast_lossless_kernel, hs_lossless_kernel,
                      lossless_kernel, plc_lossless_kernel, vc_lossless_kernel)
from .oracle import (OracleGuardError, SolutionSpace, decide_diverse,
                     enumerate_solutions, find_diverse_tuple, is_solution,
                     max_diversity)

__version__ = "0.1.0"
