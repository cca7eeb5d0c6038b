"""Exact tools for cliques, books of cliques on an edge, and Turán-type bounds."""

from .cliques import (CliqueSpectrum, clique_spectrum, count_cliques, edge_clique_count,
                      find_clique, moon_moser_report)
from .graph import (Graph, PeelTrace, common_neighborhood, induced_subgraph, make_graph, peel,
                    read_edge_list, write_edge_list)
from .inequalities import (BoundReport, SetSystem, bonf_pair, eval_bound, intersection_sums,
                           typms_check, typms_lower_bound)
from .joints import (JointCertificate, ReductionOutcome, extract_joint, find_large_joint,
                     jointsize, lekd_edge, thexj_reduce, tightness_ratio)
from .stability import (StabilityReport, aes_condition, check_stability, low_degree_set,
                        r_colorable)
from .turan import turan_graph, turan_min_degree, turan_number

__version__ = "0.1.0"
