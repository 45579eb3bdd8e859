"""greedylab: a laboratory for greedy maximum-cardinality matching.

Greedy matchers on a constant-time degree-bucket structure, certified hard
instance generators, exact oracles, an executable transfer/charging
certifier, adaptive priority-game adversaries, the k-uniform hypergraph
gadget, and a reproducible CLI harness.
"""

from .graph import Graph
from .dynamic import DynamicGraph, NaiveDegreeOracle
from .matching import Matching, verify_matching
from .trace import ExecutionTrace, validate_trace
from .policies import LOWEST_ID, UNIFORM, TiePolicy
from .matchers import (ALGORITHMS, MatcherConfig, enumerate_min_degree_executions,
                       run, run_edsm, run_greedy, run_karp_sipser, run_mds,
                       run_mingreedy, run_mrg)
from .oracle import (OptimumCertificate, max_matching_bipartite,
                     max_matching_bruteforce)
from .instances import (Instance, gen_erdos_renyi, gen_fig2_gadget, gen_gab,
                        gen_gab_bipartite_double, gen_ga2_bipartite, gen_cycle,
                        gen_path, gen_random_regular, gen_thm6_graph,
                        load_instance, save_instance)
from .certify import (CertReport, canonicalize_opt, certify, check_balances,
                      compute_transfers, decompose, endpoint_degree_check)
from .hypergraph import (Hypergraph, gen_hyper_hard, hyper_bruteforce_optimum,
                         hyper_greedy, hyper_greedy_priority_game)
from .rng import RandomStream, derive_key

__version__ = "0.1.0"
