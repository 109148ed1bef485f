from .certificate import Claim, ReductionCertificate
from .cut import (
    dec,
    edge_expansion_exact,
    enc,
    expander_3regular,
    reduce_2cut_to_kcut,
    reduce_2cut_to_kcut_smallk,
    reduce_6cut_to_2cut,
)
from .sat import horn_example, np_gap_reduction, reduce_clause_width
from .testers import (
    PairTester,
    build_consistency_tester,
    build_edge_tester,
    build_stripe_tester,
    edge_tester_z,
    tester_to_graph,
)
from .verifiers import (
    AND,
    BLUE,
    OR,
    PROTECTED_OR,
    RED,
    AndOrGraph,
    Check,
    ExplicitVerifier,
    Link,
    Node,
    horn_cnf,
    horn_delta,
    ncl_verifier,
    parse_andor,
    tuple_violations,
)
