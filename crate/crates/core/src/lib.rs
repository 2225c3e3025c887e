//! Lattice path matroids, their quotients, flags and the associated
//! Bruhat-interval combinatorics.

pub mod arrows;
pub mod error;
pub mod flag;
pub mod lpm;
pub mod permutation;
pub mod poset;
pub mod quotient;
pub mod subset;
pub mod verify;

pub use error::{LpmError, Result};
pub use lpm::{format_lpm, parse_lpm, recognize_lpm, render_diagram, BasisSet, DiagramArtifact, Lpm};
pub use permutation::{
    bruhat_cover, bruhat_interval, bruhat_leq, bruhat_leq_closure, bruhat_upper_set, Permutation,
};
pub use quotient::{
    explain_quotient, greedy_pairing, is_good_pair, is_good_pairing, is_quotient,
    is_quotient_oracle, quotient_children, remove_pair, Pair, Pairing, QuotientVerdict,
};
pub use subset::{complement, gale_leq, k_subsets, parse_subset, standardize, GroundSubset};
pub use poset::{
    build_poset, catalan, dyck_to_lpm, enumerate_lpms, interval_rank_histogram, lpm_to_dyck,
    maximal_chain_list, maximal_chains, narayana, rank_counts, weak_leq, weak_maxima_in_interval,
    DyckPath, QuotientPoset,
};
pub use flag::{
    all_flags, bruhat_perm, chains_of_bases, cube_interval_check, enumerate_lpfms, flag_diagram,
    flag_gale_leq, flag_of_perm, flags_of_lpfm, gale_perm, good_interval_bruhat, good_interval_gale,
    lpfm_from_bruhat_interval, lpfm_from_flag_pair, polytope_vertices, FlagDiagram, FlagOfBases, Lpfm,
};
pub use arrows::{
    all_intervals, column_intervals, columns_need_columns, contained_intervals, decorated_permutation,
    interval_union_condition, row_intervals, CyclicInterval, DecoratedPermutation, Decoration, IntervalKind,
};
pub use verify::{run_all, run_suite, SuiteReport, SUITES};
