//! Minimum-cost prefix codes for `n` equally likely words over an alphabet
//! whose `r` letters have unequal lengths.
//!
//! The optimal code tree is found by walking the sequence of shallow trees
//! `T_m` (the first `m` nodes of the infinite r-ary tree as non-terminals,
//! the `n` smallest remaining children as terminals) with sprout and level
//! steps, in `O(n log^2 r)` time.
//!
//! ```
//! use prefixcode::{compute_optimal, assign_codewords, Instance, Options};
//!
//! let inst = Instance::from_integers(&[1, 2], 6).unwrap();
//! let sol = compute_optimal(&inst, Options::default()).unwrap();
//! assert_eq!(sol.optimal_cost.get(), 23);
//! let code = assign_codewords(&sol.tree, &inst).unwrap();
//! let letters = code.encode(&[0, 3, 5]).unwrap();
//! assert_eq!(code.decode(&letters).unwrap(), vec![0, 3, 5]);
//! ```

pub mod codec;
pub mod document;
pub mod engine;
pub mod model;
pub mod oracle;

pub use codec::{assign_codewords, Code, CodecError, Letter};
pub use document::{CodeDocument, DocumentError};
pub use engine::{
    check_shallow, compute_optimal, create_t_mmin, materialize_tree, naive_scan, run_to, scan,
    CodeTree, EngineError, NonTerminal, Options, Scan, Solution, TraceEntry, TreeState,
};
pub use model::{
    node_compare, parse_cost_list, parse_rational, Cost, Instance, ModelError, NodeRef, Rational,
};
pub use oracle::{binary_reference, brute_force_optimal, OracleError, OracleResult};
