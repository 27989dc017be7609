//! Named verification suites over pinned parameter grids.
//!
//! Each suite exercises one structural statement across every parameter
//! point it is specified for, and returns one report per point.  A suite
//! passes only if every sub-verdict holds exactly.

pub mod actions;
pub mod carries;
pub mod orders;
pub mod ramified;
pub mod tame;
pub mod unramified;

use anyhow::{bail, Result};
use psgl_core::Variant;

use crate::report::CheckReport;

pub const SUITES: &[&str] = &[
    "tame-base",
    "carry-triple-sum",
    "carry-tree",
    "order-equivalence",
    "action-oracles",
    "generation",
    "filtration",
    "totally-ramified",
    "extensions",
    "unramified-structure",
    "socle-multiplicity",
    "socle-radical",
    "jh-dimensions",
];

/// Runs one named suite over its pinned grid.
pub fn run_suite(name: &str, seed: u64) -> Result<Vec<CheckReport>> {
    let reports = match name {
        "tame-base" => vec![
            tame::bardoe_sin_base(3, 1),
            tame::bardoe_sin_base(5, 1),
            tame::bardoe_sin_base(3, 2),
        ],
        "carry-triple-sum" => vec![
            carries::triple_sum(3, 1),
            carries::triple_sum(5, 1),
            carries::triple_sum(3, 2),
            carries::triple_sum(3, 3),
        ],
        "carry-tree" => vec![carries::tree_invariance(3, 2, seed)],
        "order-equivalence" => vec![
            orders::order_equivalence(3, 1),
            orders::order_equivalence(5, 1),
            orders::order_equivalence(3, 2),
        ],
        "action-oracles" => vec![
            actions::action_oracles(3, 1, Variant::EqualChar, &[1, 2]),
            actions::action_oracles(3, 2, Variant::EqualChar, &[1, 8]),
            actions::action_oracles(3, 1, Variant::Witt, &[1, 2]),
        ],
        "generation" => vec![
            ramified::generation(3, 1, &[1, 2]),
            ramified::generation(5, 1, &[1, 2, 3, 4]),
            ramified::generation(3, 2, &[4, 8]),
        ],
        "filtration" => vec![
            ramified::filtration(3, 1, &[1, 2]),
            ramified::filtration(5, 1, &[1, 2, 3, 4]),
            ramified::filtration(3, 2, &[4, 8]),
        ],
        "totally-ramified" => vec![ramified::totally_ramified(5, seed)],
        "extensions" => vec![ramified::extensions(5, 1), ramified::extensions(3, 2)],
        "unramified-structure" => vec![unramified::unramified_structure(7, 1, 3)],
        "socle-multiplicity" => vec![ramified::socle_multiplicity()],
        "socle-radical" => vec![ramified::socle_radical(3), ramified::socle_radical(5)],
        "jh-dimensions" => vec![
            orders::jh_bookkeeping(3, 1, &[1, 2]),
            orders::jh_bookkeeping(5, 1, &[1, 2, 3, 4]),
            orders::jh_bookkeeping(3, 2, &[4, 8]),
        ],
        other => bail!("unknown suite '{other}'; known: {}", SUITES.join(", ")),
    };
    Ok(reports)
}

/// Every suite, in declaration order.
pub fn run_all(seed: u64) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for name in SUITES {
        out.extend(run_suite(name, seed)?);
    }
    Ok(out)
}
