//! Root isolation, finite-sample invariance checkers and stack reports.

pub mod arcs;
mod checks;
mod roots;
mod stack;

pub use checks::{
    check_lazard_delineable, check_order_invariant, check_section_valuation,
    check_valuation_invariant, Delineability, DelineabilityCondition, DelineabilityReport,
    InvarianceReport, InvarianceVerdict, SectionValuationReport,
};
pub use roots::{isolate_real_roots, sturm_count, IsolatingInterval, RootIsolation};
pub use stack::{
    build_stack_report, CellValuation, Owner, Section, Sector, StackColumn, StackReport,
    StackVerdict, ValuationSource,
};
