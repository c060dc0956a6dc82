//! The to-do domains: task tables, the delta domain `DT`, the elaborated
//! view domains, the filter lenses and the synchronization pipeline.

mod dt;
mod filter;
mod model;
pub mod scenario;
mod split;

pub use dt::{all_deltas, all_tables, apply_dt, bounded_dt, bounded_tasks, init_tasks, Delta, DtDomain, DtState, TasksDomain};
pub use filter::{
    elaborated_pipeline, plain_pipeline, ElaboratedFilter, ElaboratedPipeline, Filters, Pipeline, PlainFilter,
    PlainPipeline,
};
pub use model::{show_ids, Date, ParseDateError, TaskError, TaskId, TaskRecord, Tasks};
pub use split::{all_split_states, SplitDelta, SplitDomain, SplitState, ViewPredicate};
