//! Boolean and vectorial functions: truth tables, ANF, components, graphs, supports.

mod anf;
mod boolean;
mod vectorial;

pub use anf::{max_variable_index, Anf};
pub use boolean::{mobius_u64, BooleanFunction, MAX_VARS};
pub use vectorial::{direct_sum, FunctionRecord, GraphSet, SupportSet, VectorialFunction};

pub(crate) use boolean::table_mask;
