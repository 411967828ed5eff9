pub mod context;
pub mod graded;
pub mod poly;
pub mod special;
pub mod text;
pub mod useries;

pub use context::{same_context, VarContext};
pub use graded::GradedSeries;
pub use poly::{q_frac, q_int, Mono, Poly, RationalFunction, Q};
pub use useries::USeries;
