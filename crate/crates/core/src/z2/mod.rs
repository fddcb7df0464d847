//! Exact mod-2 characteristic class arithmetic.

mod classes;
mod ring;
mod tpower;

pub use classes::{
    binomial_mod2, invert_total_class, tangent_total_class, ProjectiveSpace, TangentData, TotalClass,
};
pub use ring::{Generator, GradedRing, Monomial, RingElement};
pub use tpower::{
    height_of_t, reduce_t_power, w_conner, w_conner_with_dual, w_table_recurrence, TPowerExpression,
    WTable,
};
