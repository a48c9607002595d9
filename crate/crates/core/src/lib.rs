//! Left inverse hulls, tight groupoids and finite C*-models of left
//! cancellative small categories.

pub mod category;
pub mod cli;
pub mod cstar;
pub mod error;
pub mod fixtures;
pub mod groupoid;
pub mod hull;
pub mod input;
pub mod lemmas;
pub mod model;
pub mod paths;
pub mod pbij;
pub mod random;
pub mod report;
pub mod semilattice;
pub mod spectrum;
pub mod tight;
