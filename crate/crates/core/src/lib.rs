pub mod coeffs;
pub mod diagrams;
pub mod exactalg;
pub mod fincat;
pub mod harness;
pub mod profcalc;
