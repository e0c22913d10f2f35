//! Exact generating functions in `q`, `R` and `C`, where `R` marks `r_s`,
//! `C` marks `c_s` and `Q = q^s`.

mod gf;
mod poly;
mod qbinom;

use serde::{Deserialize, Serialize};

pub use gf::{
    bf_product, d_vector, gf_closed, gf_empty, gf_position_form, gf_sum_form, gf_symmetric,
    position_sequences_ending_at,
};
pub use poly::{Exponent, MultiPoly};
pub use qbinom::{
    inv_poch_truncated, poch_truncated, q_factorial, q_quotient, qbinom, qbinom_coeffs,
};

/// Series results are exact up to and including `q^max_q_degree` and carry
/// no higher terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeriesTruncation {
    pub max_q_degree: usize,
}

impl SeriesTruncation {
    pub fn new(max_q_degree: usize) -> Self {
        SeriesTruncation { max_q_degree }
    }

    pub(crate) fn n(self) -> i64 {
        self.max_q_degree as i64
    }
}
