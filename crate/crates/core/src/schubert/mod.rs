//! Schubert polynomials by three routes: the divided-difference recursion,
//! the sum over reduced pipe dreams, and the same sum over the dreams
//! produced by mitosis.

mod polynomial;

pub use polynomial::{Monomial, Polynomial};

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mitosis::rp_by_mitosis;
use crate::permutation::{Permutation, Word};
use crate::pipedream::PipeDream;

/// `x^D`: the exponent of `x_r` is the number of crosses in row `r`.
pub fn monomial_of(d: &PipeDream) -> Polynomial {
    let exps = (1..=d.n()).map(|r| d.row_count(r) as u32).collect();
    Polynomial::monomial(exps, BigInt::one())
}

/// `x_1^{n-1} x_2^{n-2} ... x_{n-1}`.
pub fn staircase_monomial(n: usize) -> Polynomial {
    let exps = (1..=n).map(|i| (n - i) as u32).collect();
    Polynomial::monomial(exps, BigInt::one())
}

/// Applies `∂_{i_1}`, then `∂_{i_2}`, ... to `f`.
pub fn apply_divided_differences(f: &Polynomial, word: &Word) -> Result<Polynomial> {
    word.letters()
        .iter()
        .try_fold(f.clone(), |acc, &i| acc.divided_difference(i))
}

/// The Schubert polynomial from the recursion, along the lex-first
/// reduced word for `w_0 w`.
pub fn schubert_divdiff(w: &Permutation) -> Result<Polynomial> {
    schubert_divdiff_with_word(w, &w.long_times().lex_first_reduced_word())
}

pub fn schubert_divdiff_with_word(w: &Permutation, word: &Word) -> Result<Polynomial> {
    if !word.is_reduced_for(&w.long_times()) {
        return Err(Error::NonReducedWord(word.to_string()));
    }
    apply_divided_differences(&staircase_monomial(w.n()), word)
}

/// `Σ x^D` over the given set, which should be `RP(w)`.
pub fn schubert_bjs(w: &Permutation, rp: &BTreeSet<PipeDream>) -> Polynomial {
    let n = w.n();
    let sum = rp
        .par_iter()
        .map(monomial_of)
        .reduce(|| Polynomial::zero(n), |a, b| &a + &b);
    debug_assert!(sum.all_coefficients_nonnegative());
    sum
}

pub fn schubert_mitosis(w: &Permutation) -> Result<Polynomial> {
    Ok(schubert_bjs(w, &rp_by_mitosis(w)?))
}
