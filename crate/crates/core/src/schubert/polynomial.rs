//! Sparse polynomials in `x_1, ..., x_n` with arbitrary-precision integer
//! coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponent vector ordered graded-lexicographically: total degree first,
/// then `x_1` exponent, then `x_2`, ...
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::monomial(vec![0; nvars], BigInt::one())
    }

    pub fn monomial(exponents: Vec<u32>, coeff: BigInt) -> Self {
        let mut p = Polynomial::zero(exponents.len());
        p.add_term(Monomial(exponents), coeff);
        p
    }

    /// `x_i` (1-based).
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Polynomial::monomial(e, BigInt::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, coeff: BigInt) {
        assert_eq!(
            m.0.len(),
            self.nvars,
            "exponent vector has the wrong length"
        );
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// `s_i f`: exchanges `x_i` and `x_{i+1}`.
    pub fn swap_vars(&self, i: usize) -> Result<Polynomial> {
        self.check_index(i)?;
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.swap(i - 1, i);
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    pub fn is_symmetric_in(&self, i: usize) -> Result<bool> {
        Ok(&self.swap_vars(i)? == self)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.nvars {
            Err(Error::GeneratorOutOfRange {
                index: i,
                n: self.nvars,
            })
        } else {
            Ok(())
        }
    }

    /// `(f - s_i f) / (x_i - x_{i+1})`.
    ///
    /// The numerator is grouped by the exponents of the other variables; in
    /// each group it is a polynomial in `x_i` over `Z[x_{i+1}]`, divided by
    /// `x_i - x_{i+1}` with Horner's scheme at the root `x_i = x_{i+1}`. A
    /// nonzero remainder would mean an arithmetic bug and panics.
    pub fn divided_difference(&self, i: usize) -> Result<Polynomial> {
        let numerator = self - &self.swap_vars(i)?;
        let (a, b) = (i - 1, i);
        // other exponents -> x_i power -> (x_{i+1} power -> coeff)
        let mut groups: BTreeMap<Vec<u32>, BTreeMap<u32, BTreeMap<u32, BigInt>>> = BTreeMap::new();
        for (m, c) in numerator.terms {
            let mut rest = m.0.clone();
            rest[a] = 0;
            rest[b] = 0;
            *groups
                .entry(rest)
                .or_default()
                .entry(m.0[a])
                .or_default()
                .entry(m.0[b])
                .or_default() += c;
        }
        let mut out = Polynomial::zero(self.nvars);
        for (rest, by_power) in groups {
            let top = *by_power.keys().next_back().unwrap();
            // running Horner value, a polynomial in x_{i+1}
            let mut carry: BTreeMap<u32, BigInt> = BTreeMap::new();
            for p in (0..=top).rev() {
                // carry <- carry * x_{i+1} + coefficient of x_i^p
                let mut next: BTreeMap<u32, BigInt> =
                    carry.into_iter().map(|(q, c)| (q + 1, c)).collect();
                if let Some(coeffs) = by_power.get(&p) {
                    for (&q, c) in coeffs {
                        *next.entry(q).or_default() += c;
                    }
                }
                next.retain(|_, c| !c.is_zero());
                if p == 0 {
                    assert!(next.is_empty(), "divided difference left a remainder");
                    carry = next;
                } else {
                    // quotient coefficient of x_i^{p-1}
                    for (&q, c) in &next {
                        let mut e = rest.clone();
                        e[a] = p - 1;
                        e[b] = q;
                        out.add_term(Monomial(e), c.clone());
                    }
                    carry = next;
                }
            }
            debug_assert!(carry.is_empty());
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter().zip(point).fold(c.clone(), |acc, (&e, x)| {
                    acc * num_traits::pow(x.clone(), e as usize)
                })
            })
            .sum()
    }

    /// Value at `x_1 = ... = x_n = 1`, the sum of the coefficients.
    pub fn evaluate_at_ones(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let e = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(e), c1 * c2);
            }
        }
        out
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(mut iter: I) -> Polynomial {
        let first = iter
            .next()
            .expect("sum of an empty sequence of polynomials");
        iter.fold(first, |acc, p| &acc + &p)
    }
}

/// `x1^2*x2 + 3*x1*x3 - x2`; the zero polynomial prints as `0`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(v, &e)| {
                        if e == 1 {
                            format!("x{}", v + 1)
                        } else {
                            format!("x{}^{}", v + 1, e)
                        }
                    })
                    .collect();
            if vars.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{}*{}", magnitude, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    coeff: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct PolynomialJson {
    nvars: usize,
    terms: Vec<TermJson>,
}

/// `{"nvars":n,"terms":[{"exp":[..],"coeff":k}, ...]}`, largest monomial
/// first. Coefficients that do not fit in an `i64` are written as strings.
impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms()
            .map(|(m, c)| TermJson {
                exp: m.0.clone(),
                coeff: match c.to_i64() {
                    Some(v) => serde_json::Value::from(v),
                    None => serde_json::Value::from(c.to_string()),
                },
            })
            .collect();
        PolynomialJson {
            nvars: self.nvars,
            terms,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = PolynomialJson::deserialize(deserializer)?;
        let mut p = Polynomial::zero(json.nvars);
        for t in json.terms {
            if t.exp.len() != json.nvars {
                return Err(D::Error::custom("exponent vector has the wrong length"));
            }
            let coeff: BigInt = match &t.coeff {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| D::Error::custom("coefficient is not an integer"))?,
                serde_json::Value::String(s) => s
                    .parse()
                    .map_err(|_| D::Error::custom("coefficient is not an integer"))?,
                _ => return Err(D::Error::custom("coefficient is not an integer")),
            };
            p.add_term(Monomial(t.exp), coeff);
        }
        Ok(p)
    }
}
