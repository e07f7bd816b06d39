//! Permutations of `S_n` in one-line notation, and words in the simple
//! transpositions `s_1, ..., s_{n-1}`.
//!
//! Everything here is 1-based: `w.get(i)` is `w(i)` and the generator `s_i`
//! swaps `i` and `i + 1`. Composition is composition of functions, so
//! `w * s_i` swaps the entries in positions `i` and `i + 1` while `s_i * w`
//! swaps the values `i` and `i + 1`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default cap on `length(v)` for [`Permutation::all_reduced_words`].
pub const DEFAULT_REDUCED_WORD_BOUND: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line notation `w(1) ... w(n)`.
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n];
        for &v in &word {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(format_word(&word)));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n).collect(),
        }
    }

    /// The long permutation `w_0 = n ... 2 1`.
    pub fn long(n: usize) -> Self {
        Permutation {
            word: (1..=n).rev().collect(),
        }
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (1..=n).collect();
        let mut out = vec![Permutation { word: cur.clone() }];
        while next_permutation(&mut cur) {
            out.push(Permutation { word: cur.clone() });
        }
        out
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    /// `w(i)` for `1 <= i <= n`.
    pub fn get(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.word;
        let mut count = 0;
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                if w[a] > w[b] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (k, &v) in self.word.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Permutation { word: inv }
    }

    /// `self * other`, i.e. `k -> self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n(), "cannot compose across different S_n");
        Permutation {
            word: other.word.iter().map(|&k| self.word[k - 1]).collect(),
        }
    }

    /// `w_0 * self`, the permutation whose reduced words label descending
    /// weak-order paths from `w_0` down to `self`.
    pub fn long_times(&self) -> Permutation {
        let n = self.n();
        Permutation {
            word: self.word.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    fn check_generator(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.n() {
            Err(Error::GeneratorOutOfRange {
                index: i,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    /// `w * s_i`: swaps positions `i` and `i + 1`.
    pub fn multiply_right_s(&self, i: usize) -> Result<Permutation> {
        self.check_generator(i)?;
        let mut word = self.word.clone();
        word.swap(i - 1, i);
        Ok(Permutation { word })
    }

    /// `s_i * w`: swaps the values `i` and `i + 1`.
    pub fn multiply_left_s(&self, i: usize) -> Result<Permutation> {
        self.check_generator(i)?;
        let word = self
            .word
            .iter()
            .map(|&v| match v {
                v if v == i => i + 1,
                v if v == i + 1 => i,
                v => v,
            })
            .collect();
        Ok(Permutation { word })
    }

    /// `length(w s_i) < length(w)`, i.e. `w(i) > w(i+1)`.
    pub fn has_right_descent(&self, i: usize) -> Result<bool> {
        self.check_generator(i)?;
        Ok(self.word[i - 1] > self.word[i])
    }

    /// `length(s_i w) < length(w)`, i.e. `i + 1` appears before `i`.
    pub fn has_left_descent(&self, i: usize) -> Result<bool> {
        self.check_generator(i)?;
        let pos = |v: usize| self.word.iter().position(|&x| x == v).unwrap();
        Ok(pos(i + 1) < pos(i))
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (1..self.n())
            .filter(|&i| self.word[i - 1] > self.word[i])
            .collect()
    }

    pub fn left_descents(&self) -> Vec<usize> {
        let inv = self.inverse();
        (1..self.n())
            .filter(|&i| inv.word[i - 1] > inv.word[i])
            .collect()
    }

    /// The lexicographically first reduced word for `self`, reading the
    /// letter `1` as smallest. Built greedily by peeling off the smallest
    /// left descent.
    pub fn lex_first_reduced_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.length());
        let mut v = self.clone();
        while let Some(&i) = v.left_descents().first() {
            letters.push(i);
            v = v.multiply_left_s(i).expect("descent index is in range");
        }
        Word(letters)
    }

    /// Every reduced word for `self`, provided `length(self) <= bound`.
    pub fn all_reduced_words(&self, bound: usize) -> Result<BTreeSet<Word>> {
        let len = self.length();
        if len > bound {
            return Err(Error::BoundExceeded {
                what: "length of permutation",
                value: len,
                bound,
            });
        }
        let mut out = BTreeSet::new();
        let mut prefix = Vec::with_capacity(len);
        collect_reduced_words(self, &mut prefix, &mut out);
        Ok(out)
    }

    /// The Rothe diagram `{(i, j) : j < w(i), w^{-1}(j) > i}`, row-major.
    pub fn rothe_diagram(&self) -> Vec<(usize, usize)> {
        let inv = self.inverse();
        let n = self.n();
        let mut cells = Vec::new();
        for i in 1..=n {
            for j in 1..self.get(i) {
                if inv.get(j) > i {
                    cells.push((i, j));
                }
            }
        }
        cells
    }

    /// Whether the Rothe diagram is a Young diagram (left-justified rows of
    /// weakly decreasing length).
    pub fn is_dominant(&self) -> bool {
        let n = self.n();
        let mut rows = vec![Vec::new(); n + 1];
        for (i, j) in self.rothe_diagram() {
            rows[i].push(j);
        }
        let mut prev = usize::MAX;
        for row in rows.iter().skip(1) {
            let len = row.len();
            if row.iter().enumerate().any(|(k, &j)| j != k + 1) || len > prev {
                return false;
            }
            prev = len;
        }
        true
    }
}

fn collect_reduced_words(v: &Permutation, prefix: &mut Vec<usize>, out: &mut BTreeSet<Word>) {
    let descents = v.left_descents();
    if descents.is_empty() {
        out.insert(Word(prefix.clone()));
        return;
    }
    for i in descents {
        prefix.push(i);
        let rest = v.multiply_left_s(i).expect("descent index is in range");
        collect_reduced_words(&rest, prefix, out);
        prefix.pop();
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

fn format_word(word: &[usize]) -> String {
    if word.iter().all(|&v| v <= 9) {
        word.iter().map(|v| v.to_string()).collect()
    } else {
        word.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Compact digits when `n <= 9`, comma-separated otherwise.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(&self.word))
    }
}

/// Accepts `13865742` (one digit per entry) or `1,3,8,6,5,7,4,2`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let word: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad permutation entry {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad permutation digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        if word.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        Permutation::new(word)
    }
}

/// A word `(i_1, ..., i_k)` standing for the product `s_{i_1} ... s_{i_k}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The product `s_{i_1} ... s_{i_k}` in `S_n`.
    pub fn product(&self, n: usize) -> Result<Permutation> {
        self.0
            .iter()
            .try_fold(Permutation::identity(n), |acc, &i| acc.multiply_right_s(i))
    }

    /// Whether this word is a reduced word for `v`.
    pub fn is_reduced_for(&self, v: &Permutation) -> bool {
        self.len() == v.length() && self.product(v.n()).is_ok_and(|p| &p == v)
    }

    /// The permutations visited by the descending path `w_0, w_0 s_{i_1},
    /// w_0 s_{i_1} s_{i_2}, ...`; fails unless every step goes down in weak
    /// order.
    pub fn descending_path(&self, n: usize) -> Result<Vec<Permutation>> {
        let mut path = vec![Permutation::long(n)];
        for &i in &self.0 {
            let cur = path.last().unwrap();
            if !cur.has_right_descent(i)? {
                return Err(Error::NonReducedWord(self.to_string()));
            }
            let next = cur.multiply_right_s(i)?;
            path.push(next);
        }
        Ok(path)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Comma-separated letters, optionally parenthesised; `""` and `"()"` are the
/// empty word.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if s.is_empty() {
            return Ok(Word::default());
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad word letter {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(Permutation::identity(4).length(), 0);
        assert_eq!(p("321").length(), 3);
        assert_eq!(p("13865742").length(), 14);
    }

    #[test]
    fn right_multiplication_swaps_positions() {
        assert_eq!(p("321").multiply_right_s(2).unwrap(), p("312"));
        assert_eq!(p("13865742").multiply_right_s(3).unwrap(), p("13685742"));
        assert_eq!(p("123").multiply_right_s(1).unwrap(), p("213"));
        assert!(matches!(
            p("123").multiply_right_s(3),
            Err(Error::GeneratorOutOfRange { index: 3, n: 3 })
        ));
        assert!(p("123").multiply_right_s(0).is_err());
    }

    #[test]
    fn descents() {
        assert!(Permutation::long(3).has_right_descent(1).unwrap());
        for i in 1..5 {
            assert!(!Permutation::identity(5).has_right_descent(i).unwrap());
        }
        assert!(p("13685742").has_right_descent(4).unwrap());
        assert!(p("12").has_right_descent(2).is_err());
    }

    #[test]
    fn long_permutation() {
        assert_eq!(Permutation::long(3), p("321"));
        assert_eq!(Permutation::long(1), p("1"));
        assert_eq!(Permutation::long(8), p("87654321"));
    }

    #[test]
    fn lex_first_words_from_worked_examples() {
        assert_eq!(
            Permutation::long(4).lex_first_reduced_word(),
            Word(vec![1, 2, 1, 3, 2, 1])
        );
        let v = p("13685742");
        assert_eq!(
            v.long_times().lex_first_reduced_word(),
            Word(vec![2, 1, 3, 5, 4, 3, 2, 1, 7, 6, 5, 4, 3, 2, 1])
        );
        let vs4 = v.multiply_right_s(4).unwrap();
        assert_eq!(
            vs4.long_times().lex_first_reduced_word(),
            Word(vec![2, 1, 3, 2, 5, 4, 3, 2, 1, 7, 6, 5, 4, 3, 2, 1])
        );
        assert!(Permutation::identity(3).lex_first_reduced_word().is_empty());
    }

    #[test]
    fn reduced_word_sets() {
        let id = Permutation::identity(3);
        assert_eq!(
            id.all_reduced_words(12)
                .unwrap()
                .into_iter()
                .collect::<Vec<_>>(),
            vec![Word::default()]
        );
        let w0 = Permutation::long(3);
        let words: Vec<_> = w0.all_reduced_words(12).unwrap().into_iter().collect();
        assert_eq!(words, vec![Word(vec![1, 2, 1]), Word(vec![2, 1, 2])]);
        // 6! / (5*3*1*3*1*1): standard tableaux of the staircase shape (3,2,1).
        assert_eq!(
            Permutation::long(4).all_reduced_words(12).unwrap().len(),
            16
        );
        assert!(matches!(
            Permutation::long(6).all_reduced_words(12),
            Err(Error::BoundExceeded { value: 15, .. })
        ));
    }

    #[test]
    fn dominance() {
        for n in 1..6 {
            assert!(Permutation::long(n).is_dominant());
            assert!(Permutation::identity(n).is_dominant());
        }
        assert!(!p("132").is_dominant());
        assert!(p("231").is_dominant());
        assert!(p("312").is_dominant());
    }

    #[test]
    fn parsing() {
        assert_eq!(p("1,3,2"), p("132"));
        let big: Permutation = "10,9,8,7,6,5,4,3,2,1".parse().unwrap();
        assert_eq!(big, Permutation::long(10));
        assert_eq!(big.to_string(), "10,9,8,7,6,5,4,3,2,1");
        assert!("122".parse::<Permutation>().is_err());
        assert!("1x3".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
        assert_eq!("2,1,2".parse::<Word>().unwrap(), Word(vec![2, 1, 2]));
        assert_eq!("".parse::<Word>().unwrap(), Word::default());
        assert_eq!("(1,2)".parse::<Word>().unwrap(), Word(vec![1, 2]));
    }

    #[test]
    fn all_permutations() {
        assert_eq!(Permutation::all(1).len(), 1);
        assert_eq!(Permutation::all(4).len(), 24);
        let s3: Vec<String> = Permutation::all(3).iter().map(|w| w.to_string()).collect();
        assert_eq!(s3, ["123", "132", "213", "231", "312", "321"]);
    }

    #[test]
    fn descending_path_rejects_non_reduced() {
        let path = Word(vec![1, 2, 1]).descending_path(3).unwrap();
        assert_eq!(path.last().unwrap(), &Permutation::identity(3));
        assert!(matches!(
            Word(vec![1, 1]).descending_path(3),
            Err(Error::NonReducedWord(_))
        ));
    }
}
