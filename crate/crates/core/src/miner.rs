//! Exhaustive search for words over Λ whose product is again a member of Λ.

use rayon::prelude::*;

use crate::matrix::{token_matrix, eval_tokens, token_matrix_float, FloatMatrix};
use crate::token::{Token, LAMBDA, LAMBDA_LEN};
use crate::word::{Identity, SignedWord};
use crate::Error;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Mined pairs `(λ, word)` with a positive sign, ordered by length, then rhs, then lhs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawIdentitySet {
    pub identities: Vec<Identity>,
    /// Float matches that failed exact re-verification and were discarded.
    pub false_positives: usize,
}

impl RawIdentitySet {
    pub fn from_identities(mut identities: Vec<Identity>) -> RawIdentitySet {
        sort_raw(&mut identities);
        RawIdentitySet { identities, false_positives: 0 }
    }

    pub fn max_len(&self) -> usize {
        self.identities.iter().map(Identity::len).max().unwrap_or(0)
    }

    /// Number of pairs of each length, index 0 unused.
    pub fn counts_by_length(&self) -> Vec<usize> {
        let mut c = vec![0; self.max_len() + 1];
        for id in &self.identities {
            c[id.len()] += 1;
        }
        c
    }

    pub fn of_length(&self, n: usize) -> impl Iterator<Item = &Identity> {
        self.identities.iter().filter(move |id| id.len() == n)
    }
}

fn sort_raw(ids: &mut [Identity]) {
    ids.sort_by(|a, b| {
        (a.len(), &a.rhs.tokens, a.lhs).cmp(&(b.len(), &b.rhs.tokens, b.lhs))
    });
}

/// Running totals: entry `n - 1` counts everything up to length `n`.
pub fn count_table(counts_by_length: &[usize]) -> Vec<usize> {
    counts_by_length
        .iter()
        .skip(1)
        .scan(0, |acc, &c| {
            *acc += c;
            Some(*acc)
        })
        .collect()
}

struct Search<'a> {
    mats: &'a [FloatMatrix; LAMBDA_LEN],
    max_len: usize,
    eps: f64,
    word: Vec<Token>,
    out: Vec<(Token, Vec<Token>)>,
}

impl Search<'_> {
    fn visit(&mut self, prefix: FloatMatrix) {
        for (i, m) in self.mats.iter().enumerate() {
            if close(&prefix, m, self.eps) {
                self.out.push((LAMBDA[i], self.word.clone()));
            }
        }
        if self.word.len() == self.max_len {
            return;
        }
        for (i, &t) in LAMBDA.iter().enumerate() {
            self.word.push(t);
            self.visit(prefix * self.mats[i]);
            self.word.pop();
        }
    }
}

#[inline]
fn close(a: &FloatMatrix, b: &FloatMatrix, eps: f64) -> bool {
    a.m.iter().flatten().zip(b.m.iter().flatten()).all(|(x, y)| (x - y).norm() <= eps)
}

/// Mines every length `1..=max_len`. Words are enumerated depth first so each
/// extension costs one multiply; the first token partitions the work.
pub fn mine(max_len: usize, eps: f64) -> Result<RawIdentitySet, Error> {
    if max_len < 1 {
        return Err(Error::Argument("max length must be at least 1".into()));
    }
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::Argument(format!("tolerance must be positive, got {eps}")));
    }
    let mats: [FloatMatrix; LAMBDA_LEN] = LAMBDA.map(token_matrix_float);
    let found: Vec<Vec<(Token, Vec<Token>)>> = (0..LAMBDA_LEN)
        .into_par_iter()
        .map(|first| {
            let mut s = Search { mats: &mats, max_len, eps, word: vec![LAMBDA[first]], out: Vec::new() };
            s.visit(mats[first]);
            s.out
        })
        .collect();

    let checked: Vec<(Identity, bool)> = found
        .into_par_iter()
        .flatten()
        .map(|(lhs, w)| {
            let ok = token_matrix(lhs) == eval_tokens(&w);
            (Identity::new(lhs, SignedWord::plus(w)), ok)
        })
        .collect();
    let false_positives = checked.iter().filter(|(_, ok)| !ok).count();
    let mut identities: Vec<Identity> = checked.into_iter().filter(|(_, ok)| *ok).map(|(id, _)| id).collect();
    sort_raw(&mut identities);
    Ok(RawIdentitySet { identities, false_positives })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::token::Kind;

    #[test]
    fn length_one() {
        let s = mine(1, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(s.counts_by_length(), vec![0, 47]);
        let p4 = SignedWord::plus(vec![Token::sub(Kind::Ph, 4)]);
        assert!(s.identities.iter().any(|id| id.lhs == Token::sub(Kind::Rx, 4) && id.rhs == p4));
        let cross = s.identities.iter().filter(|id| id.rhs.tokens[0] != id.lhs).count();
        assert_eq!(cross, 12);
        assert_eq!(s.false_positives, 0);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(mine(0, 1e-9).is_err());
        assert!(mine(1, 0.0).is_err());
    }

    #[test]
    fn cumulative() {
        assert_eq!(count_table(&[0, 47, 625, 15068]), vec![47, 672, 15740]);
        assert!(count_table(&[0]).is_empty());
    }
}
