//! Greedy peephole simplification of gate words.

use std::collections::HashMap;
use std::fmt;

use crate::rules::{base_step, Step};
use crate::token::{Kind, Token, I};
use crate::word::{Identity, Sign, SignedWord};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// rhs occurrence replaced by the lhs token.
    Reduce,
    /// lhs token replaced by the rhs word.
    Expand,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Applied {
    Base(Step),
    Identity(Identity),
}

impl fmt::Display for Applied {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Applied::Base(s) => f.write_str(s.name()),
            Applied::Identity(id) => write!(f, "{}", crate::io::format_identity(id)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub applied: Applied,
    pub position: usize,
    pub before: SignedWord,
    pub after: SignedWord,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplifyTrace {
    pub steps: Vec<TraceStep>,
}

impl fmt::Display for SimplifyTrace {
    /// Arrow notation, one rewrite per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{}  --[{} @{}]-->  {}", s.before, s.applied, s.position, s.after)?;
        }
        Ok(())
    }
}

fn lhs_word(lhs: Token) -> Vec<Token> {
    if lhs == I {
        vec![]
    } else {
        vec![lhs]
    }
}

/// Rewrites with one identity at `pos`. The identity must be plain.
pub fn apply_identity(w: &SignedWord, id: &Identity, pos: usize, dir: Direction) -> Result<SignedWord, Error> {
    let (from, to) = match dir {
        Direction::Reduce => (id.rhs.tokens.clone(), lhs_word(id.lhs)),
        Direction::Expand => (lhs_word(id.lhs), id.rhs.tokens.clone()),
    };
    let end = pos + from.len();
    if id.grouped || end > w.tokens.len() || w.tokens[pos..end] != from[..] {
        return Err(Error::Apply(format!("{} does not match at position {pos}", crate::io::format_identity(id))));
    }
    let mut tokens = w.tokens[..pos].to_vec();
    tokens.extend(to);
    tokens.extend_from_slice(&w.tokens[end..]);
    Ok(SignedWord::new(w.sign * id.rhs.sign, tokens))
}

/// A length-reducing rewrite `pattern -> sign · replacement` taken from an identity.
#[derive(Clone, Debug)]
struct Reduction {
    replacement: Vec<Token>,
    sign: Sign,
    source: Identity,
}

/// Plain identities usable in the reducing direction, indexed by pattern.
#[derive(Clone, Debug, Default)]
pub struct Simplifier {
    by_len: Vec<HashMap<Vec<Token>, Reduction>>,
    /// Same-length substitutions `t -> ± P_j u` from identities `λ = ± P_j t`.
    swaps: HashMap<Token, Vec<Reduction>>,
}

impl Simplifier {
    /// Grouped identities are expanded; identities that would not shorten a
    /// word are ignored. Earlier identities win ties.
    ///
    /// An identity `λ = ± P_j W` also yields `W -> ± P_{8-j} λ`, since the
    /// phase commutes with everything.
    pub fn new<'a, It: IntoIterator<Item = &'a Identity>>(db: It) -> Simplifier {
        let mut s = Simplifier::default();
        for id in db.into_iter().flat_map(Identity::instances) {
            let sign = id.rhs.sign;
            s.add(id.rhs.tokens.clone(), lhs_word(id.lhs), sign, &id);
            if let Some((&p, rest)) = id.rhs.tokens.split_first() {
                if p.is_phase() && !rest.iter().any(|t| t.is_phase()) {
                    let mut rep = vec![Token::sub(Kind::Ph, 8 - p.subscript())];
                    rep.extend(lhs_word(id.lhs));
                    s.add(rest.to_vec(), rep, sign, &id);
                    if let ([t], false) = (rest, id.lhs == I) {
                        let out = vec![Token::sub(Kind::Ph, p.subscript()), *t];
                        s.swaps.entry(id.lhs).or_default().push(Reduction { replacement: out, sign, source: id.clone() });
                        let back = vec![Token::sub(Kind::Ph, 8 - p.subscript()), id.lhs];
                        s.swaps.entry(*t).or_default().push(Reduction { replacement: back, sign, source: id.clone() });
                    }
                }
            }
        }
        s
    }

    fn add(&mut self, pattern: Vec<Token>, replacement: Vec<Token>, sign: Sign, source: &Identity) {
        let n = pattern.len();
        if n <= replacement.len() {
            return;
        }
        if self.by_len.len() <= n {
            self.by_len.resize_with(n + 1, HashMap::new);
        }
        self.by_len[n].entry(pattern).or_insert_with(|| Reduction { replacement, sign, source: source.clone() });
    }

    /// Longest pattern first, then leftmost.
    fn find(&self, w: &SignedWord) -> Option<(usize, usize, &Reduction)> {
        for n in (1..self.by_len.len()).rev() {
            if n > w.len() {
                continue;
            }
            for (p, win) in w.tokens.windows(n).enumerate() {
                if let Some(r) = self.by_len[n].get(win) {
                    return Some((p, n, r));
                }
            }
        }
        None
    }

    fn greedy(&self, cur: &mut SignedWord, trace: &mut SimplifyTrace) {
        loop {
            let before = cur.clone();
            if let Some((step, p)) = base_step(cur) {
                trace.steps.push(TraceStep { applied: Applied::Base(step), position: p, before, after: cur.clone() });
                continue;
            }
            let Some((p, n, r)) = self.find(cur) else { return };
            cur.tokens.splice(p..p + n, r.replacement.iter().copied());
            cur.sign = cur.sign * r.sign;
            trace.steps.push(TraceStep { applied: Applied::Identity(r.source.clone()), position: p, before, after: cur.clone() });
        }
    }

    /// Base normal form and identity reductions to a fixpoint. When stuck, a
    /// single token may be traded for a phase and another token if greedy
    /// reduction then ends strictly shorter; the first such trade (leftmost,
    /// database order) is kept.
    pub fn simplify(&self, w: &SignedWord) -> (SignedWord, SimplifyTrace) {
        let mut cur = w.clone();
        let mut trace = SimplifyTrace::default();
        self.greedy(&mut cur, &mut trace);
        'outer: loop {
            for p in 0..cur.len() {
                for r in self.swaps.get(&cur.tokens[p]).into_iter().flatten() {
                    let mut next = cur.clone();
                    next.tokens.splice(p..p + 1, r.replacement.iter().copied());
                    next.sign = next.sign * r.sign;
                    let mut sub = SimplifyTrace::default();
                    sub.steps.push(TraceStep { applied: Applied::Identity(r.source.clone()), position: p, before: cur.clone(), after: next.clone() });
                    self.greedy(&mut next, &mut sub);
                    if next.len() < cur.len() {
                        trace.steps.extend(sub.steps);
                        cur = next;
                        continue 'outer;
                    }
                }
            }
            return (cur, trace);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_identity_line;
    use crate::token::{X, Y};

    #[test]
    fn apply_directions() {
        let z2 = parse_identity_line("Z2 = - X Y").unwrap();
        let w = SignedWord::plus(vec![X, Y, X]);
        let r = apply_identity(&w, &z2, 0, Direction::Reduce).unwrap();
        assert_eq!(r.to_string(), "- Z2 X");
        let z2b = parse_identity_line("Z2 = Y X").unwrap();
        let e = apply_identity(&r, &z2b, 0, Direction::Expand).unwrap();
        assert_eq!(e.to_string(), "- Y X X");
        let xx = parse_identity_line("I = X X").unwrap();
        assert_eq!(apply_identity(&SignedWord::plus(vec![X, X]), &xx, 0, Direction::Reduce).unwrap(), SignedWord::new(Sign::Plus, vec![]));
        assert!(apply_identity(&w, &xx, 0, Direction::Reduce).is_err());
    }
}
