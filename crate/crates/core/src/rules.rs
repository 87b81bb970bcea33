//! Rewrite rules on signed words: negate, phase, normalize and collapse.

use crate::token::{Kind, Token, I, LAMBDA};
use crate::word::{Sign, SignedWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Step {
    Shrink,
    Negate,
    Clean,
    Phase,
    Normalize,
    Collapse,
    Merge,
    DropRotations,
    Group,
}

impl Step {
    pub fn name(self) -> &'static str {
        match self {
            Step::Shrink => "shrink",
            Step::Negate => "negate",
            Step::Clean => "clean",
            Step::Phase => "phase",
            Step::Normalize => "normalize",
            Step::Collapse => "collapse",
            Step::Merge => "merge",
            Step::DropRotations => "drop-rotations",
            Step::Group => "group",
        }
    }
}

/// A schema instance `pattern -> replacement`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub pattern: Vec<Token>,
    pub replacement: SignedWord,
    pub class: Step,
}

fn is_axis_minus_identity(t: Token) -> bool {
    t.is_minus_identity() && t.kind() != Kind::Ph
}

/// Whether the adjacent pair `a b` is rewritten to `b a`.
pub fn commutes_forward(a: Token, b: Token) -> bool {
    use Kind::*;
    let listed = matches!(
        (a.kind(), b.kind()),
        (X, Rx) | (Y, Ry) | (Z, Rz) | (T, Z) | (S, Z) | (S, T) | (S, Rz) | (T, Rz)
    );
    listed || (is_axis_minus_identity(b) && !is_axis_minus_identity(a) && !a.is_phase())
}

/// Rewrites subscripts `5..7` to `4` less with a sign flip, drops zero angles,
/// and with `drop_minus_identity` turns every `Q_4` into a sign flip.
/// Returns whether anything changed.
pub fn negate(w: &mut SignedWord, drop_minus_identity: bool) -> bool {
    let before = w.clone();
    let mut sign = w.sign;
    w.tokens.retain_mut(|t| {
        if !t.kind().is_subscripted() {
            return true;
        }
        match t.subscript() {
            0 => false,
            4 if drop_minus_identity => {
                sign = -sign;
                false
            }
            j if j >= 5 => {
                *t = Token::sub(t.kind(), j - 4);
                sign = -sign;
                true
            }
            _ => true,
        }
    });
    w.sign = sign;
    *w != before
}

/// Moves a phase lhs to the rhs as its inverse and merges every phase into one
/// token at the front.
pub fn phase(lhs: &mut Token, w: &mut SignedWord, drop_minus_identity: bool) -> bool {
    let before = (*lhs, w.clone());
    if lhs.is_phase() {
        w.tokens.insert(0, Token::sub(Kind::Ph, 8 - lhs.subscript()));
        *lhs = I;
    }
    let total: u32 = w.tokens.iter().filter(|t| t.is_phase()).map(|t| t.subscript() as u32).sum();
    w.tokens.retain(|t| !t.is_phase());
    if total % 8 != 0 {
        w.tokens.insert(0, Token::sub(Kind::Ph, (total % 8) as u8));
    }
    negate(w, drop_minus_identity);
    (*lhs, &*w) != (before.0, &before.1)
}

/// One leftmost commuting swap, or removal of an `I`.
pub fn normalize_once(w: &mut SignedWord) -> bool {
    if let Some(p) = w.tokens.iter().position(|&t| t == I) {
        w.tokens.remove(p);
        return true;
    }
    for p in 0..w.tokens.len().saturating_sub(1) {
        if commutes_forward(w.tokens[p], w.tokens[p + 1]) {
            w.tokens.swap(p, p + 1);
            return true;
        }
    }
    false
}

/// Merges the leftmost adjacent pair of equal-kind subscripted tokens.
pub fn collapse_once(w: &mut SignedWord) -> bool {
    collapse_at(w).is_some()
}

fn collapse_at(w: &mut SignedWord) -> Option<usize> {
    let t = &mut w.tokens;
    for p in 0..t.len().saturating_sub(1) {
        let (a, b) = (t[p], t[p + 1]);
        if a.kind().is_subscripted() && a.kind() == b.kind() {
            let k = (a.subscript() + b.subscript()) % 8;
            if k == 0 {
                t.drain(p..p + 2);
            } else {
                t[p] = Token::sub(a.kind(), k);
                t.remove(p + 1);
            }
            return Some(p);
        }
    }
    None
}

/// Result of canonicalizing `lhs = rhs`.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub lhs: Token,
    pub rhs: SignedWord,
    /// The rhs word as it looked at each stage, starting with the input.
    pub forms: Vec<Vec<Token>>,
    pub steps: Vec<Step>,
}

fn note(steps: &mut Vec<Step>, s: Step) {
    if !steps.contains(&s) {
        steps.push(s);
    }
}

fn push_form(forms: &mut Vec<Vec<Token>>, w: &SignedWord) {
    if forms.last() != Some(&w.tokens) {
        forms.push(w.tokens.clone());
    }
}

/// Applies negate, clean, phase, normalize and collapse until nothing changes.
///
/// With `drop_minus_identity` off, `Q_4` tokens are left alone; that keeps the
/// length-one identities among `X_4, Y_4, Z_4, P_4` intact.
pub fn canonicalize(lhs: Token, rhs: SignedWord, drop_minus_identity: bool) -> Canonical {
    let (mut lhs, mut w) = (lhs, rhs);
    let mut forms = vec![w.tokens.clone()];
    let mut steps = Vec::new();
    if drop_minus_identity && lhs.is_minus_identity() {
        lhs = I;
        w.sign = -w.sign;
        note(&mut steps, Step::Negate);
    }
    loop {
        let old = (lhs, w.clone());
        if lhs.kind().is_subscripted() && lhs.subscript() >= 5 {
            lhs = Token::sub(lhs.kind(), lhs.subscript() - 4);
            w.sign = -w.sign;
            note(&mut steps, Step::Negate);
        }
        let sign = w.sign;
        if negate(&mut w, drop_minus_identity) {
            note(&mut steps, Step::Negate);
            if w.sign != sign {
                note(&mut steps, Step::Clean);
            }
        }
        push_form(&mut forms, &w);
        if phase(&mut lhs, &mut w, drop_minus_identity) {
            note(&mut steps, Step::Phase);
        }
        push_form(&mut forms, &w);
        loop {
            let step = if normalize_once(&mut w) {
                Step::Normalize
            } else if collapse_once(&mut w) {
                Step::Collapse
            } else {
                break;
            };
            note(&mut steps, step);
            negate(&mut w, drop_minus_identity);
            push_form(&mut forms, &w);
        }
        if (lhs, &w) == (old.0, &old.1) {
            return Canonical { lhs, rhs: w, forms, steps };
        }
    }
}

/// One atomic base rewrite of a word (no lhs). Applies the first applicable of
/// negate, phase, normalize, collapse and reports the class and position.
pub fn base_step(w: &mut SignedWord) -> Option<(Step, usize)> {
    if let Some(p) = w.tokens.iter().position(|t| {
        t.kind().is_subscripted() && (t.subscript() == 0 || t.subscript() >= 4)
    }) {
        let t = w.tokens[p];
        match t.subscript() {
            0 => {
                w.tokens.remove(p);
            }
            4 => {
                w.tokens.remove(p);
                w.sign = -w.sign;
            }
            j => {
                w.tokens[p] = Token::sub(t.kind(), j - 4);
                w.sign = -w.sign;
            }
        }
        return Some((Step::Negate, p));
    }
    if let Some(p) = w.tokens.iter().skip(1).position(|t| t.is_phase()).map(|p| p + 1) {
        let t = w.tokens.remove(p);
        if w.tokens[0].is_phase() {
            let k = (w.tokens[0].subscript() + t.subscript()) % 8;
            w.tokens[0] = Token::sub(Kind::Ph, k);
        } else {
            w.tokens.insert(0, t);
        }
        return Some((Step::Phase, p));
    }
    if let Some(p) = w.tokens.iter().position(|&t| t == I) {
        w.tokens.remove(p);
        return Some((Step::Normalize, p));
    }
    for p in 0..w.tokens.len().saturating_sub(1) {
        if commutes_forward(w.tokens[p], w.tokens[p + 1]) {
            w.tokens.swap(p, p + 1);
            return Some((Step::Normalize, p));
        }
    }
    collapse_at(w).map(|p| (Step::Collapse, p))
}

const SUBSCRIPTED: [Kind; 4] = [Kind::Rx, Kind::Ry, Kind::Rz, Kind::Ph];

/// `Q_4 -> -I` and `Q_j -> -Q_{j-4}` for `j = 5..7`.
pub fn negate_rules() -> Vec<RewriteRule> {
    let mut out = Vec::new();
    for k in SUBSCRIPTED {
        for j in 4..8u8 {
            let rep = if j == 4 { vec![] } else { vec![Token::sub(k, j - 4)] };
            out.push(RewriteRule {
                pattern: vec![Token::sub(k, j)],
                replacement: SignedWord::new(Sign::Minus, rep),
                class: Step::Negate,
            });
        }
    }
    out
}

/// `P_j V -> V P_j` reversed: phases commute with every member of Λ.
pub fn phase_rules() -> Vec<RewriteRule> {
    let mut out = Vec::new();
    for j in 1..8u8 {
        let p = Token::sub(Kind::Ph, j);
        for v in LAMBDA {
            out.push(RewriteRule {
                pattern: vec![v, p],
                replacement: SignedWord::plus(vec![p, v]),
                class: Step::Phase,
            });
        }
    }
    out
}

/// Every instance over Λ of the commuting schema, plus `I I -> I` and `I -> ε`.
pub fn normalize_rules() -> Vec<RewriteRule> {
    let mut out = Vec::new();
    for a in LAMBDA {
        for b in LAMBDA {
            if commutes_forward(a, b) {
                out.push(RewriteRule {
                    pattern: vec![a, b],
                    replacement: SignedWord::plus(vec![b, a]),
                    class: Step::Normalize,
                });
            }
        }
    }
    out.push(RewriteRule { pattern: vec![I, I], replacement: SignedWord::plus(vec![I]), class: Step::Normalize });
    out.push(RewriteRule { pattern: vec![I], replacement: SignedWord::plus(vec![]), class: Step::Normalize });
    out
}

/// `Q_i Q_j -> Q_{(i+j) mod 8}` with `Q_0 = I`, for the four subscripted families.
pub fn collapse_rules() -> Vec<RewriteRule> {
    let mut out = Vec::new();
    for k in SUBSCRIPTED {
        for i in 1..8u8 {
            for j in 1..8u8 {
                let s = (i + j) % 8;
                let rep = if s == 0 { vec![] } else { vec![Token::sub(k, s)] };
                out.push(RewriteRule {
                    pattern: vec![Token::sub(k, i), Token::sub(k, j)],
                    replacement: SignedWord::plus(rep),
                    class: Step::Collapse,
                });
            }
        }
    }
    out
}
