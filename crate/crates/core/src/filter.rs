//! The filter pipeline: raw mined pairs in, canonical identity list out.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::miner::RawIdentitySet;
use crate::rules::{canonicalize, Step};
use crate::token::{Axis, Token, I};
use crate::word::{Identity, Sign, SignedWord};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FilterConfig {
    pub drop_rotations: bool,
    pub grouping: bool,
}

impl FilterConfig {
    pub const KEEP_ROTATIONS: FilterConfig = FilterConfig { drop_rotations: false, grouping: false };
    pub const DROP_ROTATIONS: FilterConfig = FilterConfig { drop_rotations: true, grouping: false };
    pub const ALL: FilterConfig = FilterConfig { drop_rotations: true, grouping: true };
}

impl Default for FilterConfig {
    fn default() -> FilterConfig {
        FilterConfig::ALL
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredEntry {
    pub identity: Identity,
    /// Length of the mined words this identity came from.
    pub origin_len: usize,
    /// Mined pairs that canonicalize to this identity.
    pub ancestors: Vec<Identity>,
    pub provenance: Vec<Step>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FilteredIdentitySet {
    pub entries: Vec<FilteredEntry>,
}

impl FilteredIdentitySet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn identities(&self) -> impl Iterator<Item = &Identity> {
        self.entries.iter().map(|e| &e.identity)
    }

    /// Cumulative counts by origin length, entry `n - 1` for lengths up to `n`.
    pub fn count_table(&self) -> Vec<usize> {
        let max = self.entries.iter().map(|e| e.origin_len).max().unwrap_or(0);
        let mut by_len = vec![0; max + 1];
        for e in &self.entries {
            by_len[e.origin_len] += 1;
        }
        crate::miner::count_table(&by_len)
    }

    /// All concrete identities, grouped ones expanded.
    pub fn instances(&self) -> Vec<Identity> {
        self.identities().flat_map(Identity::instances).collect()
    }
}

/// Mined words of lengths `2..d`; a longer word containing one of them can be
/// shortened by a shorter identity.
pub struct ShrinkIndex {
    words: HashSet<Vec<Token>>,
}

impl ShrinkIndex {
    pub fn new(raw: &RawIdentitySet) -> ShrinkIndex {
        ShrinkIndex { words: raw.identities.iter().filter(|id| id.len() >= 2).map(|id| id.rhs.tokens.clone()).collect() }
    }

    pub fn from_words<I: IntoIterator<Item = Vec<Token>>>(words: I) -> ShrinkIndex {
        ShrinkIndex { words: words.into_iter().filter(|w| w.len() >= 2).collect() }
    }

    /// True if some window of length `2..d` of `w` is a known word.
    pub fn shortens(&self, w: &[Token], d: usize) -> bool {
        (2..d).any(|m| w.windows(m).any(|win| self.words.contains(win)))
    }
}

/// Drop decision for a rhs of length `d >= 3`: true when any stage of its
/// rewriting contains a shorter mined word.
pub fn step_shrink(forms: &[Vec<Token>], d: usize, index: &ShrinkIndex) -> bool {
    d >= 3 && forms.iter().any(|f| index.shortens(f, d))
}

/// Tautologies: `a = a` and `I = ` (empty or the literal `I`).
pub fn is_trivial(lhs: Token, rhs: &SignedWord) -> bool {
    rhs.sign == Sign::Plus && (rhs.tokens == [lhs] || (lhs == I && (rhs.tokens.is_empty() || rhs.tokens == [I])))
}

/// Both sides consist of `I` and `X_j`, `Y_j`, `Z_j` only.
pub fn is_rotation_only(id: &Identity) -> bool {
    id.lhs.is_rotation() && id.rhs.tokens.iter().all(|t| t.is_rotation())
}

#[derive(Default, Clone)]
struct Acc {
    ancestors: Vec<Identity>,
    steps: Vec<Step>,
}

type Key = (Token, SignedWord);

struct Candidate {
    lhs: Token,
    rhs: SignedWord,
    acc: Acc,
}

/// One pass of steps 1–8 over the identities of one length.
fn pass(cands: Vec<Candidate>, n: usize, index: &ShrinkIndex, seen: &HashSet<Key>, cfg: FilterConfig) -> BTreeMap<Key, Acc> {
    let rewritten: Vec<Option<Candidate>> = cands
        .into_par_iter()
        .map(|c| {
            let can = canonicalize(c.lhs, c.rhs, n >= 2);
            if step_shrink(&can.forms, n, index) {
                return None;
            }
            let mut acc = c.acc;
            for s in can.steps {
                if !acc.steps.contains(&s) {
                    acc.steps.push(s);
                }
            }
            Some(Candidate { lhs: can.lhs, rhs: can.rhs, acc })
        })
        .collect();
    let mut out: BTreeMap<Key, Acc> = BTreeMap::new();
    for c in rewritten.into_iter().flatten() {
        if is_trivial(c.lhs, &c.rhs) {
            continue;
        }
        let key = (c.lhs, c.rhs);
        if seen.contains(&key) {
            continue;
        }
        if cfg.drop_rotations && is_rotation_only(&Identity::new(key.0, key.1.clone())) {
            continue;
        }
        let slot = out.entry(key).or_default();
        slot.ancestors.extend(c.acc.ancestors);
        for s in c.acc.steps {
            if !slot.steps.contains(&s) {
                slot.steps.push(s);
            }
        }
    }
    out
}

/// Runs the filter on a raw set covering lengths `1..=max` without gaps.
pub fn filter(raw: &RawIdentitySet, cfg: FilterConfig) -> Result<FilteredIdentitySet, Error> {
    let counts = raw.counts_by_length();
    if let Some(n) = (1..counts.len()).find(|&n| counts[n] == 0) {
        return Err(Error::Argument(format!("raw identities of length {n} are missing")));
    }
    let index = ShrinkIndex::new(raw);
    let mut seen: HashSet<Key> = HashSet::new();
    let mut entries = Vec::new();
    for n in 1..counts.len() {
        let first: Vec<Candidate> = raw
            .of_length(n)
            .map(|id| Candidate { lhs: id.lhs, rhs: id.rhs.clone(), acc: Acc { ancestors: vec![id.clone()], steps: vec![] } })
            .collect();
        let mut cur = pass(first, n, &index, &seen, cfg);
        loop {
            let again: Vec<Candidate> = cur
                .iter()
                .map(|((l, r), a)| Candidate { lhs: *l, rhs: r.clone(), acc: a.clone() })
                .collect();
            let next = pass(again, n, &index, &seen, cfg);
            if next.keys().eq(cur.keys()) {
                break;
            }
            cur = next;
        }
        for ((lhs, rhs), mut acc) in cur {
            seen.insert((lhs, rhs.clone()));
            acc.steps.push(Step::Merge);
            if cfg.drop_rotations {
                acc.steps.push(Step::DropRotations);
            }
            entries.push(FilteredEntry {
                identity: Identity::new(lhs, rhs),
                origin_len: n,
                ancestors: acc.ancestors,
                provenance: acc.steps,
            });
        }
    }
    let mut set = FilteredIdentitySet { entries };
    if cfg.grouping {
        set = group_cyclic(set);
    }
    Ok(set)
}

/// Axis playing the role of `A`: the lhs axis, or the first axis in the rhs.
pub fn lead_axis(id: &Identity) -> Option<Axis> {
    std::iter::once(&id.lhs).chain(&id.rhs.tokens).find_map(|t| t.kind().axis())
}

fn cycle_pair(a: &Identity) -> (Token, Vec<Token>) {
    (a.lhs.cycle(), a.rhs.tokens.iter().map(|t| t.cycle()).collect())
}

/// Replaces each complete cyclic orbit of axis-only identities by one
/// identity over `A B C`.
///
/// The two non-representative members of an orbit stay listed on their own
/// when some mined ancestor of theirs lacks mined, surviving cyclic images or
/// involves a phase; length one is exempt.
pub fn group_cyclic(set: FilteredIdentitySet) -> FilteredIdentitySet {
    let survivors: HashSet<(Token, Vec<Token>)> = set
        .entries
        .iter()
        .flat_map(|e| e.ancestors.iter().map(|a| (a.lhs, a.rhs.tokens.clone())))
        .collect();
    let position: HashMap<Identity, usize> =
        set.entries.iter().enumerate().map(|(i, e)| (e.identity.clone(), i)).collect();
    let stays_plain = |e: &FilteredEntry| {
        e.origin_len > 1
            && e.ancestors.iter().any(|a| {
                let involves_phase = std::iter::once(&a.lhs).chain(&a.rhs.tokens).any(|t| t.is_phase());
                let once = cycle_pair(a);
                let twice = cycle_pair(&Identity::new(once.0, SignedWord::plus(once.1.clone())));
                involves_phase || !survivors.contains(&once) || !survivors.contains(&twice)
            })
    };

    let mut done = vec![false; set.entries.len()];
    let mut out = Vec::new();
    for i in 0..set.entries.len() {
        if done[i] {
            continue;
        }
        let e = &set.entries[i];
        let orbit = [e.identity.clone(), e.identity.cycle(), e.identity.cycle().cycle()];
        let members: Option<Vec<usize>> = orbit.iter().map(|o| position.get(o).copied()).collect();
        let groupable = e.identity.is_axis_only() && lead_axis(&e.identity).is_some();
        let members = match members {
            Some(m) if groupable => m,
            _ => {
                done[i] = true;
                out.push(e.clone());
                continue;
            }
        };
        let rep = *members.iter().find(|&&m| lead_axis(&set.entries[m].identity) == Some(Axis::X)).expect("orbit has an X member");
        let mut grouped = set.entries[rep].clone();
        grouped.identity.grouped = true;
        for &m in &members {
            done[m] = true;
            if m != rep {
                grouped.ancestors.extend(set.entries[m].ancestors.iter().cloned());
                if stays_plain(&set.entries[m]) {
                    out.push(set.entries[m].clone());
                }
            }
        }
        grouped.provenance.push(Step::Group);
        out.push(grouped);
    }
    out.sort_by(|a, b| (a.origin_len, &a.identity).cmp(&(b.origin_len, &b.identity)));
    FilteredIdentitySet { entries: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::token::{Kind, H, X};

    #[test]
    fn trivial_identities() {
        assert!(is_trivial(X, &SignedWord::plus(vec![X])));
        assert!(!is_trivial(X, &SignedWord::new(Sign::Minus, vec![X])));
        assert!(is_trivial(I, &SignedWord::plus(vec![])));
        assert!(!is_trivial(I, &SignedWord::plus(vec![H, H])));
    }

    #[test]
    fn rotation_only() {
        let r = |k, j| Token::sub(k, j);
        let id = Identity::new(r(Kind::Ry, 1), SignedWord::plus(vec![r(Kind::Rx, 2), r(Kind::Ry, 3), r(Kind::Rx, 2)]));
        assert!(is_rotation_only(&id));
        assert!(!is_rotation_only(&Identity::new(r(Kind::Rz, 1), SignedWord::plus(vec![H, r(Kind::Rx, 1), H]))));
        assert!(!is_rotation_only(&Identity::new(I, SignedWord::plus(vec![X, X]))));
    }

    #[test]
    fn shrink_examples() {
        let index = ShrinkIndex::from_words([vec![H, H], vec![X, X]]);
        assert!(step_shrink(&[vec![H, H, H]], 3, &index));
        assert!(step_shrink(&[vec![X, X, X]], 3, &index));
        let z1 = vec![H, Token::sub(Kind::Rx, 1), H];
        assert!(!step_shrink(&[z1], 3, &index));
    }

    #[test]
    fn gaps_are_rejected() {
        let raw = RawIdentitySet::from_identities(vec![Identity::new(I, SignedWord::plus(vec![H, H]))]);
        assert!(filter(&raw, FilterConfig::ALL).is_err());
    }
}
