use std::cmp::Ordering;
use std::ops::{Mul, Neg};

use crate::matrix::{eval_word, token_matrix, ExactUnitary};
use crate::token::{Kind, Token};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, o: Sign) -> Sign {
        if self == o {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// A global sign and a product of tokens read left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SignedWord {
    pub sign: Sign,
    pub tokens: Vec<Token>,
}

impl SignedWord {
    pub fn new(sign: Sign, tokens: Vec<Token>) -> SignedWord {
        SignedWord { sign, tokens }
    }

    pub fn plus(tokens: Vec<Token>) -> SignedWord {
        SignedWord { sign: Sign::Plus, tokens }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn cycle(&self) -> SignedWord {
        SignedWord { sign: self.sign, tokens: self.tokens.iter().map(|t| t.cycle()).collect() }
    }
}

impl std::fmt::Display for SignedWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.sign == Sign::Minus {
            f.write_str("- ")?;
        }
        if self.tokens.is_empty() {
            return f.write_str("I");
        }
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// `lhs = rhs`. A grouped identity is stored through its instance with `A = X`,
/// `B = Y`, `C = Z` and stands for all three cyclic substitutions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: Token,
    pub rhs: SignedWord,
    pub grouped: bool,
}

impl Identity {
    pub fn new(lhs: Token, rhs: SignedWord) -> Identity {
        Identity { lhs, rhs, grouped: false }
    }

    /// Token count of the rhs.
    pub fn len(&self) -> usize {
        self.rhs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rhs.is_empty()
    }

    /// Image under the substitution X -> Y -> Z -> X.
    pub fn cycle(&self) -> Identity {
        Identity { lhs: self.lhs.cycle(), rhs: self.rhs.cycle(), grouped: self.grouped }
    }

    /// The concrete identities this one stands for.
    pub fn instances(&self) -> Vec<Identity> {
        let base = Identity { grouped: false, ..self.clone() };
        if !self.grouped {
            return vec![base];
        }
        let second = base.cycle();
        let third = second.cycle();
        vec![base, second, third]
    }

    /// Exact check of every instance.
    pub fn verify(&self) -> bool {
        self.instances().iter().all(|id| token_matrix(id.lhs) == eval_word(&id.rhs))
    }

    pub fn lhs_matrix(&self) -> ExactUnitary {
        token_matrix(self.lhs)
    }

    /// Uses only I, phases and axis tokens (no H, S or T).
    pub fn is_axis_only(&self) -> bool {
        std::iter::once(&self.lhs)
            .chain(&self.rhs.tokens)
            .all(|t| !matches!(t.kind(), Kind::H | Kind::S | Kind::T))
    }
}

impl Ord for Identity {
    /// Sorted on the rhs first.
    fn cmp(&self, o: &Identity) -> Ordering {
        (&self.rhs.tokens, self.rhs.sign, self.lhs, self.grouped).cmp(&(
            &o.rhs.tokens,
            o.rhs.sign,
            o.lhs,
            o.grouped,
        ))
    }
}

impl PartialOrd for Identity {
    fn partial_cmp(&self, o: &Identity) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
