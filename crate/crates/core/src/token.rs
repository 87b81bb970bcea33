use std::fmt;
use std::str::FromStr;

use crate::Error;

/// Gate families. The declaration order is the canonical sort order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    I,
    X,
    Y,
    Z,
    H,
    S,
    T,
    Rx,
    Ry,
    Rz,
    Ph,
}

impl Kind {
    pub fn is_subscripted(self) -> bool {
        matches!(self, Kind::Rx | Kind::Ry | Kind::Rz | Kind::Ph)
    }

    /// Axis letter for Pauli and rotation kinds.
    pub fn axis(self) -> Option<Axis> {
        match self {
            Kind::X | Kind::Rx => Some(Axis::X),
            Kind::Y | Kind::Ry => Some(Axis::Y),
            Kind::Z | Kind::Rz => Some(Axis::Z),
            _ => None,
        }
    }

    fn letter(self) -> char {
        match self {
            Kind::I => 'I',
            Kind::X | Kind::Rx => 'X',
            Kind::Y | Kind::Ry => 'Y',
            Kind::Z | Kind::Rz => 'Z',
            Kind::H => 'H',
            Kind::S => 'S',
            Kind::T => 'T',
            Kind::Ph => 'P',
        }
    }

    /// X -> Y -> Z -> X on both the Pauli and rotation families.
    pub fn cycle(self) -> Kind {
        match self {
            Kind::X => Kind::Y,
            Kind::Y => Kind::Z,
            Kind::Z => Kind::X,
            Kind::Rx => Kind::Ry,
            Kind::Ry => Kind::Rz,
            Kind::Rz => Kind::Rx,
            k => k,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// One gate symbol. Subscripts are meaningful for rotation and phase kinds only;
/// `0` there is the identity and only shows up mid-rewrite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token {
    kind: Kind,
    sub: u8,
}

pub const I: Token = Token::fixed(Kind::I);
pub const X: Token = Token::fixed(Kind::X);
pub const Y: Token = Token::fixed(Kind::Y);
pub const Z: Token = Token::fixed(Kind::Z);
pub const H: Token = Token::fixed(Kind::H);
pub const S: Token = Token::fixed(Kind::S);
pub const T: Token = Token::fixed(Kind::T);

/// Number of members of Λ.
pub const LAMBDA_LEN: usize = 35;

/// The gate set Λ in canonical order.
pub const LAMBDA: [Token; LAMBDA_LEN] = {
    let fixed = [Kind::I, Kind::X, Kind::Y, Kind::Z, Kind::H, Kind::S, Kind::T];
    let subs = [Kind::Rx, Kind::Ry, Kind::Rz, Kind::Ph];
    let mut out = [I; LAMBDA_LEN];
    let mut i = 0;
    while i < 7 {
        out[i] = Token::fixed(fixed[i]);
        i += 1;
    }
    let mut f = 0;
    while f < 4 {
        let mut j = 1;
        while j <= 7 {
            out[7 + f * 7 + (j as usize - 1)] = Token { kind: subs[f], sub: j };
            j += 1;
        }
        f += 1;
    }
    out
};

impl Token {
    pub const fn fixed(kind: Kind) -> Token {
        Token { kind, sub: 0 }
    }

    /// A rotation or phase token; `j` is taken mod 8.
    pub fn sub(kind: Kind, j: u8) -> Token {
        assert!(kind.is_subscripted(), "{kind:?} takes no subscript");
        Token { kind, sub: j % 8 }
    }

    pub fn try_sub(kind: Kind, j: u8) -> Result<Token, Error> {
        if !kind.is_subscripted() || j > 7 {
            return Err(Error::Token(format!("{kind:?} with subscript {j}")));
        }
        Ok(Token { kind, sub: j })
    }

    pub fn kind(self) -> Kind {
        self.kind
    }

    pub fn subscript(self) -> u8 {
        self.sub
    }

    pub fn is_phase(self) -> bool {
        self.kind == Kind::Ph
    }

    /// `X_4`, `Y_4`, `Z_4` or `P_4`, all equal to `-I`.
    pub fn is_minus_identity(self) -> bool {
        self.kind.is_subscripted() && self.sub == 4
    }

    /// True for `I` and for `X_j`, `Y_j`, `Z_j`.
    pub fn is_rotation(self) -> bool {
        matches!(self.kind, Kind::I | Kind::Rx | Kind::Ry | Kind::Rz)
    }

    /// A subscripted token that equals the identity matrix.
    pub fn is_zero_angle(self) -> bool {
        self.kind.is_subscripted() && self.sub == 0
    }

    /// Cyclic axis substitution X -> Y -> Z -> X.
    pub fn cycle(self) -> Token {
        Token { kind: self.kind.cycle(), sub: self.sub }
    }

    /// Position in [`LAMBDA`], if this token is a member.
    pub fn lambda_index(self) -> Option<usize> {
        match self.kind {
            Kind::I => Some(0),
            Kind::X => Some(1),
            Kind::Y => Some(2),
            Kind::Z => Some(3),
            Kind::H => Some(4),
            Kind::S => Some(5),
            Kind::T => Some(6),
            _ if self.sub == 0 => None,
            k => {
                let f = match k {
                    Kind::Rx => 0,
                    Kind::Ry => 1,
                    Kind::Rz => 2,
                    _ => 3,
                };
                Some(7 + 7 * f + self.sub as usize - 1)
            }
        }
    }

    /// Spelling with pattern axes `A B C` in place of `X Y Z`.
    pub fn pattern_name(self) -> String {
        let name = self.to_string();
        match self.kind.axis() {
            Some(a) => {
                let letter = match a {
                    Axis::X => 'A',
                    Axis::Y => 'B',
                    Axis::Z => 'C',
                };
                format!("{letter}{}", &name[1..])
            }
            None => name,
        }
    }

    /// Parses a token; pattern axes are accepted and reported through the flag.
    pub fn parse_with_pattern(s: &str) -> Result<(Token, bool), Error> {
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(|| Error::Token(String::new()))?;
        let rest = chars.as_str();
        let (head, pattern) = match head {
            'A' => ('X', true),
            'B' => ('Y', true),
            'C' => ('Z', true),
            c => (c, false),
        };
        let bad = || Error::Token(s.to_string());
        let tok = if rest.is_empty() {
            let kind = match head {
                'I' if !pattern => Kind::I,
                'X' => Kind::X,
                'Y' => Kind::Y,
                'Z' => Kind::Z,
                'H' => Kind::H,
                'S' => Kind::S,
                'T' => Kind::T,
                _ => return Err(bad()),
            };
            Token::fixed(kind)
        } else {
            let j: u8 = match rest.as_bytes() {
                [d @ b'1'..=b'7'] => d - b'0',
                _ => return Err(bad()),
            };
            let kind = match head {
                'X' => Kind::Rx,
                'Y' => Kind::Ry,
                'Z' => Kind::Rz,
                'P' if !pattern => Kind::Ph,
                _ => return Err(bad()),
            };
            Token { kind, sub: j }
        };
        Ok((tok, pattern))
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.letter())?;
        if self.kind.is_subscripted() {
            write!(f, "{}", self.sub)?;
        }
        Ok(())
    }
}

impl FromStr for Token {
    type Err = Error;

    /// Plain spelling only: `I X Y Z H S T X1..X7 Y1..Y7 Z1..Z7 P1..P7`.
    fn from_str(s: &str) -> Result<Token, Error> {
        match Token::parse_with_pattern(s)? {
            (t, false) => Ok(t),
            _ => Err(Error::Token(s.to_string())),
        }
    }
}
