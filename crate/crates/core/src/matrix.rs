//! Exact and floating point 2×2 matrices and the semantics of tokens and words.

use std::collections::HashMap;
use std::ops::{Mul, Neg};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::cyclo::CycloNum;
use crate::token::{Kind, Token, LAMBDA};
use crate::word::{Sign, SignedWord};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ExactUnitary {
    pub m: [[CycloNum; 2]; 2],
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct FloatMatrix {
    pub m: [[Complex64; 2]; 2],
}

impl ExactUnitary {
    pub fn identity() -> ExactUnitary {
        ExactUnitary::diag(CycloNum::ONE, CycloNum::ONE)
    }

    pub fn diag(a: CycloNum, d: CycloNum) -> ExactUnitary {
        ExactUnitary { m: [[a, CycloNum::ZERO], [CycloNum::ZERO, d]] }
    }

    pub fn scale(self, s: CycloNum) -> ExactUnitary {
        ExactUnitary { m: self.m.map(|r| r.map(|x| x * s)) }
    }

    pub fn adjoint(self) -> ExactUnitary {
        let m = self.m;
        ExactUnitary { m: [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]] }
    }

    pub fn is_unitary(self) -> bool {
        self * self.adjoint() == ExactUnitary::identity()
    }

    pub fn to_float(self) -> FloatMatrix {
        FloatMatrix { m: self.m.map(|r| r.map(CycloNum::to_complex)) }
    }
}

impl Mul for ExactUnitary {
    type Output = ExactUnitary;
    fn mul(self, o: ExactUnitary) -> ExactUnitary {
        let (a, b) = (self.m, o.m);
        let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        ExactUnitary { m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }
}

impl Neg for ExactUnitary {
    type Output = ExactUnitary;
    fn neg(self) -> ExactUnitary {
        ExactUnitary { m: self.m.map(|r| r.map(|x| -x)) }
    }
}

impl FloatMatrix {
    pub fn identity() -> FloatMatrix {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        FloatMatrix { m: [[o, z], [z, o]] }
    }

    /// Largest entrywise modulus of the difference.
    pub fn max_abs_diff(&self, o: &FloatMatrix) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.m[i][j] - o.m[i][j]).norm());
            }
        }
        d
    }
}

impl Mul for FloatMatrix {
    type Output = FloatMatrix;
    #[inline]
    fn mul(self, o: FloatMatrix) -> FloatMatrix {
        let (a, b) = (self.m, o.m);
        let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        FloatMatrix { m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }
}

impl Neg for FloatMatrix {
    type Output = FloatMatrix;
    fn neg(self) -> FloatMatrix {
        FloatMatrix { m: self.m.map(|r| r.map(|x| -x)) }
    }
}

/// Exact matrix of a token. Rotations use `θ_j = πj/2`, so
/// `R_q(θ_j) = cos(πj/4)·I − i·sin(πj/4)·Q` and `P_j = ζ^j·I`.
pub fn token_matrix(t: Token) -> ExactUnitary {
    let (o, z) = (CycloNum::ONE, CycloNum::ZERO);
    let i = CycloNum::i();
    let j = t.subscript() as i64;
    let (c, s) = (CycloNum::cos_quarter_pi(j), CycloNum::sin_quarter_pi(j));
    let m = match t.kind() {
        Kind::I => [[o, z], [z, o]],
        Kind::X => [[z, o], [o, z]],
        Kind::Y => [[z, -i], [i, z]],
        Kind::Z => [[o, z], [z, -o]],
        Kind::H => {
            let h = CycloNum::inv_sqrt2();
            [[h, h], [h, -h]]
        }
        Kind::S => [[o, z], [z, i]],
        Kind::T => [[o, z], [z, CycloNum::zeta_pow(1)]],
        Kind::Rx => [[c, -(i * s)], [-(i * s), c]],
        Kind::Ry => [[c, -s], [s, c]],
        Kind::Rz => [[c - i * s, z], [z, c + i * s]],
        Kind::Ph => {
            let p = CycloNum::zeta_pow(j);
            [[p, z], [z, p]]
        }
    };
    ExactUnitary { m }
}

/// Float matrix of a token, computed directly from trigonometry.
pub fn token_matrix_float(t: Token) -> FloatMatrix {
    let j = t.subscript() as f64;
    let half = std::f64::consts::FRAC_PI_4 * j;
    let (c, s) = (half.cos(), half.sin());
    let o = Complex64::new(1.0, 0.0);
    let z = Complex64::new(0.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let m = match t.kind() {
        Kind::I => [[o, z], [z, o]],
        Kind::X => [[z, o], [o, z]],
        Kind::Y => [[z, -i], [i, z]],
        Kind::Z => [[o, z], [z, -o]],
        Kind::H => {
            let h = o * std::f64::consts::FRAC_1_SQRT_2;
            [[h, h], [h, -h]]
        }
        Kind::S => [[o, z], [z, i]],
        Kind::T => [[o, z], [z, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)]],
        Kind::Rx => [[o * c, -i * s], [-i * s, o * c]],
        Kind::Ry => [[o * c, -o * s], [o * s, o * c]],
        Kind::Rz => [[o * c - i * s, z], [z, o * c + i * s]],
        Kind::Ph => {
            let p = Complex64::from_polar(1.0, half);
            [[p, z], [z, p]]
        }
    };
    FloatMatrix { m }
}

/// Sign times the left-to-right product; the empty word is the identity.
pub fn eval_word(w: &SignedWord) -> ExactUnitary {
    let p = eval_tokens(&w.tokens);
    match w.sign {
        Sign::Plus => p,
        Sign::Minus => -p,
    }
}

pub fn eval_tokens(tokens: &[Token]) -> ExactUnitary {
    tokens.iter().fold(ExactUnitary::identity(), |acc, &t| acc * token_matrix(t))
}

pub fn eval_word_float(w: &SignedWord) -> FloatMatrix {
    let p = w.tokens.iter().fold(FloatMatrix::identity(), |acc, &t| acc * token_matrix_float(t));
    match w.sign {
        Sign::Plus => p,
        Sign::Minus => -p,
    }
}

pub fn approx_equal(a: &FloatMatrix, b: &FloatMatrix, eps: f64) -> bool {
    a.max_abs_diff(b) <= eps
}

pub fn exact_equal(a: &ExactUnitary, b: &ExactUnitary) -> bool {
    a == b
}

/// Members of Λ whose matrix equals `m`, in canonical order.
pub fn lambda_members(m: &ExactUnitary) -> &'static [Token] {
    static TABLE: OnceLock<HashMap<ExactUnitary, Vec<Token>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t: HashMap<ExactUnitary, Vec<Token>> = HashMap::new();
        for tok in LAMBDA {
            t.entry(token_matrix(tok)).or_default().push(tok);
        }
        t
    });
    table.get(m).map(Vec::as_slice).unwrap_or(&[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::token::{H, S, T, X, Z};

    fn word(ts: &[Token]) -> SignedWord {
        SignedWord::plus(ts.to_vec())
    }

    #[test]
    fn hadamard_entries() {
        let h = token_matrix(H);
        let r = CycloNum::new(0, 1, 0, -1, 1);
        assert_eq!(h.m, [[r, r], [r, -r]]);
    }

    #[test]
    fn known_products() {
        assert_eq!(eval_word(&word(&[H, X, H])), token_matrix(Z));
        assert_eq!(eval_word(&word(&[T, T])), token_matrix(S));
        assert_eq!(eval_word(&word(&[])), ExactUnitary::identity());
        assert_eq!(token_matrix(Token::sub(Kind::Rx, 4)), -ExactUnitary::identity());
        let x = |j| Token::sub(Kind::Rx, j);
        let y = |j| Token::sub(Kind::Ry, j);
        assert_eq!(eval_word(&word(&[x(2), x(3)])), token_matrix(x(5)));
        assert_eq!(eval_word(&word(&[y(2), y(3), y(3)])), ExactUnitary::identity());
        assert!(!exact_equal(&token_matrix(H), &token_matrix(X)));
    }

    #[test]
    fn float_examples() {
        let ss = eval_word_float(&word(&[S, S]));
        assert!(approx_equal(&ss, &token_matrix(Z).to_float(), 1e-15));
        let hxh = eval_word_float(&word(&[H, X, H]));
        assert!(approx_equal(&hxh, &token_matrix_float(Z), 1e-9));
        assert!(!approx_equal(&hxh, &token_matrix_float(H), 1e-9));
        assert!(approx_equal(&hxh, &hxh, f64::MIN_POSITIVE));
    }

    #[test]
    fn all_tokens_unitary_and_zero_angle_is_identity() {
        for t in LAMBDA {
            assert!(token_matrix(t).is_unitary(), "{t}");
            assert!(token_matrix(t).to_float().max_abs_diff(&token_matrix_float(t)) < 1e-15);
        }
        for k in [Kind::Rx, Kind::Ry, Kind::Rz, Kind::Ph] {
            assert_eq!(token_matrix(Token::sub(k, 0)), ExactUnitary::identity());
        }
    }

    #[test]
    fn minus_identity_members() {
        let m = lambda_members(&-ExactUnitary::identity());
        assert_eq!(m.iter().map(|t| t.to_string()).collect::<Vec<_>>(), ["X4", "Y4", "Z4", "P4"]);
        assert_eq!(lambda_members(&token_matrix(H)), &[H]);
    }
}
