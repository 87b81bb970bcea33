//! Exact arithmetic in the ring of dyadic cyclotomic numbers of order 8.
//!
//! A value is `(a + bζ + cζ² + dζ³) / 2^k` with `ζ = e^{iπ/4}`. Since `ζ⁴ = −1`
//! only the powers `0..4` are stored.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CycloNum {
    c: [i64; 4],
    k: u32,
}

impl CycloNum {
    pub const ZERO: CycloNum = CycloNum { c: [0; 4], k: 0 };
    pub const ONE: CycloNum = CycloNum { c: [1, 0, 0, 0], k: 0 };

    /// Builds `(a + bζ + cζ² + dζ³) / 2^k` and reduces it.
    pub fn new(a: i64, b: i64, c: i64, d: i64, k: u32) -> CycloNum {
        CycloNum { c: [a, b, c, d], k }.canonicalize()
    }

    /// `ζ^j` for any integer `j`.
    pub fn zeta_pow(j: i64) -> CycloNum {
        let j = j.rem_euclid(8) as usize;
        let mut c = [0; 4];
        if j < 4 {
            c[j] = 1;
        } else {
            c[j - 4] = -1;
        }
        CycloNum { c, k: 0 }
    }

    /// The imaginary unit, `ζ²`.
    pub fn i() -> CycloNum {
        CycloNum::zeta_pow(2)
    }

    /// `1/√2 = (ζ − ζ³)/2`.
    pub fn inv_sqrt2() -> CycloNum {
        CycloNum::new(0, 1, 0, -1, 1)
    }

    /// `cos(πj/4)`.
    pub fn cos_quarter_pi(j: i64) -> CycloNum {
        match j.rem_euclid(8) {
            0 => CycloNum::ONE,
            1 | 7 => CycloNum::inv_sqrt2(),
            2 | 6 => CycloNum::ZERO,
            3 | 5 => -CycloNum::inv_sqrt2(),
            _ => -CycloNum::ONE,
        }
    }

    /// `sin(πj/4)`.
    pub fn sin_quarter_pi(j: i64) -> CycloNum {
        CycloNum::cos_quarter_pi(j - 2)
    }

    pub fn coeffs(&self) -> [i64; 4] {
        self.c
    }

    pub fn denom_exp(&self) -> u32 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0; 4]
    }

    /// Halves out common factors of two so that `k = 0` or some coefficient is odd.
    pub fn canonicalize(self) -> CycloNum {
        let CycloNum { mut c, mut k } = self;
        if c == [0; 4] {
            return CycloNum::ZERO;
        }
        while k > 0 && c.iter().all(|x| x % 2 == 0) {
            for x in &mut c {
                *x /= 2;
            }
            k -= 1;
        }
        CycloNum { c, k }
    }

    /// Complex conjugate; maps `ζ` to `ζ⁷ = −ζ³`.
    pub fn conj(self) -> CycloNum {
        let [a, b, c, d] = self.c;
        CycloNum { c: [a, -d, -c, -b], k: self.k }
    }

    pub fn to_complex(self) -> Complex64 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let [a, b, c, d] = self.c.map(|x| x as f64);
        let scale = (0.5f64).powi(self.k as i32);
        Complex64::new(a + (b - d) * h, c + (b + d) * h) * scale
    }

    fn scaled_to(self, k: u32) -> [i64; 4] {
        let f = 1i64 << (k - self.k);
        self.c.map(|x| x * f)
    }
}

impl Add for CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: CycloNum) -> CycloNum {
        let k = self.k.max(rhs.k);
        let (x, y) = (self.scaled_to(k), rhs.scaled_to(k));
        CycloNum { c: [x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]], k }.canonicalize()
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { c: self.c.map(|x| -x), k: self.k }
    }
}

impl Sub for CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: CycloNum) -> CycloNum {
        self + (-rhs)
    }
}

impl Mul for CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: CycloNum) -> CycloNum {
        let mut acc = [0i64; 4];
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in rhs.c.iter().enumerate() {
                let p = x * y;
                if i + j < 4 {
                    acc[i + j] += p;
                } else {
                    acc[i + j - 4] -= p;
                }
            }
        }
        CycloNum { c: acc, k: self.k + rhs.k }.canonicalize()
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.c;
        write!(f, "({a} + {b}ζ + {c}ζ² + {d}ζ³)/2^{}", self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_examples() {
        assert_eq!(CycloNum { c: [2, 0, 0, 0], k: 1 }.canonicalize(), CycloNum::ONE);
        let r = CycloNum { c: [0, 1, 0, -1], k: 1 }.canonicalize();
        assert_eq!((r.coeffs(), r.denom_exp()), ([0, 1, 0, -1], 1));
        let r = CycloNum { c: [4, 4, 0, 0], k: 3 }.canonicalize();
        assert_eq!((r.coeffs(), r.denom_exp()), ([1, 1, 0, 0], 1));
    }

    #[test]
    fn basic_constants() {
        let s = CycloNum::inv_sqrt2();
        assert_eq!(s * s + s * s, CycloNum::ONE);
        assert_eq!(CycloNum::i() * CycloNum::i(), -CycloNum::ONE);
        assert_eq!(CycloNum::zeta_pow(8), CycloNum::ONE);
        assert_eq!(CycloNum::zeta_pow(3).conj(), CycloNum::zeta_pow(5));
        for j in 0..8 {
            let c = CycloNum::cos_quarter_pi(j);
            let s = CycloNum::sin_quarter_pi(j);
            assert_eq!(c * c + s * s, CycloNum::ONE);
            let z = CycloNum::zeta_pow(j).to_complex();
            assert!((z - Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4 * j as f64)).norm() < 1e-15);
            assert!((c.to_complex().re - (std::f64::consts::FRAC_PI_4 * j as f64).cos()).abs() < 1e-15);
        }
    }
}
